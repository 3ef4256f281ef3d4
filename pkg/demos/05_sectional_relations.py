# coding: utf-8

# # Sectional curvature along q-orbits
#
# For u with u ⟂ qu, a relation ties μ(u,q²u) - μ(x,q²x) to R4 and
# R5. On a constant curvature tensor both sides vanish.

# In[1]:

from circq import (InvarianceClass, constant_curvature, metric_from_values,
                   orthogonal_q_basis, sample_invariant_tensor, sample_with_angles, thm4)
from circq import thm5, thm6, thm7
from circq.frame import random_unit_coords
import numpy as np

m = metric_from_values(3, 1, 2)
f = orthogonal_q_basis(m)
c = sample_with_angles(0.0, 0.37, rng_seed=3)
for rep in thm4(constant_curvature(m, 1.0), f, c, which=("mu-r",)):
    print(rep.theorem, rep.lhs, rep.rhs, rep.residual)


# On a generic full-q tensor it does not hold. The gap is exactly
# 2(R1 - μ(u,qu))/(1 - cos²θ): with u ⟂ qu, μ(u,qu) still differs from R1.

# In[2]:

R = sample_invariant_tensor(m, InvarianceClass.FULL_Q, rng_seed=7)
(rep,) = thm4(R, f, c, which=("mu-r",))
print(rep.residual, rep.extras["omitted_term"], rep.extras["corrected_residual"])


# The three-vector relations inherit the gap; the constant curvature case
# collapses because the coefficients sum to 1 - cos²θ.

# In[3]:

y, z = sample_with_angles(0.0, 0.5, 1), sample_with_angles(0.0, -0.5, 2)
u = sample_with_angles(0.0, -0.2, 3)
for T in (constant_curvature(m, 1.0), R):
    rep = thm5(T, f, u, y, z)
    print(rep.residual, rep.extras["corrected_residual"])
yp, zp = sample_with_angles(0.5, 0.0, 1), sample_with_angles(-0.5, 0.0, 2)
print(thm6(R, f, sample_with_angles(0.3, 0.0, 3), yp, zp).residual)


# Last-pair invariance is much stronger: μ(u,q²u) = 0 and μ(u,qu) is a fixed
# multiple of μ(x,qx).

# In[4]:

L = sample_invariant_tensor(m, InvarianceClass.LAST_PAIR_Q, rng_seed=1)
rng = np.random.default_rng(0)
for _ in range(3):
    q2, q1 = thm7(L, f, random_unit_coords(rng))
    print(q2.lhs, q1.lhs, q1.rhs)
