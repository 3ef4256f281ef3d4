# coding: utf-8

# # An orthonormal q-basis
#
# A vector x generates a q-basis {x, qx, q²x, q³x} unless
# ((x1-x3)² + (x2-x4)²)((x1+x3)² - (x2+x4)²) vanishes.

# In[1]:

import numpy as np

from circq import coords_in_frame, induces_q_basis, metric_from_values, orthogonal_q_basis
from circq import reconstruct, sample_with_angles
from circq.frame import ansatz_generator, q_orbit

for x in ([1, 0, 0, 0], [1, 1, 1, 1], [1, 1, -1, 1]):
    print(x, induces_q_basis(x), np.linalg.det(q_orbit(x)))


# With x = (a, b, a, d) the two orthogonality conditions collapse to a
# quadratic in s = b + d and a linear equation in bd.

# In[2]:

A, B, C = 3.0, 1.0, 2.0
x0 = ansatz_generator(A, B, C)
print(x0, x0[1] + x0[3], -5 + np.sqrt(21))


# The search starts there and normalizes; every Gram off-diagonal is zero.

# In[3]:

m = metric_from_values(A, B, C)
f = orthogonal_q_basis(m)
print(f.generator)
print(np.round(f.gram, 14))


# Coordinates of u in the frame, and of qu (a cyclic shift of them).

# In[4]:

u = np.array([0.3, -1.0, 0.5, 2.0])
c = coords_in_frame(f, u, m)
print(c)
print(coords_in_frame(f, np.roll(u, -1), m))
print(np.allclose(reconstruct(f, c), u))


# Unit coordinates with prescribed cos∠(u,qu) and cos∠(u,q²u). They exist
# exactly when |cos∠(u,qu)| <= (1 + cos∠(u,q²u))/2.

# In[5]:

c = sample_with_angles(0.3, 0.4, rng_seed=1)
print(c, c.cos_phi, c.cos_theta, c.norm2)
