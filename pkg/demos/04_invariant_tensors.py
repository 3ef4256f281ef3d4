# coding: utf-8

# # Synthetic invariant curvature tensors
#
# The algebraic curvature tensors on R^4 form a 20-dimensional space. Adding
# q-invariance in all slots leaves 6 dimensions; invariance in the last pair
# leaves 1.

# In[1]:

from circq import InvarianceClass, metric_from_values, orthogonal_q_basis
from circq import sample_invariant_tensor
from circq.curvature import invariant_basis
from circq.frame import random_unit_coords
from circq.theorems import RSextet, dop_identities, kcoeffs, master_identity
import numpy as np

for cls in InvarianceClass:
    print(cls.value, invariant_basis(cls).shape[0])


# On a full-q tensor the frame components obey a set of linear identities.

# In[2]:

m = metric_from_values(3, 1, 2)
f = orthogonal_q_basis(m)
R = sample_invariant_tensor(m, InvarianceClass.FULL_Q, rng_seed=5)
print(RSextet.from_frame(R, f))
print(max(r.residual for r in dop_identities(R, f)))


# The K coefficients reduce to cosines of the angles of u to qu and q²u, and
# the weighted sum of the two sectional curvatures expands in R1..R6.

# In[3]:

rng = np.random.default_rng(2)
c = random_unit_coords(rng)
K = kcoeffs(c)
print(K.as_array(), np.array(K.cosine_form))
rep = master_identity(R, f, c)
print(rep.lhs, rep.rhs, rep.residual)
