# coding: utf-8

# # The circulant metric and the shift q
#
# A metric with first row (A, B, C, B) and A > C > B > 0 is positive definite,
# and the coordinate shift q is an isometry of it.

# In[1]:

import numpy as np

from circq import angle, inner, isometry_residual, metric_from_values, q_apply
from circq.metric import circulant_eigenvalues

m = metric_from_values(3, 1, 2)
print(m.g)


# Eigenvalues in closed form next to a direct eigensolve.

# In[2]:

print(np.sort(circulant_eigenvalues(3, 1, 2)))
print(np.linalg.eigvalsh(m.g))


# q shifts coordinates, has order four, and q² is not ±id.

# In[3]:

x = np.array([1.0, 2.0, 3.0, 4.0])
print(q_apply(x), q_apply(x, 2), q_apply(x, 4))


# g(qx, qy) = g(x, y) for any pair.

# In[4]:

rng = np.random.default_rng(0)
x, y = rng.standard_normal((2, 4))
print(inner(m, x, y), inner(m, q_apply(x), q_apply(y)), isometry_residual(m, x, y))


# The angle between e1 and q e1 is arccos(B/A).

# In[5]:

e1 = np.array([1.0, 0, 0, 0])
print(angle(m, e1, q_apply(e1)), np.arccos(1 / 3))
