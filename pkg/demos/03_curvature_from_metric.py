# coding: utf-8

# # Curvature of a circulant metric field
#
# Christoffel symbols and their derivatives come from exact 2-jets of the
# expressions for A, B, C.

# In[1]:

import numpy as np

from circq import CirculantField, InvarianceClass, riemann, sectional, sphere_metric
from circq.curvature import invariance_residual

flat = CirculantField.from_strings("3", "1", "2")
print(np.abs(riemann(flat, [0.1, 0.2, 0.3, 0.4]).R).max())


# The round sphere pins the sign convention: every plane has curvature +1.

# In[2]:

s = sphere_metric()
p = np.array([0.1, 0.2, -0.3, 0.4])
R = riemann(s, p)
rng = np.random.default_rng(0)
print([round(sectional(s.metric(p), R, *rng.standard_normal((2, 4))), 12) for _ in range(5)])


# A field that varies with X1+X2+X3+X4 only. That sum is q-invariant, and so
# is the resulting curvature tensor.

# In[3]:

field = CirculantField.from_strings("3+0.2*sin(X1+X2+X3+X4)", "1", "2")
R = riemann(field, p)
print(R.symmetries)
print(invariance_residual(R, InvarianceClass.FULL_Q))
print(invariance_residual(R, InvarianceClass.LAST_PAIR_Q))


# A generic field is not q-invariant.

# In[4]:

other = CirculantField.from_strings("4+0.3*cos(X1)*X2", "0.5+0.1*sin(X3)", "2")
print(invariance_residual(riemann(other, p), InvarianceClass.FULL_Q))
