"""
Local solutions near the origin
===============================

Each F_I is a power of x times an F_C series with shifted parameters.
The truncated tables satisfy the differential system coefficientwise.
"""

from fractions import Fraction as Fr

import numpy as np

from fcmono import ParameterPoint, all_indices, pde_residual, solution_FI
from fcmono.series import base_point, fc_series

p = ParameterPoint(Fr(1, 3), Fr(2, 7), (Fr(1, 5), Fr(3, 8)))
x = base_point(2)

for I in all_indices(2):
    print(I, solution_FI(p, I, x, 30), pde_residual(p, I, 12))

# convergence of the truncation at the base point
values = [fc_series(p.a, p.b, p.c, x, N) for N in range(5, 40, 5)]
print(np.abs(np.diff(values)))
