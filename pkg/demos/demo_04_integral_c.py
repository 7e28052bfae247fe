"""
Integral c_k
============

When c_k is an integer, gamma_k = 1 and the basis change P_m is singular.
The matrices in the second basis are still finite, and their form stays
nondegenerate.
"""

from fractions import Fraction as Fr

import numpy as np

from fcmono import NumericField, ParameterPoint, build_Pm, build_tilde_H
from fcmono.monodromy import det_tilde_H_closed, generators

p = ParameterPoint(Fr(2, 7), Fr(3, 5), (Fr(1), Fr(-2)))
F = NumericField.at(p)

print("det P_m       ", abs(np.linalg.det(build_Pm(F).to_numpy())))
Ht = build_tilde_H(F).to_numpy()
print("det H~        ", np.linalg.det(Ht))
print("closed form   ", det_tilde_H_closed(F).value)
for k, M in enumerate(generators(F, "tilde")):
    print(f"M~{k}\n", np.round(M.to_numpy(), 6))
