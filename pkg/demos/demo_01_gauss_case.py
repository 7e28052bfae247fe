"""
The one-variable case
=====================

With m = 1 the system is Gauss's equation.  We build the two generators
exactly and look at the invariant form.
"""

from fcmono import ExactField, build_H, build_M0, build_Mk
from fcmono.linalg import det

F = ExactField(1)
H = build_H(F)
M0, M1 = build_M0(F), build_Mk(F, 1)

for name, M in (("H", H), ("M0", M0), ("M1", M1)):
    print(name)
    for row in M.rows:
        print("   ", ", ".join(F.format(x) for x in row))

# the form is invariant: t(M) H M^v = H for both generators
for M in (M0, M1):
    print((M.T @ H @ M.dualize()).equals(H))

# det H is a single rational function; print it unreduced
print(F.format(det(H)))
