"""
Where irreducibility breaks
===========================

Classify a few parameter points, then confirm the answer with the
dimension of the matrix algebra spanned by the monodromy generators.
"""

from fractions import Fraction as Fr

from fcmono import ParameterPoint, algebra_dimension, verify_invariant_subspace
from fcmono.classify import classify, generic_generators

points = {
    "generic": ParameterPoint(Fr(1, 2), Fr(1, 3), (Fr(1, 5),)),
    "a = -1": ParameterPoint(Fr(-1), Fr(1, 3), (Fr(1, 5),)),
    "a = 2": ParameterPoint(Fr(2), Fr(1, 3), (Fr(1, 5),)),
}

for label, p in points.items():
    rep = classify(p)
    dim = algebra_dimension(generic_generators(p))
    print(f"{label:8s} {rep.note:28s} algebra dimension {dim} of {4 ** p.m}")
    if rep.invariant_subspace is not None:
        sub = rep.invariant_subspace
        print(f"         {sub.basis_label}, dim {sub.dimension}, leak {verify_invariant_subspace(sub, p):.1e}")

# A two-variable point: the full algebra has dimension 16.
p = ParameterPoint(Fr(1, 3), Fr(2, 7), (Fr(1, 5), Fr(3, 8)))
print(algebra_dimension(generic_generators(p)))
