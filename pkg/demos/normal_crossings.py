"""Simple normal crossings checks, globally and at a point.

Run with ``python demos/normal_crossings.py``. Component indices in
verdicts are 0-based.
"""

from qblowup import GREVLEX, FactoredDivisor, PolyRing, QuotientPresentation
from qblowup import monomial_check, snc_check_at_point, snc_check_global

R = PolyRing(("x", "y"), GREVLEX)
plane = QuotientPresentation(R)


def show(factors):
    D = FactoredDivisor(plane, factors)
    v = snc_check_global(D)
    print(f"{str(factors):40s} snc={v.snc!s:5s} failures={v.failures}")


show(["x", "y"])
show(["x", "y", "x + y"])  # three lines through one point
show(["y^2 - x^3"])  # singular component
show(["y - x^2", "y"])  # tangency

# These two curves are tangent at the origin and cross transversally at (1, 1).
D = FactoredDivisor(plane, ["y - x^2", "y - x^3"])
print()
print("at (0, 0):", snc_check_at_point(D, (0, 0)).snc)
print("at (1, 1):", snc_check_at_point(D, (1, 1)).snc)

# The monomial condition only looks at the support, so multiplicities
# do not change the answer.
print()
print("x*y monomial:", monomial_check(FactoredDivisor(plane, ["x", "y"])))
print("x^3*y^2 monomial:", monomial_check(FactoredDivisor(plane, [("x", 3), ("y", 2)])))
