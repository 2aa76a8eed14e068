"""Smoothness through the Jacobian ideal.

Run with ``python demos/jacobian_smoothness.py``.
"""

from qblowup import GREVLEX, Ideal, PolyRing, QuotientPresentation, is_smooth, singular_locus_ideal

R = PolyRing(("x", "y"), GREVLEX)

for text in ("y - x^2", "y^2 - x^3", "y^2 - x^3 - x^2", "x^2 + y^2 - 1"):
    P = QuotientPresentation(R, Ideal.parse(R, text))
    verdict = is_smooth(P)
    locus = ", ".join(str(g) for g in singular_locus_ideal(P).groebner().basis)
    print(f"{text:18s} smooth={verdict.smooth!s:5s} singular locus ({locus})")

# Charts carry relations of their own. The cone xy = z^2 in 3-space
# is singular only at the origin.
R3 = PolyRing(("x", "y", "z"), GREVLEX)
cone = QuotientPresentation(R3, Ideal.parse(R3, "x*y - z^2"))
print()
print("cone smooth:", is_smooth(cone).smooth)
print("cone singular locus: (" + ", ".join(str(g) for g in singular_locus_ideal(cone).groebner().basis) + ")")

# With no relations the Jacobian ideal is the unit ideal.
print("affine 3-space smooth:", is_smooth(QuotientPresentation(R3)).smooth)
