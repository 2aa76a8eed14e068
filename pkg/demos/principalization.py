"""Making a strict transform principal by blowing up I + J^n.

Run with ``python demos/principalization.py``.
"""

from qblowup import GREVLEX, Ideal, PolyRing, QuotientPresentation, StepsExhausted
from qblowup import principalize_strict_transform, separate_and_principalize

R = PolyRing(("x", "y"), GREVLEX)
plane = QuotientPresentation(R)

cases = [
    ("x", ("x", "y")),
    ("x", ("x", "y^2")),
    ("y^2 - x^3", ("x^2", "y")),
]
for f, J in cases:
    res = principalize_strict_transform(plane, Ideal.parse(R, f), Ideal.parse(R, *J))
    gens = ", ".join(str(g) for g in res.generators)
    print(f"I = ({f}), J = ({', '.join(J)}): n = {res.n}, chart generators [{gens}]")

# With a budget of n = 1 the last case fails, and the error names the
# chart where the strict transform is not principal.
try:
    principalize_strict_transform(plane, Ideal.parse(R, "y^2 - x^3"), Ideal.parse(R, "x^2", "y"), n_max=1)
except StepsExhausted as e:
    print("n_max = 1:", e)

# Two components through the origin become principal and disjoint.
print()
for a, b in (("x", "y"), ("y - x^2", "y")):
    res = separate_and_principalize(plane, Ideal.parse(R, a), Ideal.parse(R, b))
    print(f"separate ({a}) and ({b}): n = {res.n}")
