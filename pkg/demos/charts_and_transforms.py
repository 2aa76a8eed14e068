"""Charts of a blow up and the three transforms of an ideal.

Run with ``python demos/charts_and_transforms.py``.
"""

from qblowup import (
    GREVLEX,
    Center,
    Ideal,
    PolyRing,
    QuotientPresentation,
    blowup_charts,
    controlled_transform,
    strict_transform,
    total_transform,
)

R = PolyRing(("x", "y"), GREVLEX)


def show(polys):
    return "(" + ", ".join(str(g) for g in polys) + ")"


plane = QuotientPresentation(R)

# Blow up the origin. There is one chart per generator of the center.
step = blowup_charts(Center(plane, Ideal.parse(R, "x", "y")))
for ch in step.charts:
    rels = ", ".join(str(g) for g in ch.relations.nonzero_generators())
    print(f"chart {ch.index}: exceptional divisor ({ch.generator}), relations [{rels}]")

# The cusp pulled back to the chart where y = x*T1_2.
cusp = Ideal.parse(R, "y^2 - x^3")
ch = step.charts[0]
print()
print("total     :", show(total_transform(ch, cusp).nonzero_generators()))
print("strict    :", show(strict_transform(ch, cusp).groebner().basis))
# The cusp has order 2 at the origin, so x^2 divides the pullback.
print("controlled:", show(controlled_transform(ch, cusp, 2).groebner().basis))

# A non-reduced center: (x, y^2). The chart where y^2 is the exceptional
# generator keeps the relation y^2*T1_1 - x.
print()
step2 = blowup_charts(Center(plane, Ideal.parse(R, "x", "y^2")))
for ch in step2.charts:
    rels = ", ".join(str(g) for g in ch.relations.nonzero_generators())
    print(f"center (x, y^2), chart {ch.index}: relations [{rels}]")
