"""Shared test corpus with hand-derived verdicts."""

from qblowup import GREVLEX, PolyRing
from qblowup.ideal import QuotientPresentation

PLANE = PolyRing(("x", "y"), GREVLEX)
PLANE_AMBIENT = QuotientPresentation(PLANE)

# reduced plane curves of degree <= 7; the point counts are for the
# resolution-phase invariants, not oracles
CURVES = [
    "y^2 - x^3",                 # cusp
    "y^2 - x^3 - x^2",           # node
    "y^2 - x^4",                 # tacnode
    "y - x^2",                   # smooth
    "y^2 - x^5",                 # A4
    "x^3 - y^5",                 # E8-type
    "x^3 - y^4",                 # E6-type
    "x^2*y - x*y^2",           # three lines through the origin
    "x^2 - y^3 + y^4",           # cusp with higher terms
    "y^2 - x^3 + 3*x^2 - 3*x + 1",  # cusp translated to (1, 0)
    "x^2*y + y^3 - y",           # node off the origin plus extra branches
    "y^2 - x^2 + x^4 - 2",       # smooth quartic
]

# pairs of distinct principal prime ideals meeting at a rational point
SEPARATION_PAIRS = [
    ("x", "y"),
    ("x", "x + y^2"),
    ("y - x^2", "y"),
    ("y - x^2", "y + x^2"),
    ("y^2 - x^3", "x"),
    ("x - 1", "y - 1"),
    ("x^2 + y^2 - 2", "x - y"),
    ("y - x^3", "y"),
    ("x + y", "x - y"),
    ("y^2 - x^3 - x^2", "y - x"),
]

# (factors, hand verdict, reasons of the failing subsets with 0-based indices)
SNC_ARRANGEMENTS = [
    (["x", "y"], True, {}),
    (["x - 1", "y + 2"], True, {}),
    (["x", "y", "x + y"], False, {(0, 1, 2): "excess-intersection"}),
    (["y - x^2", "y"], False, {(0, 1): "non-transversal"}),
    (["y - x^2", "y + x^2"], False, {(0, 1): "non-transversal"}),
    (["x", "y", "x - 1"], True, {}),
    (["x", "y - 1", "x - y"], True, {}),
    (["x", "y", "x - y"], False, {(0, 1, 2): "excess-intersection"}),
    (["x^2 + y^2 - 1", "x - 1"], False, {(0, 1): "non-transversal"}),
    (["x^2 + y^2 - 1", "x"], True, {}),
]
