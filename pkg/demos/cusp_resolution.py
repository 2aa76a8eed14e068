"""Resolving the cusp y^2 = x^3 by point blow ups.

Run with ``python demos/cusp_resolution.py``. Each section prints what the
engine computed so the output can be read top to bottom.
"""

from qblowup import GREVLEX, PolyRing, resolve_plane_curve, verify_resolution
from qblowup.serialize import dumps, trace_json

R = PolyRing(("x", "y"), GREVLEX)
f = R("y^2 - x^3")

# The origin is the only singular point; the curve has order 2 there.
trace = resolve_plane_curve(f)
print("blow ups performed:")
print(trace.summary())

# Phase 1 stops once the curve is smooth in every chart. Phase 2 then
# separates the curve from the exceptional lines until the total divisor
# has simple normal crossings.
print()
print("phase 1 steps:", len(trace.phase_steps(1)))
print("phase 2 steps:", len(trace.phase_steps(2)))

print()
print("leaves of the chart tree:")
for path, leaf in trace.tree.leaves():
    P = leaf.presentation
    rels = ", ".join(str(g) for g in P.relation_list()) or "none"
    factors = ", ".join(f"{lab}: {h}" for lab, h in leaf.divisor)
    print(f"  {path}  relations [{rels}]  divisor [{factors}]")

# An independent check that uses only the ideal engine.
report = verify_resolution(trace)
print()
print("resolved:", trace.ok, " independent check:", report.ok)

# The whole trace serializes to JSON; the first lines:
print()
print("\n".join(dumps(trace_json(trace)).splitlines()[:12]))
print("  ...")
