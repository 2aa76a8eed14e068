"""Canonical JSON documents for chart trees and resolution traces.

Polynomials are written in the text format of :mod:`qblowup.poly`, so every
polynomial in a document re-parses to an equal one.
"""

from __future__ import annotations

import json

from .blowup import BlowupStep, Center, Chart, ChartTree, TreeNode
from .ideal import Ideal, QuotientPresentation
from .poly import MonomialOrder, PolyRing


def poly_list(I) -> list:
    gens = I.nonzero_generators() if isinstance(I, Ideal) else list(I)
    return [str(g) for g in gens]


def basis_list(I: Ideal) -> list:
    return [str(g) for g in I.groebner().basis]


def ring_json(R: PolyRing) -> dict:
    return {"vars": list(R.variables), "order": str(R.order)}


def node_json(node: TreeNode) -> dict:
    P = node.presentation
    out = {"ring": ring_json(P.ring), "relations": poly_list(P.relations)}
    if node.chart is not None:
        ch = node.chart
        out["generator_index"] = ch.index
        out["exceptional"] = str(ch.generator)
        out["new_vars"] = {str(j): v for j, v in ch.new_variables.items()}
    if node.records:
        out["transforms"] = {name: basis_list(I) for name, I in node.records.items()}
    if node.divisor:
        out["divisor"] = [{"label": lab, "factor": str(h), "mult": 1} for lab, h in node.divisor]
    if node.step is not None:
        out["center"] = poly_list(node.step.center.ideal)
        out["charts"] = [node_json(k) for k in node.children]
    return out


def tree_json(tree: ChartTree) -> dict:
    return {"root": node_json(tree.root)}


def _ring_from(d) -> PolyRing:
    return PolyRing(tuple(d["vars"]), MonomialOrder.parse(d.get("order", "grevlex")))


def node_from_json(d, parent: QuotientPresentation | None = None, chart_info=None) -> TreeNode:
    R = _ring_from(d["ring"])
    P = QuotientPresentation(R, Ideal(R, [R(t) for t in d.get("relations", [])]))
    records = {name: Ideal(R, [R(t) for t in gens]) for name, gens in d.get("transforms", {}).items()}
    divisor = tuple((e["label"], R(e["factor"])) for e in d.get("divisor", []))
    chart = None
    if chart_info is not None:
        center_gens = chart_info
        chart = Chart(
            index=d["generator_index"],
            parent=parent,
            ring=R,
            relations=P.relations,
            generator=R(d["exceptional"]),
            new_variables={int(j): v for j, v in d.get("new_vars", {}).items()},
            center_generators=tuple(g.to_ring(R) for g in center_gens),
        )
    node = TreeNode(P, records, chart=chart, divisor=divisor)
    if "center" in d:
        center = Center(P, Ideal(R, [R(t) for t in d["center"]]))
        kids = [node_from_json(k, P, center.generators) for k in d["charts"]]
        node.step = BlowupStep(center, [k.chart for k in kids])
        node.children = tuple(kids)
    return node


def tree_from_json(d) -> ChartTree:
    return ChartTree(node_from_json(d["root"]))


def trace_json(trace) -> dict:
    out = {"curve": str(trace.curve), "tree": tree_json(trace.tree)}
    out["steps"] = [
        {
            "phase": s.phase,
            "depth": s.depth,
            "path": list(s.path),
            "center": poly_list(s.center),
            "mu_before": s.mu_before,
            "mu_after": s.mu_after,
        }
        for s in trace.steps
    ]
    out["verdicts"] = {
        "leaves": [{"path": list(v.path), "smooth": v.smooth, "snc": v.snc} for v in trace.verdicts],
        "resolved": trace.ok,
    }
    return out


def trace_from_json(d):
    from .resolve import LeafVerdict, ResolutionTrace, TraceStep

    tree = tree_from_json(d["tree"])
    R0 = tree.root.presentation.ring
    steps = []
    for s in d.get("steps", []):
        path = tuple(s["path"])
        R = tree.node(path).presentation.ring
        steps.append(TraceStep(s["phase"], path, Ideal(R, [R(t) for t in s["center"]]), s["mu_before"], s["mu_after"]))
    verdicts = [LeafVerdict(tuple(v["path"]), v["smooth"], v["snc"]) for v in d.get("verdicts", {}).get("leaves", [])]
    return ResolutionTrace(tree, steps, verdicts, R0(d["curve"]))


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
