"""Affine charts of blow ups and the transforms of ideals under them.

For a center ``(f_1, ..., f_r)`` and a selected generator ``g = f_k`` the
chart ring is ``A[T_j : j != k] / (g T_j - f_j)`` with its ``g``-torsion
removed, i.e. saturated by ``g``. Ambient variables map to themselves; the
chart map is carried entirely by the relations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .ideal import (
    Ideal,
    QuotientPresentation,
    eliminate,
    saturation,
    saturation_principal,
)
from .poly import Polynomial, PolyRing, block_order

_TVAR = re.compile(r"T(\d+)_\d+")


class BlowupError(ValueError):
    pass


class DivisibilityError(ArithmeticError):
    """A total transform is not divisible by the requested exceptional power."""


@dataclass
class Center:
    ambient: QuotientPresentation
    ideal: Ideal

    def __post_init__(self):
        if self.ideal.ring.variables != self.ambient.ring.variables:
            raise BlowupError("center ideal does not live in the ambient ring")
        if self.ideal.is_zero():
            raise BlowupError("cannot blow up the zero ideal")

    @property
    def generators(self) -> list:
        return self.ideal.nonzero_generators()


@dataclass
class Chart:
    """One affine piece ``A[I/g]`` of a blow up."""

    index: int
    parent: QuotientPresentation
    ring: PolyRing
    relations: Ideal
    generator: Polynomial
    new_variables: dict = field(default_factory=dict)
    torsion_exponent: int = 0
    center_generators: tuple = ()

    @property
    def presentation(self) -> QuotientPresentation:
        return QuotientPresentation(self.ring, self.relations)

    @property
    def exceptional(self) -> Ideal:
        return Ideal(self.ring, [self.generator])

    def substitution(self) -> list:
        """Images of the parent variables (each maps to itself)."""
        return [self.ring.gen(v) for v in self.parent.ring.variables]

    def lift(self, f: Polynomial) -> Polynomial:
        return f.to_ring(self.ring)

    def ideal(self, gens) -> Ideal:
        return Ideal(self.ring, list(gens) + self.relations.nonzero_generators())


@dataclass
class BlowupStep:
    center: Center
    charts: list


def next_depth(ring: PolyRing) -> int:
    depth = 0
    for v in ring.variables:
        m = _TVAR.fullmatch(v)
        if m:
            depth = max(depth, int(m.group(1)))
    return depth + 1


def _fresh(ring_vars, name):
    base, k = name, 0
    while name in ring_vars:
        k += 1
        name = f"{base}x{k}"
    return name


def blowup_charts(center: Center, depth: int | None = None) -> BlowupStep:
    """All charts of the blow up of ``center.ambient`` along ``center.ideal``."""
    amb = center.ambient
    R = amb.ring
    gens = center.generators
    if depth is None:
        depth = next_depth(R)
    rel = amb.relation_list()
    charts = []
    for k, g in enumerate(gens):
        names = {}
        used = set(R.variables)
        for j in range(len(gens)):
            if j != k:
                nm = _fresh(used, f"T{depth}_{j + 1}")
                used.add(nm)
                names[j] = nm
        C = R.extend(list(names.values()))
        gC = g.to_ring(C)
        new_rel = [h.to_ring(C) for h in rel]
        for j, nm in names.items():
            new_rel.append(gC * C.gen(nm) - gens[j].to_ring(C))
        raw = Ideal(C, new_rel)
        sat, k_exp = saturation(raw, Ideal(C, [gC]))
        relations = raw if k_exp == 0 else sat
        charts.append(Chart(k, amb, C, relations, gC, names, k_exp, tuple(f.to_ring(C) for f in gens)))
    return BlowupStep(center, charts)


def _check_parent(chart: Chart, I: Ideal):
    if I.ring.variables != chart.parent.ring.variables:
        raise BlowupError("ideal does not live in the chart's parent ring")


def total_transform(chart: Chart, I: Ideal) -> Ideal:
    """Image of ``I`` in the chart ring, together with the chart relations."""
    _check_parent(chart, I)
    return chart.ideal(chart.lift(g) for g in I.nonzero_generators())


def strict_transform(chart: Chart, I: Ideal) -> Ideal:
    """Total transform saturated by the exceptional generator."""
    T = total_transform(chart, I)
    S = saturation_principal(T, chart.generator)
    return Ideal(chart.ring, S.groebner().basis)


def strict_transform_closure(chart: Chart, I: Ideal) -> Ideal:
    """Strict transform as the kernel of ``chart ring -> (A/I)_g``.

    Independent of :func:`strict_transform`: uses neither the chart
    relations nor a saturation. New variables ``T_j`` are sent to
    ``f_j * w`` where ``w`` inverts ``g``, and ``w`` is eliminated.
    """
    _check_parent(chart, I)
    C = chart.ring
    w = _fresh(set(C.variables), "w_")
    E = C.extend([w])
    wE = E.gen(w)
    gens = [h.to_ring(E) for h in chart.parent.relation_list()]
    gens += [h.to_ring(E) for h in I.nonzero_generators()]
    g = chart.generator.to_ring(E)
    gens.append(wE * g - 1)
    for j, nm in chart.new_variables.items():
        gens.append(E.gen(nm) - chart.center_generators[j].to_ring(E) * wE)
    K = eliminate(Ideal(E, gens), [w])
    return Ideal(C, K.to_ring(C).groebner().basis)


# localized bases keyed by (variables, relation basis, exceptional generator)
_LOCALIZED: dict = {}


def _localized_basis(chart: Chart):
    C = chart.ring
    w = _fresh(set(C.variables), "w_")
    E = PolyRing((w,) + C.variables, block_order(1))
    gens = [h.to_ring(E) for h in chart.relations.nonzero_generators()]
    gens.append(E.gen(w) * chart.generator.to_ring(E) - 1)
    return E, Ideal(E, gens).groebner(E.order)


def divide_by_exceptional(chart: Chart, h: Polynomial, c: int) -> Polynomial:
    """A chart-ring polynomial ``q`` with ``g^c q = h`` modulo the relations.

    Raises :class:`DivisibilityError` when no such ``q`` exists.
    """
    h = h.to_ring(chart.ring)
    if c == 0:
        return h
    key = (chart.ring.variables, chart.relations.groebner().key(), chart.generator)
    cached = _LOCALIZED.get(key)
    if cached is None:
        cached = _localized_basis(chart)
        if len(_LOCALIZED) > 256:
            _LOCALIZED.clear()
        _LOCALIZED[key] = cached
    E, gb = cached
    wpow = E.gen(0) ** c
    r = gb.reduce(h.to_ring(E) * wpow)
    if any(e[0] for e in r.terms):
        raise DivisibilityError(f"not divisible by the exceptional generator to power {c}")
    return r.to_ring(chart.ring)


def exceptional_order(chart: Chart, h: Polynomial, cap: int = 64) -> int:
    """Largest ``c`` such that ``h`` is divisible by ``g^c`` modulo the relations.

    Zero when the chart misses the exceptional divisor (``g`` a unit).
    """
    h = h.to_ring(chart.ring)
    if chart.relations.contains(h):
        raise DivisibilityError("zero element has infinite order")
    if chart.ideal([chart.generator]).is_unit():
        return 0
    c = 0
    while c < cap:
        try:
            # g is a nonzerodivisor, so dividing one power at a time is exact
            h = divide_by_exceptional(chart, h, 1)
        except DivisibilityError:
            return c
        c += 1
    raise DivisibilityError(f"exceptional order exceeds {cap}")


def controlled_transform(chart: Chart, I: Ideal, c: int) -> Ideal:
    """Each total-transform generator divided by ``g^c`` (the weak transform for ``c`` = order)."""
    _check_parent(chart, I)
    if c < 0:
        raise ValueError("negative exponent")
    gens = [divide_by_exceptional(chart, chart.lift(h), c) for h in I.nonzero_generators()]
    return chart.ideal(gens)


def verify_principal_on_chart(chart: Chart, J: Ideal) -> bool:
    """Whether ``J`` pulls back to exactly the exceptional ideal ``(g)`` on this chart."""
    return total_transform(chart, J) == chart.ideal([chart.generator])


# ---------------------------------------------------------------------------
# chart trees


@dataclass
class TreeNode:
    presentation: QuotientPresentation
    records: dict = field(default_factory=dict)
    chart: Chart | None = None
    step: BlowupStep | None = None
    children: tuple = ()
    divisor: tuple = ()  # (label, Polynomial) pairs, reduced

    def is_leaf(self) -> bool:
        return self.step is None


@dataclass
class ChartTree:
    """Rooted tree of blow ups; each internal node owns one :class:`BlowupStep`."""

    root: TreeNode

    @classmethod
    def from_presentation(cls, P: QuotientPresentation, records=None, divisor=()) -> "ChartTree":
        return cls(TreeNode(P, dict(records or {}), divisor=tuple(divisor)))

    def node(self, path=()) -> TreeNode:
        n = self.root
        for i in path:
            n = n.children[i]
        return n

    def leaves(self):
        """(path, node) pairs in depth-first chart order."""
        out = []

        def walk(n, p):
            if n.is_leaf():
                out.append((p, n))
            else:
                for i, ch in enumerate(n.children):
                    walk(ch, p + (i,))

        walk(self.root, ())
        return out

    def internal_nodes(self):
        out = []

        def walk(n, p):
            if not n.is_leaf():
                out.append((p, n))
                for i, ch in enumerate(n.children):
                    walk(ch, p + (i,))

        walk(self.root, ())
        return out

    def depth(self) -> int:
        return max((len(p) for p, _ in self.leaves()), default=0)

    def replace_node(self, path, new: TreeNode) -> "ChartTree":
        def rebuild(n, p):
            if not p:
                return new
            kids = list(n.children)
            kids[p[0]] = rebuild(kids[p[0]], p[1:])
            return replace(n, children=tuple(kids))

        return ChartTree(rebuild(self.root, tuple(path)))


def same_presentation(P: QuotientPresentation, Q: QuotientPresentation) -> bool:
    return P.ring.variables == Q.ring.variables and P.relations == Q.relations


def propagate(chart: Chart, I: Ideal, rule) -> Ideal:
    if rule == "strict":
        return strict_transform(chart, I)
    if rule == "total":
        return total_transform(chart, I)
    if isinstance(rule, tuple) and rule[0] == "controlled":
        return controlled_transform(chart, I, rule[1])
    raise ValueError(f"unknown transform rule {rule!r}")


def extend_tree(tree: ChartTree, path, center: Center, rules=None, step: BlowupStep | None = None) -> ChartTree:
    """New tree with ``center`` blown up at the leaf ``path``.

    ``rules`` maps record names to ``"strict"``, ``"total"`` or
    ``("controlled", c)``; unnamed records follow the strict transform.
    """
    rules = rules or {}
    node = tree.node(path)
    if not node.is_leaf():
        raise BlowupError("node already carries a blow up")
    if not same_presentation(center.ambient, node.presentation):
        raise BlowupError("center ambient does not match the node presentation")
    if step is None:
        step = blowup_charts(center)
    kids = []
    for ch in step.charts:
        recs = {name: propagate(ch, I, rules.get(name, "strict")) for name, I in node.records.items()}
        kids.append(TreeNode(ch.presentation, recs, chart=ch))
    new = replace(node, step=step, children=tuple(kids))
    return tree.replace_node(path, new)
