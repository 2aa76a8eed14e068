"""Factored divisors on smooth affine ambients and normal-crossing checks.

Divisors arrive factored: a list of ``(polynomial, multiplicity)`` pairs.
``snc_check_global`` decides the strict normal crossing condition over the
algebraic closure by looking at every intersection of components;
``strnorm_surface`` blows up the non-snc points of a reduced divisor on a
smooth surface until every chart passes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from .blowup import (
    DivisibilityError,
    BlowupStep,
    Center,
    ChartTree,
    TreeNode,
    blowup_charts,
    exceptional_order,
    divide_by_exceptional,
    strict_transform,
    extend_tree,
)
from .groebner import ResourceCapExceeded
from .ideal import (
    Ideal,
    QuotientPresentation,
    contains_one,
    dimension,
    intersection,
    minimal_generators,
    radical_zero_dim,
)
from .poly import Polynomial, Q
from .singularity import is_smooth, singular_locus_ideal


class DivisorError(ValueError):
    pass


class StepsExhausted(ResourceCapExceeded):
    """The blow-up step budget ran out before the goal was reached."""


COMPONENT_SINGULAR = "component-singular"
NON_TRANSVERSAL = "non-transversal"
EXCESS = "excess-intersection"


@dataclass
class SncVerdict:
    snc: bool
    failures: list = field(default_factory=list)  # (tuple of factor indices, reason)

    def __bool__(self):
        return self.snc


class FactoredDivisor:
    """``prod f_i^{n_i} = 0`` on the smooth ambient ``Q[vars]/relations``."""

    def __init__(self, ambient: QuotientPresentation, factors, labels=None, validate: bool = True):
        self.ambient = ambient
        R = ambient.ring
        fs = []
        for item in factors:
            if isinstance(item, (tuple, list)):
                f, m = item
            else:
                f, m = item, 1
            f = R(f) if not isinstance(f, Polynomial) else f.to_ring(R)
            if int(m) <= 0:
                raise DivisorError("multiplicities must be positive")
            fs.append((f, int(m)))
        self.factors = fs
        self.labels = list(labels) if labels is not None else [f"D{i + 1}" for i in range(len(fs))]
        self._smooth = None
        if validate:
            self.validate()

    @property
    def polys(self) -> list:
        return [f for f, _ in self.factors]

    def reduction(self) -> "FactoredDivisor":
        out = FactoredDivisor(self.ambient, [(f, 1) for f, _ in self.factors], self.labels, validate=False)
        out._smooth = self._smooth
        return out

    def validate(self):
        rel = self.ambient.relations
        prims = []
        for f, _ in self.factors:
            if rel.contains(f):
                raise DivisorError(f"factor {f} is zero on the ambient")
            if contains_one(self.ambient.ideal([f])):
                raise DivisorError(f"factor {f} is a unit on the ambient")
            prims.append(f.primitive())
        if len(set(prims)) != len(prims):
            raise DivisorError("factors must be pairwise non-associate")
        for (f, _), (g, _) in itertools.combinations(self.factors, 2):
            if self.ambient.ideal([f]).contains(g) or self.ambient.ideal([g]).contains(f):
                raise DivisorError(f"factors {f} and {g} share a component")

    def ambient_smooth(self) -> bool:
        if self._smooth is None:
            self._smooth = is_smooth(self.ambient).smooth
        return self._smooth

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return " * ".join(f"({f})^{m}" for f, m in self.factors)


def _require_smooth(D: FactoredDivisor):
    if not D.ambient_smooth():
        raise DivisorError("ambient is not smooth")


def _subset_ideal(D: FactoredDivisor, S) -> Ideal:
    return D.ambient.ideal([D.factors[i][0] for i in S])


def snc_check_global(D: FactoredDivisor) -> SncVerdict:
    """Strict normal crossings over the algebraic closure.

    Each nonempty set ``S`` of components must either not meet, or meet in
    a smooth subscheme of codimension ``|S|``.
    """
    _require_smooth(D)
    d = dimension(D.ambient.relations)
    failures = []
    for size in range(1, len(D) + 1):
        for S in itertools.combinations(range(len(D)), size):
            I = _subset_ideal(D, S)
            if contains_one(I):
                continue
            if size > d or dimension(I) != d - size:
                failures.append((S, EXCESS))
            elif not is_smooth(QuotientPresentation(D.ambient.ring, I)).smooth:
                failures.append((S, COMPONENT_SINGULAR if size == 1 else NON_TRANSVERSAL))
    return SncVerdict(not failures, failures)


def _rank(rows) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                t = rows[i][c] / p
                rows[i] = [a - t * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _gradient(f: Polynomial, p) -> list:
    return [f.diff(j).evaluate(p) for j in range(f.ring.nvars)]


def snc_check_at_point(D: FactoredDivisor, point) -> SncVerdict:
    """Snc test at a rational point via ranks of evaluated Jacobians."""
    _require_smooth(D)
    R = D.ambient.ring
    p = [Q(c) for c in point]
    if len(p) != R.nvars:
        raise DivisorError("point arity does not match the ambient")
    rels = D.ambient.relation_list()
    if any(r.evaluate(p) != 0 for r in rels):
        raise DivisorError("point does not lie on the ambient")
    d = dimension(D.ambient.relations)
    base_rows = [_gradient(r, p) for r in rels]
    base = _rank(base_rows) if base_rows else 0
    through = [i for i, (f, _) in enumerate(D.factors) if f.evaluate(p) == 0]
    failures = []
    for size in range(1, len(through) + 1):
        for S in itertools.combinations(through, size):
            if size > d:
                failures.append((S, EXCESS))
                continue
            rows = base_rows + [_gradient(D.factors[i][0], p) for i in S]
            if _rank(rows) - base != size:
                failures.append((S, COMPONENT_SINGULAR if size == 1 else NON_TRANSVERSAL))
    return SncVerdict(not failures, failures)


def monomial_check(D: FactoredDivisor) -> bool:
    """Whether ``D`` is a strictly monomial divisor: snc after dropping multiplicities."""
    return snc_check_global(D.reduction()).snc


def failure_locus(D: FactoredDivisor, verdict: SncVerdict | None = None) -> Ideal:
    """Reduced ideal of the points where ``D`` fails to be snc (zero-dimensional)."""
    if verdict is None:
        verdict = snc_check_global(D)
    R = D.ambient.ring
    locus = None
    for S, reason in verdict.failures:
        I = _subset_ideal(D, S)
        if reason != EXCESS:
            I = singular_locus_ideal(QuotientPresentation(R, I))
        I = radical_zero_dim(I)
        locus = I if locus is None else intersection(locus, I)
    if locus is None:
        return Ideal(R, [R.one()])
    return radical_zero_dim(Ideal(R, locus.nonzero_generators() + D.ambient.relation_list()))


def center_generators(P: QuotientPresentation, locus: Ideal) -> Ideal:
    """Short generator list of ``locus`` modulo the relations of ``P``."""
    basis = Ideal(P.ring, locus.groebner().basis)
    return minimal_generators(basis, modulo=P.relations)


# ---------------------------------------------------------------------------
# component separation


def separate_components(ambient: QuotientPresentation, I1: Ideal, I2: Ideal):
    """Blow up along ``I1 + I2`` and report whether the strict transforms become disjoint."""
    A = ambient
    J1, J2 = A.ideal(I1.nonzero_generators()), A.ideal(I2.nonzero_generators())
    if contains_one(J1) or contains_one(J2):
        raise DivisorError("components must be proper ideals")
    if J1.issubset(J2) or J2.issubset(J1):
        raise DivisorError("one component contains the other")
    gens = minimal_generators(Ideal(A.ring, I1.nonzero_generators() + I2.nonzero_generators()), A.relations)
    step = blowup_charts(Center(A, gens))
    separated = True
    for ch in step.charts:
        s1 = strict_transform(ch, I1)
        s2 = strict_transform(ch, I2)
        if not contains_one(s1 + s2):
            separated = False
    return step, separated


# ---------------------------------------------------------------------------
# normalisation loop on surfaces


def principal_generator(chart, h: Polynomial, strict: Ideal) -> Polynomial:
    """A single chart-ring element generating ``strict`` modulo the relations."""
    try:
        c = exceptional_order(chart, h)
        q = divide_by_exceptional(chart, h, c)
    except DivisibilityError:
        q = None
    if q is not None and chart.ideal([q]) == strict:
        return q
    rel = chart.relations
    for b in sorted(strict.groebner().basis, key=lambda g: (len(g), g.total_degree(), str(g))):
        if rel.contains(b):
            continue
        if chart.ideal([b]) == strict:
            return b
    raise DivisorError("strict transform is not principal on this chart")


def transform_divisor(chart, factors, exceptional_label: str):
    """Strict transforms of labelled factors on ``chart`` plus the new exceptional factor."""
    out = []
    P = chart.parent
    for label, h in factors:
        S = strict_transform(chart, Ideal(P.ring, [h]))
        if contains_one(S):
            continue
        out.append((label, principal_generator(chart, h, S)))
    out.append((exceptional_label, chart.generator))
    return out


def leaf_divisor(node: TreeNode) -> FactoredDivisor:
    return FactoredDivisor(node.presentation, [(f, 1) for _, f in node.divisor],
                           [lab for lab, _ in node.divisor], validate=False)


def blow_up_leaf(tree: ChartTree, path, center: Ideal, rules=None):
    """Blow up ``center`` at leaf ``path``, carrying the leaf divisor along."""
    node = tree.node(path)
    step = blowup_charts(Center(node.presentation, center))
    tree = extend_tree(tree, path, step.center, rules, step=step)
    depth = len(path) + 1
    new = tree.node(path)
    kids = []
    for ch, kid in zip(step.charts, new.children):
        div = transform_divisor(ch, node.divisor, f"E{depth}")
        kids.append(TreeNode(kid.presentation, kid.records, chart=ch, divisor=tuple(div)))
    tree = tree.replace_node(path, replace(new, children=tuple(kids)))
    return tree, step


@dataclass
class StrnormResult:
    tree: ChartTree
    verdicts: dict  # leaf path -> SncVerdict
    centers: list  # (path, center Ideal)


def strnorm_on_tree(tree: ChartTree, max_steps: int, on_step=None) -> StrnormResult:
    """Blow up non-snc points of every leaf divisor until all leaves pass."""
    steps = 0
    centers = []
    while True:
        pending = []
        verdicts = {}
        for path, leaf in tree.leaves():
            D = leaf_divisor(leaf)
            v = snc_check_global(D) if len(D) else SncVerdict(True, [])
            verdicts[path] = v
            if not v.snc:
                pending.append((path, D, v))
        if not pending:
            return StrnormResult(tree, verdicts, centers)
        for path, D, v in pending:
            if steps >= max_steps:
                raise StepsExhausted(f"snc not reached within {max_steps} blow ups")
            locus = failure_locus(D, v)
            center = center_generators(D.ambient, locus)
            tree, step = blow_up_leaf(tree, path, center)
            centers.append((path, center))
            if on_step is not None:
                on_step(path, center, step)
            steps += 1


def strnorm_surface(D: FactoredDivisor, max_steps: int = 16):
    """Resolve the snc failures of a reduced divisor on a smooth surface.

    Returns ``(tree, verdicts)`` where ``verdicts`` maps leaf paths to the
    final :class:`SncVerdict`.
    """
    _require_smooth(D)
    if dimension(D.ambient.relations) != 2:
        raise DivisorError("strnorm_surface needs a smooth surface")
    if any(m != 1 for _, m in D.factors):
        raise DivisorError("strnorm_surface needs a reduced divisor")
    tree = ChartTree.from_presentation(D.ambient, divisor=list(zip(D.labels, D.polys)))
    res = strnorm_on_tree(tree, max_steps)
    return res.tree, res.verdicts
