"""Drivers: principalization of strict transforms and embedded resolution of plane curves."""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import (
    BlowupStep,
    Center,
    ChartTree,
    blowup_charts,
    controlled_transform,
    divide_by_exceptional,
    exceptional_order,
    strict_transform,
    DivisibilityError,
)
from .divisors import (
    DivisorError,
    StepsExhausted,
    blow_up_leaf,
    center_generators,
    leaf_divisor,
    principal_generator,
    snc_check_global,
    strnorm_on_tree,
)
from .ideal import (
    Ideal,
    QuotientPresentation,
    contains_one,
    dimension,
    ideal_power,
    minimal_generators,
    radical_membership,
)
from .poly import Polynomial, PolyRing, partial_derivative
from .singularity import is_smooth, max_order_on_surface


class ResolutionError(ValueError):
    pass


CURVE = "C"


@dataclass
class MarkedIdeal:
    ambient: QuotientPresentation
    ideal: Ideal
    control: int


@dataclass
class TraceStep:
    phase: int
    path: tuple
    center: Ideal
    mu_before: int
    mu_after: int

    @property
    def depth(self) -> int:
        return len(self.path)


@dataclass
class LeafVerdict:
    path: tuple
    smooth: bool
    snc: bool


@dataclass
class ResolutionTrace:
    tree: ChartTree
    steps: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    curve: Polynomial | None = None

    @property
    def ok(self) -> bool:
        return all(v.smooth and v.snc for v in self.verdicts)

    def phase_steps(self, phase: int) -> list:
        return [s for s in self.steps if s.phase == phase]

    def summary(self) -> str:
        lines = []
        for s in self.steps:
            gens = ", ".join(str(g) for g in s.center.nonzero_generators())
            path = "/".join(str(i) for i in s.path) or "root"
            lines.append(f"depth {s.depth}  chart {path}  center ({gens})  mu {s.mu_before} -> {s.mu_after}")
        return "\n".join(lines)


@dataclass
class PrincipalizationResult:
    n: int
    step: BlowupStep
    generators: list  # per chart: principal generator(s) of the strict transform(s)


# ---------------------------------------------------------------------------
# principalization


def _center_with_power(A: QuotientPresentation, first: list, J: Ideal, n: int) -> Ideal:
    gens = list(first) + ideal_power(J, n).nonzero_generators()
    return minimal_generators(Ideal(A.ring, gens), A.relations)


def _principal_witness(chart, f: Polynomial):
    """``(strict, generator, is_principal)`` for the strict transform of ``(f)``.

    The first candidate is ``f`` divided by its exceptional part; when the
    exceptional order is fractional (non-reduced exceptional generator) the
    reduced basis elements are tried one at a time.
    """
    S = strict_transform(chart, Ideal(chart.parent.ring, [f]))
    if contains_one(S):
        return S, chart.ring.one(), True
    try:
        return S, principal_generator(chart, f, S), True
    except DivisorError:
        return S, None, False


def principalize_strict_transform(ambient: QuotientPresentation, I: Ideal, J: Ideal, n_max: int = 8) -> PrincipalizationResult:
    """Smallest ``n`` such that the strict transform of ``V(I)`` in ``Bl_{I+J^n}`` is principal on every chart."""
    fs = I.nonzero_generators()
    if len(fs) != 1:
        raise ResolutionError("I must be principal")
    f = fs[0]
    if n_max < 1:
        raise ResolutionError("n_max must be positive")
    if not ambient.ideal(J.nonzero_generators()).contains(f):
        raise ResolutionError("generator of I is not in J")
    last = None
    for n in range(1, n_max + 1):
        center = _center_with_power(ambient, [f], J, n)
        step = blowup_charts(Center(ambient, center))
        gens = []
        ok = True
        for ch in step.charts:
            S, w, principal = _principal_witness(ch, f)
            if not principal:
                ok = False
                last = (n, ch.index)
                break
            gens.append(w)
        if ok:
            return PrincipalizationResult(n, step, gens)
    raise StepsExhausted(f"no n <= {n_max} principalizes the strict transform (last failure: n={last[0]}, chart {last[1]})")


def separate_and_principalize(ambient: QuotientPresentation, I1: Ideal, I2: Ideal, n_max: int = 8) -> PrincipalizationResult:
    """Smallest ``n`` making both strict transforms principal and disjoint in ``Bl_{I+J^n}``.

    Here ``I = I1 * I2`` (principal) and ``J = I1 + I2``.
    """
    g1, g2 = I1.nonzero_generators(), I2.nonzero_generators()
    if len(g1) != 1 or len(g2) != 1:
        raise ResolutionError("both components must be principal")
    f1, f2 = g1[0], g2[0]
    if n_max < 1:
        raise ResolutionError("n_max must be positive")
    if ambient.ideal([f1]) == ambient.ideal([f2]):
        raise ResolutionError("components must be distinct")
    f = f1 * f2
    J = Ideal(ambient.ring, [f1, f2])
    last = None
    for n in range(1, n_max + 1):
        center = _center_with_power(ambient, [f], J, n)
        step = blowup_charts(Center(ambient, center))
        gens = []
        ok = True
        for ch in step.charts:
            S1, w1, p1 = _principal_witness(ch, f1)
            S2, w2, p2 = _principal_witness(ch, f2)
            if not (p1 and p2 and contains_one(S1 + S2)):
                ok = False
                last = (n, ch.index)
                break
            gens.append((w1, w2))
        if ok:
            return PrincipalizationResult(n, step, gens)
    raise StepsExhausted(f"no n <= {n_max} separates and principalizes (last failure: n={last[0]}, chart {last[1]})")


# ---------------------------------------------------------------------------
# plane curves


def initial_singular_locus(f: Polynomial) -> Ideal:
    R = f.ring
    return Ideal(R, [f] + [partial_derivative(f, j) for j in range(R.nvars)])


def _check_plane_curve(f: Polynomial):
    if f.ring.nvars != 2:
        raise ResolutionError("ambient must be the affine plane")
    if f.is_constant():
        raise ResolutionError("curve equation is constant")
    if dimension(initial_singular_locus(f)) > 0:
        raise ResolutionError("curve is not reduced (singular locus is not finite)")


def _curve_factor(node):
    for label, h in node.divisor:
        if label == CURVE:
            return h
    return None


def _curve_order(node) -> tuple:
    h = _curve_factor(node)
    P = node.presentation
    if h is None:
        return 0, Ideal(P.ring, [P.ring.one()])
    return max_order_on_surface(P, Ideal(P.ring, [h]))


def run_phases(tree: ChartTree, max_steps: int = 32, phase2: bool = True):
    """Run both phases on the leaves of ``tree``; returns ``(tree, steps)``.

    The curve factor is the divisor entry labelled ``C``. Starting from a
    tree whose leaves are already resolved emits no steps.
    """
    steps: list = []
    count = 0
    queue = [path for path, _ in tree.leaves()]
    orders = {path: _curve_order(tree.node(path)) for path in queue}
    while queue:
        path = queue.pop(0)
        mu, locus = orders[path]
        if mu < 2:
            continue
        if count >= max_steps:
            raise StepsExhausted(f"phase one did not finish within {max_steps} blow ups")
        node = tree.node(path)
        center = center_generators(node.presentation, locus)
        tree, step = blow_up_leaf(tree, path, center, rules={CURVE: ("controlled", mu)})
        count += 1
        after = 0
        for i in range(len(step.charts)):
            kid = path + (i,)
            orders[kid] = _curve_order(tree.node(kid))
            after = max(after, orders[kid][0])
            queue.append(kid)
        steps.append(TraceStep(1, path, center, mu, after))

    if phase2:
        def record(path, center, step):
            steps.append(TraceStep(2, path, center, 1, 1))

        try:
            tree = strnorm_on_tree(tree, max_steps - count, on_step=record).tree
        except StepsExhausted:
            raise StepsExhausted(f"snc not reached within {max_steps} blow ups") from None
    return tree, steps


def resolve_plane_curve(f: Polynomial, max_steps: int = 32, phase2: bool = True) -> ResolutionTrace:
    """Embedded resolution of a reduced plane curve by point blow ups.

    Phase one blows up the maximal-order locus of the strict transform
    until it is smooth; phase two blows up the snc failures of strict
    transform plus exceptional curves.
    """
    _check_plane_curve(f)
    R = f.ring
    P = QuotientPresentation(R)
    tree = ChartTree.from_presentation(P, records={CURVE: Ideal(R, [f])}, divisor=[(CURVE, f)])
    tree, steps = run_phases(tree, max_steps, phase2)

    trace = ResolutionTrace(tree, steps, [], f)
    trace.verdicts = leaf_verdicts(tree)
    sing = initial_singular_locus(f)
    for s in steps:
        node = tree.node(s.path)
        Z = node.presentation.ideal(s.center.nonzero_generators())
        for g in sing.nonzero_generators():
            if not radical_membership(g.to_ring(node.presentation.ring), Z):
                raise ResolutionError("center does not lie over the singular locus")
    return trace


def leaf_verdicts(tree: ChartTree) -> list:
    out = []
    for path, leaf in tree.leaves():
        h = _curve_factor(leaf)
        P = leaf.presentation
        smooth = True if h is None else is_smooth(QuotientPresentation(P.ring, P.ideal([h]))).smooth
        D = leaf_divisor(leaf)
        snc = snc_check_global(D).snc if len(D) else True
        out.append(LeafVerdict(path, smooth, snc))
    return out
