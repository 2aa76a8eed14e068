"""Jacobian ideals, smoothness verdicts and multiplicity loci.

For ``C = B/(f_1, ..., f_l)`` with ``B`` a polynomial ring the Jacobian ideal
is ``sum over L of (J_L : J) * H_L`` where ``J_L`` is generated by the
``f_i`` with ``i`` in ``L`` and ``H_L`` by the ``|L| x |L|`` minors of the
matrix of partials with rows in ``L``. Its radical cuts out the non-smooth
locus; we never form the radical and answer unit/membership questions
through :func:`~qblowup.ideal.contains_one` and
:func:`~qblowup.ideal.radical_membership` instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ideal import (
    Ideal,
    NotZeroDimensional,
    QuotientPresentation,
    contains_one,
    dimension,
    ideal_power,
    quotient,
    radical_membership,
    radical_zero_dim,
)
from .poly import Polynomial, PolyRing, partial_derivative


@dataclass
class SmoothnessVerdict:
    smooth: bool
    witness: object  # "unit" or a tuple of polynomials cutting out the singular points

    def __bool__(self):
        return self.smooth


def jacobian_matrix(polys, ring: PolyRing | None = None) -> list:
    polys = list(polys)
    ring = ring or polys[0].ring
    return [[partial_derivative(f, j) for j in range(ring.nvars)] for f in polys]


def determinant(M) -> Polynomial:
    """Determinant of a square polynomial matrix by cofactor expansion."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return M[0][0] - M[0][0]
    return total


def minors_ideal(M, r: int, rows, ring: PolyRing | None = None) -> Ideal:
    """Ideal of the ``r x r`` minors using exactly ``rows`` and any ``r`` columns."""
    rows = list(rows)
    if r != len(rows):
        raise ValueError("minor size must equal the number of selected rows")
    if ring is None:
        ring = next(e.ring for row in M for e in row)
    if r == 0:
        return Ideal(ring, [ring.one()])
    ncols = len(M[0])
    if r > ncols:
        return Ideal(ring, [])
    dets = []
    for cols in itertools.combinations(range(ncols), r):
        d = determinant([[M[i][j] for j in cols] for i in rows])
        if d:
            dets.append(d)
    return Ideal(ring, dets)


def jacobian_ideal(P: QuotientPresentation, stop_at_unit: bool = False) -> Ideal:
    """The (non-radical) Jacobian ideal of ``P``, with the relations adjoined.

    With ``stop_at_unit`` the subset sum stops as soon as it contains 1; the
    result is then only good for unit tests.
    """
    R = P.ring
    rels = P.relation_list()
    l = len(rels)
    if l == 0:
        return Ideal(R, [R.one()])
    J = Ideal(R, rels)
    M = jacobian_matrix(rels, R)
    total = list(rels)
    subsets = sorted(
        (L for r in range(l, 0, -1) for L in itertools.combinations(range(l), r)),
        key=lambda L: (-len(L), L),
    )
    for L in subsets:
        if len(L) > R.nvars:
            continue
        H = minors_ideal(M, len(L), L, R)
        if H.is_zero():
            continue
        JL = Ideal(R, [rels[i] for i in L])
        if len(L) == l or J.issubset(JL):
            colon_gens = [R.one()]
        else:
            colon_gens = quotient(JL, J).nonzero_generators()
        for a in colon_gens:
            for h in H.nonzero_generators():
                total.append(a * h)
        if stop_at_unit and contains_one(Ideal(R, total)):
            break
    return Ideal(R, Ideal(R, total).groebner().basis)


# ---------------------------------------------------------------------------
# presentation simplification


@dataclass
class Simplified:
    """``P`` rewritten without variables solved by some relation.

    ``solved`` maps each removed variable to its expression in the kept ring.
    """

    original: QuotientPresentation
    presentation: QuotientPresentation
    solved: dict

    def pullback(self, K: Ideal) -> Ideal:
        """Ideal of the original ring corresponding to ``K`` in the simplified one."""
        R = self.original.ring
        gens = [g.to_ring(R) for g in K.nonzero_generators()]
        for v, expr in self.solved.items():
            gens.append(R.gen(v) - expr.to_ring(R))
        return Ideal(R, gens)


def _solvable(rel: Polynomial):
    """Index of a variable occurring only in one linear term with constant coefficient."""
    for i in range(rel.ring.nvars):
        lin = [e for e in rel.terms if e[i]]
        if len(lin) == 1 and lin[0][i] == 1 and sum(lin[0]) == 1:
            return i
    return None


def simplify_presentation(P: QuotientPresentation) -> Simplified:
    """Eliminate variables that some relation expresses as a polynomial in the others."""
    from .poly import substitute

    R = P.ring
    rels = [g for g in P.relation_list()]
    solved = {}
    ring = R
    changed = True
    while changed and ring.nvars > 1:
        changed = False
        for k, rel in enumerate(rels):
            i = _solvable(rel)
            if i is None:
                continue
            v = ring.variables[i]
            e = tuple(1 if j == i else 0 for j in range(ring.nvars))
            c = rel.terms[e]
            expr = -(rel - ring.monomial(e, c)) / c
            kept = PolyRing(ring.variables[:i] + ring.variables[i + 1:], ring.order)
            images = [ring.gen(j) if j != i else expr for j in range(ring.nvars)]
            expr_k = expr.to_ring(kept)
            for w in list(solved):
                solved[w] = substitute(solved[w], images).to_ring(kept)
            solved[v] = expr_k
            new = []
            for j, other in enumerate(rels):
                if j == k:
                    continue
                s = substitute(other, images)
                if s:
                    new.append(s.to_ring(kept))
            rels = new
            ring = kept
            changed = True
            break
    return Simplified(P, QuotientPresentation(ring, Ideal(ring, rels)), solved)


# ---------------------------------------------------------------------------
# verdicts


def singular_locus_ideal(P: QuotientPresentation, simplify: bool = True) -> Ideal:
    """Ideal (in ``P``'s ring, relations included) of the non-smooth points."""
    if simplify:
        S = simplify_presentation(P)
        H = jacobian_ideal(S.presentation)
        out = S.pullback(H)
        return Ideal(P.ring, out.groebner().basis)
    return jacobian_ideal(P)


def is_smooth(P: QuotientPresentation, simplify: bool = True) -> SmoothnessVerdict:
    """Geometric smoothness of ``Spec(P)`` over the rationals.

    The witness is ``"unit"`` for smooth presentations, otherwise the
    reduced basis of the (radical, when zero-dimensional) singular locus.
    """
    target = simplify_presentation(P).presentation if simplify else P
    if contains_one(jacobian_ideal(target, stop_at_unit=True)):
        return SmoothnessVerdict(True, "unit")
    sing = singular_locus_ideal(P, simplify)
    try:
        sing = radical_zero_dim(sing)
    except NotZeroDimensional:
        pass
    return SmoothnessVerdict(False, tuple(sing.groebner().basis))


def ideal_in_radical(K: Ideal, H: Ideal) -> bool:
    """Whether some power of ``K`` lies in ``H`` (openness-style check)."""
    return all(radical_membership(g, H) for g in K.nonzero_generators())


def _all_partials(f: Polynomial, order: int) -> list:
    """All partial derivatives of ``f`` of order exactly ``order``."""
    layer = {f}
    for _ in range(order):
        nxt = set()
        for g in layer:
            for j in range(f.ring.nvars):
                d = partial_derivative(g, j)
                if d:
                    nxt.add(d)
        layer = nxt
    return sorted(layer, key=str)


def max_order_locus(f: Polynomial):
    """``(mu, locus)``: maximal order of ``f`` over all points and where it is attained.

    Searches ``d`` downward from the total degree: ``mu`` is the largest
    ``d`` for which ``f`` and its partials of order ``< d`` have a common zero.
    """
    if f.is_constant():
        raise ValueError("max_order_locus needs a nonconstant polynomial")
    R = f.ring
    for d in range(f.total_degree(), 0, -1):
        gens = []
        for k in range(d):
            gens.extend(_all_partials(f, k))
        I = Ideal(R, gens)
        if not contains_one(I):
            try:
                locus = radical_zero_dim(I)
            except NotZeroDimensional:
                locus = Ideal(R, I.groebner().basis)
            return d, locus
    raise AssertionError("a nonconstant polynomial vanishes somewhere")


def max_order_on_surface(P: QuotientPresentation, C: Ideal):
    """``(mu, locus)`` for a curve ``C`` on the smooth surface ``P``.

    Order at a point ``m`` is the largest ``k`` with ``C`` inside
    ``m^k + relations``. The points of order at least ``k`` among the
    singular points ``M`` are ``M : ((M^k + rel) : C)``.
    """
    R = P.ring
    rel = P.relation_list()
    curve = Ideal(R, C.nonzero_generators() + rel)
    if contains_one(curve):
        return 0, Ideal(R, [R.one()])
    sing = singular_locus_ideal(QuotientPresentation(R, curve))
    if contains_one(sing):
        return 1, Ideal(R, curve.groebner().basis)
    M = radical_zero_dim(sing)
    locus = M
    k = 3
    while True:
        Mk = Ideal(R, ideal_power(M, k).nonzero_generators() + rel)
        K = quotient(Mk, curve)
        L = quotient(M, K)
        if contains_one(L):
            return k - 1, Ideal(R, locus.groebner().basis)
        locus = L
        k += 1


def surface_dimension(P: QuotientPresentation) -> int:
    return dimension(P.relations)
