"""Ideals in polynomial rings over the rationals and the operations on them.

Everything here reduces to Groebner basis computations: membership and
normal forms, sums/products/powers, intersection and colon ideals,
saturation, elimination, radical membership (Rabinowitsch), Krull dimension
from leading terms and radicals of zero-dimensional ideals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import gmpy2
from gmpy2 import mpq

from .groebner import GroebnerBasis, ResourceCapExceeded, compute_groebner, current_limits
from .poly import GREVLEX, MonomialOrder, Polynomial, PolyRing, block_order


class NotZeroDimensional(ValueError):
    pass


def _fresh_name(ring: PolyRing, base: str) -> str:
    name = base
    k = 0
    while name in ring.variables:
        k += 1
        name = f"{base}{k}"
    return name


class Ideal:
    """Finitely generated ideal; the generator list order is preserved."""

    def __init__(self, ring: PolyRing, generators=()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring(g)
            elif g.ring != ring:
                g = g.to_ring(ring)
            gens.append(g)
        nonzero = [g for g in gens if g]
        self.ring = ring
        self.generators = tuple(nonzero) if nonzero else (ring.zero(),)
        self._gb: dict = {}

    @classmethod
    def parse(cls, ring: PolyRing, *texts) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    # -- groebner cache ------------------------------------------------------
    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            R = self.ring.with_order(order)
            gb = compute_groebner(R, self.nonzero_generators(), self)
            self._gb[order] = gb
        return gb

    def nonzero_generators(self) -> list:
        return [g for g in self.generators if g]

    def is_zero(self) -> bool:
        return not self.nonzero_generators()

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def contains(self, f) -> bool:
        if not isinstance(f, Polynomial):
            f = self.ring(f)
        return self.groebner().contains(f)

    __contains__ = contains

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.nonzero_generators())

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring.variables != other.ring.variables:
            return False
        return self.groebner(GREVLEX) == other.groebner(GREVLEX)

    def __hash__(self):
        return hash(self.groebner(GREVLEX))

    def reduced_basis(self, order: MonomialOrder | None = None) -> tuple:
        return self.groebner(order).basis

    def to_ring(self, ring: PolyRing) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.generators])

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, n):
        return ideal_power(self, n)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


@dataclass
class QuotientPresentation:
    """The ring ``Q[variables]/relations``."""

    ring: PolyRing
    relations: Ideal = field(default=None)

    def __post_init__(self):
        if self.relations is None:
            self.relations = Ideal(self.ring, [])
        elif not isinstance(self.relations, Ideal):
            self.relations = Ideal(self.ring, self.relations)

    @property
    def variables(self):
        return self.ring.variables

    def relation_list(self) -> list:
        return self.relations.nonzero_generators()

    def ideal(self, gens) -> Ideal:
        """Ideal of the presented ring generated by ``gens`` plus the relations."""
        gens = [g if isinstance(g, Polynomial) else self.ring(g) for g in gens]
        return Ideal(self.ring, self.relation_list() + [g.to_ring(self.ring) for g in gens])

    def __str__(self):
        rels = ", ".join(str(g) for g in self.relation_list())
        return f"Q[{', '.join(self.ring.variables)}]/({rels})"


def _check_same_ring(*ideals):
    v = ideals[0].ring.variables
    for I in ideals[1:]:
        if I.ring.variables != v:
            raise ValueError("ideals live in different rings")


# ---------------------------------------------------------------------------
# basic operations


def groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    return I.groebner(order)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring.variables != G.ring.variables:
        raise ValueError("polynomial and basis live in different rings")
    return G.reduce(f).to_ring(f.ring)


def contains_one(I: Ideal) -> bool:
    return I.groebner().is_unit()


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    return Ideal(I.ring, I.nonzero_generators() + J.nonzero_generators())


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    gens = []
    seen = set()
    for f in I.nonzero_generators():
        for g in J.nonzero_generators():
            h = f * g
            if h not in seen:
                seen.add(h)
                gens.append(h)
    return Ideal(I.ring, gens)


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n <= 0:
        raise ValueError("ideal power needs a positive exponent")
    gens = I.nonzero_generators()
    if not gens:
        return Ideal(I.ring, [])
    out = []
    seen = set()
    for combo in itertools.combinations_with_replacement(range(len(gens)), n):
        h = I.ring.one()
        for i in combo:
            h = h * gens[i]
        if h not in seen:
            seen.add(h)
            out.append(h)
    return Ideal(I.ring, out)


def minimal_generators(I: Ideal, modulo: Ideal | None = None) -> Ideal:
    """Drop generators lying in the ideal of the remaining ones (plus ``modulo``).

    Greedy from the front, so later generators are preferred; the remaining
    order is the input order.
    """
    base = modulo.nonzero_generators() if modulo is not None else []
    gens = list(I.nonzero_generators())
    gens = [g for g in gens if not (modulo is not None and modulo.contains(g))]
    i = 0
    while i < len(gens):
        rest = gens[:i] + gens[i + 1:]
        if rest and Ideal(I.ring, base + rest).contains(gens[i]):
            gens.pop(i)
        else:
            i += 1
    return Ideal(I.ring, gens)


# ---------------------------------------------------------------------------
# elimination based operations


def eliminate(I: Ideal, drop) -> Ideal:
    """``I`` intersected with the subring of the kept variables (an ideal of that subring)."""
    R = I.ring
    drop_idx = sorted({R.index(d) if isinstance(d, str) else int(d) for d in drop})
    if not drop_idx:
        return I
    if len(drop_idx) >= R.nvars:
        raise ValueError("cannot eliminate every variable")
    keep_idx = [i for i in range(R.nvars) if i not in drop_idx]
    names = [R.variables[i] for i in drop_idx] + [R.variables[i] for i in keep_idx]
    E = PolyRing(names, block_order(len(drop_idx)))
    gb = compute_groebner(E, [g.to_ring(E) for g in I.nonzero_generators()])
    k = len(drop_idx)
    sub = PolyRing([R.variables[i] for i in keep_idx], R.order)
    kept = [g for g in gb.basis if not any(e[j] for e in g.terms for j in range(k))]
    return Ideal(sub, [g.to_ring(sub) for g in kept])


def intersection(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(R, [])
    t = _fresh_name(R, "t_")
    E = R.extend([t])
    tt = E.gen(t)
    gens = [tt * g.to_ring(E) for g in I.nonzero_generators()]
    gens += [(1 - tt) * g.to_ring(E) for g in J.nonzero_generators()]
    out = eliminate(Ideal(E, gens), [t])
    return out.to_ring(R)


def _quotient_principal(I: Ideal, g: Polynomial) -> Ideal:
    R = I.ring
    K = intersection(I, Ideal(R, [g]))
    return Ideal(R, [h.exact_div(g) for h in K.nonzero_generators()])


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """Colon ideal ``(I : J)``."""
    _check_same_ring(I, J)
    gens = J.nonzero_generators()
    if not gens:
        raise ValueError("colon by the zero ideal")
    if I.is_unit():
        return Ideal(I.ring, [I.ring.one()])
    out = None
    for g in gens:
        Q_ = _quotient_principal(I, g)
        out = Q_ if out is None else intersection(out, Q_)
    return out


def saturation_principal(I: Ideal, g: Polynomial) -> Ideal:
    """``(I : g^inf)`` by eliminating ``t`` from ``I + (1 - t g)``."""
    R = I.ring
    if g.is_constant():
        return I
    t = _fresh_name(R, "t_")
    E = R.extend([t])
    tt = E.gen(t)
    gens = [h.to_ring(E) for h in I.nonzero_generators()] + [1 - tt * g.to_ring(E)]
    return eliminate(Ideal(E, gens), [t]).to_ring(R)


def saturation(I: Ideal, J: Ideal):
    """Return ``((I : J^inf), k)`` with ``k`` the least exponent where the chain stabilises."""
    _check_same_ring(I, J)
    gens = J.nonzero_generators()
    if not gens:
        raise ValueError("saturation by the zero ideal")
    sat = None
    for g in gens:
        S = saturation_principal(I, g)
        sat = S if sat is None else intersection(sat, S)
    cap = current_limits().sat_cap
    sgens = sat.nonzero_generators()
    Jk = [I.ring.one()]
    for k in range(cap + 1):
        if all(I.contains(s * m) for s in sgens for m in Jk):
            return Ideal(I.ring, sat.groebner().basis), k
        Jk = ideal_product(Ideal(I.ring, Jk), J).nonzero_generators()
    raise ResourceCapExceeded(f"saturation exponent exceeds cap {cap}")


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    R = I.ring
    f = f.to_ring(R)
    if not f:
        return True
    t = _fresh_name(R, "t_")
    E = R.extend([t])
    gens = [h.to_ring(E) for h in I.nonzero_generators()] + [1 - E.gen(t) * f.to_ring(E)]
    return Ideal(E, gens).is_unit()


# ---------------------------------------------------------------------------
# dimension and zero-dimensional radicals


def dimension(I: Ideal) -> int:
    """Krull dimension of ``R/I`` (``-1`` for the unit ideal)."""
    gb = I.groebner()
    if gb.is_unit():
        return -1
    lms = gb.leading_monomials()
    n = I.ring.nvars
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in lms]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def standard_monomials(gb: GroebnerBasis) -> list:
    """Monomials outside the leading ideal of a zero-dimensional basis."""
    lms = gb.leading_monomials()
    n = gb.ring.nvars
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] and all(a == 0 for j, a in enumerate(m) if j != i)]
        if not pure:
            raise NotZeroDimensional("ideal is not zero-dimensional")
        bounds.append(min(pure))
    out = []
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(all(a >= b for a, b in zip(e, m)) for m in lms):
            out.append(e)
    return out


def _univariate_minpoly(gb: GroebnerBasis, var: int) -> list:
    """Coefficients (low to high, monic) of the minimal polynomial of ``x_var`` modulo the ideal."""
    R = gb.ring
    x = R.gen(var)
    rows = []  # echelon rows: (pivot monomial, vector dict, combination dict)
    power = R.one()
    k = 0
    while True:
        v = dict(gb.reduce(power).terms)
        comb = {k: mpq(1)}
        for piv, row, rcomb in rows:
            c = v.get(piv)
            if c:
                for e, a in row.items():
                    nv = v.get(e, 0) - c * a
                    if nv:
                        v[e] = nv
                    else:
                        v.pop(e, None)
                for j, a in rcomb.items():
                    nc = comb.get(j, 0) - c * a
                    if nc:
                        comb[j] = nc
                    else:
                        comb.pop(j, None)
        if not v:
            coeffs = [comb.get(j, mpq(0)) for j in range(k + 1)]
            lead = coeffs[-1]
            return [c / lead for c in coeffs]
        piv = max(v, key=R.order.key)
        a = v[piv]
        rows.append((piv, {e: c / a for e, c in v.items()}, {j: c / a for j, c in comb.items()}))
        power = power * x
        k += 1


# univariate helpers on coefficient lists (low degree first)

def _utrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _udivmod(a, b):
    a = _utrim(a)
    b = _utrim(b)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, bc in enumerate(b):
            a[i + d] -= c * bc
        a = _utrim(a)
    return q, a


def _ugcd(a, b):
    a, b = _utrim(a), _utrim(b)
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if a:
        a = [c / a[-1] for c in a]
    return a


def squarefree_part(coeffs) -> list:
    """Squarefree part of a univariate polynomial (coefficients low to high)."""
    a = _utrim([mpq(c) for c in coeffs])
    if len(a) <= 1:
        return a
    da = [a[i] * i for i in range(1, len(a))]
    g = _ugcd(a, da)
    q, r = _udivmod(a, g)
    assert not r
    return [c / q[-1] for c in q]


def radical_zero_dim(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal via squarefree univariate eliminants."""
    gb = I.groebner()
    if gb.is_unit():
        return Ideal(I.ring, [I.ring.one()])
    if dimension(I) != 0:
        raise NotZeroDimensional("radical_zero_dim needs a zero-dimensional ideal")
    R = I.ring
    extra = []
    for i in range(R.nvars):
        mp = _univariate_minpoly(gb, i)
        sf = squarefree_part(mp)
        if len(sf) < len(mp):
            x = R.gen(i)
            extra.append(sum((x ** j * c for j, c in enumerate(sf) if c), R.zero()))
    if not extra:
        return Ideal(R, gb.basis)
    J = Ideal(R, list(gb.basis) + extra)
    return Ideal(R, J.groebner().basis)


def is_radical_zero_dim(I: Ideal) -> bool:
    return radical_zero_dim(I) == I


def vanishing_at(I: Ideal, point) -> bool:
    return all(g.evaluate(point) == 0 for g in I.nonzero_generators())


def primitive_gcd_content(polys):
    g = 0
    for p in polys:
        for c in p.terms.values():
            g = gmpy2.gcd(g, c.numerator)
    return g
