"""Buchberger's algorithm over the rationals.

The kernel works on plain ``{exponent: mpq}`` dicts and a flat-tuple order
key. Pairs are chosen by the normal strategy (smallest lcm first, ties broken
by pair index) and pruned with the Gebauer-Moeller criteria, so the output is
reproducible bit for bit.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
from dataclasses import dataclass, replace

from .poly import MonomialOrder, Polynomial, PolyRing


class ResourceCapExceeded(RuntimeError):
    """A configured computation limit was hit (not a mathematical failure)."""


@dataclass(frozen=True)
class Limits:
    max_pairs: int = 200000
    max_degree: int = 64
    sat_cap: int = 64


_LIMITS = contextvars.ContextVar("qblowup_limits", default=Limits())


def current_limits() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def limits(**overrides):
    """Temporarily override resource caps, e.g. ``with limits(max_pairs=10): ...``."""
    token = _LIMITS.set(replace(_LIMITS.get(), **overrides))
    try:
        yield _LIMITS.get()
    finally:
        _LIMITS.reset(token)


# ---------------------------------------------------------------------------
# kernel on dict polynomials


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _KPoly:
    """Monic kernel polynomial: leading monomial plus descending tail."""

    __slots__ = ("lm", "terms", "tail")

    def __init__(self, terms: dict, key):
        items = sorted(terms.items(), key=lambda t: key(t[0]), reverse=True)
        lm, lc = items[0]
        self.lm = lm
        if lc != 1:
            items = [(e, c / lc) for e, c in items]
        self.terms = dict(items)
        self.tail = items[1:]


def reduce_dict(p: dict, basis: list, key, full: bool = True) -> dict:
    """Remainder of ``p`` on division by monic kernel polynomials ``basis``.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    p = dict(p)
    heap = [(tuple(-k for k in key(e)), e) for e in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for g in basis:
            if _divides(g.lm, m):
                q = _sub(m, g.lm)
                for e2, c2 in g.tail:
                    e = _add(e2, q)
                    old = p.get(e)
                    if old is None:
                        p[e] = -c * c2
                        heapq.heappush(heap, (tuple(-k for k in key(e)), e))
                    else:
                        new = old - c * c2
                        if new:
                            p[e] = new
                        else:
                            del p[e]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(p)
                return rem
    return rem


def _spoly(f: _KPoly, g: _KPoly) -> dict:
    L = _lcm(f.lm, g.lm)
    a, b = _sub(L, f.lm), _sub(L, g.lm)
    out = {}
    for e, c in f.tail:
        out[_add(e, a)] = c
    for e, c in g.tail:
        e = _add(e, b)
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def buchberger(polys: list, key) -> list:
    """Reduced Groebner basis (list of monic ``_KPoly``, descending lead)."""
    lim = current_limits()
    G: list = []
    pairs: dict = {}  # (i, j) -> lcm
    active: list = []

    def update(h: _KPoly):
        nonlocal pairs
        t = len(G)
        # Gebauer-Moeller: drop old pairs whose lcm is strictly divisible by lm(h)
        pairs = {
            p: L
            for p, L in pairs.items()
            if not (
                _divides(h.lm, L)
                and _lcm(G[p[0]].lm, h.lm) != L
                and _lcm(G[p[1]].lm, h.lm) != L
            )
        }
        cand = {}
        for i in active:
            cand.setdefault(_lcm(G[i].lm, h.lm), []).append(i)
        minimal = []
        for L in sorted(cand, key=key):
            if not any(_divides(M, L) for M in minimal):
                minimal.append(L)
        for L in minimal:
            idx = cand[L]
            if any(_add(G[i].lm, h.lm) == L for i in idx):
                continue  # product criterion
            pairs[(min(idx), t)] = L
        G.append(h)
        active[:] = [i for i in active if not _divides(h.lm, G[i].lm)] + [t]

    for f in polys:
        if f:
            h = _KPoly(f, key)
            update(h)
    processed = 0
    while pairs:
        p = min(pairs, key=lambda q: (key(pairs[q]), q))
        del pairs[p]
        processed += 1
        if processed > lim.max_pairs:
            raise ResourceCapExceeded(f"S-pair limit {lim.max_pairs} exceeded")
        s = _spoly(G[p[0]], G[p[1]])
        if not s:
            continue
        r = reduce_dict(s, [G[i] for i in active], key)
        if r:
            h = _KPoly(r, key)
            if sum(h.lm) > lim.max_degree:
                raise ResourceCapExceeded(f"degree limit {lim.max_degree} exceeded")
            if not any(h.lm):
                return [h]
            update(h)
    # minimalize then interreduce
    basis = [G[i] for i in active]
    basis.sort(key=lambda g: key(g.lm))
    minimal = []
    for g in basis:
        if not any(_divides(m.lm, g.lm) for m in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = reduce_dict(dict(g.tail), others, key)
        tail[g.lm] = g.terms[g.lm]
        reduced.append(_KPoly(tail, key))
    reduced.sort(key=lambda g: key(g.lm), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# public wrapper


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed monomial order."""

    def __init__(self, ring: PolyRing, kbasis: list, ideal=None):
        self.ring = ring
        self.order: MonomialOrder = ring.order
        self.ideal = ideal
        self._k = kbasis
        self.basis = tuple(Polynomial._raw(ring, dict(g.terms)) for g in kbasis)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def is_unit(self) -> bool:
        return len(self._k) == 1 and not any(self._k[0].lm)

    def is_zero(self) -> bool:
        return not self._k

    def leading_monomials(self) -> list:
        return [g.lm for g in self._k]

    def reduce(self, f: Polynomial) -> Polynomial:
        f = f.to_ring(self.ring)
        r = reduce_dict(f._terms, self._k, self.order.key)
        return Polynomial._raw(self.ring, r)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def key(self):
        return tuple(tuple(sorted(g.terms.items())) for g in self._k)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring.variables == other.ring.variables \
            and self.order == other.order and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(str(g) for g in self.basis) + "])"


def compute_groebner(ring: PolyRing, polys, ideal=None) -> GroebnerBasis:
    key = ring.order.key
    dicts = [p.to_ring(ring)._terms for p in polys]
    return GroebnerBasis(ring, buchberger(dicts, key), ideal)


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    """S-polynomial of two nonzero polynomials (monic normalisation)."""
    key = f.ring.order.key
    return Polynomial._raw(f.ring, _spoly(_KPoly(f._terms, key), _KPoly(g._terms, key)))
