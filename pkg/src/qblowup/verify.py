"""Independent re-check of a resolution trace.

Uses only the ideal engine and the classical Jacobian criterion for
complete intersections, never the drivers' own smoothness or snc code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ideal import Ideal, contains_one, dimension, radical_membership
from .poly import Polynomial, partial_derivative


@dataclass
class VerificationReport:
    ok: bool
    failures: list = field(default_factory=list)  # (path, message)

    def __bool__(self):
        return self.ok


def _minors_contain_one(base: Ideal, polys: list, size: int) -> bool:
    R = base.ring
    M = [[partial_derivative(f, j) for j in range(R.nvars)] for f in polys]
    dets = []
    for cols in itertools.combinations(range(R.nvars), size):
        sub = [[M[i][j] for j in cols] for i in range(len(polys))]
        dets.append(_det(sub))
        if contains_one(Ideal(R, base.nonzero_generators() + dets)):
            return True
    return False


def _det(M) -> Polynomial:
    # Bareiss-free Leibniz expansion, fine for the tiny sizes used here
    n = len(M)
    R = M[0][0].ring
    total = R.zero()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        t = R.one()
        for i, j in enumerate(perm):
            t = t * M[i][j]
            if not t:
                break
        total = total - t if inv % 2 else total + t
    return total


def _complete_intersection(gens: list, codim: int):
    """``codim`` members of ``gens`` generating the same ideal, if any."""
    R = gens[0].ring
    full = Ideal(R, gens)
    for sub in itertools.combinations(gens, codim):
        if Ideal(R, list(sub)) == full:
            return list(sub)
    return None


def smooth_complete_intersection(gens: list, ring) -> tuple:
    """``(ok, message)``: Jacobian criterion for a complete intersection."""
    gens = [g for g in gens if g]
    n = ring.nvars
    if not gens:
        return True, ""
    I = Ideal(ring, gens)
    if contains_one(I):
        return True, "empty"
    d = dimension(I)
    ci = _complete_intersection(gens, n - d)
    if ci is None:
        return False, "relations are not a complete intersection"
    if not _minors_contain_one(I, ci, n - d):
        return False, "Jacobian rank drops"
    return True, ""


def verify_resolution(trace) -> VerificationReport:
    """Re-check smoothness, snc and the support condition on every leaf of ``trace``."""
    failures = []
    tree = trace.tree
    f = trace.curve
    R0 = tree.root.presentation.ring
    sing = [f] + [partial_derivative(f, j) for j in range(R0.nvars)]

    for path, node in tree.internal_nodes():
        P = node.presentation
        Z = Ideal(P.ring, node.step.center.ideal.nonzero_generators() + P.relation_list())
        for g in sing:
            if not radical_membership(g.to_ring(P.ring), Z):
                failures.append((path, "center not supported on the singular locus"))
                break

    for path, leaf in tree.leaves():
        P = leaf.presentation
        rels = P.relation_list()
        ok, msg = smooth_complete_intersection(rels, P.ring)
        if not ok:
            failures.append((path, f"chart ring not smooth: {msg}"))
            continue
        d = dimension(P.relations)
        if d != 2:
            failures.append((path, f"chart has dimension {d}"))
            continue
        base = _complete_intersection(rels, P.ring.nvars - d) if rels else []
        factors = [h for _, h in leaf.divisor]
        for size in range(1, len(factors) + 1):
            for S in itertools.combinations(range(len(factors)), size):
                gens = base + [factors[i] for i in S]
                I = Ideal(P.ring, gens)
                if contains_one(I):
                    continue
                if size > d:
                    failures.append((path, f"components {S} meet in excess"))
                    continue
                if dimension(I) != d - size:
                    failures.append((path, f"components {S} meet in the wrong dimension"))
                    continue
                if not _minors_contain_one(I, gens, len(gens)):
                    failures.append((path, f"components {S} are not smooth and transversal"))
    return VerificationReport(not failures, failures)
