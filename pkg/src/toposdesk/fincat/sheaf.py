"""Sheaf condition and sheafification by the plus construction."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.lattice import ResourceError
from .presheaf import NatTrans, Presheaf
from .topology import Topology, bits, negneg_topology

DEFAULT_MATCHING_GUARD = 10 ** 6


def matching_families(X: Presheaf, c: int, mask: int, guard: int = DEFAULT_MATCHING_GUARD) -> list:
    """Matching families for the sieve ``mask`` on ``c``, as tuples aligned with ``bits(mask)``.

    A family picks ``x_f`` in ``X(dom f)`` for each ``f`` with ``x_(f o g) = x_f . g``.
    """
    C = X.category
    arrows = bits(mask)
    pos = {f: i for i, f in enumerate(arrows)}
    # constraints checked once both ends are assigned: (i, g, j) means x_j = x_i . g
    cons = [[] for _ in arrows]
    for i, f in enumerate(arrows):
        for g in C.into(C.src[f]):
            j = pos[C.comp[(f, g)]]
            later = max(i, j)
            cons[later].append((i, g, j))
    out = []
    assign = [None] * len(arrows)
    steps = 0

    def rec(k):
        nonlocal steps
        if k == len(arrows):
            out.append(tuple(assign))
            return
        for x in range(len(X.sets[C.src[arrows[k]]])):
            steps += 1
            if steps > guard:
                raise ResourceError(f"matching-family search exceeded guard {guard}")
            assign[k] = x
            if all(assign[j] == X.action[g][assign[i]] for i, g, j in cons[k]):
                rec(k + 1)
        assign[k] = None

    rec(0)
    return out


def restriction_to(X: Presheaf, c: int, mask: int) -> list:
    """``x |-> (x . f)_f`` from ``X(c)`` to families on the sieve."""
    arrows = bits(mask)
    return [tuple(X.action[f][x] for f in arrows) for x in range(len(X.sets[c]))]


def is_sheaf(X: Presheaf, J: Topology, exhaustive: bool = True, guard: int = DEFAULT_MATCHING_GUARD) -> bool:
    """Restriction to matching families is a bijection for covering sieves.

    With ``exhaustive`` every covering sieve is checked, otherwise only the
    minimal one on each object.
    """
    C = X.category
    for c in range(C.n_objects):
        sieves = J.covering_sieves(c) if exhaustive else [J.minimal[c]]
        for s in sieves:
            fams = matching_families(X, c, s, guard)
            res = restriction_to(X, c, s)
            if len(set(res)) != len(res) or set(res) != set(fams):
                return False
    return True


def plus(X: Presheaf, J: Topology, guard: int = DEFAULT_MATCHING_GUARD):
    """``X+(c) = Match(m(c), X)`` with the unit ``X -> X+``.

    The minimal covering sieve is the least element of the covering sieves on
    ``c``, so it computes the colimit over all of them.
    """
    C = X.category
    fams = [matching_families(X, c, J.minimal[c], guard) for c in range(C.n_objects)]
    index = [{fam: i for i, fam in enumerate(fs)} for fs in fams]
    arrows_of = [bits(J.minimal[c]) for c in range(C.n_objects)]
    pos_of = [{f: i for i, f in enumerate(a)} for a in arrows_of]
    action = []
    for u in range(C.n_arrows):
        c, d = C.tgt[u], C.src[u]
        row = []
        for fam in fams[c]:
            new = tuple(fam[pos_of[c][C.comp[(u, k)]]] for k in arrows_of[d])
            row.append(index[d][new])
        action.append(row)
    sets = [tuple(_family_label(X, arrows_of[c], fam, C) for fam in fams[c]) for c in range(C.n_objects)]
    Xp = Presheaf(C, sets, action)
    unit = NatTrans(X, Xp, [[index[c][r] for r in restriction_to(X, c, J.minimal[c])]
                            for c in range(C.n_objects)])
    return Xp, unit


def _family_label(X, arrows, fam, C):
    return "<" + ",".join(f"{C.arrows[f]}:{X.sets[C.src[f]][x]}" for f, x in zip(arrows, fam)) + ">"


@dataclass(frozen=True, eq=False)
class Sheafification:
    sheaf: Presheaf
    unit: NatTrans
    topology: Topology


def sheafify(X: Presheaf, J: Topology, guard: int = DEFAULT_MATCHING_GUARD, check: bool = True) -> Sheafification:
    Xp, u1 = plus(X, J, guard)
    Xpp, u2 = plus(Xp, J, guard)
    if check and not is_sheaf(Xpp, J, exhaustive=_small(J), guard=guard):
        raise AssertionError("plus construction did not produce a sheaf")
    return Sheafification(Xpp, u1.then(u2), J)


def _small(J: Topology) -> bool:
    C = J.category
    return all(len(C.into(c)) <= 12 for c in range(C.n_objects))


def sheafify_negneg(X: Presheaf, guard: int = DEFAULT_MATCHING_GUARD) -> Sheafification:
    return sheafify(X, negneg_topology(X.category), guard)
