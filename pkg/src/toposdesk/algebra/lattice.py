"""Finite posets, distributive lattices, Heyting and Boolean algebras.

Elements are the integers ``0 .. n-1``.  Orders are stored as ``n x n``
boolean numpy tables with ``leq[a, b]`` meaning ``a <= b``; the operations
are ``n x n`` integer tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class LatticeError(ValueError):
    pass


class ResourceError(RuntimeError):
    """A configured enumeration guard was exceeded."""


def _labels(n, labels):
    if labels is None:
        return tuple(str(i) for i in range(n))
    labels = tuple(labels)
    if len(labels) != n:
        raise LatticeError("label count does not match carrier size")
    return labels


@dataclass(frozen=True, eq=False)
class FinPoset:
    leq: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        leq = np.array(self.leq, dtype=bool)
        leq.setflags(write=False)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "labels", _labels(len(leq), self.labels))
        check_partial_order(leq)

    @property
    def n(self) -> int:
        return len(self.leq)

    def __len__(self):
        return self.n

    def le(self, a, b) -> bool:
        return bool(self.leq[a, b])

    def down(self, a) -> list:
        return [int(x) for x in np.flatnonzero(self.leq[:, a])]

    def up(self, a) -> list:
        return [int(x) for x in np.flatnonzero(self.leq[a, :])]

    def minimal(self) -> list:
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        return [int(x) for x in np.flatnonzero(~strict.any(axis=0))]

    def restrict(self, elems: Sequence[int]) -> "FinPoset":
        idx = list(elems)
        return FinPoset(self.leq[np.ix_(idx, idx)], tuple(self.labels[i] for i in idx))


def check_partial_order(leq: np.ndarray) -> None:
    n = len(leq)
    if leq.shape != (n, n):
        raise LatticeError("order table must be square")
    if not leq.diagonal().all():
        raise LatticeError("order is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise LatticeError("order is not antisymmetric")
    # transitivity: leq composed with leq stays inside leq
    comp = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
    if (comp & ~leq).any():
        raise LatticeError("order is not transitive")


def _extremal(leq, cand, greatest):
    """For every row of ``cand`` (n x n boolean), the greatest/least member, or -1."""
    if greatest:
        rank = leq.sum(axis=0).astype(np.int32)   # size of down-set
    else:
        rank = leq.sum(axis=1).astype(np.int32)   # size of up-set
    score = np.where(cand, rank[None, :], -1)
    best = score.argmax(axis=1)
    ok = cand[np.arange(len(cand)), best]
    if greatest:
        bounded = ~(cand & ~leq[:, best].T).any(axis=1)
    else:
        bounded = ~(cand & ~leq[best, :]).any(axis=1)
    return np.where(ok & bounded, best, -1)


def lattice_tables(leq: np.ndarray):
    """Meet and join tables of a finite lattice given by its order."""
    n = len(leq)
    meet = np.empty((n, n), dtype=np.int32)
    join = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        lower = leq[:, a][None, :] & leq.T
        upper = leq[a, :][None, :] & leq
        meet[a] = _extremal(leq, lower, greatest=True)
        join[a] = _extremal(leq, upper, greatest=False)
    if (meet < 0).any() or (join < 0).any():
        raise LatticeError("order is not a lattice")
    return meet, join


def implication_table(leq: np.ndarray, meet: np.ndarray) -> np.ndarray:
    """Relative pseudo-complement ``a => b = max{x : x /\\ a <= b}``."""
    n = len(leq)
    imp = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        # cand[b, x] = (x /\ a <= b)
        cand = leq[meet[:, a], :].T
        imp[a] = _extremal(leq, cand, greatest=True)
    if (imp < 0).any():
        raise LatticeError("lattice is not Heyting (not distributive)")
    return imp


@dataclass(frozen=True, eq=False)
class FinHeyting:
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    imp: np.ndarray
    bottom: int
    top: int
    labels: tuple = None

    def __post_init__(self):
        for name in ("leq", "meet", "join", "imp"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "labels", _labels(len(self.leq), self.labels))

    # construction ---------------------------------------------------------

    @classmethod
    def from_order(cls, leq, labels=None, check=True):
        leq = np.asarray(leq, dtype=bool)
        if check:
            check_partial_order(leq)
        n = len(leq)
        if n == 0:
            raise LatticeError("empty carrier")
        meet, join = lattice_tables(leq)
        imp = implication_table(leq, meet)
        bottom = int(np.flatnonzero(leq.all(axis=1))[0])
        top = int(np.flatnonzero(leq.all(axis=0))[0])
        out = cls(leq, meet, join, imp, bottom, top, labels)
        if check:
            out.check()
        return _maybe_boolean(out)

    @classmethod
    def from_sets(cls, masks: Sequence[int], labels=None):
        """Algebra of a family of finite sets (int bitmasks) closed under ``&`` and ``|``.

        The family must contain a least and a greatest set; order is inclusion.
        """
        masks = [int(m) for m in masks]
        n = len(masks)
        if len(set(masks)) != n:
            raise LatticeError("repeated set in family")
        index = {m: i for i, m in enumerate(masks)}
        leq = np.array([[(a & ~b) == 0 for b in masks] for a in masks], dtype=bool)
        meet = np.empty((n, n), dtype=np.int32)
        join = np.empty((n, n), dtype=np.int32)
        try:
            for i, a in enumerate(masks):
                for j, b in enumerate(masks):
                    meet[i, j] = index[a & b]
                    join[i, j] = index[a | b]
        except KeyError:
            raise LatticeError("family is not closed under intersection and union") from None
        imp = implication_table(leq, meet)
        bottom = index[min(masks, key=lambda m: bin(m).count("1"))]
        top = index[max(masks, key=lambda m: bin(m).count("1"))]
        out = cls(leq, meet, join, imp, bottom, top, labels)
        if not out.leq[bottom].all() or not out.leq[:, top].all():
            raise LatticeError("family lacks a least or greatest member")
        return _maybe_boolean(out)

    # basic access ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.leq)

    def __len__(self):
        return self.n

    @property
    def elements(self) -> range:
        return range(self.n)

    @property
    def poset(self) -> FinPoset:
        return FinPoset(self.leq, self.labels)

    def le(self, a, b) -> bool:
        return bool(self.leq[a, b])

    def neg(self, a) -> int:
        return int(self.imp[a, self.bottom])

    @property
    def neg_table(self) -> np.ndarray:
        return self.imp[:, self.bottom]

    def meet_all(self, elems: Iterable[int]) -> int:
        out = self.top
        for e in elems:
            out = int(self.meet[out, e])
        return out

    def join_all(self, elems: Iterable[int]) -> int:
        out = self.bottom
        for e in elems:
            out = int(self.join[out, e])
        return out

    def down(self, a) -> list:
        return [int(x) for x in np.flatnonzero(self.leq[:, a])]

    def atoms(self) -> list:
        """Elements covering the bottom."""
        b = self.bottom
        out = []
        for x in range(self.n):
            if x == b:
                continue
            below = np.flatnonzero(self.leq[:, x])
            if len(below) == 2:
                out.append(x)
        return out

    def join_irreducibles(self) -> list:
        """Non-bottom elements that are not the join of the elements strictly below."""
        out = []
        for x in range(self.n):
            if x == self.bottom:
                continue
            below = [y for y in np.flatnonzero(self.leq[:, x]) if y != x]
            if self.join_all(below) != x:
                out.append(x)
        return out

    def is_boolean(self) -> bool:
        neg = self.neg_table
        return bool((self.join[np.arange(self.n), neg] == self.top).all())

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    # verification ---------------------------------------------------------

    def check(self) -> None:
        """Exhaustively verify the bounded-lattice and residuation laws."""
        n, leq, meet, join = self.n, self.leq, self.meet, self.join
        check_partial_order(leq)
        idx = np.arange(n)
        if not leq[self.bottom].all() or not leq[:, self.top].all():
            raise LatticeError("bounds are wrong")
        if not (leq[meet, idx[:, None]].all() and leq[meet, idx[None, :]].all()):
            raise LatticeError("meet is not a lower bound")
        if not (leq[idx[:, None], join].all() and leq[idx[None, :], join].all()):
            raise LatticeError("join is not an upper bound")
        if not check_residuation(self):
            raise LatticeError("residuation law fails")

    def to_boolean(self) -> "FinBoolean":
        if not self.is_boolean():
            raise LatticeError("algebra is not Boolean")
        return FinBoolean(self.leq, self.meet, self.join, self.imp, self.bottom, self.top, self.labels)

    def relabel(self, labels) -> "FinHeyting":
        return type(self)(self.leq, self.meet, self.join, self.imp, self.bottom, self.top, labels)

    def describe(self) -> str:
        kind = "Boolean" if self.is_boolean() else "Heyting"
        return f"{kind} algebra with {self.n} elements"


class FinBoolean(FinHeyting):
    def __post_init__(self):
        super().__post_init__()
        if not self.is_boolean():
            raise LatticeError("complement law a \\/ ~a = 1 fails")


def _maybe_boolean(h: FinHeyting) -> FinHeyting:
    if type(h) is FinHeyting and h.is_boolean():
        return FinBoolean(h.leq, h.meet, h.join, h.imp, h.bottom, h.top, h.labels)
    return h


def check_residuation(h: FinHeyting) -> bool:
    """``a /\\ b <= c  iff  a <= b => c`` for every triple."""
    n = h.n
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    lhs = h.leq[h.meet[a, b], c]
    rhs = h.leq[a, h.imp[b, c]]
    return bool((lhs == rhs).all())


def check_distributive(h: FinHeyting) -> bool:
    n = h.n
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    return bool((h.meet[a, h.join[b, c]] == h.join[h.meet[a, b], h.meet[a, c]]).all())


# ---------------------------------------------------------------------------
# Standard constructions
# ---------------------------------------------------------------------------

def chain(n: int) -> FinHeyting:
    """The ``n``-element chain ``0 < 1 < ... < n-1``."""
    if n < 1:
        raise LatticeError("a chain needs at least one element")
    idx = np.arange(n)
    leq = idx[:, None] <= idx[None, :]
    if n == 3:
        labels = ("0", "m", "1")
    else:
        labels = None
    return FinHeyting.from_order(leq, labels)


def powerset(m: int, labels=None) -> FinBoolean:
    """Subsets of an ``m``-element set; element ``i`` is the subset with bitmask ``i``."""
    idx = np.arange(2 ** m, dtype=np.int32)
    full = 2 ** m - 1
    a, b = idx[:, None], idx[None, :]
    leq = (a & ~b & full) == 0
    return FinBoolean(leq, a & b, a | b, (~a & full) | b, 0, full, labels)


def boolean(k: int) -> FinBoolean:
    """Power set of a ``k``-element set."""
    labels = ["{" + ",".join(str(i) for i in range(k) if m >> i & 1) + "}" for m in range(2 ** k)]
    return powerset(k, labels)


def product(a: FinHeyting, b: FinHeyting) -> FinHeyting:
    n, m = a.n, b.n
    leq = (a.leq[:, None, :, None] & b.leq[None, :, None, :]).reshape(n * m, n * m)
    labels = [f"({x},{y})" for x in a.labels for y in b.labels]
    return FinHeyting.from_order(leq, labels)


def downset_masks(leq: np.ndarray) -> list:
    """All down-sets of a finite poset as int bitmasks, in increasing numeric order."""
    leq = np.asarray(leq, dtype=bool)
    n = len(leq)
    below = [sum(1 << int(y) for y in np.flatnonzero(leq[:, x]) if y != x) for x in range(n)]
    order = sorted(range(n), key=lambda x: (int(leq[:, x].sum()), x))
    out = []

    def rec(i, mask):
        if i == n:
            out.append(mask)
            return
        rec(i + 1, mask)
        x = order[i]
        if (below[x] & ~mask) == 0:
            rec(i + 1, mask | 1 << x)

    rec(0, 0)
    return sorted(out)


def upset_masks(leq: np.ndarray) -> list:
    return downset_masks(np.asarray(leq).T)


def downset_lattice(poset_leq: np.ndarray, labels=None) -> FinHeyting:
    """The distributive lattice of down-sets of a finite poset (Birkhoff)."""
    masks = downset_masks(np.asarray(poset_leq, dtype=bool))
    return FinHeyting.from_sets(masks, labels)


def is_isomorphic(a: FinHeyting, b: FinHeyting) -> bool:
    import networkx as nx
    if a.n != b.n:
        return False
    ga = nx.DiGraph(list(zip(*np.nonzero(a.leq))))
    gb = nx.DiGraph(list(zip(*np.nonzero(b.leq))))
    ga.add_nodes_from(range(a.n))
    gb.add_nodes_from(range(b.n))
    return nx.is_isomorphic(ga, gb)


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LatticeHom:
    source: FinHeyting
    target: FinHeyting
    mapping: tuple

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        if len(mapping) != self.source.n:
            raise LatticeError("map does not cover the source carrier")
        if any(not 0 <= x < self.target.n for x in mapping):
            raise LatticeError("map leaves the target carrier")
        object.__setattr__(self, "mapping", mapping)

    def __call__(self, a):
        return self.mapping[a]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.mapping, dtype=np.int32)

    def lattice_violation(self):
        """First failure of 0, 1, meet or join preservation, or None."""
        s, t, h = self.source, self.target, self.array
        if h[s.bottom] != t.bottom:
            return ("bottom", s.bottom, None)
        if h[s.top] != t.top:
            return ("top", s.top, None)
        for op in ("meet", "join"):
            lhs = h[getattr(s, op)]
            rhs = getattr(t, op)[h[:, None], h[None, :]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                a, b = bad[0]
                return (op, int(a), int(b))
        return None

    def is_lattice_hom(self) -> bool:
        return self.lattice_violation() is None


@dataclass(frozen=True)
class PreservationVerdict:
    preserved: bool
    witness: tuple = None
    detail: str = ""


def check_heyting_preservation(h: LatticeHom) -> PreservationVerdict:
    """Does a bounded-lattice map also preserve implication and negation?"""
    bad = h.lattice_violation()
    if bad is not None:
        raise LatticeError(f"not a lattice homomorphism: fails {bad[0]} at {bad[1:]}")
    s, t, m = h.source, h.target, h.array
    lhs = m[s.imp]
    rhs = t.imp[m[:, None], m[None, :]]
    diff = np.argwhere(lhs != rhs)
    if len(diff):
        a, b = (int(x) for x in diff[0])
        return PreservationVerdict(
            False, (a, b),
            f"h({s.labels[a]} => {s.labels[b]}) = {t.labels[lhs[a, b]]} "
            f"but h({s.labels[a]}) => h({s.labels[b]}) = {t.labels[rhs[a, b]]}")
    neg_l = m[s.neg_table]
    neg_r = t.neg_table[m]
    diff = np.flatnonzero(neg_l != neg_r)
    if len(diff):
        a = int(diff[0])
        return PreservationVerdict(False, (a, s.bottom), f"negation of {s.labels[a]} not preserved")
    return PreservationVerdict(True)


DEFAULT_HOM_GUARD = 10 ** 7


def enumerate_homs(a: FinHeyting, b: FinHeyting, guard: int = DEFAULT_HOM_GUARD) -> list:
    """All maps ``a -> b`` preserving 0, 1, meets and joins.

    A homomorphism out of a finite distributive lattice is fixed by its values
    on join-irreducibles; those are chosen by backtracking with monotonicity
    and meet pruning, and ``guard`` bounds the number of partial assignments
    explored.
    """
    ji = a.join_irreducibles()
    # linear extension: fewer elements below first
    ji.sort(key=lambda x: (int(a.leq[:, x].sum()), x))
    below = {x: [y for y in ji if y != x and a.leq[y, x]] for x in ji}
    pos = {x: i for i, x in enumerate(ji)}
    # for each x in ji: each element of a decomposes as join of ji below it
    decomp = [[j for j in ji if a.leq[j, e]] for e in range(a.n)]
    explored = 0
    results = []
    assign = {}

    def meet_ok(x, v):
        for y in ji[:pos[x]]:
            m = int(a.meet[x, y])
            expect = b.bottom
            for k in decomp[m]:
                expect = int(b.join[expect, assign[k]])
            if int(b.meet[v, assign[y]]) != expect:
                return False
        return True

    def rec(i):
        nonlocal explored
        if i == len(ji):
            mapping = []
            for e in range(a.n):
                v = b.bottom
                for k in decomp[e]:
                    v = int(b.join[v, assign[k]])
                mapping.append(v)
            hom = LatticeHom(a, b, tuple(mapping))
            if hom.is_lattice_hom():
                results.append(hom)
            return
        x = ji[i]
        lower = b.bottom
        for y in below[x]:
            lower = int(b.join[lower, assign[y]])
        for v in range(b.n):
            explored += 1
            if explored > guard:
                raise ResourceError(f"homomorphism search exceeded guard {guard}")
            if not b.leq[lower, v]:
                continue
            # a join-irreducible cannot be sent to the join of the images below
            # it unless that is forced; meet pruning settles the rest
            if not meet_ok(x, v):
                continue
            assign[x] = v
            rec(i + 1)
            del assign[x]

    rec(0)
    results.sort(key=lambda h: h.mapping)
    return results
