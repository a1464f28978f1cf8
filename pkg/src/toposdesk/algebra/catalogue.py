"""Enumeration of small posets and finite distributive lattices up to isomorphism.

Every finite Heyting algebra is a finite distributive lattice, and every finite
distributive lattice is the lattice of down-sets of its poset of
join-irreducibles.  So listing posets up to isomorphism lists the algebras.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx
import numpy as np

from .lattice import FinHeyting, downset_masks


def _graph(leq):
    g = nx.DiGraph()
    g.add_nodes_from(range(len(leq)))
    g.add_edges_from((int(a), int(b)) for a, b in zip(*np.nonzero(leq)) if a != b)
    return g


class _IsoIndex:
    """Buckets graphs by cheap invariants, resolving collisions with a full isomorphism test."""

    def __init__(self):
        self.buckets = {}

    def add(self, leq, extra=()) -> bool:
        g = _graph(leq)
        key = (len(leq), g.number_of_edges(), extra,
               tuple(sorted((d_in, d_out) for (_, d_in), (_, d_out) in zip(g.in_degree, g.out_degree))),
               nx.weisfeiler_lehman_graph_hash(g, iterations=3))
        bucket = self.buckets.setdefault(key, [])
        for other in bucket:
            if nx.is_isomorphic(g, other):
                return False
        bucket.append(g)
        return True


def _extend(leq, down_mask):
    n = len(leq)
    out = np.zeros((n + 1, n + 1), dtype=bool)
    out[:n, :n] = leq
    out[n, n] = True
    for x in range(n):
        if down_mask >> x & 1:
            out[x, n] = True
    return out


def posets(max_size: int, max_downsets: int | None = None) -> list:
    """Posets (as order tables) up to isomorphism, by increasing size.

    With ``max_downsets`` set, only posets with at most that many down-sets are
    kept; since adding an element never removes down-sets, this prunes the
    whole search tree.
    """
    level = [np.ones((0, 0), dtype=bool)]
    out = list(level)
    for _ in range(max_size):
        index = _IsoIndex()
        nxt = []
        for leq in level:
            for d in downset_masks(leq):
                new = _extend(leq, d)
                if max_downsets is not None:
                    count = len(downset_masks(new))
                    if count > max_downsets:
                        continue
                else:
                    count = None
                if index.add(new, (count,)):
                    nxt.append(new)
        if not nxt:
            break
        out.extend(nxt)
        level = nxt
    return out


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    algebra: FinHeyting
    ji_poset: np.ndarray

    @property
    def size(self):
        return self.algebra.n


def _entry_name(leq, alg, serial):
    n = len(leq)
    if alg.is_chain():
        return f"chain{alg.n}"
    if alg.is_boolean():
        return f"B{n}"
    return f"D{alg.n}.{serial}"


@lru_cache(maxsize=None)
def distributive_lattices(max_size: int) -> tuple:
    """All finite distributive lattices with at most ``max_size`` elements, up to isomorphism."""
    found = []
    for leq in posets(max(max_size - 1, 0), max_downsets=max_size):
        masks = downset_masks(leq)
        if len(masks) > max_size:
            continue
        alg = FinHeyting.from_sets(masks)
        found.append((alg.n, leq, alg))
    found.sort(key=lambda t: t[0])
    serial = {}
    out = []
    for size, leq, alg in found:
        serial[size] = serial.get(size, 0) + 1
        name = _entry_name(leq, alg, serial[size])
        labels = _downset_labels(leq, masks=downset_masks(leq))
        out.append(CatalogueEntry(name, alg.relabel(labels), leq))
    return tuple(out)


def _downset_labels(leq, masks):
    # label a down-set by its maximal join-irreducibles
    out = []
    for m in masks:
        members = [x for x in range(len(leq)) if m >> x & 1]
        maxi = [x for x in members if not any(y != x and leq[x, y] for y in members)]
        out.append("{" + ",".join(f"j{x}" for x in maxi) + "}" if members else "0")
    return out


def heyting_catalogue(max_size: int) -> tuple:
    """Alias: finite Heyting algebras are exactly the finite distributive lattices."""
    return distributive_lattices(max_size)


def boolean_catalogue(max_size: int) -> tuple:
    return tuple(e for e in distributive_lattices(max_size) if e.algebra.is_boolean())


@lru_cache(maxsize=None)
def rooted_posets(max_nodes: int) -> tuple:
    """Rooted posets (node 0 below everything) with 1..max_nodes nodes, up to isomorphism.

    A rooted poset is a poset with a new least element adjoined, so these come
    from the posets with one node fewer.  Order: by size, then generation order.
    """
    out = []
    for leq in posets(max_nodes - 1):
        n = len(leq)
        r = np.zeros((n + 1, n + 1), dtype=bool)
        r[0, :] = True
        r[1:, 1:] = leq
        out.append(r)
    out.sort(key=len)
    return tuple(out)
