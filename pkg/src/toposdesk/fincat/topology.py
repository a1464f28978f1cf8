"""Sieves and Grothendieck topologies on finite categories.

On a finite category every Grothendieck topology is determined by one sieve
per object, the intersection of all covering sieves (covering sieves are closed
under finite intersection).  A ``Topology`` stores exactly these minimal
sieves, so "S covers c" means "S contains the minimal sieve on c".
Sieves are handled internally as int bitmasks over global arrow indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from ..algebra.lattice import FinHeyting, LatticeError
from .category import FinCategory
from .presheaf import union_closure


class TopologyError(ValueError):
    pass


DEFAULT_SIEVE_GUARD = 10 ** 6


def bits(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(arrows) -> int:
    m = 0
    for f in arrows:
        m |= 1 << f
    return m


@dataclass(frozen=True)
class Sieve:
    target: int
    arrows: frozenset

    def __post_init__(self):
        object.__setattr__(self, "arrows", frozenset(self.arrows))

    @property
    def mask(self) -> int:
        return mask_of(self.arrows)

    def describe(self, C: FinCategory) -> str:
        return "{" + ", ".join(C.arrows[f] for f in sorted(self.arrows)) + "}"


def into_mask(C: FinCategory, c: int) -> int:
    return mask_of(C.into(c))


def is_sieve(C: FinCategory, c: int, mask: int) -> bool:
    if mask & ~into_mask(C, c):
        return False
    return all((C.generated_masks[f] & ~mask) == 0 for f in bits(mask))


def generated(C: FinCategory, arrows) -> int:
    m = 0
    for f in arrows:
        m |= C.generated_masks[f]
    return m


def pullback_sieve(C: FinCategory, f: int, mask: int) -> int:
    """``f*(S) = {g : f o g in S}`` for ``f: d -> c`` and a sieve ``S`` on ``c``."""
    out = 0
    for g in C.into(C.src[f]):
        if mask >> C.comp[(f, g)] & 1:
            out |= 1 << g
    return out


def all_sieves(C: FinCategory, c: int, guard: int = DEFAULT_SIEVE_GUARD) -> list:
    """Every sieve on ``c`` as a bitmask (unions of principal sieves)."""
    return union_closure([C.generated_masks[f] for f in C.into(c)], guard)


@dataclass(frozen=True, eq=False)
class Topology:
    category: FinCategory
    minimal: tuple          # bitmask per object
    name: str = "J"

    def __post_init__(self):
        object.__setattr__(self, "minimal", tuple(int(m) for m in self.minimal))
        self.verify()

    def covers(self, c: int, mask: int) -> bool:
        return (self.minimal[c] & ~mask) == 0

    def minimal_sieve(self, c: int) -> Sieve:
        return Sieve(c, frozenset(bits(self.minimal[c])))

    def verify(self) -> None:
        """Maximality, pullback stability and transitivity, checked on the minimal sieves.

        For a topology given by minimal sieves ``m``: the maximal sieve covers iff
        each ``m(c)`` is a sieve on ``c``; stability iff ``f*(m(c))`` contains
        ``m(dom f)`` for every ``f``; transitivity iff the composites
        ``{f o g : f in m(c), g in m(dom f)}`` generate a sieve containing ``m(c)``.
        """
        C = self.category
        if len(self.minimal) != C.n_objects:
            raise TopologyError("one minimal sieve per object required")
        for c in range(C.n_objects):
            if not is_sieve(C, c, self.minimal[c]):
                raise TopologyError(f"minimal sieve on {C.objects[c]} is not a sieve")
        for f in range(C.n_arrows):
            c, d = C.tgt[f], C.src[f]
            if self.minimal[d] & ~pullback_sieve(C, f, self.minimal[c]):
                raise TopologyError(f"not stable under pullback along {C.arrows[f]}")
        for c in range(C.n_objects):
            comp = 0
            for f in bits(self.minimal[c]):
                for g in bits(self.minimal[C.src[f]]):
                    comp |= 1 << C.comp[(f, g)]
            if self.minimal[c] & ~generated(C, bits(comp)):
                raise TopologyError(f"not transitive at {C.objects[c]}")

    def le(self, other: "Topology") -> bool:
        """Is every covering sieve of ``self`` covering for ``other``?"""
        return all((m2 & ~m1) == 0 for m1, m2 in zip(self.minimal, other.minimal))

    def __eq__(self, other):
        if not isinstance(other, Topology):
            return NotImplemented
        return self.category is other.category and self.minimal == other.minimal

    def __hash__(self):
        return hash((id(self.category), self.minimal))

    def covering_sieves(self, c: int, guard: int = DEFAULT_SIEVE_GUARD) -> list:
        return [s for s in all_sieves(self.category, c, guard) if self.covers(c, s)]

    # closure -------------------------------------------------------------

    @cached_property
    def _test_masks(self):
        """For each arrow ``f``: bitmask of ``{f o g : g in m(dom f)}``."""
        C = self.category
        out = []
        for f in range(C.n_arrows):
            m = 0
            for g in bits(self.minimal[C.src[f]]):
                m |= 1 << C.comp[(f, g)]
            out.append(m)
        return tuple(out)

    def closure(self, c: int, mask: int) -> int:
        """Least closed sieve containing ``mask``: ``{f : f*(S) covers dom f}``."""
        tm = self._test_masks
        out = 0
        for f in self.category.into(c):
            if (tm[f] & ~mask) == 0:
                out |= 1 << f
        return out

    def is_closed(self, c: int, mask: int) -> bool:
        return self.closure(c, mask) == mask


def from_minimal(C: FinCategory, minimal, name="J") -> Topology:
    return Topology(C, tuple(minimal), name)


def from_covering(C: FinCategory, covers: Callable[[int, int], bool], name="J") -> Topology:
    """Topology from a covering predicate ``covers(c, sieve_mask)``.

    An arrow ``f`` into ``c`` lies in every covering sieve iff the largest sieve
    avoiding ``f`` (the arrows through which ``f`` does not factor) fails to cover.
    """
    minimal = []
    for c in range(C.n_objects):
        m = 0
        for f in C.into(c):
            avoid = 0
            for h in C.into(c):
                if not C.factors_through(f, h):
                    avoid |= 1 << h
            if not covers(c, avoid):
                m |= 1 << f
        minimal.append(m)
    return Topology(C, tuple(minimal), name)


def trivial_topology(C: FinCategory) -> Topology:
    """Only maximal sieves cover."""
    return Topology(C, tuple(into_mask(C, c) for c in range(C.n_objects)), "trivial")


def is_dense(C: FinCategory, c: int, mask: int) -> bool:
    """Every arrow into ``c`` has a further arrow landing in the sieve."""
    return all(C.generated_masks[f] & mask for f in C.into(c))


def negneg_topology(C: FinCategory) -> Topology:
    """The double-negation (dense) topology.

    The least dense sieve on ``c`` consists of the arrows that are minimal in the
    factorization preorder: ``f`` such that ``f`` factors through everything
    that factors through ``f``.
    """
    minimal = []
    gm = C.generated_masks
    for c in range(C.n_objects):
        m = 0
        for f in C.into(c):
            if all(gm[h] >> f & 1 for h in bits(gm[f])):
                m |= 1 << f
        minimal.append(m)
    return Topology(C, tuple(minimal), "J_negneg")


# ---------------------------------------------------------------------------
# The covering topology on a lattice
# ---------------------------------------------------------------------------

def jkappa_topology(L: FinHeyting, objects=None) -> Topology:
    """Finite-join covering topology on (a full subposet of) a finite lattice.

    The site is the full subcategory of ``L`` on ``objects`` (default: all).
    A sieve on ``a`` covers when the join, computed in ``L``, of its members is
    ``a``; on a proper subposet this is the induced topology.
    """
    if not hasattr(L, "join"):
        raise LatticeError("covering topology needs finite joins")
    objects = list(range(L.n)) if objects is None else list(objects)
    sub = L.leq[objects][:, objects]
    labels = [L.labels[o] for o in objects]
    C = FinCategory.from_poset(sub, labels)
    minimal = []
    for ci, a in enumerate(objects):
        m = 0
        arrows = C.into(ci)
        for f in arrows:
            b = objects[C.src[f]]
            # join of members of the largest sieve avoiding b
            j = L.bottom
            for h in arrows:
                x = objects[C.src[h]]
                if not L.leq[b, x]:
                    j = int(L.join[j, x])
            if j != a:
                m |= 1 << f
        minimal.append(m)
    J = Topology(C, tuple(minimal), "J_kappa")
    object.__setattr__(J, "lattice", L)
    object.__setattr__(J, "embedding", tuple(objects))
    return J


def jkappa_covers_literal(J: Topology, c: int, mask: int) -> bool:
    """Direct join test, for cross-checking the minimal-sieve representation."""
    L, emb, C = J.lattice, J.embedding, J.category
    j = L.bottom
    for f in bits(mask):
        j = int(L.join[j, emb[C.src[f]]])
    return j == emb[c]


def arrow_to(C: FinCategory, d: int, c: int) -> int:
    """The unique arrow ``d -> c`` of a poset category."""
    hs = C.hom(d, c)
    if len(hs) != 1:
        raise TopologyError("not a poset category or no arrow")
    return hs[0]


def principal(C: FinCategory, d: int, c: int) -> int:
    """The sieve on ``c`` generated by the arrow ``d -> c`` (a down-set ``down(d)``)."""
    return C.generated_masks[arrow_to(C, d, c)]


# ---------------------------------------------------------------------------
# Closed sieves
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClosedSieves:
    algebra: FinHeyting
    sieves: tuple            # bitmasks, aligned with algebra elements
    target: int
    topology: Topology

    def index(self, mask: int) -> int:
        return self._index[mask]

    @cached_property
    def _index(self):
        return {m: i for i, m in enumerate(self.sieves)}

    def closure(self, mask: int) -> int:
        return self.topology.closure(self.target, mask)

    def element_of(self, mask: int) -> int:
        """Algebra element for the closure of an arbitrary sieve."""
        return self._index[self.closure(mask)]


def closed_sieves(C: FinCategory, J: Topology, c, guard: int = DEFAULT_SIEVE_GUARD) -> ClosedSieves:
    """All ``J``-closed sieves on ``c`` ordered by inclusion, as a Heyting algebra.

    ``closure(S)`` only inspects ``S`` on ``Q = {f o g : g in m(dom f)}``, and
    ``S`` meets ``Q`` in a set closed downward under factorization.  Each closed
    sieve therefore arises as the closure of a union of sets ``<q> & Q``.
    """
    c = C.object_index(c)
    if J.category is not C:
        raise TopologyError("topology lives on a different category")
    q_mask = 0
    for f in C.into(c):
        q_mask |= J._test_masks[f]
    gens = [C.generated_masks[q] & q_mask for q in bits(q_mask)]
    pieces = union_closure(gens, guard)
    closed = sorted({J.closure(c, generated(C, bits(p))) for p in pieces},
                    key=lambda m: (bin(m).count("1"), m))
    leq = [[(a & ~b) == 0 for b in closed] for a in closed]
    labels = [Sieve(c, bits(m)).describe(C) for m in closed]
    alg = FinHeyting.from_order(leq, labels)
    return ClosedSieves(alg, tuple(closed), c, J)


def is_boolean_site(C: FinCategory, J: Topology) -> bool:
    """Is every closed-sieve lattice Boolean?"""
    return all(closed_sieves(C, J, c).algebra.is_boolean() for c in range(C.n_objects))


# ---------------------------------------------------------------------------
# Yoneda into closed sieves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class YonedaVerdict:
    ok: bool
    obj: int = None
    op: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def yoneda_check(L: FinHeyting, J: Topology | None = None) -> YonedaVerdict:
    """``a |-> closure(down a)`` embeds each slice ``down c`` into the closed sieves on ``c``
    preserving bottom, top, meets, joins and (relative) implication."""
    J = jkappa_topology(L) if J is None else J
    C = J.category
    emb = J.embedding
    pos = {o: i for i, o in enumerate(emb)}
    for c in range(C.n_objects):
        cs = closed_sieves(C, J, c)
        H = cs.algebra
        a_c = emb[c]
        below = [x for x in emb if L.leq[x, a_c]]
        image = {a: cs.element_of(principal(C, pos[a], c)) for a in below}
        if len(set(image.values())) != len(below):
            return YonedaVerdict(False, c, "injective", tuple(below))
        if image[a_c] != H.top:
            return YonedaVerdict(False, c, "top", (a_c,))
        if L.bottom in image and image[L.bottom] != H.bottom:
            return YonedaVerdict(False, c, "bottom", (L.bottom,))
        for a in below:
            for b in below:
                checks = (
                    ("meet", int(L.meet[a, b]), H.meet[image[a], image[b]]),
                    ("join", int(L.join[a, b]), H.join[image[a], image[b]]),
                    ("imp", int(L.meet[L.imp[a, b], a_c]), H.imp[image[a], image[b]]),
                )
                for op, val, expect in checks:
                    if val not in image or image[val] != expect:
                        return YonedaVerdict(False, c, op, (a, b))
    return YonedaVerdict(True)


# ---------------------------------------------------------------------------
# Booleanness, two-valuedness, Boolean core
# ---------------------------------------------------------------------------

def subterminals(C: FinCategory) -> list:
    """Subobjects of the terminal presheaf: object sets closed under incoming arrows."""
    gens = []
    for c in range(C.n_objects):
        m = 0
        for f in C.into(c):
            m |= 1 << C.src[f]
        gens.append(m)
    return union_closure(gens, DEFAULT_SIEVE_GUARD)


def is_two_valued(C: FinCategory) -> bool:
    return len(subterminals(C)) == 2


@dataclass(frozen=True)
class BooleanCore:
    objects: frozenset
    classification: tuple     # per object: why it is in or out of the core

    def describe(self, C: FinCategory) -> str:
        if not self.objects:
            return "U = {} (trivial)"
        return "U = {" + ", ".join(C.objects[c] for c in sorted(self.objects)) + "}"


def boolean_core(C: FinCategory) -> BooleanCore:
    """Largest set of objects, closed under incoming arrows, on which only maximal
    sieves are dense."""
    J = negneg_topology(C)
    bad = {c for c in range(C.n_objects) if J.minimal[c] != into_mask(C, c)}
    core = set()
    cls = []
    for c in range(C.n_objects):
        if c in bad:
            cls.append("proper dense sieve")
        elif any(C.has_arrow(d, c) for d in bad):
            cls.append("receives arrow from excluded object")
        else:
            cls.append("in core")
            core.add(c)
    return BooleanCore(frozenset(core), tuple(cls))
