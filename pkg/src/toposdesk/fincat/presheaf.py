"""Presheaves of finite sets, subpresheaves and natural transformations.

A presheaf ``X`` on ``C`` assigns to each object a finite list of element
labels, and to each arrow ``f: d -> c`` a function ``X(c) -> X(d)`` stored as a
tuple of indices.  We write ``x . f`` for the action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from ..algebra.lattice import FinHeyting, ResourceError
from .category import FinCategory


class PresheafError(ValueError):
    pass


DEFAULT_SUBOBJECT_GUARD = 10 ** 6


@dataclass(frozen=True, eq=False)
class Presheaf:
    category: FinCategory
    sets: tuple
    action: tuple

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(tuple(s) for s in self.sets))
        object.__setattr__(self, "action", tuple(tuple(int(i) for i in a) for a in self.action))
        self.verify()

    def verify(self):
        C = self.category
        if len(self.sets) != C.n_objects or len(self.action) != C.n_arrows:
            raise PresheafError("presheaf tables do not match the category")
        for f in range(C.n_arrows):
            a = self.action[f]
            if len(a) != len(self.sets[C.tgt[f]]):
                raise PresheafError(f"action of {C.arrows[f]} has the wrong domain")
            if any(not 0 <= i < len(self.sets[C.src[f]]) for i in a):
                raise PresheafError(f"action of {C.arrows[f]} leaves its codomain")
        for c, i in enumerate(C.ident):
            if self.action[i] != tuple(range(len(self.sets[c]))):
                raise PresheafError(f"identity on {C.objects[c]} does not act trivially")
        for (g, f), h in C.comp.items():
            ag, af, ah = self.action[g], self.action[f], self.action[h]
            if any(ah[x] != af[ag[x]] for x in range(len(ag))):
                raise PresheafError(
                    f"action does not respect {C.arrows[g]} o {C.arrows[f]} = {C.arrows[h]}")

    # --- constructors ------------------------------------------------------

    @classmethod
    def from_named(cls, C: FinCategory, sets: dict, maps: dict):
        """Build from element names: ``sets[obj] = [names]``, ``maps[arrow] = {x: y}``.

        Identity actions may be omitted.
        """
        elems = [list(sets.get(o, ())) for o in C.objects]
        action = []
        for f in range(C.n_arrows):
            c, d = C.tgt[f], C.src[f]
            name = C.arrows[f]
            if name in maps:
                m = maps[name]
                try:
                    action.append([elems[d].index(m[x]) for x in elems[c]])
                except (KeyError, ValueError) as e:
                    raise PresheafError(f"map for {name} is incomplete or leaves its codomain: {e}") from None
            elif f == C.ident[c]:
                action.append(list(range(len(elems[c]))))
            else:
                raise PresheafError(f"no action given for arrow {name}")
        return cls(C, elems, action)

    @classmethod
    def terminal(cls, C: FinCategory):
        return cls(C, [("*",)] * C.n_objects, [(0,)] * C.n_arrows)

    @classmethod
    def empty(cls, C: FinCategory):
        return cls(C, [()] * C.n_objects, [()] * C.n_arrows)

    @classmethod
    def representable(cls, C: FinCategory, c):
        """``y(c)``: ``y(c)(d) = C(d, c)`` acting by precomposition."""
        c = C.object_index(c)
        homs = [C.hom(d, c) for d in range(C.n_objects)]
        pos = [{f: i for i, f in enumerate(h)} for h in homs]
        action = []
        for u in range(C.n_arrows):
            d, e = C.src[u], C.tgt[u]
            action.append([pos[d][C.comp[(f, u)]] for f in homs[e]])
        sets = [tuple(C.arrows[f] for f in h) for h in homs]
        out = cls(C, sets, action)
        object.__setattr__(out, "_arrows", tuple(tuple(h) for h in homs))
        return out

    @classmethod
    def constant(cls, C: FinCategory, labels):
        labels = tuple(labels)
        return cls(C, [labels] * C.n_objects, [tuple(range(len(labels)))] * C.n_arrows)

    @classmethod
    def product(cls, factors):
        """Pointwise product; elements are tuples of factor indices."""
        factors = tuple(factors)
        if not factors:
            raise PresheafError("use Presheaf.terminal for the empty product")
        C = factors[0].category
        idx = []
        sets = []
        for c in range(C.n_objects):
            tuples = list(itertools.product(*[range(len(X.sets[c])) for X in factors]))
            idx.append({t: i for i, t in enumerate(tuples)})
            sets.append(tuple("(" + ",".join(str(X.sets[c][k]) for X, k in zip(factors, t)) + ")"
                              for t in tuples))
        action = []
        for f in range(C.n_arrows):
            c, d = C.tgt[f], C.src[f]
            tuples = list(itertools.product(*[range(len(X.sets[c])) for X in factors]))
            action.append([idx[d][tuple(X.action[f][k] for X, k in zip(factors, t))] for t in tuples])
        out = cls(C, sets, action)
        object.__setattr__(out, "_tuples", tuple(
            tuple(itertools.product(*[range(len(X.sets[c])) for X in factors])) for c in range(C.n_objects)))
        object.__setattr__(out, "_factors", factors)
        return out

    # --- queries -----------------------------------------------------------

    def act(self, x: int, f: int) -> int:
        return self.action[f][x]

    @property
    def size(self) -> int:
        return sum(len(s) for s in self.sets)

    @cached_property
    def _offsets(self):
        out, k = [], 0
        for s in self.sets:
            out.append(k)
            k += len(s)
        return tuple(out)

    def flat(self, c, x) -> int:
        return self._offsets[c] + x

    def unflat(self, k):
        for c in reversed(range(len(self.sets))):
            if k >= self._offsets[c]:
                return c, k - self._offsets[c]
        raise IndexError(k)

    @cached_property
    def orbit_masks(self) -> tuple:
        """For each flat element ``x``, the bitmask of ``{x . f}`` over all arrows."""
        C = self.category
        out = []
        for c in range(C.n_objects):
            for x in range(len(self.sets[c])):
                m = 0
                for f in C.into(c):
                    m |= 1 << self.flat(C.src[f], self.action[f][x])
                out.append(m)
        return tuple(out)

    def tuple_of(self, c, x):
        return self._tuples[c][x]

    def describe(self) -> str:
        parts = [f"{o}: {{{', '.join(map(str, s))}}}" for o, s in zip(self.category.objects, self.sets)]
        return "; ".join(parts)


@dataclass(frozen=True, eq=False)
class Subpresheaf:
    parent: Presheaf
    parts: tuple

    def __post_init__(self):
        parts = tuple(frozenset(int(x) for x in p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        X, C = self.parent, self.parent.category
        if len(parts) != C.n_objects:
            raise PresheafError("subpresheaf has the wrong number of components")
        for c, p in enumerate(parts):
            if any(not 0 <= x < len(X.sets[c]) for x in p):
                raise PresheafError("subpresheaf element outside the parent")
        for f in range(C.n_arrows):
            c, d = C.tgt[f], C.src[f]
            for x in parts[c]:
                if X.action[f][x] not in parts[d]:
                    raise PresheafError(f"not closed under the action of {C.arrows[f]}")

    @classmethod
    def _trusted(cls, X: Presheaf, parts):
        """Skip the closure check; for results of operations that preserve it."""
        out = object.__new__(cls)
        object.__setattr__(out, "parent", X)
        object.__setattr__(out, "parts", tuple(parts))
        return out

    @classmethod
    def full(cls, X: Presheaf):
        return cls(X, [range(len(s)) for s in X.sets])

    @classmethod
    def empty(cls, X: Presheaf):
        return cls(X, [()] * len(X.sets))

    @classmethod
    def from_mask(cls, X: Presheaf, mask: int):
        parts = [[] for _ in X.sets]
        for c in range(len(X.sets)):
            for x in range(len(X.sets[c])):
                if mask >> X.flat(c, x) & 1:
                    parts[c].append(x)
        return cls(X, parts)

    @property
    def mask(self) -> int:
        m = 0
        for c, p in enumerate(self.parts):
            for x in p:
                m |= 1 << self.parent.flat(c, x)
        return m

    def __le__(self, other: "Subpresheaf") -> bool:
        _same_parent(self, other)
        return all(a <= b for a, b in zip(self.parts, other.parts))

    def __eq__(self, other):
        if not isinstance(other, Subpresheaf):
            return NotImplemented
        return self.parent is other.parent and self.parts == other.parts

    def __hash__(self):
        return hash((id(self.parent), self.parts))

    def meet(self, other):
        _same_parent(self, other)
        return Subpresheaf._trusted(self.parent, [a & b for a, b in zip(self.parts, other.parts)])

    def join(self, other):
        _same_parent(self, other)
        return Subpresheaf._trusted(self.parent, [a | b for a, b in zip(self.parts, other.parts)])

    def is_full(self) -> bool:
        return all(len(p) == len(s) for p, s in zip(self.parts, self.parent.sets))

    def is_empty(self) -> bool:
        return not any(self.parts)

    def describe(self) -> str:
        X = self.parent
        return "; ".join(f"{o}: {{{', '.join(str(X.sets[c][x]) for x in sorted(p))}}}"
                         for c, (o, p) in enumerate(zip(X.category.objects, self.parts)))


def _same_parent(a, b):
    if a.parent is not b.parent:
        raise PresheafError("subpresheaves of different parents")


def heyting_implication(A: Subpresheaf, B: Subpresheaf) -> Subpresheaf:
    """``(A => B)(c) = {x : for all f: d -> c, x.f in A(d) implies x.f in B(d)}``."""
    _same_parent(A, B)
    X, C = A.parent, A.parent.category
    parts = []
    for c in range(C.n_objects):
        keep = []
        for x in range(len(X.sets[c])):
            if all(X.action[f][x] not in A.parts[C.src[f]] or X.action[f][x] in B.parts[C.src[f]]
                   for f in C.into(c)):
                keep.append(x)
        parts.append(keep)
    return Subpresheaf(X, parts)


def negation(A: Subpresheaf) -> Subpresheaf:
    return heyting_implication(A, Subpresheaf.empty(A.parent))


# ---------------------------------------------------------------------------
# Natural transformations and the quantifier adjoints
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NatTrans:
    source: Presheaf
    target: Presheaf
    components: tuple

    def __post_init__(self):
        comps = tuple(tuple(int(i) for i in c) for c in self.components)
        object.__setattr__(self, "components", comps)
        X, Y = self.source, self.target
        C = X.category
        if Y.category is not C:
            raise PresheafError("natural transformation between presheaves on different categories")
        if len(comps) != C.n_objects:
            raise PresheafError("wrong number of components")
        for c in range(C.n_objects):
            if len(comps[c]) != len(X.sets[c]) or any(not 0 <= y < len(Y.sets[c]) for y in comps[c]):
                raise PresheafError(f"component at {C.objects[c]} is not a function X(c) -> Y(c)")
        for f in range(C.n_arrows):
            c, d = C.tgt[f], C.src[f]
            for x in range(len(X.sets[c])):
                if comps[d][X.action[f][x]] != Y.action[f][comps[c][x]]:
                    raise PresheafError(f"not natural at arrow {C.arrows[f]}")

    @classmethod
    def identity(cls, X: Presheaf):
        return cls(X, X, [range(len(s)) for s in X.sets])

    @classmethod
    def to_terminal(cls, X: Presheaf, one: Presheaf | None = None):
        one = one or Presheaf.terminal(X.category)
        return cls(X, one, [[0] * len(s) for s in X.sets])

    def __call__(self, c, x):
        return self.components[c][x]

    def then(self, other: "NatTrans") -> "NatTrans":
        if other.source is not self.target:
            raise PresheafError("composable transformations must share the middle presheaf")
        return NatTrans(self.source, other.target,
                        [[other.components[c][y] for y in comp] for c, comp in enumerate(self.components)])


def pullback(h: NatTrans, B: Subpresheaf) -> Subpresheaf:
    if B.parent is not h.target:
        raise PresheafError("subpresheaf is not of the codomain")
    X = h.source
    return Subpresheaf(X, [[x for x in range(len(X.sets[c])) if h.components[c][x] in B.parts[c]]
                           for c in range(len(X.sets))])


def exists_along(h: NatTrans, A: Subpresheaf) -> Subpresheaf:
    """Image of ``A`` under ``h``; left adjoint to pullback."""
    if A.parent is not h.source:
        raise PresheafError("subpresheaf is not of the domain")
    return Subpresheaf(h.target, [{h.components[c][x] for x in A.parts[c]} for c in range(len(A.parts))])


def forall_along(h: NatTrans, A: Subpresheaf) -> Subpresheaf:
    """``{y : for all f: d -> c and x in X(d) with h(x) = y.f, x in A(d)}``; right adjoint to pullback."""
    if A.parent is not h.source:
        raise PresheafError("subpresheaf is not of the domain")
    X, Y = h.source, h.target
    C = X.category
    fibres = [{} for _ in range(C.n_objects)]
    for d in range(C.n_objects):
        for x in range(len(X.sets[d])):
            fibres[d].setdefault(h.components[d][x], []).append(x)
    parts = []
    for c in range(C.n_objects):
        keep = []
        for y in range(len(Y.sets[c])):
            ok = True
            for f in C.into(c):
                d = C.src[f]
                if any(x not in A.parts[d] for x in fibres[d].get(Y.action[f][y], ())):
                    ok = False
                    break
            if ok:
                keep.append(y)
        parts.append(keep)
    return Subpresheaf(Y, parts)


def projection(P: Presheaf, keep) -> tuple:
    """Projection from a product presheaf onto the factors listed in ``keep``.

    Returns ``(target_presheaf, NatTrans)``; keeping no factors maps to the terminal.
    """
    keep = tuple(keep)
    C = P.category
    if keep:
        T = Presheaf.product([P._factors[i] for i in keep])
    else:
        T = Presheaf.terminal(C)
    comps = []
    for c in range(C.n_objects):
        row = []
        for t in P._tuples[c]:
            if keep:
                row.append(T._tuples[c].index(tuple(t[i] for i in keep)))
            else:
                row.append(0)
        comps.append(row)
    return T, NatTrans(P, T, comps)


# ---------------------------------------------------------------------------
# Subobject lattices
# ---------------------------------------------------------------------------

def union_closure(generators, guard: int) -> list:
    """All unions of subfamilies of ``generators`` (int bitmasks), sorted, including 0."""
    found = {0}
    for g in sorted(set(generators)):
        new = {x | g for x in found} - found
        found |= new
        if len(found) > guard:
            raise ResourceError(f"more than {guard} sets in the union closure")
    return sorted(found, key=lambda m: (bin(m).count("1"), m))


@dataclass(frozen=True, eq=False)
class SubobjectLattice:
    algebra: FinHeyting
    subobjects: tuple
    parent: Presheaf

    def index(self, A: Subpresheaf) -> int:
        return self._index[A.mask]

    @cached_property
    def _index(self):
        return {s.mask: i for i, s in enumerate(self.subobjects)}

    def __getitem__(self, i) -> Subpresheaf:
        return self.subobjects[i]


def subobject_lattice(X: Presheaf, guard: int = DEFAULT_SUBOBJECT_GUARD) -> SubobjectLattice:
    """All subpresheaves of ``X`` ordered by inclusion, with their Heyting structure."""
    masks = union_closure(X.orbit_masks, guard)
    subs = tuple(Subpresheaf.from_mask(X, m) for m in masks)
    alg = FinHeyting.from_sets(masks, [s.describe() for s in subs])
    return SubobjectLattice(alg, subs, X)
