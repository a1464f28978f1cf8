"""Finite categories given by explicit composition tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np


class CategoryError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FinCategory:
    """Objects and arrows are indexed by integers; ``comp[(g, f)]`` is ``g o f``.

    ``g o f`` is defined when ``tgt[f] == src[g]``.
    """
    objects: tuple
    arrows: tuple
    src: tuple
    tgt: tuple
    ident: tuple
    comp: dict

    def __post_init__(self):
        for name in ("objects", "arrows", "src", "tgt", "ident"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "comp", dict(self.comp))

    # --- construction -----------------------------------------------------

    @classmethod
    def build(cls, objects, arrows, compose):
        """``arrows`` is a list of ``(name, src_name, tgt_name)`` excluding identities;
        ``compose`` maps ``(g_name, f_name)`` to a name, identities handled automatically."""
        objects = tuple(objects)
        opos = {o: i for i, o in enumerate(objects)}
        names = [f"id_{o}" for o in objects]
        src = list(range(len(objects)))
        tgt = list(range(len(objects)))
        for name, s, t in arrows:
            if s not in opos or t not in opos:
                raise CategoryError(f"arrow {name} uses an unknown object")
            if name in names:
                raise CategoryError(f"arrow name {name} used twice")
            names.append(name)
            src.append(opos[s])
            tgt.append(opos[t])
        apos = {n: i for i, n in enumerate(names)}
        ident = tuple(range(len(objects)))
        comp = {}
        for g in range(len(names)):
            for f in range(len(names)):
                if tgt[f] != src[g]:
                    continue
                if g == ident[src[g]]:
                    comp[(g, f)] = f
                elif f == ident[tgt[f]]:
                    comp[(g, f)] = g
                else:
                    key = (names[g], names[f])
                    if key not in compose:
                        raise CategoryError(f"composite {names[g]} o {names[f]} not given")
                    h = compose[key]
                    if h not in apos:
                        raise CategoryError(f"composite {names[g]} o {names[f]} = unknown arrow {h}")
                    comp[(g, f)] = apos[h]
        cat = cls(objects, tuple(names), tuple(src), tuple(tgt), ident, comp)
        cat.verify()
        return cat

    @classmethod
    def from_poset(cls, leq, labels: Sequence[str] | None = None):
        """The category with one arrow ``b -> a`` whenever ``b <= a``.

        The table is correct by construction, so the quadratic ``verify`` is skipped.
        """
        leq = np.asarray(leq, dtype=bool)
        n = len(leq)
        labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        pairs = [(b, a) for a in range(n) for b in range(n) if leq[b, a]]
        # identities first so that ident[c] == c
        pairs.sort(key=lambda p: (p[0] != p[1], p[1], p[0]))
        pos = {p: i for i, p in enumerate(pairs)}
        names = tuple(f"{labels[b]}<={labels[a]}" if a != b else f"id_{labels[a]}" for b, a in pairs)
        src = tuple(b for b, _ in pairs)
        tgt = tuple(a for _, a in pairs)
        ident = tuple(pos[(i, i)] for i in range(n))
        comp = {}
        by_tgt = {}
        for i, (b, a) in enumerate(pairs):
            by_tgt.setdefault(a, []).append(i)
        for g, (b, a) in enumerate(pairs):
            for f in by_tgt.get(b, ()):
                c = pairs[f][0]
                comp[(g, f)] = pos[(c, a)]
        cat = cls(labels, names, src, tgt, ident, comp)
        object.__setattr__(cat, "_poset", leq)
        return cat

    @classmethod
    def monoid(cls, elements: Sequence[str], table: dict, unit: str, name: str = "*"):
        """One-object category; ``table[(x, y)]`` is the product ``x . y`` (= ``x o y``)."""
        others = [e for e in elements if e != unit]
        arrows = [(e, name, name) for e in others]
        compose = {(x, y): table[(x, y)] for x in others for y in others}
        compose = {k: (f"id_{name}" if v == unit else v) for k, v in compose.items()}
        return cls.build([name], arrows, compose)

    @classmethod
    def discrete(cls, n: int):
        return cls.build([f"c{i}" for i in range(n)], [], {})

    @classmethod
    def cyclic_group(cls, n: int):
        elems = [f"g{i}" for i in range(n)]
        table = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
        return cls.monoid(elems, table, "g0")

    # --- checks -----------------------------------------------------------

    def verify(self) -> None:
        n_obj, n_arr = len(self.objects), len(self.arrows)
        if len(self.src) != n_arr or len(self.tgt) != n_arr or len(self.ident) != n_obj:
            raise CategoryError("inconsistent table sizes")
        for c, i in enumerate(self.ident):
            if self.src[i] != c or self.tgt[i] != c:
                raise CategoryError(f"identity of {self.objects[c]} has wrong ends")
        for f in range(n_arr):
            for g in range(n_arr):
                defined = (g, f) in self.comp
                if defined != (self.tgt[f] == self.src[g]):
                    raise CategoryError("composition table does not match arrow ends")
                if defined:
                    h = self.comp[(g, f)]
                    if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                        raise CategoryError(f"{self.arrows[g]} o {self.arrows[f]} has wrong ends")
        for f in range(n_arr):
            if self.comp[(self.ident[self.tgt[f]], f)] != f or self.comp[(f, self.ident[self.src[f]])] != f:
                raise CategoryError(f"identity law fails at {self.arrows[f]}")
        for (g, f), gf in self.comp.items():
            for h in self.out_of(self.tgt[g]):
                if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                    raise CategoryError("composition is not associative")

    # --- queries ----------------------------------------------------------

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_arrows(self):
        return len(self.arrows)

    def object_index(self, name) -> int:
        if isinstance(name, int):
            return name
        return self.objects.index(name)

    def arrow_index(self, name) -> int:
        if isinstance(name, int):
            return name
        return self.arrows.index(name)

    @cached_property
    def _into(self):
        out = [[] for _ in self.objects]
        for f, t in enumerate(self.tgt):
            out[t].append(f)
        return tuple(tuple(x) for x in out)

    @cached_property
    def _out(self):
        out = [[] for _ in self.objects]
        for f, s in enumerate(self.src):
            out[s].append(f)
        return tuple(tuple(x) for x in out)

    def into(self, c) -> tuple:
        """Arrows with target ``c``."""
        return self._into[c]

    def out_of(self, c) -> tuple:
        return self._out[c]

    def hom(self, d, c) -> list:
        return [f for f in self._into[c] if self.src[f] == d]

    def compose(self, g, f) -> int:
        return self.comp[(g, f)]

    @cached_property
    def generated_masks(self) -> tuple:
        """Bitmask of the principal sieve ``{f o g}`` generated by each arrow ``f``."""
        out = []
        for f in range(self.n_arrows):
            m = 0
            for g in self._into[self.src[f]]:
                m |= 1 << self.comp[(f, g)]
            out.append(m)
        return tuple(out)

    def factors_through(self, f, h) -> bool:
        """Is ``f = h o g`` for some ``g``?"""
        return bool(self.generated_masks[h] >> f & 1)

    def has_arrow(self, d, c) -> bool:
        return any(self.src[f] == d for f in self._into[c])

    @property
    def is_poset(self) -> bool:
        return hasattr(self, "_poset")

    def is_groupoid(self) -> bool:
        for f in range(self.n_arrows):
            if not any(self.comp.get((g, f)) == self.ident[self.src[f]]
                       and self.comp.get((f, g)) == self.ident[self.tgt[f]]
                       for g in self.hom(self.tgt[f], self.src[f])):
                return False
        return True

    def describe(self) -> str:
        return f"category with {self.n_objects} objects and {self.n_arrows} arrows"


def monoid_one_e() -> FinCategory:
    """The two-element monoid ``{1, e}`` with ``e . e = e``."""
    return FinCategory.monoid(["1", "e"], {("e", "e"): "e"}, "1")
