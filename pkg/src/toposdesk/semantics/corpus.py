"""Deterministic formula and sequent corpora."""

from __future__ import annotations

import itertools
import random

from ..syntax import And, Bot, Formula, Imp, Or, Sequent, Top, atom


def formula_corpus(atoms, depth: int, connectives=("and", "or", "imp"), constants=True,
                   limit: int | None = None) -> list:
    """All formulas over ``atoms`` built with binary connectives up to ``depth``, level by level.

    Depth 0 is the atoms (and top/bot when ``constants``).  The order is fixed
    by construction, so the corpus is reproducible.  ``limit`` truncates.
    """
    level = [atom(a) for a in atoms] + ([Top(), Bot()] if constants else [])
    seen = set(level)
    out = list(level)
    layers = [list(level)]
    for d in range(1, depth + 1):
        new = []
        older = [f for layer in layers for f in layer]
        last = set(layers[-1])
        for a, b in itertools.product(older, repeat=2):
            if a not in last and b not in last:
                continue
            for c in connectives:
                f = {"and": lambda: And((a, b)), "or": lambda: Or((a, b)), "imp": lambda: Imp(a, b)}[c]()
                if f not in seen:
                    seen.add(f)
                    new.append(f)
                    if limit is not None and len(out) + len(new) >= limit:
                        return out + new
        layers.append(new)
        out.extend(new)
    return out


def random_formula(rng: random.Random, atoms, depth: int, infinitary: bool = True,
                   geometric: bool = False) -> Formula:
    """A random propositional formula of depth at most ``depth``.

    With ``infinitary`` the generator also emits tagged families of 0..3 parts.
    With ``geometric`` it avoids implication, negation and tagged conjunction.
    """
    if depth == 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.08:
            return Top()
        if r < 0.16:
            return Bot()
        return atom(rng.choice(list(atoms)))
    sub = lambda: random_formula(rng, atoms, depth - 1, infinitary, geometric)
    if geometric:
        kinds = ["and", "or"] + (["ior"] if infinitary else [])
    else:
        kinds = ["and", "or", "imp", "not"] + (["iand", "ior"] if infinitary else [])
    k = rng.choice(kinds)
    if k == "and":
        return And(tuple(sub() for _ in range(rng.choice((2, 2, 3)))))
    if k == "or":
        return Or(tuple(sub() for _ in range(rng.choice((2, 2, 3)))))
    if k == "imp":
        return Imp(sub(), sub())
    if k == "not":
        return Imp(sub(), Bot())
    n = rng.choice((0, 1, 2, 3))
    parts = tuple(sub() for _ in range(n))
    return And(parts, infinitary=True) if k == "iand" else Or(parts, infinitary=True)


def random_formulas(atoms, count: int, depth: int, seed: int = 0, infinitary: bool = True) -> list:
    rng = random.Random(seed)
    return [random_formula(rng, atoms, depth, infinitary) for _ in range(count)]


def sequent_corpus(atoms, depth: int, count: int | None = None, seed: int = 0, geometric: bool = False) -> list:
    """Closed propositional sequents.

    Without ``count``: every pair from ``formula_corpus(atoms, depth)`` (or its
    implication-free part when ``geometric``).  With
    ``count``: a seeded sample of that many sequents with sides of depth at
    most ``depth``.
    """
    if count is None:
        pool = formula_corpus(atoms, depth, ("and", "or") if geometric else ("and", "or", "imp"))
        return [Sequent((), a, b) for a, b in itertools.product(pool, repeat=2)]
    rng = random.Random(seed)
    side = lambda: random_formula(rng, atoms, depth, infinitary=False, geometric=geometric)
    return [Sequent((), side(), side()) for _ in range(count)]

