"""Decision procedures for classical and intuitionistic propositional logic.

Classical: truth tables.  Intuitionistic: a terminating contraction-free
sequent calculus (Dyckhoff's G4ip) for provability, and an exhaustive search
through rooted finite Kripke models for refutation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..syntax import (And, Bot, Formula, Imp, Or, Rel, Sequent, Theory, Top,
                      WellFormednessError, atoms_of, is_propositional, pretty)
from .catalogue import rooted_posets
from .lattice import FinHeyting, upset_masks


class NotPropositional(WellFormednessError):
    pass


def _require_prop(f: Formula):
    if not is_propositional(f):
        raise NotPropositional(f"not a propositional formula: {pretty(f)}")


def theory_atoms(T: Theory | None, *formulas: Formula) -> tuple:
    names = set()
    if T is not None:
        names.update(T.signature.atoms)
        for ax in T.axioms:
            names |= atoms_of(ax.antecedent) | atoms_of(ax.consequent)
    for f in formulas:
        names |= atoms_of(f)
    return tuple(sorted(names))


def _check_prop_input(T, s):
    if T is not None:
        for ax in T.axioms:
            _require_prop(ax.antecedent)
            _require_prop(ax.consequent)
    if s is not None:
        _require_prop(s.antecedent)
        _require_prop(s.consequent)


# ---------------------------------------------------------------------------
# Classical
# ---------------------------------------------------------------------------

def evaluate(f: Formula, valuation) -> bool:
    """Two-valued truth of a propositional formula; ``valuation`` maps atom names to bools."""
    if isinstance(f, Rel):
        return bool(valuation[f.name])
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return all(evaluate(p, valuation) for p in f.parts)
    if isinstance(f, Or):
        return any(evaluate(p, valuation) for p in f.parts)
    if isinstance(f, Imp):
        return (not evaluate(f.ante, valuation)) or evaluate(f.cons, valuation)
    raise NotPropositional(f"not a propositional formula: {pretty(f)}")


def valuations(atoms):
    """All 2-valued valuations over ``atoms``, first atom varying slowest."""
    for bits in itertools.product((False, True), repeat=len(atoms)):
        yield dict(zip(atoms, bits))


def classical_models(T: Theory, atoms=None) -> list:
    """The valuations over ``atoms`` satisfying every axiom of ``T``."""
    _check_prop_input(T, None)
    atoms = theory_atoms(T) if atoms is None else tuple(atoms)
    return [v for v in valuations(atoms)
            if all(not evaluate(ax.antecedent, v) or evaluate(ax.consequent, v) for ax in T.axioms)]


def decide_classical(T: Theory | None, s: Sequent) -> bool:
    """Does ``s`` hold under every 2-valued valuation satisfying ``T``?"""
    _check_prop_input(T, s)
    atoms = theory_atoms(T, s.antecedent, s.consequent)
    axioms = T.axioms if T is not None else ()
    for v in valuations(atoms):
        if all(not evaluate(ax.antecedent, v) or evaluate(ax.consequent, v) for ax in axioms):
            if evaluate(s.antecedent, v) and not evaluate(s.consequent, v):
                return False
    return True


# ---------------------------------------------------------------------------
# G4ip
# ---------------------------------------------------------------------------
# internal formulas: ("a", name) | ("F",) | ("&", A, B) | ("|", A, B) | (">", A, B)

_FALSE = ("F",)
_TRUE = (">", _FALSE, _FALSE)


def _encode(f: Formula):
    if isinstance(f, Rel):
        return ("a", f.name)
    if isinstance(f, Top):
        return _TRUE
    if isinstance(f, Bot):
        return _FALSE
    if isinstance(f, (And, Or)):
        parts = [_encode(p) for p in f.parts]
        tag = "&" if isinstance(f, And) else "|"
        if not parts:
            return _TRUE if tag == "&" else _FALSE
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = (tag, p, out)
        return out
    if isinstance(f, Imp):
        return (">", _encode(f.ante), _encode(f.cons))
    raise NotPropositional(f"not a propositional formula: {pretty(f)}")


@lru_cache(maxsize=200_000)
def _prove(gamma: frozenset, goal) -> bool:
    if _FALSE in gamma or goal in gamma:
        return True
    # invertible left rules
    for h in gamma:
        tag = h[0]
        if tag == "&":
            return _prove((gamma - {h}) | {h[1], h[2]}, goal)
        if tag == "|":
            rest = gamma - {h}
            return _prove(rest | {h[1]}, goal) and _prove(rest | {h[2]}, goal)
        if tag == ">":
            a, b = h[1], h[2]
            if a == _FALSE:
                return _prove(gamma - {h}, goal)
            if a[0] == "a" and a in gamma:
                return _prove((gamma - {h}) | {b}, goal)
            if a[0] == "&":
                return _prove((gamma - {h}) | {(">", a[1], (">", a[2], b))}, goal)
            if a[0] == "|":
                return _prove((gamma - {h}) | {(">", a[1], b), (">", a[2], b)}, goal)
    # invertible right rules
    if goal[0] == "&":
        return _prove(gamma, goal[1]) and _prove(gamma, goal[2])
    if goal[0] == ">":
        return _prove(gamma | {goal[1]}, goal[2])
    # non-invertible: right disjunction and nested implication on the left
    if goal[0] == "|" and (_prove(gamma, goal[1]) or _prove(gamma, goal[2])):
        return True
    for h in gamma:
        if h[0] == ">" and h[1][0] == ">":
            c, d, b = h[1][1], h[1][2], h[2]
            rest = gamma - {h}
            if _prove(rest | {(">", d, b)}, (">", c, d)) and _prove(rest | {b}, goal):
                return True
    return False


def _hypotheses(T: Theory | None) -> frozenset:
    if T is None:
        return frozenset()
    return frozenset((">", _encode(ax.antecedent), _encode(ax.consequent)) for ax in T.axioms)


def g4ip_provable(T: Theory | None, s: Sequent) -> bool:
    _check_prop_input(T, s)
    gamma = _hypotheses(T) | {_encode(s.antecedent)}
    return _prove(frozenset(gamma), _encode(s.consequent))


# ---------------------------------------------------------------------------
# Kripke models
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KripkeModel:
    """A rooted finite Kripke model; node 0 is the root."""
    leq: np.ndarray
    valuation: dict

    @property
    def size(self):
        return len(self.leq)

    def forces(self, w: int, f: Formula) -> bool:
        """Direct recursive forcing relation (independent of the algebraic evaluator)."""
        if isinstance(f, Rel):
            return w in self.valuation.get(f.name, frozenset())
        if isinstance(f, Top):
            return True
        if isinstance(f, Bot):
            return False
        if isinstance(f, And):
            return all(self.forces(w, p) for p in f.parts)
        if isinstance(f, Or):
            return any(self.forces(w, p) for p in f.parts)
        if isinstance(f, Imp):
            return all(not self.forces(v, f.ante) or self.forces(v, f.cons)
                       for v in range(self.size) if self.leq[w, v])
        raise NotPropositional(f"not a propositional formula: {pretty(f)}")

    def is_persistent(self) -> bool:
        for nodes in self.valuation.values():
            for w in nodes:
                if any(self.leq[w, v] and v not in nodes for v in range(self.size)):
                    return False
        return True

    def refutes(self, T: Theory | None, s: Sequent) -> bool:
        """Root forces every axiom and the antecedent but not the consequent."""
        axioms = T.axioms if T is not None else ()
        if not all(self.forces(0, Imp(ax.antecedent, ax.consequent)) for ax in axioms):
            return False
        return self.forces(0, s.antecedent) and not self.forces(0, s.consequent)

    def generated(self, w: int) -> "KripkeModel":
        """The submodel of nodes above ``w``, re-rooted at ``w``."""
        nodes = [w] + [v for v in range(self.size) if v != w and self.leq[w, v]]
        pos = {v: i for i, v in enumerate(nodes)}
        leq = self.leq[np.ix_(nodes, nodes)]
        val = {a: frozenset(pos[v] for v in s if v in pos) for a, s in self.valuation.items()}
        return KripkeModel(leq, val)

    def describe(self) -> str:
        edges = [(a, b) for a in range(self.size) for b in range(self.size)
                 if a != b and self.leq[a, b]]
        val = {a: sorted(s) for a, s in sorted(self.valuation.items())}
        return f"nodes={self.size} order={edges} valuation={val}"


@dataclass(frozen=True)
class UpsetFrame:
    """A rooted poset together with the Heyting algebra of its up-sets."""
    leq: np.ndarray
    masks: tuple
    algebra: FinHeyting

    def model(self, val_elems: dict) -> KripkeModel:
        val = {a: frozenset(v for v in range(len(self.leq)) if self.masks[e] >> v & 1)
               for a, e in val_elems.items()}
        return KripkeModel(self.leq, val)


@lru_cache(maxsize=None)
def upset_frames(max_nodes: int) -> tuple:
    """Rooted frames with at most ``max_nodes`` nodes, smallest first.

    Up-sets are listed in increasing bitmask order, which fixes the
    lexicographic order of valuations within a frame.
    """
    out = []
    for leq in rooted_posets(max_nodes):
        masks = upset_masks(leq)
        out.append(UpsetFrame(leq, tuple(masks), FinHeyting.from_sets(masks)))
    return tuple(out)


def batch_eval(alg: FinHeyting, f: Formula, env: dict):
    """Evaluate a propositional formula for many valuations at once.

    ``env`` maps atom names to equal-length integer arrays of algebra elements.
    """
    if isinstance(f, Rel):
        return env[f.name]
    size = len(next(iter(env.values()))) if env else 1
    if isinstance(f, Top):
        return np.full(size, alg.top, dtype=np.int32)
    if isinstance(f, Bot):
        return np.full(size, alg.bottom, dtype=np.int32)
    if isinstance(f, (And, Or)):
        table = alg.meet if isinstance(f, And) else alg.join
        out = np.full(size, alg.top if isinstance(f, And) else alg.bottom, dtype=np.int32)
        for p in f.parts:
            out = table[out, batch_eval(alg, p, env)]
        return out
    if isinstance(f, Imp):
        return alg.imp[batch_eval(alg, f.ante, env), batch_eval(alg, f.cons, env)]
    raise NotPropositional(f"not a propositional formula: {pretty(f)}")


def kripke_search(T: Theory | None, s: Sequent, bound: int) -> KripkeModel | None:
    """Smallest countermodel with at most ``bound`` nodes, first in lexicographic order."""
    _check_prop_input(T, s)
    atoms = theory_atoms(T, s.antecedent, s.consequent)
    axioms = T.axioms if T is not None else ()
    hyp = [Imp(ax.antecedent, ax.consequent) for ax in axioms]
    for frame in upset_frames(bound):
        alg = frame.algebra
        k = alg.n
        grids = np.meshgrid(*([np.arange(k, dtype=np.int32)] * len(atoms)), indexing="ij")
        env = {a: g.ravel() for a, g in zip(atoms, grids)}
        if not atoms:
            env = {}
        ok = batch_eval(alg, s.antecedent, env) == alg.top
        ok &= batch_eval(alg, s.consequent, env) != alg.top
        for h in hyp:
            ok &= batch_eval(alg, h, env) == alg.top
        hits = np.flatnonzero(np.atleast_1d(ok))
        if len(hits):
            i = int(hits[0])
            val = {a: int(env[a][i]) for a in atoms}
            return frame.model(val)
    return None


# ---------------------------------------------------------------------------
# Combined verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Proved:
    def __bool__(self):
        return True

    def __str__(self):
        return "Proved"


@dataclass(frozen=True)
class Refuted:
    countermodel: KripkeModel

    def __bool__(self):
        return False

    def __str__(self):
        return f"Refuted({self.countermodel.describe()})"


@dataclass(frozen=True)
class Unknown:
    def __bool__(self):
        return False

    def __str__(self):
        return "Unknown"


DEFAULT_KRIPKE_BOUND = 6


def decide_intuitionistic(T: Theory | None, s: Sequent, bound: int = DEFAULT_KRIPKE_BOUND):
    """``Proved()``, ``Refuted(countermodel)`` or ``Unknown()``."""
    if g4ip_provable(T, s):
        return Proved()
    model = kripke_search(T, s, bound)
    if model is not None:
        return Refuted(model)
    return Unknown()
