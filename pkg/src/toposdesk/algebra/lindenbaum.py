"""Lindenbaum algebras of propositional theories.

Classes of formulas are represented semantically rather than by canonical
formulas: a class is the set of models it holds in (Boolean and geometric
cases), with the labeling map sending a formula to its class.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..syntax import (And, Bot, Formula, Fragment, Imp, Or, Theory, Top, classify_fragment,
                      pretty, sequent)
from .decide import (DEFAULT_KRIPKE_BOUND, KripkeModel, NotPropositional, Proved, Unknown,
                     _check_prop_input, batch_eval, classical_models, decide_intuitionistic,
                     evaluate, theory_atoms, upset_frames)
from .lattice import FinHeyting, FinPoset, powerset, upset_masks


@dataclass(frozen=True, eq=False)
class Lindenbaum:
    """An algebra of formula classes together with its labeling map.

    ``models`` lists the 2-valued models over ``atoms``; element ``e`` of the
    algebra corresponds to the model set ``masks[e]`` (bit ``i`` = model ``i``).
    """
    algebra: FinHeyting
    atoms: tuple
    models: tuple
    masks: tuple
    theory: Theory
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "_index", {m: i for i, m in enumerate(self.masks)})

    def model_set(self, f: Formula) -> int:
        return sum(1 << i for i, v in enumerate(self.models) if evaluate(f, v))

    def label(self, f: Formula) -> int:
        """The element of the algebra naming the class of ``f``."""
        _check_prop_input(None, sequent(f, Top()))
        if self.kind == "geometric" and classify_fragment(f) != Fragment.GEOMETRIC:
            raise NotPropositional(f"not a geometric formula: {pretty(f)}")
        extra = set(theory_atoms(None, f)) - set(self.atoms)
        if extra:
            raise NotPropositional(f"atoms outside the signature: {sorted(extra)}")
        return self._index[self.model_set(f)]

    def atom_values(self) -> dict:
        """The universal interpretation: each atom sent to its own class."""
        from ..syntax import atom
        return {a: self.label(atom(a)) for a in self.atoms}

    @property
    def size(self):
        return self.algebra.n

    @property
    def consistent(self) -> bool:
        return len(self.models) > 0


def _model_names(atoms, models):
    out = []
    for v in models:
        true = [a for a in atoms if v[a]]
        out.append("{" + ",".join(true) + "}")
    return out


def _set_label(mask, names):
    return "{" + "; ".join(n for i, n in enumerate(names) if mask >> i & 1) + "}"


def lindenbaum_boolean(T: Theory, atoms=None) -> Lindenbaum:
    """Classical Lindenbaum algebra: all sets of 2-valued models of ``T``."""
    atoms = theory_atoms(T) if atoms is None else tuple(sorted(atoms))
    models = tuple(classical_models(T, atoms))
    m = len(models)
    names = _model_names(atoms, models)
    masks = tuple(range(2 ** m))
    alg = powerset(m, [_set_label(x, names) for x in masks])
    return Lindenbaum(alg, atoms, models, masks, T, "boolean")


def _require_geometric(T: Theory):
    for i, ax in enumerate(T.axioms):
        if ax.fragment != Fragment.GEOMETRIC:
            raise NotPropositional(f"axiom {i} is not geometric")


def lindenbaum_geometric(T: Theory, atoms=None) -> Lindenbaum:
    """Distributive lattice of geometric formulas modulo ``T``: up-sets of its models."""
    _require_geometric(T)
    atoms = theory_atoms(T) if atoms is None else tuple(sorted(atoms))
    models = tuple(classical_models(T, atoms))
    m = len(models)
    leq = np.array([[all(v[a] <= w[a] for a in atoms) for w in models] for v in models],
                   dtype=bool).reshape(m, m)
    masks = tuple(upset_masks(leq)) if m else (0,)
    names = _model_names(atoms, models)
    alg = FinHeyting.from_sets(masks, [_set_label(x, names) for x in masks])
    return Lindenbaum(alg, atoms, models, masks, T, "geometric")


# ---------------------------------------------------------------------------
# Bounded exploration of the intuitionistic Lindenbaum algebra
# ---------------------------------------------------------------------------

class UndecidedComparison(RuntimeError):
    def __init__(self, left, right):
        super().__init__(f"could not decide {pretty(left)} |- {pretty(right)}")
        self.pair = (left, right)


@dataclass(frozen=True)
class Certificate:
    """A Kripke countermodel showing ``left |- right`` is not derivable."""
    left: int
    right: int
    model: KripkeModel


@dataclass(frozen=True, eq=False)
class BoundedHeyting:
    poset: FinPoset
    representatives: tuple
    certificates: tuple = ()
    separations: dict = field(default_factory=dict)

    @property
    def size(self):
        return len(self.representatives)


class _Signatures:
    """Values of formulas on every T-respecting valuation of every small rooted frame."""

    def __init__(self, T, atoms, bound):
        self.atoms = atoms
        self.items = []
        hyp = [Imp(ax.antecedent, ax.consequent) for ax in (T.axioms if T else ())]
        for frame in upset_frames(bound):
            alg = frame.algebra
            k = alg.n
            if atoms:
                grids = np.meshgrid(*([np.arange(k, dtype=np.int32)] * len(atoms)), indexing="ij")
                env = {a: g.ravel() for a, g in zip(atoms, grids)}
                ok = np.ones(k ** len(atoms), dtype=bool)
            else:
                env = {}
                ok = np.ones(1, dtype=bool)
            for h in hyp:
                ok &= np.atleast_1d(batch_eval(alg, h, env)) == alg.top
            keep = np.flatnonzero(ok)
            env = {a: v[keep] for a, v in env.items()}
            self.items.append((frame, env, len(keep)))

    def values(self, f):
        out = []
        for frame, env, count in self.items:
            v = np.atleast_1d(batch_eval(frame.algebra, f, env))
            if len(v) != count:
                v = np.broadcast_to(v, (count,))
            out.append(np.asarray(v, dtype=np.int32))
        return out

    def key(self, vals) -> bytes:
        return b"".join(v.tobytes() for v in vals)

    def countermodel(self, va, vb):
        """A rooted model forcing ``a`` but not ``b`` at its root, or None."""
        for (frame, env, count), xa, xb in zip(self.items, va, vb):
            bad = np.flatnonzero(~frame.algebra.leq[xa, xb])
            if len(bad):
                i = int(bad[0])
                masks = frame.masks
                diff = masks[xa[i]] & ~masks[xb[i]]
                w = (diff & -diff).bit_length() - 1
                model = frame.model({a: int(env[a][i]) for a in self.atoms})
                return model.generated(w)
        return None


def lindenbaum_heyting_bounded(T: Theory | None, seeds, depth: int,
                               bound: int = DEFAULT_KRIPKE_BOUND, max_classes: int = 2000) -> BoundedHeyting:
    """Close ``seeds`` (with bottom and top) under /\\, \\/, -> for ``depth`` rounds.

    Formulas are identified when intuitionistically inter-derivable from ``T``.
    Distinct classes carry a Kripke countermodel separating them.
    """
    seeds = list(seeds)
    if T is not None:
        _check_prop_input(T, None)
    for s in seeds:
        _check_prop_input(None, sequent(s, Top()))
    atoms = theory_atoms(T, *seeds)
    sig = _Signatures(T, atoms, bound)
    reps, vals, index = [], [], {}

    def add(f):
        v = sig.values(f)
        k = sig.key(v)
        if k in index:
            j = index[k]
            for a, b in ((f, reps[j]), (reps[j], f)):
                if not isinstance(decide_intuitionistic(T, sequent(a, b), bound), Proved):
                    raise UndecidedComparison(a, b)
            return
        reps.append(f)
        vals.append(v)
        index[k] = len(reps) - 1

    for f in [Bot(), *seeds, Top()]:
        add(f)
    for _ in range(depth):
        current = list(reps)
        for a in current:
            for b in current:
                for g in (And((a, b)), Or((a, b)), Imp(a, b)):
                    add(g)
                    if len(reps) > max_classes:
                        raise RuntimeError(f"more than {max_classes} classes; lower the depth")

    n = len(reps)
    leq = np.zeros((n, n), dtype=bool)
    certs = []
    seps = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                leq[i, j] = True
                continue
            cm = sig.countermodel(vals[i], vals[j])
            if cm is not None:
                certs.append(Certificate(i, j, cm))
                seps.setdefault(frozenset((i, j)), certs[-1])
                continue
            verdict = decide_intuitionistic(T, sequent(reps[i], reps[j]), bound)
            if isinstance(verdict, Proved):
                leq[i, j] = True
            elif isinstance(verdict, Unknown):
                raise UndecidedComparison(reps[i], reps[j])
            else:
                certs.append(Certificate(i, j, verdict.countermodel))
                seps.setdefault(frozenset((i, j)), certs[-1])
    labels = tuple(pretty(f) for f in reps)
    return BoundedHeyting(FinPoset(leq, labels), tuple(reps), tuple(certs), seps)
