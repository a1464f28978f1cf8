"""Soundness harness: generated rule instances checked in finite targets.

Every generated instance is first accepted by ``proofkernel.check_step``, so
the harness tests the kernel's notion of a rule, not a separate copy of it.
A counterexample is a target in which all hypotheses of an instance (its
premises, plus the theory axioms for the axiom rule) are valid but the
conclusion is not.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from ..algebra.decide import batch_eval
from ..algebra.lattice import FinHeyting
from ..fincat.category import FinCategory
from ..fincat.presheaf import Presheaf, subobject_lattice
from ..proofkernel import Rejection, Side, SystemTag, check_step, rule_catalogue
from ..syntax import (And, Bot, Context, Eq, Exists, Forall, Imp, Or, Rel, Sequent, Signature, Theory,
                      Top, Var, atom, pretty_sequent, substitute)
from .structure import Structure, interpret, leq


class TargetMismatch(ValueError):
    """The chosen deduction system is not sound for some target."""


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    premises: tuple
    conclusion: Sequent
    side: Side = field(default_factory=Side)
    theory: Theory | None = None

    @property
    def hypotheses(self) -> tuple:
        extra = () if self.theory is None or self.rule != "axiom" else tuple(self.theory.axioms)
        return tuple(self.premises) + extra

    def describe(self) -> str:
        prem = "; ".join(pretty_sequent(p) for p in self.hypotheses) or "(none)"
        return f"{self.rule}: {prem}  ==>  {pretty_sequent(self.conclusion)}"


def _instance(rule, premises, conclusion, side=Side(), theory=None) -> RuleInstance:
    inst = RuleInstance(rule, tuple(premises), conclusion, side, theory)
    try:
        check_step(rule, inst.premises, conclusion, side, theory)
    except Rejection as e:
        raise AssertionError(f"generated instance rejected by the kernel: {inst.describe()}: {e}") from None
    return inst


def _ctx_rule_instances(pool, ctx, big_pool=None, excluded_middle=True, cut_pool=None) -> list:
    """Instances of the connective rules with every formula in context ``ctx``."""
    S = lambda a, b: Sequent(ctx, a, b)
    big = big_pool or pool
    cut_pool = cut_pool or pool
    out = []
    for f in pool:
        out.append(_instance("identity", [], S(f, f)))
        out.append(_instance("true_intro", [], S(f, Top())))
        out.append(_instance("false_elim", [], S(Bot(), f)))
        if excluded_middle:
            out.append(_instance("excluded_middle", [], S(Top(), Or((f, Imp(f, Bot()))))))
    for a, b, c in itertools.product(cut_pool, repeat=3):
        out.append(_instance("cut", [S(a, b), S(b, c)], S(a, c)))
    for a, b in itertools.product(pool, repeat=2):
        out.append(_instance("and_proj", [], S(And((a, b)), a)))
        out.append(_instance("and_proj", [], S(And((a, b)), b)))
        out.append(_instance("or_inj", [], S(a, Or((a, b)))))
        out.append(_instance("iand_proj", [], S(And((a, b), True), b)))
        out.append(_instance("iand_proj", [], S(And((a,), True), a)))
        out.append(_instance("ior_inj", [], S(a, Or((b, a), True))))
        out.append(_instance("ior_inj", [], S(a, Or((a,), True))))
    for a, b, c in itertools.product(big, pool, pool):
        out.append(_instance("and_intro", [S(a, b), S(a, c)], S(a, And((b, c)))))
        out.append(_instance("or_elim", [S(b, a), S(c, a)], S(Or((b, c)), a)))
        out.append(_instance("iand_intro", [S(a, b), S(a, c)], S(a, And((b, c), True))))
        out.append(_instance("ior_elim", [S(b, a), S(c, a)], S(Or((b, c), True), a)))
        out.append(_instance("and_intro", [S(a, b), S(a, c), S(a, a)], S(a, And((b, c, a)))))
        out.append(_instance("distributivity", [], S(And((a, Or((b, c)))), Or((And((a, b)), And((a, c)))))))
        out.append(_instance("distributivity", [], S(And((a, Or((b, c), True))),
                                                    Or((And((a, b)), And((a, c))), True))))
        out.append(_instance("imp_intro", [S(And((a, b)), c)], S(a, Imp(b, c))))
        out.append(_instance("imp_elim", [S(a, Imp(b, c))], S(And((a, b)), c)))
    for a in big:
        # empty tagged families: the empty join and the empty meet
        out.append(_instance("ior_elim", [], S(Or((), True), a)))
        out.append(_instance("iand_intro", [], S(a, And((), True))))
        out.append(_instance("distributivity", [], S(And((a, Or((), True))), Or((), True))))
    return out


# ---------------------------------------------------------------------------
# Propositional instances
# ---------------------------------------------------------------------------

PROP_ATOMS = ("p", "q")


def propositional_pool() -> list:
    p, q = atom("p"), atom("q")
    neg = lambda f: Imp(f, Bot())
    return [p, q, Top(), Bot(), neg(p), And((p, q)), Or((p, q)), Imp(p, q), neg(neg(p)), Imp(q, p)]


def propositional_instances() -> list:
    pool = propositional_pool()
    out = _ctx_rule_instances(pool[:7], Context(), big_pool=pool, cut_pool=pool)
    p, q = atom("p"), atom("q")
    for a, b in itertools.product(pool, repeat=2):
        out.append(_instance("weakening", [Sequent((), a, b)], Sequent((), a, b)))
        out.append(_instance("substitution", [Sequent((), a, b)], Sequent((), a, b), Side(terms=())))
    sig = Signature.propositional(PROP_ATOMS)
    for ax in [Sequent((), p, q), Sequent((), Top(), Or((p, Imp(p, Bot())))), Sequent((), Imp(p, q), q)]:
        T = Theory.inferred(sig, [ax])
        out.append(_instance("axiom", [], ax, Side(index=0), T))
    return out


# ---------------------------------------------------------------------------
# Predicate instances (one sort)
# ---------------------------------------------------------------------------

def predicate_signature() -> Signature:
    return Signature(sorts=("A",), relations={"R": ("A",), "S": ("A",), "E": ("A", "A"), "p": ()})


def predicate_instances() -> list:
    x, y, z = Var("x", "A"), Var("y", "A"), Var("z", "A")
    R = lambda t: Rel("R", (t,))
    Sr = lambda t: Rel("S", (t,))
    E = lambda s, t: Rel("E", (s, t))
    p = Rel("p")
    neg = lambda f: Imp(f, Bot())
    cx, cxy, cxyz = Context([x]), Context([x, y]), Context([x, y, z])
    # formulas with free variables among {x}
    pool1 = [R(x), Sr(x), p, Top(), Bot(), Exists((y,), E(x, y)), Forall((y,), E(y, x)),
             Imp(R(x), Sr(x)), Eq(x, x), neg(R(x))]
    # formulas with free variables among {x, y}
    pool2 = [E(x, y), Eq(x, y), R(y), Or((R(x), Sr(y))), neg(E(y, x)), Sr(x), Top(),
             And((R(x), E(x, y))), Exists((z,), And((E(x, z), E(z, y))))]
    out = _ctx_rule_instances(pool1[:5], cx, big_pool=pool1, cut_pool=pool1[:6])
    out += _ctx_rule_instances(pool2[:4], cxy, big_pool=pool2[:6], cut_pool=pool2[:4])
    for phi, psi in itertools.product(pool2, pool1):
        out.append(_instance("exists_elim", [Sequent(cxy, phi, psi)], Sequent(cx, Exists((y,), phi), psi)))
        out.append(_instance("exists_intro", [Sequent(cx, Exists((y,), phi), psi)], Sequent(cxy, phi, psi)))
        out.append(_instance("forall_intro", [Sequent(cxy, psi, phi)], Sequent(cx, psi, Forall((y,), phi))))
        out.append(_instance("forall_elim", [Sequent(cx, psi, Forall((y,), phi))], Sequent(cxy, psi, phi)))
        out.append(_instance("frobenius", [], Sequent(cx, And((psi, Exists((y,), phi))),
                                                      Exists((y,), And((psi, phi))))))
    for ctx in (cx, cxy, cxyz):
        for v in ctx:
            out.append(_instance("eq_refl", [], Sequent(ctx, Top(), Eq(v, v))))
    for phi in pool2 + pool1:
        out.append(_instance("eq_subst", [], Sequent(cxy, And((Eq(x, y), phi)), substitute(phi, [y], [x]))))
    for a, b in itertools.product(pool1, repeat=2):
        out.append(_instance("weakening", [Sequent(cx, a, b)], Sequent(cxy, a, b)))
        for terms, ctx in (((y,), cxy), ((x,), cxy), ((z,), cxyz)):
            out.append(_instance("substitution", [Sequent(cx, a, b)],
                                 Sequent(ctx, substitute(a, terms, cx), substitute(b, terms, cx)),
                                 Side(terms=terms)))
    for a, b in itertools.product(pool2[:6], repeat=2):
        for terms in ((y, x), (x, x), (z, y)):
            out.append(_instance("substitution", [Sequent(cxy, a, b)],
                                 Sequent(cxyz, substitute(a, terms, cxy), substitute(b, terms, cxy)),
                                 Side(terms=terms)))
    sig = predicate_signature()
    for ax in [Sequent(cx, R(x), Sr(x)), Sequent(cx, Top(), Exists((y,), E(x, y))),
               Sequent(cxy, E(x, y), E(y, x))]:
        T = Theory.inferred(sig, [ax])
        out.append(_instance("axiom", [], ax, Side(index=0), T))
        terms = (y,) * len(ax.context) if len(ax.context) == 1 else (y, x)
        out.append(_instance("axiom", [], Sequent(cxy, substitute(ax.antecedent, terms, ax.context),
                                                  substitute(ax.consequent, terms, ax.context)),
                             Side(index=0, terms=terms), T))
    return out


# ---------------------------------------------------------------------------
# Targets
# ---------------------------------------------------------------------------

def propositional_targets(algebra: FinHeyting, atoms=PROP_ATOMS) -> list:
    """One structure per valuation of ``atoms`` in ``algebra``."""
    sig = Signature.propositional(atoms)
    return [Structure.propositional(sig, algebra, dict(zip(atoms, vals)))
            for vals in itertools.product(range(algebra.n), repeat=len(atoms))]


def _sort_choices(C: FinCategory) -> list:
    out = [Presheaf.empty(C), Presheaf.terminal(C)]
    for c in range(C.n_objects):
        out.append(Presheaf.representable(C, c))
    return out


def presheaf_targets(C: FinCategory, limit: int | None = 64, seed: int = 0) -> list:
    """Structures for ``predicate_signature`` on ``C``.

    Sorts range over the empty, terminal and representable presheaves; each
    relation over every subpresheaf of its carrier.  When the product exceeds
    ``limit`` a seeded sample is taken, always keeping the first and last
    choice for each sort (all relations empty or all full).
    """
    sig = predicate_signature()
    rng = random.Random(seed)
    out = []
    for A in _sort_choices(C):
        probe = Structure.presheaf(
            sig, C, {"A": A},
            {"R": [()] * C.n_objects, "S": [()] * C.n_objects, "E": [()] * C.n_objects, "p": [()] * C.n_objects})
        subs1 = subobject_lattice(A).subobjects
        subs2 = subobject_lattice(probe.carrier(("A", "A"))).subobjects
        subs0 = subobject_lattice(probe.carrier(())).subobjects
        combos = list(itertools.product(range(len(subs1)), range(len(subs1)), range(len(subs2)), range(len(subs0))))
        if limit is not None and len(combos) > limit:
            keep = [combos[0], combos[-1]]
            rest = combos[1:-1]
            keep += rng.sample(rest, limit - 2)
            combos = sorted(keep)
        for r, s, e, q in combos:
            rels = {"R": subs1[r].parts, "S": subs1[s].parts, "E": subs2[e].parts, "p": subs0[q].parts}
            out.append(Structure.presheaf(sig, C, {"A": A}, rels))
    return out


# ---------------------------------------------------------------------------
# The suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    instance: RuleInstance
    target: str


@dataclass
class SoundnessReport:
    system: SystemTag
    checks: dict                      # rule -> number of (instance, target) pairs checked
    counterexamples: list
    uncovered: list                   # rules of the system never instantiated

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.uncovered

    def describe(self) -> str:
        lines = [f"soundness for {self.system}: {'pass' if self.passed else 'fail'}"]
        for r in sorted(self.checks):
            lines.append(f"  {r}: {self.checks[r]} checks")
        for r in self.uncovered:
            lines.append(f"  {r}: no instances")
        for c in self.counterexamples[:20]:
            lines.append(f"  counterexample in {c.target}: {c.instance.describe()}")
        return "\n".join(lines)


def _check_system_targets(sys: SystemTag, targets):
    if sys == SystemTag.CLASSICAL:
        for M in targets:
            if not M.is_boolean_target():
                raise TargetMismatch(
                    f"classical rules are unsound in the non-Boolean target {M.describe()}; "
                    "excluded middle needs a Boolean target")


def _prop_group_check(alg, structures, instances, checks, bad):
    atoms = PROP_ATOMS
    env = {a: np.array([M.values[a] for M in structures], dtype=np.int32) for a in atoms}
    memo = {}

    def val(f):
        if f not in memo:
            memo[f] = np.atleast_1d(batch_eval(alg, f, env))
        return memo[f]

    def valid(s):
        return alg.leq[val(s.antecedent), val(s.consequent)]

    for inst in instances:
        ok = np.ones(len(structures), dtype=bool)
        for h in inst.hypotheses:
            ok &= valid(h)
        fails = np.flatnonzero(ok & ~valid(inst.conclusion))
        checks[inst.rule] += len(structures)
        for i in fails[:1]:
            bad.append(Counterexample(inst, structures[i].describe()))


def _valid(M, s):
    key = ("valid", s)
    v = M._memo.get(key)
    if v is None:
        v = M._memo[key] = leq(M, interpret(M, s.antecedent, s.context), interpret(M, s.consequent, s.context))
    return v


def _psh_check(structures, instances, checks, bad):
    seqs = {}
    for inst in instances:
        for h in inst.hypotheses + (inst.conclusion,):
            seqs.setdefault(h, len(seqs))
    order = list(seqs)
    hyp_idx = [np.array([seqs[h] for h in inst.hypotheses], dtype=np.int64) for inst in instances]
    concl_idx = np.array([seqs[inst.conclusion] for inst in instances], dtype=np.int64)
    for M in structures:
        valid = np.array([_valid(M, s) for s in order], dtype=bool)
        for k, inst in enumerate(instances):
            checks[inst.rule] += 1
            if not valid[concl_idx[k]] and valid[hyp_idx[k]].all():
                bad.append(Counterexample(inst, M.describe()))


def soundness_suite(sys: SystemTag, targets) -> SoundnessReport:
    """Check every rule of ``sys`` on generated instances in each target structure.

    Propositional targets use the two-atom instance corpus; presheaf targets
    use the one-sort predicate corpus of ``predicate_signature``.  Raises
    ``TargetMismatch`` when ``sys`` is Classical and some target is not Boolean.
    """
    sys = SystemTag(sys)
    targets = list(targets)
    _check_system_targets(sys, targets)
    allowed = {r.name for r in rule_catalogue(sys)}
    checks = defaultdict(int)
    bad = []
    prop = [M for M in targets if M.mode == "propositional"]
    psh = [M for M in targets if M.mode == "presheaf"]
    if prop:
        instances = [i for i in propositional_instances() if i.rule in allowed]
        groups = defaultdict(list)
        for M in prop:
            if set(M.values) != set(PROP_ATOMS):
                raise TargetMismatch(f"propositional targets must interpret exactly {PROP_ATOMS}")
            groups[id(M.algebra)].append(M)
        for ms in groups.values():
            _prop_group_check(ms[0].algebra, ms, instances, checks, bad)
    if psh:
        instances = [i for i in predicate_instances() if i.rule in allowed]
        for M in psh:
            if M.signature != predicate_signature():
                raise TargetMismatch("presheaf targets must use the harness signature")
        _psh_check(psh, instances, checks, bad)
    uncovered = sorted(r for r in allowed if checks.get(r, 0) == 0)
    return SoundnessReport(sys, dict(checks), bad, uncovered)

