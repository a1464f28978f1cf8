"""Derivation trees and a checker for four sequent deduction systems.

Rules (double rules appear as two one-directional rules):

    identity         phi |-x phi
    cut              phi |-x psi,  psi |-x chi   /   phi |-x chi
    substitution     phi |-x psi   /   phi[s/x] |-y psi[s/x]       (terms s in context y)
    weakening        phi |-x psi   /   phi |-y psi                  (x contained in y)
    axiom            an axiom of the theory, optionally instantiated at terms
    eq_refl          top |-x t = t
    eq_subst         (x = y) /\\ phi |-z phi[y/x]
    true_intro       phi |-x top
    and_proj         phi_1 /\\ ... /\\ phi_n |-x phi_i
    and_intro        phi |-x psi_i (each i)   /   phi |-x psi_1 /\\ ... /\\ psi_n
    false_elim       bot |-x phi
    or_inj           phi_i |-x phi_1 \\/ ... \\/ phi_n
    or_elim          phi_i |-x psi (each i)   /   phi_1 \\/ ... \\/ phi_n |-x psi
    ior_inj/ior_elim the same for tagged-infinitary disjunction
    exists_elim      phi |-x,y psi   /   exists y. phi |-x psi
    exists_intro     exists y. phi |-x psi   /   phi |-x,y psi
    distributivity   phi /\\ (\\/ psi_i) |-x \\/ (phi /\\ psi_i)
    frobenius        phi /\\ exists y. psi |-x exists y. (phi /\\ psi)
    imp_intro        phi /\\ psi |-x chi   /   phi |-x psi -> chi
    imp_elim         phi |-x psi -> chi   /   phi /\\ psi |-x chi
    forall_intro     phi |-x,y psi   /   phi |-x forall y. psi
    forall_elim      phi |-x forall y. psi   /   phi |-x,y psi
    iand_proj        /\\{phi_i} |-x phi_j
    iand_intro       phi |-x psi_i (each i)   /   phi |-x /\\{psi_i}
    excluded_middle  top |-x phi \\/ ~phi
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .syntax import (And, Bot, Context, Eq, Exists, Forall, Fragment, Imp, Or, Sequent, Theory, Top, Var,
                     WellFormednessError, alpha_equal, check_sequent, free_variables, pretty_sequent,
                     substitute, term_vars)


class SystemTag(enum.IntEnum):
    GEOMETRIC = 0
    SUB_FIRST_ORDER = 1
    FIRST_ORDER = 2
    CLASSICAL = 3

    def __str__(self):
        return {0: "Geometric", 1: "SubFirstOrder", 2: "FirstOrder", 3: "Classical"}[int(self)]

    @classmethod
    def parse(cls, text: str) -> "SystemTag":
        key = text.strip().lower()
        table = {"g": cls.GEOMETRIC, "geometric": cls.GEOMETRIC,
                 "sfo": cls.SUB_FIRST_ORDER, "subfirstorder": cls.SUB_FIRST_ORDER,
                 "fo": cls.FIRST_ORDER, "firstorder": cls.FIRST_ORDER,
                 "cl": cls.CLASSICAL, "classical": cls.CLASSICAL}
        if key not in table:
            raise ValueError(f"unknown deduction system {text!r}")
        return table[key]

    @property
    def fragment(self) -> Fragment:
        return Fragment(min(int(self), 2))


@dataclass(frozen=True)
class RuleInfo:
    name: str
    schema: str
    system: SystemTag


_RULES = [
    ("identity", "phi |-x phi", SystemTag.GEOMETRIC),
    ("cut", "phi |-x psi, psi |-x chi / phi |-x chi", SystemTag.GEOMETRIC),
    ("substitution", "phi |-x psi / phi[s/x] |-y psi[s/x]", SystemTag.GEOMETRIC),
    ("weakening", "phi |-x psi / phi |-x,y psi", SystemTag.GEOMETRIC),
    ("axiom", "sigma[s/x] for an axiom sigma of T", SystemTag.GEOMETRIC),
    ("eq_refl", "top |-x t = t", SystemTag.GEOMETRIC),
    ("eq_subst", "(x = y) /\\ phi |-z phi[y/x]", SystemTag.GEOMETRIC),
    ("true_intro", "phi |-x top", SystemTag.GEOMETRIC),
    ("and_proj", "phi_1 /\\ ... /\\ phi_n |-x phi_i", SystemTag.GEOMETRIC),
    ("and_intro", "phi |-x psi_i (all i) / phi |-x psi_1 /\\ ... /\\ psi_n", SystemTag.GEOMETRIC),
    ("false_elim", "bot |-x phi", SystemTag.GEOMETRIC),
    ("or_inj", "phi_i |-x phi_1 \\/ ... \\/ phi_n", SystemTag.GEOMETRIC),
    ("or_elim", "phi_i |-x psi (all i) / phi_1 \\/ ... \\/ phi_n |-x psi", SystemTag.GEOMETRIC),
    ("ior_inj", "phi_j |-x \\/{phi_i}", SystemTag.GEOMETRIC),
    ("ior_elim", "phi_i |-x psi (all i) / \\/{phi_i} |-x psi", SystemTag.GEOMETRIC),
    ("exists_elim", "phi |-x,y psi / exists y. phi |-x psi", SystemTag.GEOMETRIC),
    ("exists_intro", "exists y. phi |-x psi / phi |-x,y psi", SystemTag.GEOMETRIC),
    ("distributivity", "phi /\\ \\/ psi_i |-x \\/ (phi /\\ psi_i)", SystemTag.GEOMETRIC),
    ("frobenius", "phi /\\ exists y. psi |-x exists y. (phi /\\ psi)", SystemTag.GEOMETRIC),
    ("imp_intro", "phi /\\ psi |-x chi / phi |-x psi -> chi", SystemTag.SUB_FIRST_ORDER),
    ("imp_elim", "phi |-x psi -> chi / phi /\\ psi |-x chi", SystemTag.SUB_FIRST_ORDER),
    ("forall_intro", "phi |-x,y psi / phi |-x forall y. psi", SystemTag.FIRST_ORDER),
    ("forall_elim", "phi |-x forall y. psi / phi |-x,y psi", SystemTag.FIRST_ORDER),
    ("iand_proj", "/\\{phi_i} |-x phi_j", SystemTag.FIRST_ORDER),
    ("iand_intro", "phi |-x psi_i (all i) / phi |-x /\\{psi_i}", SystemTag.FIRST_ORDER),
    ("excluded_middle", "top |-x phi \\/ ~phi", SystemTag.CLASSICAL),
]

RULES = {name: RuleInfo(name, schema, sys) for name, schema, sys in _RULES}


def rule_catalogue(sys: SystemTag) -> list:
    return [r for r in RULES.values() if r.system <= sys]


# ---------------------------------------------------------------------------
# Proof objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Side:
    """Side data of a rule application: an axiom index and/or substitution terms."""
    index: int | None = None
    terms: tuple | None = None

    def __post_init__(self):
        if self.terms is not None:
            object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: str
    premises: tuple = ()
    side: Side = field(default_factory=Side)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def nodes(self, path=()):
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(path + (i,))


class Rejection(Exception):
    def __init__(self, kind, reason):
        super().__init__(reason)
        self.kind = kind
        self.reason = reason


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    kind: str | None = None      # UnavailableRule | SchemaMismatch | UnknownAxiom
    path: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.accepted

    def describe(self) -> str:
        if self.accepted:
            return "accepted"
        where = "root" if not self.path else "root/" + "/".join(map(str, self.path))
        return f"rejected at {where}: {self.kind}: {self.reason}"


def _mismatch(reason):
    raise Rejection("SchemaMismatch", reason)


def _same(a, b, what):
    if not alpha_equal(a, b):
        _mismatch(f"{what} do not match")


def _same_ctx(p: Sequent, c: Sequent):
    if tuple(p.context) != tuple(c.context):
        _mismatch("premise and conclusion contexts differ")


def _arity(premises, n):
    if len(premises) != n:
        _mismatch(f"expected {n} premise(s), got {len(premises)}")


def _fin_and(f, what):
    if not isinstance(f, And) or f.infinitary:
        _mismatch(f"{what} must be a finitary conjunction")
    return f.parts


def _or(f, infinitary, what):
    if not isinstance(f, Or) or f.infinitary != infinitary:
        kind = "tagged-infinitary" if infinitary else "finitary"
        _mismatch(f"{what} must be a {kind} disjunction")
    return f.parts


def _quantified_context(prem: Sequent, concl: Sequent, vs):
    """Premise context must be the conclusion context extended by the bound variables."""
    outer = {v.name for v in concl.context}
    if any(v.name in outer for v in vs):
        _mismatch("quantified variables clash with the context")
    if set(prem.context) != set(concl.context) | set(vs) or len(prem.context) != len(concl.context) + len(vs):
        _mismatch("premise context must be the conclusion context plus the quantified variables")


def _check_terms_in(terms, ctx: Context):
    names = {(v.name, v.sort) for v in ctx}
    for t in terms:
        for v in term_vars(t):
            if (v.name, v.sort) not in names:
                _mismatch(f"term variable {v.name} not in the conclusion context")


def check_step(rule: str, premises, conclusion: Sequent, side: Side = Side(), T: Theory | None = None) -> None:
    """Raise ``Rejection`` unless the step instantiates ``rule``; ``premises`` are sequents."""
    c = conclusion
    ps = list(premises)
    a, k = c.antecedent, c.consequent
    if rule == "identity":
        _arity(ps, 0)
        _same(a, k, "antecedent and consequent")
    elif rule == "cut":
        _arity(ps, 2)
        p, q = ps
        _same_ctx(p, c)
        _same_ctx(q, c)
        _same(p.antecedent, a, "first premise antecedent")
        _same(p.consequent, q.antecedent, "cut formulas")
        _same(q.consequent, k, "second premise consequent")
    elif rule == "substitution":
        _arity(ps, 1)
        p = ps[0]
        if side.terms is None:
            _mismatch("substitution needs terms")
        if len(side.terms) != len(p.context):
            _mismatch("one term per premise context variable required")
        _check_terms_in(side.terms, c.context)
        try:
            _same(substitute(p.antecedent, side.terms, p.context), a, "substituted antecedent")
            _same(substitute(p.consequent, side.terms, p.context), k, "substituted consequent")
        except WellFormednessError as e:
            _mismatch(str(e))
    elif rule == "weakening":
        _arity(ps, 1)
        p = ps[0]
        if not set(p.context) <= set(c.context):
            _mismatch("weakening may only add context variables")
        _same(p.antecedent, a, "antecedents")
        _same(p.consequent, k, "consequents")
    elif rule == "axiom":
        _arity(ps, 0)
        if T is None or side.index is None or not 0 <= side.index < len(T.axioms):
            raise Rejection("UnknownAxiom", f"no axiom with index {side.index}")
        ax = T.axioms[side.index]
        if side.terms is None:
            if tuple(ax.context) != tuple(c.context):
                _mismatch("axiom cited in a different context")
            _same(ax.antecedent, a, "axiom antecedent")
            _same(ax.consequent, k, "axiom consequent")
        else:
            if len(side.terms) != len(ax.context):
                _mismatch("one term per axiom context variable required")
            _check_terms_in(side.terms, c.context)
            _same(substitute(ax.antecedent, side.terms, ax.context), a, "instantiated axiom antecedent")
            _same(substitute(ax.consequent, side.terms, ax.context), k, "instantiated axiom consequent")
    elif rule == "eq_refl":
        _arity(ps, 0)
        if not isinstance(a, Top) or not isinstance(k, Eq) or k.lhs != k.rhs:
            _mismatch("expected top |- t = t")
    elif rule == "eq_subst":
        _arity(ps, 0)
        parts = _fin_and(a, "antecedent")
        if len(parts) != 2 or not isinstance(parts[0], Eq):
            _mismatch("antecedent must be (x = y) /\\ phi")
        eq, phi = parts
        if not isinstance(eq.lhs, Var) or not isinstance(eq.rhs, Var):
            _mismatch("equality must be between variables")
        try:
            _same(substitute(phi, [eq.rhs], [eq.lhs]), k, "consequent and phi[y/x]")
        except WellFormednessError as e:
            _mismatch(str(e))
    elif rule == "true_intro":
        _arity(ps, 0)
        if not isinstance(k, Top):
            _mismatch("consequent must be top")
    elif rule == "and_proj":
        _arity(ps, 0)
        parts = _fin_and(a, "antecedent")
        if not any(alpha_equal(p, k) for p in parts):
            _mismatch("consequent is not a conjunct")
    elif rule in ("and_intro", "iand_intro"):
        if rule == "and_intro":
            parts = _fin_and(k, "consequent")
        else:
            if not isinstance(k, And) or not k.infinitary:
                _mismatch("consequent must be a tagged-infinitary conjunction")
            parts = k.parts
        _arity(ps, len(parts))
        for p, part in zip(ps, parts):
            _same_ctx(p, c)
            _same(p.antecedent, a, "premise antecedent")
            _same(p.consequent, part, "premise consequent and conjunct")
    elif rule == "iand_proj":
        _arity(ps, 0)
        if not isinstance(a, And) or not a.infinitary:
            _mismatch("antecedent must be a tagged-infinitary conjunction")
        if not any(alpha_equal(p, k) for p in a.parts):
            _mismatch("consequent is not a conjunct")
    elif rule == "false_elim":
        _arity(ps, 0)
        if not isinstance(a, Bot):
            _mismatch("antecedent must be bot")
    elif rule in ("or_inj", "ior_inj"):
        _arity(ps, 0)
        parts = _or(k, rule == "ior_inj", "consequent")
        if not any(alpha_equal(p, a) for p in parts):
            _mismatch("antecedent is not a disjunct")
    elif rule in ("or_elim", "ior_elim"):
        parts = _or(a, rule == "ior_elim", "antecedent")
        _arity(ps, len(parts))
        for p, part in zip(ps, parts):
            _same_ctx(p, c)
            _same(p.antecedent, part, "premise antecedent and disjunct")
            _same(p.consequent, k, "premise consequent")
    elif rule == "exists_elim":
        _arity(ps, 1)
        p = ps[0]
        if not isinstance(a, Exists):
            _mismatch("antecedent must be existential")
        _quantified_context(p, c, a.vars)
        _same(p.antecedent, a.body, "premise antecedent and quantified body")
        _same(p.consequent, k, "consequents")
    elif rule == "exists_intro":
        _arity(ps, 1)
        p = ps[0]
        if not isinstance(p.antecedent, Exists):
            _mismatch("premise antecedent must be existential")
        _quantified_context(c, p, p.antecedent.vars)
        _same(p.antecedent.body, a, "antecedent and quantified body")
        _same(p.consequent, k, "consequents")
    elif rule == "forall_intro":
        _arity(ps, 1)
        p = ps[0]
        if not isinstance(k, Forall):
            _mismatch("consequent must be universal")
        _quantified_context(p, c, k.vars)
        _same(p.antecedent, a, "antecedents")
        _same(p.consequent, k.body, "premise consequent and quantified body")
    elif rule == "forall_elim":
        _arity(ps, 1)
        p = ps[0]
        if not isinstance(p.consequent, Forall):
            _mismatch("premise consequent must be universal")
        _quantified_context(c, p, p.consequent.vars)
        _same(p.antecedent, a, "antecedents")
        _same(p.consequent.body, k, "consequent and quantified body")
    elif rule == "distributivity":
        _arity(ps, 0)
        parts = _fin_and(a, "antecedent")
        if len(parts) != 2 or not isinstance(parts[1], Or):
            _mismatch("antecedent must be phi /\\ (disjunction)")
        phi, dis = parts
        expect = Or(tuple(And((phi, d)) for d in dis.parts), dis.infinitary) if (
            dis.infinitary or len(dis.parts) >= 2) else None
        if expect is None:
            _mismatch("malformed disjunction")
        _same(expect, k, "consequent")
    elif rule == "frobenius":
        _arity(ps, 0)
        parts = _fin_and(a, "antecedent")
        if len(parts) != 2 or not isinstance(parts[1], Exists):
            _mismatch("antecedent must be phi /\\ exists y. psi")
        phi, ex = parts
        bound = {v.name for v in ex.vars}
        if any(v.name in bound for v in free_variables(phi)):
            _mismatch("quantified variable occurs free in phi")
        _same(Exists(ex.vars, And((phi, ex.body))), k, "consequent")
    elif rule == "imp_intro":
        _arity(ps, 1)
        p = ps[0]
        _same_ctx(p, c)
        parts = _fin_and(p.antecedent, "premise antecedent")
        if len(parts) != 2 or not isinstance(k, Imp):
            _mismatch("expected phi /\\ psi |- chi  over  phi |- psi -> chi")
        _same(parts[0], a, "antecedents")
        _same(parts[1], k.ante, "implication hypothesis")
        _same(p.consequent, k.cons, "implication conclusion")
    elif rule == "imp_elim":
        _arity(ps, 1)
        p = ps[0]
        _same_ctx(p, c)
        parts = _fin_and(a, "antecedent")
        if len(parts) != 2 or not isinstance(p.consequent, Imp):
            _mismatch("expected phi |- psi -> chi  over  phi /\\ psi |- chi")
        _same(parts[0], p.antecedent, "antecedents")
        _same(parts[1], p.consequent.ante, "implication hypothesis")
        _same(k, p.consequent.cons, "implication conclusion")
    elif rule == "excluded_middle":
        _arity(ps, 0)
        if not isinstance(a, Top):
            _mismatch("antecedent must be top")
        parts = _or(k, False, "consequent")
        if len(parts) != 2 or not alpha_equal(parts[1], Imp(parts[0], Bot())):
            _mismatch("consequent must be phi \\/ ~phi")
    else:
        raise Rejection("UnavailableRule", f"unknown rule {rule}")


def check_proof(p: ProofTree, sys: SystemTag, T: Theory | None = None) -> Verdict:
    """Accept iff every node is a legal step of ``sys``; otherwise report the first bad node (pre-order)."""
    for path, node in p.nodes():
        info = RULES.get(node.rule)
        if info is None:
            return Verdict(False, "UnavailableRule", path, f"unknown rule {node.rule}")
        if info.system > sys:
            return Verdict(False, "UnavailableRule", path, f"{node.rule} is not a rule of {sys}")
        if T is not None:
            try:
                check_sequent(T.signature, node.conclusion)
            except WellFormednessError as e:
                return Verdict(False, "SchemaMismatch", path, f"ill-formed sequent: {e}")
        try:
            check_step(node.rule, [q.conclusion for q in node.premises], node.conclusion, node.side, T)
        except Rejection as e:
            return Verdict(False, e.kind, path, e.reason)
    return Verdict(True)


def show_proof(p: ProofTree, indent: int = 0) -> str:
    lines = [" " * indent + f"{p.rule}: {pretty_sequent(p.conclusion)}"]
    for q in p.premises:
        lines.append(show_proof(q, indent + 2))
    return "\n".join(lines)
