"""Multi-sorted signatures, terms, formulas in context, sequents and theories.

Formulas are immutable trees.  Negation and bi-implication are not separate
node types: ``Not(f)`` builds ``Imp(f, Bot())`` and ``Iff(a, b)`` builds the
conjunction of the two implications.

Conjunctions and disjunctions carry an ``infinitary`` flag.  A node with the
flag set was formed by the infinitary clause of the grammar even though its
index family is finite; the fragment classifier, the deduction rules and the
classical translation all look at the flag, not at the family size.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union


class WellFormednessError(ValueError):
    """A term or formula does not type-check against its signature/context."""


class Fragment(enum.IntEnum):
    GEOMETRIC = 0
    SUB_FIRST_ORDER = 1
    FIRST_ORDER = 2

    def __str__(self) -> str:
        return _FRAGMENT_NAMES[self]


_FRAGMENT_NAMES = {
    Fragment.GEOMETRIC: "Geometric",
    Fragment.SUB_FIRST_ORDER: "SubFirstOrder",
    Fragment.FIRST_ORDER: "FirstOrder",
}


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    sorts: frozenset = frozenset()
    relations: Mapping[str, tuple] = field(default_factory=dict)
    functions: Mapping[str, tuple] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "sorts", frozenset(self.sorts))
        rels = {name: tuple(args) for name, args in dict(self.relations).items()}
        funs = {}
        for name, (args, result) in dict(self.functions).items():
            funs[name] = (tuple(args), result)
        object.__setattr__(self, "relations", MappingProxyType(rels))
        object.__setattr__(self, "functions", MappingProxyType(funs))
        clash = set(rels) & set(funs)
        if clash:
            raise WellFormednessError(f"names used as both relation and function: {sorted(clash)}")
        for name, args in rels.items():
            for s in args:
                if s not in self.sorts:
                    raise WellFormednessError(f"relation {name} uses undeclared sort {s}")
        for name, (args, result) in funs.items():
            for s in (*args, result):
                if s not in self.sorts:
                    raise WellFormednessError(f"function {name} uses undeclared sort {s}")

    def __hash__(self):
        return hash((self.sorts, tuple(sorted(self.relations.items())),
                     tuple(sorted(self.functions.items()))))

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return (self.sorts == other.sorts and dict(self.relations) == dict(other.relations)
                and dict(self.functions) == dict(other.functions))

    @classmethod
    def propositional(cls, atoms: Iterable[str]) -> "Signature":
        return cls(relations={a: () for a in atoms})

    @property
    def atoms(self) -> tuple:
        """The 0-ary relation symbols, in sorted order."""
        return tuple(sorted(n for n, args in self.relations.items() if not args))

    def extend(self, sorts=(), relations=None, functions=None) -> "Signature":
        rels = dict(self.relations)
        rels.update(relations or {})
        funs = dict(self.functions)
        funs.update(functions or {})
        return Signature(self.sorts | frozenset(sorts), rels, funs)

    def union(self, other: "Signature") -> "Signature":
        for name, args in other.relations.items():
            if name in self.relations and self.relations[name] != args:
                raise WellFormednessError(f"relation {name} declared twice with different sorts")
        return self.extend(other.sorts, other.relations, other.functions)


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str
    sort: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    """Function application; constants are 0-ary applications."""
    symbol: str
    args: tuple
    sort: str

    def __str__(self):
        if not self.args:
            return self.symbol
        return f"{self.symbol}({', '.join(map(str, self.args))})"


Term = Union[Var, App]


def apply(sig: Signature, symbol: str, *args: Term) -> App:
    """Build ``symbol(args)`` with the result sort looked up in ``sig``."""
    if symbol not in sig.functions:
        raise WellFormednessError(f"unknown function symbol {symbol}")
    arg_sorts, result = sig.functions[symbol]
    if len(arg_sorts) != len(args):
        raise WellFormednessError(f"{symbol} expects {len(arg_sorts)} arguments, got {len(args)}")
    for a, s in zip(args, arg_sorts):
        if a.sort != s:
            raise WellFormednessError(f"argument {a} of {symbol} has sort {a.sort}, expected {s}")
    return App(symbol, tuple(args), result)


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t])
    out = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

def _cached_hash(cls):
    """Memoize the generated hash; formulas are immutable and often used as keys."""
    plain = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = plain(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


@_cached_hash
@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@_cached_hash
@dataclass(frozen=True)
class And:
    parts: tuple
    infinitary: bool = False

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.infinitary and len(self.parts) < 2:
            raise WellFormednessError("finitary conjunction needs at least two conjuncts")


@_cached_hash
@dataclass(frozen=True)
class Or:
    parts: tuple
    infinitary: bool = False

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.infinitary and len(self.parts) < 2:
            raise WellFormednessError("finitary disjunction needs at least two disjuncts")


@_cached_hash
@dataclass(frozen=True)
class Imp:
    ante: "Formula"
    cons: "Formula"


@_cached_hash
@dataclass(frozen=True)
class Exists:
    vars: tuple
    body: "Formula"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        _check_binder(self.vars)


@_cached_hash
@dataclass(frozen=True)
class Forall:
    vars: tuple
    body: "Formula"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        _check_binder(self.vars)


Formula = Union[Rel, Eq, Top, Bot, And, Or, Imp, Exists, Forall]


def _check_binder(vs):
    if not vs:
        raise WellFormednessError("quantifiers bind a nonempty string of variables")
    if len({v.name for v in vs}) != len(vs):
        raise WellFormednessError("repeated variable in quantifier binder")


def Not(f: Formula) -> Imp:
    return Imp(f, Bot())


def Iff(a: Formula, b: Formula) -> And:
    return And((Imp(a, b), Imp(b, a)))


def conj(*parts: Formula) -> Formula:
    """Finitary conjunction that degrades gracefully for 0 or 1 parts."""
    if not parts:
        return Top()
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(*parts: Formula) -> Formula:
    if not parts:
        return Bot()
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def atom(name: str) -> Rel:
    return Rel(name, ())


def is_negation(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.cons, Bot)


def children(f: Formula) -> tuple:
    if isinstance(f, (And, Or)):
        return f.parts
    if isinstance(f, Imp):
        return (f.ante, f.cons)
    if isinstance(f, (Exists, Forall)):
        return (f.body,)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, including ``f`` itself."""
    yield f
    for c in children(f):
        yield from subformulas(c)


def depth(f: Formula) -> int:
    cs = children(f)
    return 0 if not cs else 1 + max(depth(c) for c in cs)


# ---------------------------------------------------------------------------
# Contexts, sequents, theories
# ---------------------------------------------------------------------------

class Context(tuple):
    """An ordered string of distinct variables."""

    def __new__(cls, vars: Iterable[Var] = ()):
        self = super().__new__(cls, tuple(vars))
        names = [v.name for v in self]
        if len(set(names)) != len(names):
            raise WellFormednessError(f"context repeats a variable: {names}")
        return self

    @property
    def sorts(self) -> tuple:
        return tuple(v.sort for v in self)

    def lookup(self, name: str):
        for v in self:
            if v.name == name:
                return v
        return None

    def extend(self, vs: Iterable[Var]) -> "Context":
        return Context((*self, *vs))

    def __add__(self, other):
        return Context((*self, *other))

    def __repr__(self):
        return f"Context({list(self)!r})"


@dataclass(frozen=True)
class Sequent:
    context: Context
    antecedent: Formula
    consequent: Formula

    def __post_init__(self):
        object.__setattr__(self, "context", Context(self.context))
        names = {v.name: v.sort for v in self.context}
        for f in (self.antecedent, self.consequent):
            for v in free_variables(f):
                if names.get(v.name) != v.sort:
                    raise WellFormednessError(
                        f"free variable {v.name}:{v.sort} not in context {list(self.context)}")

    @property
    def fragment(self) -> Fragment:
        return max(classify_fragment(self.antecedent), classify_fragment(self.consequent))


def sequent(ante: Formula, cons: Formula, context: Iterable[Var] = ()) -> Sequent:
    return Sequent(Context(context), ante, cons)


@dataclass(frozen=True)
class Theory:
    signature: Signature
    axioms: tuple = ()
    fragment: Fragment = Fragment.FIRST_ORDER

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))
        for i, ax in enumerate(self.axioms):
            if ax.fragment > self.fragment:
                raise WellFormednessError(
                    f"axiom {i} is {ax.fragment}, outside declared fragment {self.fragment}")
            check_sequent(self.signature, ax)

    @classmethod
    def inferred(cls, signature: Signature, axioms: Iterable[Sequent]) -> "Theory":
        """A theory declared in the least fragment containing all its axioms."""
        axioms = tuple(axioms)
        frag = max((a.fragment for a in axioms), default=Fragment.GEOMETRIC)
        return cls(signature, axioms, frag)

    def __len__(self):
        return len(self.axioms)


# ---------------------------------------------------------------------------
# Well-formedness
# ---------------------------------------------------------------------------

def check_term(sig: Signature, t: Term, ctx: Context | None = None) -> str:
    """Return the sort of ``t``; raise WellFormednessError on mismatch."""
    if isinstance(t, Var):
        if t.sort not in sig.sorts:
            raise WellFormednessError(f"variable {t.name} has undeclared sort {t.sort}")
        if ctx is not None:
            v = ctx.lookup(t.name)
            if v is None or v.sort != t.sort:
                raise WellFormednessError(f"variable {t.name}:{t.sort} not in context")
        return t.sort
    if t.symbol not in sig.functions:
        raise WellFormednessError(f"unknown function symbol {t.symbol}")
    arg_sorts, result = sig.functions[t.symbol]
    if len(arg_sorts) != len(t.args):
        raise WellFormednessError(f"{t.symbol} applied to {len(t.args)} arguments, expects {len(arg_sorts)}")
    for a, s in zip(t.args, arg_sorts):
        got = check_term(sig, a, ctx)
        if got != s:
            raise WellFormednessError(f"argument {a} of {t.symbol} has sort {got}, expected {s}")
    if result != t.sort:
        raise WellFormednessError(f"term {t} is annotated with sort {t.sort}, signature says {result}")
    return result


def check_formula(sig: Signature, f: Formula, ctx: Context | None = None) -> None:
    """Type-check ``f``; when ``ctx`` is given its free variables must lie in it."""
    if isinstance(f, Rel):
        if f.name not in sig.relations:
            raise WellFormednessError(f"unknown relation symbol {f.name}")
        expected = sig.relations[f.name]
        if len(expected) != len(f.args):
            raise WellFormednessError(f"{f.name} applied to {len(f.args)} arguments, expects {len(expected)}")
        for a, s in zip(f.args, expected):
            got = check_term(sig, a, ctx)
            if got != s:
                raise WellFormednessError(f"argument {a} of {f.name} has sort {got}, expected {s}")
    elif isinstance(f, Eq):
        ls, rs = check_term(sig, f.lhs, ctx), check_term(sig, f.rhs, ctx)
        if ls != rs:
            raise WellFormednessError(f"equation {f.lhs} = {f.rhs} between sorts {ls} and {rs}")
    elif isinstance(f, (Exists, Forall)):
        for v in f.vars:
            if v.sort not in sig.sorts:
                raise WellFormednessError(f"bound variable {v.name} has undeclared sort {v.sort}")
        inner = None
        if ctx is not None:
            bound = {v.name for v in f.vars}
            inner = Context([v for v in ctx if v.name not in bound] + list(f.vars))
        check_formula(sig, f.body, inner)
    else:
        for c in children(f):
            check_formula(sig, c, ctx)
    if ctx is None:
        # sorts of free variables must at least be consistent
        seen = {}
        for v in free_variables(f):
            if seen.setdefault(v.name, v.sort) != v.sort:
                raise WellFormednessError(f"variable {v.name} used at two sorts")


def check_sequent(sig: Signature, s: Sequent) -> None:
    check_formula(sig, s.antecedent, s.context)
    check_formula(sig, s.consequent, s.context)


def is_propositional(f: Formula) -> bool:
    return all(
        (isinstance(g, Rel) and not g.args) or isinstance(g, (Top, Bot, And, Or, Imp))
        for g in subformulas(f))


def atoms_of(f: Formula) -> frozenset:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Rel) and not g.args)


# ---------------------------------------------------------------------------
# Fragment classification
# ---------------------------------------------------------------------------

def classify_fragment(f: Formula) -> Fragment:
    """The least of the three formula classes containing ``f``."""
    if isinstance(f, (Rel, Eq, Top, Bot)):
        return Fragment.GEOMETRIC
    if isinstance(f, Forall):
        return Fragment.FIRST_ORDER
    if isinstance(f, And) and f.infinitary:
        return Fragment.FIRST_ORDER
    own = Fragment.SUB_FIRST_ORDER if isinstance(f, Imp) else Fragment.GEOMETRIC
    return max([own, *(classify_fragment(c) for c in children(f))])


# ---------------------------------------------------------------------------
# Variables and substitution
# ---------------------------------------------------------------------------

def free_variables(f: Formula) -> frozenset:
    """Set of free ``Var`` objects (name and sort)."""
    if isinstance(f, Rel):
        out = frozenset()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Eq):
        return term_vars(f.lhs) | term_vars(f.rhs)
    if isinstance(f, (Exists, Forall)):
        bound = {v.name for v in f.vars}
        return frozenset(v for v in free_variables(f.body) if v.name not in bound)
    out = frozenset()
    for c in children(f):
        out |= free_variables(c)
    return out


def all_variable_names(f: Formula) -> set:
    names = {v.name for v in free_variables(f)}
    for g in subformulas(f):
        if isinstance(g, (Exists, Forall)):
            names.update(v.name for v in g.vars)
    return names


def fresh_name(base: str, avoid: set) -> str:
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def substitute_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    return App(t.symbol, tuple(substitute_term(a, mapping) for a in t.args), t.sort)


def _subst(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    if not mapping:
        return f
    if isinstance(f, Rel):
        return Rel(f.name, tuple(substitute_term(a, mapping) for a in f.args))
    if isinstance(f, Eq):
        return Eq(substitute_term(f.lhs, mapping), substitute_term(f.rhs, mapping))
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, And):
        return And(tuple(_subst(p, mapping) for p in f.parts), f.infinitary)
    if isinstance(f, Or):
        return Or(tuple(_subst(p, mapping) for p in f.parts), f.infinitary)
    if isinstance(f, Imp):
        return Imp(_subst(f.ante, mapping), _subst(f.cons, mapping))
    # quantifier: drop shadowed entries, rename binders that would capture
    bound = {v.name for v in f.vars}
    body_free = {v.name for v in free_variables(f.body)}
    inner = {k: t for k, t in mapping.items() if k not in bound and k in body_free}
    if not inner:
        return f
    incoming = set()
    for t in inner.values():
        incoming |= {v.name for v in term_vars(t)}
    avoid = incoming | all_variable_names(f.body) | set(inner)
    new_vars = []
    renames = {}
    for v in f.vars:
        if v.name in incoming:
            name = fresh_name(v.name, avoid)
            avoid.add(name)
            nv = Var(name, v.sort)
            renames[v.name] = nv
            new_vars.append(nv)
        else:
            new_vars.append(v)
    body = _subst(f.body, renames) if renames else f.body
    body = _subst(body, inner)
    return type(f)(tuple(new_vars), body)


def substitute(f: Formula, terms: Sequence[Term], ctx: Sequence[Var]) -> Formula:
    """Simultaneously replace the variables of ``ctx`` by ``terms`` in ``f``.

    Bound variables are renamed (by priming) when they would capture a
    variable of an incoming term.
    """
    ctx = Context(ctx)
    terms = tuple(terms)
    if len(terms) != len(ctx):
        raise WellFormednessError(f"substitution of {len(terms)} terms for {len(ctx)} variables")
    for t, v in zip(terms, ctx):
        if t.sort != v.sort:
            raise WellFormednessError(f"cannot substitute {t}:{t.sort} for {v.name}:{v.sort}")
    mapping = {v.name: t for v, t in zip(ctx, terms) if t != v}
    return _subst(f, mapping)


def rename_bound(f: Formula, avoid: set) -> Formula:
    """Rename bound variables of ``f`` away from ``avoid`` (used before interpretation)."""
    if isinstance(f, (Rel, Eq, Top, Bot)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(tuple(rename_bound(p, avoid) for p in f.parts), f.infinitary)
    if isinstance(f, Imp):
        return Imp(rename_bound(f.ante, avoid), rename_bound(f.cons, avoid))
    taken = set(avoid) | all_variable_names(f.body)
    renames = {}
    new_vars = []
    for v in f.vars:
        if v.name in avoid:
            name = fresh_name(v.name, taken)
            taken.add(name)
            renames[v.name] = Var(name, v.sort)
            new_vars.append(renames[v.name])
        else:
            new_vars.append(v)
    body = _subst(f.body, renames) if renames else f.body
    return type(f)(tuple(new_vars), rename_bound(body, avoid | {v.name for v in new_vars}))


# ---------------------------------------------------------------------------
# Alpha-equivalence
# ---------------------------------------------------------------------------

def _canon_term(t, env):
    if isinstance(t, Var):
        return ("v", env.get(t.name, t.name), t.sort)
    return ("f", t.symbol, tuple(_canon_term(a, env) for a in t.args))


def _canon(f, env, level):
    if isinstance(f, Rel):
        return ("R", f.name, tuple(_canon_term(a, env) for a in f.args))
    if isinstance(f, Eq):
        return ("=", _canon_term(f.lhs, env), _canon_term(f.rhs, env))
    if isinstance(f, Top):
        return ("T",)
    if isinstance(f, Bot):
        return ("F",)
    if isinstance(f, And):
        return ("&", f.infinitary, tuple(_canon(p, env, level) for p in f.parts))
    if isinstance(f, Or):
        return ("|", f.infinitary, tuple(_canon(p, env, level) for p in f.parts))
    if isinstance(f, Imp):
        return (">", _canon(f.ante, env, level), _canon(f.cons, env, level))
    inner = dict(env)
    sorts = []
    for i, v in enumerate(f.vars):
        inner[v.name] = ("#", level + i)
        sorts.append(v.sort)
    tag = "E" if isinstance(f, Exists) else "A"
    return (tag, tuple(sorts), _canon(f.body, inner, level + len(f.vars)))


def alpha_key(f: Formula):
    """A hashable key equal for exactly the alpha-equivalent formulas."""
    return _canon(f, {}, 0)


def alpha_equal(f: Formula, g: Formula) -> bool:
    return f == g or alpha_key(f) == alpha_key(g)


def expand_infinitary(f: Formula) -> Formula:
    """Replace tagged-infinitary connectives by finitary ones (``⊤``/``⊥`` for empty families)."""
    if isinstance(f, (And, Or)):
        parts = tuple(expand_infinitary(p) for p in f.parts)
        if f.infinitary:
            return conj(*parts) if isinstance(f, And) else disj(*parts)
        return type(f)(parts)
    if isinstance(f, Imp):
        return Imp(expand_infinitary(f.ante), expand_infinitary(f.cons))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.vars, expand_infinitary(f.body))
    return f


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_ASCII = {"and": r" /\ ", "or": r" \/ ", "imp": " -> ", "not": "~", "top": "top", "bot": "bot",
          "exists": "exists ", "forall": "forall ", "iand": r"/\{", "ior": r"\/{", "sep": "; ",
          "dot": ". "}
_UNICODE = {"and": " ∧ ", "or": " ∨ ", "imp": " ⇒ ", "not": "¬", "top": "⊤", "bot": "⊥",
            "exists": "∃", "forall": "∀", "iand": "⋀{", "ior": "⋁{", "sep": "; ", "dot": " "}


def _atomic(f):
    return isinstance(f, (Rel, Top, Bot)) or (isinstance(f, (And, Or)) and f.infinitary)


def _bare(g) -> bool:
    """Can ``g`` be printed as an operand without brackets?"""
    if _atomic(g):
        return True
    # a negated quantifier is printed ``~exists ...`` and extends to the right
    return is_negation(g) and not isinstance(g.ante, (Exists, Forall))


def _show(f: Formula, sym, typed: bool) -> str:
    def wrap(g):
        s = _show(g, sym, typed)
        return s if _bare(g) else f"({s})"

    if isinstance(f, Rel):
        if not f.args:
            return f.name
        return f"{f.name}({', '.join(map(str, f.args))})"
    if isinstance(f, Eq):
        return f"{f.lhs} = {f.rhs}"
    if isinstance(f, Top):
        return sym["top"]
    if isinstance(f, Bot):
        return sym["bot"]
    if isinstance(f, And) and f.infinitary:
        return sym["iand"] + sym["sep"].join(_show(p, sym, typed) for p in f.parts) + "}"
    if isinstance(f, Or) and f.infinitary:
        return sym["ior"] + sym["sep"].join(_show(p, sym, typed) for p in f.parts) + "}"
    if isinstance(f, And):
        return sym["and"].join(wrap(p) for p in f.parts)
    if isinstance(f, Or):
        return sym["or"].join(wrap(p) for p in f.parts)
    if isinstance(f, Imp):
        if isinstance(f.cons, Bot):
            if isinstance(f.ante, (Exists, Forall)):
                return sym["not"] + _show(f.ante, sym, typed)
            return sym["not"] + wrap(f.ante)
        return f"{wrap(f.ante)}{sym['imp']}{wrap(f.cons)}"
    q = sym["exists"] if isinstance(f, Exists) else sym["forall"]
    if typed:
        binder = " ".join(f"{v.name}:{v.sort}" for v in f.vars)
    else:
        binder = " ".join(v.name for v in f.vars)
    return f"{q}{binder}{sym['dot']}{_show(f.body, sym, typed)}"


def show(f: Formula) -> str:
    """ASCII rendering in the theory-file grammar (round-trips through the parser)."""
    return _show(f, _ASCII, True)


def pretty(f: Formula) -> str:
    """Unicode rendering for human-readable reports."""
    return _show(f, _UNICODE, False)


def show_context(ctx: Context) -> str:
    return ", ".join(f"{v.name}:{v.sort}" for v in ctx)


def show_sequent(s: Sequent) -> str:
    turnstile = f"|-[{show_context(s.context)}]" if s.context else "|-"
    return f"{show(s.antecedent)} {turnstile} {show(s.consequent)}"


def pretty_sequent(s: Sequent) -> str:
    sub = ",".join(v.name for v in s.context)
    return f"{pretty(s.antecedent)} ⊢{sub} {pretty(s.consequent)}"
