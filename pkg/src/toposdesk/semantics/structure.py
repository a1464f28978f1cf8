"""Structures in finite Heyting algebras and finite presheaf toposes.

Propositional mode: every 0-ary relation symbol is an element of a finite
Heyting algebra.  Presheaf mode: each sort is a presheaf on a finite category,
each relation a subpresheaf of the product of its argument sorts, each
function symbol a natural transformation.  A context ``x1:A1, ..., xn:An`` is
interpreted by the pointwise product presheaf, whose elements are tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from ..algebra.decide import batch_eval
from ..algebra.lattice import FinHeyting, LatticeHom
from ..fincat.category import FinCategory
from ..fincat.presheaf import (NatTrans, Presheaf, Subpresheaf, exists_along, forall_along,
                               heyting_implication, pullback)
from ..syntax import (And, Bot, Context, Eq, Exists, Forall, Formula, Fragment, Imp, Or, Rel, Sequent,
                      Signature, Top, Var, WellFormednessError, classify_fragment, free_variables, pretty,
                      rename_bound)


class FragmentMismatch(ValueError):
    """The formula lies outside the fragment the structure's target supports."""


class StructureError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Structure:
    signature: Signature
    mode: str                         # "propositional" | "presheaf"
    algebra: FinHeyting = None
    values: dict = None               # propositional: atom -> element
    category: FinCategory = None
    sorts: dict = None                # presheaf: sort -> Presheaf
    relations: dict = None            # presheaf: name -> parts (tuple of frozensets per object)
    functions: dict = None            # presheaf: name -> components (per object, tuple-index -> element)
    max_fragment: Fragment = Fragment.FIRST_ORDER
    name: str = ""

    # --- constructors -------------------------------------------------------

    @classmethod
    def propositional(cls, sig: Signature, algebra: FinHeyting, values: dict,
                      max_fragment: Fragment = Fragment.FIRST_ORDER, name: str = ""):
        if sig.sorts or sig.functions or any(sig.relations.values()):
            raise StructureError("propositional structures need a signature of 0-ary relations only")
        values = {a: int(values[a]) for a in sig.atoms}
        for a, v in values.items():
            if not 0 <= v < algebra.n:
                raise StructureError(f"value of {a} outside the algebra")
        return cls(sig, "propositional", algebra=algebra, values=values, max_fragment=max_fragment, name=name)

    @classmethod
    def presheaf(cls, sig: Signature, category: FinCategory, sorts: dict, relations: dict,
                 functions: dict | None = None, name: str = ""):
        """``relations[R]`` and ``functions[f]`` may be Subpresheaf/NatTrans objects over
        any product presheaf with the right element tuples, or raw parts/components."""
        functions = functions or {}
        out = cls(sig, "presheaf", category=category, sorts=dict(sorts), relations={}, functions={}, name=name)
        for s in sig.sorts:
            if s not in sorts:
                raise StructureError(f"no presheaf for sort {s}")
            if sorts[s].category is not category:
                raise StructureError(f"presheaf for sort {s} lives on another category")
        for r, arg_sorts in sig.relations.items():
            if r not in relations:
                raise StructureError(f"no interpretation for relation {r}")
            val = relations[r]
            parts = val.parts if isinstance(val, Subpresheaf) else val
            # validates closure under the action
            out.relations[r] = Subpresheaf(out.carrier(arg_sorts), parts).parts
        for f, (arg_sorts, res) in sig.functions.items():
            if f not in functions:
                raise StructureError(f"no interpretation for function {f}")
            val = functions[f]
            comps = val.components if isinstance(val, NatTrans) else val
            NatTrans(out.carrier(arg_sorts), sorts[res], comps)
            out.functions[f] = tuple(tuple(c) for c in comps)
        return out

    # --- carriers -----------------------------------------------------------

    @cached_property
    def _carriers(self):
        return {}

    @cached_property
    def _memo(self):
        return {}

    def carrier(self, sort_list) -> Presheaf:
        key = tuple(sort_list)
        if key not in self._carriers:
            if not key:
                self._carriers[key] = Presheaf.terminal(self.category)
            else:
                self._carriers[key] = Presheaf.product([self.sorts[s] for s in key])
        return self._carriers[key]

    def relation(self, name) -> Subpresheaf:
        return Subpresheaf(self.carrier(self.signature.relations[name]), self.relations[name])

    def is_boolean_target(self) -> bool:
        if self.mode == "propositional":
            return self.algebra.is_boolean()
        return self.category.is_groupoid()

    def describe(self) -> str:
        if self.name:
            return self.name
        if self.mode == "propositional":
            vals = ", ".join(f"{a}={self.algebra.labels[v]}" for a, v in sorted(self.values.items()))
            return f"{self.algebra.describe()} [{vals}]"
        return f"presheaf structure on {self.category.describe()}"


# ---------------------------------------------------------------------------
# Interpretation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=65536)
def _fragment(f: Formula) -> Fragment:
    return classify_fragment(f)


def _check_fragment(M: Structure, f: Formula):
    if _fragment(f) > M.max_fragment:
        raise FragmentMismatch(f"{pretty(f)} is outside the {M.max_fragment} fragment supported here")


def interpret(M: Structure, f: Formula, ctx=()):
    """The subobject ``{ctx : f}``: an algebra element or a Subpresheaf of the context carrier."""
    ctx = Context(ctx)
    key = (f, ctx)
    if key in M._memo:
        return M._memo[key]
    _check_fragment(M, f)
    renamed = _prepare(f, ctx)
    if M.mode == "propositional":
        if ctx:
            raise StructureError("propositional structures interpret closed formulas only")
        out = _interp_prop(M, f)
    else:
        out = _interp_psh(M, renamed, ctx)
    M._memo[key] = out
    return out


@lru_cache(maxsize=65536)
def _prepare(f: Formula, ctx: Context) -> Formula:
    """Check free variables against ``ctx`` and rename bound ones apart from it."""
    names = {v.name: v.sort for v in ctx}
    for v in free_variables(f):
        if names.get(v.name) != v.sort:
            raise WellFormednessError(f"free variable {v.name} not in context")
    return rename_bound(f, set(names))


def _interp_prop(M, f):
    A = M.algebra
    if isinstance(f, Rel):
        if f.args:
            raise StructureError("relation with arguments in a propositional structure")
        return M.values[f.name]
    if isinstance(f, Top):
        return A.top
    if isinstance(f, Bot):
        return A.bottom
    if isinstance(f, And):
        out = A.top
        for p in f.parts:
            out = int(A.meet[out, _interp_prop(M, p)])
        return out
    if isinstance(f, Or):
        out = A.bottom
        for p in f.parts:
            out = int(A.join[out, _interp_prop(M, p)])
        return out
    if isinstance(f, Imp):
        return int(A.imp[_interp_prop(M, f.ante), _interp_prop(M, f.cons)])
    raise StructureError(f"cannot interpret {pretty(f)} in an algebra (quantifier or equality)")


def _term_values(M, t, ctx, c):
    """Value of term ``t`` at each element tuple of the context carrier at object ``c``."""
    P = M.carrier(ctx.sorts)
    if isinstance(t, Var):
        i = [v.name for v in ctx].index(t.name)
        if not ctx.sorts:
            raise StructureError("variable in empty context")
        return [tup[i] for tup in P._tuples[c]]
    args = [_term_values(M, a, ctx, c) for a in t.args]
    arg_sorts, _ = M.signature.functions[t.symbol]
    comps = M.functions[t.symbol][c]
    if not args:
        n = len(P.sets[c])
        return [comps[0]] * n
    Q = M.carrier(arg_sorts)
    index = _tuple_index(Q, c)
    return [comps[index[tuple(a[k] for a in args)]] for k in range(len(P.sets[c]))]


def _tuple_index(P, c):
    cache = P.__dict__.setdefault("_tuple_index", {})
    if c not in cache:
        cache[c] = {t: i for i, t in enumerate(P._tuples[c])}
    return cache[c]


def _interp_psh(M, f, ctx):
    key = ("psh", f, ctx)
    out = M._memo.get(key)
    if out is None:
        out = M._memo[key] = _interp_psh_node(M, f, ctx)
    return out


def _interp_psh_node(M, f, ctx):
    P = M.carrier(ctx.sorts)
    C = M.category
    if isinstance(f, Top):
        return Subpresheaf.full(P)
    if isinstance(f, Bot):
        return Subpresheaf.empty(P)
    if isinstance(f, Rel):
        arg_sorts = M.signature.relations[f.name]
        R = M.relations[f.name]
        parts = []
        for c in range(C.n_objects):
            if not f.args:
                parts.append(range(len(P.sets[c])) if 0 in R[c] else ())
                continue
            vals = [_term_values(M, t, ctx, c) for t in f.args]
            index = _tuple_index(M.carrier(arg_sorts), c)
            parts.append([k for k in range(len(P.sets[c]))
                          if index[tuple(v[k] for v in vals)] in R[c]])
        return Subpresheaf(P, parts)
    if isinstance(f, Eq):
        parts = []
        for c in range(C.n_objects):
            lv, rv = _term_values(M, f.lhs, ctx, c), _term_values(M, f.rhs, ctx, c)
            parts.append([k for k in range(len(P.sets[c])) if lv[k] == rv[k]])
        return Subpresheaf(P, parts)
    if isinstance(f, And):
        out = Subpresheaf.full(P)
        for p in f.parts:
            out = out.meet(_interp_psh(M, p, ctx))
        return out
    if isinstance(f, Or):
        out = Subpresheaf.empty(P)
        for p in f.parts:
            out = out.join(_interp_psh(M, p, ctx))
        return out
    if isinstance(f, Imp):
        return heyting_implication(_interp_psh(M, f.ante, ctx), _interp_psh(M, f.cons, ctx))
    if isinstance(f, (Exists, Forall)):
        inner = ctx.extend(f.vars)
        body = _interp_psh(M, f.body, inner)
        h = _projection(M, inner, len(ctx))
        return exists_along(h, body) if isinstance(f, Exists) else forall_along(h, body)
    raise StructureError(f"cannot interpret {f!r}")


def _projection(M, ctx, keep):
    P = M.carrier(ctx.sorts)
    Q = M.carrier(ctx.sorts[:keep])
    comps = []
    for c in range(M.category.n_objects):
        if keep:
            index = _tuple_index(Q, c)
            comps.append([index[t[:keep]] for t in P._tuples[c]])
        else:
            comps.append([0] * len(P.sets[c]))
    return NatTrans(P, Q, comps)


def leq(M: Structure, a, b) -> bool:
    if M.mode == "propositional":
        return M.algebra.le(a, b)
    return a <= b


def sequent_valid(M: Structure, s: Sequent) -> bool:
    return leq(M, interpret(M, s.antecedent, s.context), interpret(M, s.consequent, s.context))


def theory_valid(M: Structure, axioms) -> bool:
    return all(sequent_valid(M, ax) for ax in axioms)


def interpret_batch(algebra: FinHeyting, f: Formula, env: dict) -> np.ndarray:
    """Vectorized propositional interpretation over many valuations at once."""
    return np.atleast_1d(batch_eval(algebra, f, env))


def all_valuations(algebra: FinHeyting, atoms) -> dict:
    """Every assignment of algebra elements to ``atoms``, as aligned arrays."""
    atoms = tuple(atoms)
    if not atoms:
        return {}
    grids = np.meshgrid(*([np.arange(algebra.n, dtype=np.int32)] * len(atoms)), indexing="ij")
    return {a: g.ravel() for a, g in zip(atoms, grids)}


# ---------------------------------------------------------------------------
# Morphisms of structures
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class StructureMap:
    """A morphism ``M -> N``.

    Presheaf mode: one natural transformation per sort (``components[sort]``).
    Propositional mode: a bounded-lattice map between the two algebras.
    """
    source: Structure
    target: Structure
    components: dict = None
    algebra_map: LatticeHom = None

    def __post_init__(self):
        M, N = self.source, self.target
        if M.signature != N.signature or M.mode != N.mode:
            raise StructureError("structure maps need a shared signature and mode")
        if M.mode == "presheaf":
            if M.category is not N.category:
                raise StructureError("structures over different categories")
            comps = {}
            for s in M.signature.sorts:
                val = self.components[s]
                raw = val.components if isinstance(val, NatTrans) else val
                comps[s] = NatTrans(M.sorts[s], N.sorts[s], raw)
            object.__setattr__(self, "components", comps)
        else:
            h = self.algebra_map
            if h is None or h.source is not M.algebra or h.target is not N.algebra:
                raise StructureError("propositional structure maps carry an algebra map between the targets")
            if not h.is_lattice_hom():
                raise StructureError("algebra map does not preserve 0, 1, meets and joins")

    @classmethod
    def identity(cls, M: Structure):
        if M.mode == "presheaf":
            return cls(M, M, {s: NatTrans.identity(M.sorts[s]) for s in M.signature.sorts})
        return cls(M, M, algebra_map=LatticeHom(M.algebra, M.algebra, tuple(range(M.algebra.n))))

    def on_context(self, sorts) -> NatTrans:
        """``h_X = h_A1 x ... x h_An`` between the context carriers."""
        M, N = self.source, self.target
        P, Q = M.carrier(sorts), N.carrier(sorts)
        comps = []
        for c in range(M.category.n_objects):
            index = _tuple_index(Q, c) if sorts else None
            row = []
            for t in (P._tuples[c] if sorts else [()]):
                if sorts:
                    img = tuple(self.components[s].components[c][x] for s, x in zip(sorts, t))
                    row.append(index[img])
                else:
                    row.append(0)
            comps.append(row)
        return NatTrans(P, Q, comps)

    def satisfies(self, f: Formula, ctx=()) -> bool:
        """``{x : f}^M <= h_X^*({x : f}^N)``."""
        M, N = self.source, self.target
        ctx = Context(ctx)
        a = interpret(M, f, ctx)
        b = interpret(N, f, ctx)
        if M.mode == "propositional":
            return N.algebra.le(self.algebra_map(a), b)
        return a <= pullback(self.on_context(ctx.sorts), b)


@dataclass(frozen=True)
class MorphismVerdict:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def _closed_context(f: Formula):
    return Context(sorted(free_variables(f), key=lambda v: (v.name, v.sort)))


def _atomic_formulas(sig: Signature):
    out = []
    for r, arg_sorts in sorted(sig.relations.items()):
        xs = tuple(Var(f"x{i}", s) for i, s in enumerate(arg_sorts))
        out.append(Rel(r, xs))
    for s in sorted(sig.sorts):
        out.append(Eq(Var("x0", s), Var("x1", s)))
    return out


def is_homomorphism(h: StructureMap) -> MorphismVerdict:
    """Commutes with function symbols and satisfies the inequality on atomic formulas."""
    M, N = h.source, h.target
    if M.mode == "presheaf":
        for fname, (arg_sorts, res) in sorted(M.signature.functions.items()):
            hx = h.on_context(arg_sorts)
            hr = h.components[res]
            for c in range(M.category.n_objects):
                fm, fn = M.functions[fname][c], N.functions[fname][c]
                for k in range(len(M.carrier(arg_sorts).sets[c])):
                    if hr.components[c][fm[k]] != fn[hx.components[c][k]]:
                        return MorphismVerdict(False, f"function {fname} at {M.category.objects[c]}")
    for f in _atomic_formulas(M.signature):
        if not h.satisfies(f, _closed_context(f)):
            return MorphismVerdict(False, f)
    return MorphismVerdict(True)


def _corpus_check(h, corpus, fragment):
    for f in corpus:
        if classify_fragment(f) > fragment:
            raise FragmentMismatch(f"corpus formula {pretty(f)} outside {fragment}")
    base = is_homomorphism(h)
    if not base:
        return base
    for f in corpus:
        if not h.satisfies(f, _closed_context(f)):
            return MorphismVerdict(False, f)
    return MorphismVerdict(True)


def is_subelementary(h: StructureMap, corpus) -> MorphismVerdict:
    """The inequality for every sub-first-order formula of the corpus."""
    return _corpus_check(h, corpus, Fragment.SUB_FIRST_ORDER)


def is_elementary(h: StructureMap, corpus) -> MorphismVerdict:
    """The inequality for every first-order formula of the corpus."""
    return _corpus_check(h, corpus, Fragment.FIRST_ORDER)
