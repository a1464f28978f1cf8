"""Theory and formula translations: classical elimination of forall and
infinitary conjunction, and Morleyisation into a geometric theory."""

from __future__ import annotations

from .syntax import (And, Bot, Context, Eq, Exists, Forall, Formula, Fragment, Imp, Or, Rel, Sequent,
                     Theory, Top, WellFormednessError, alpha_key, children, free_variables, subformulas)


def classicalize(f: Formula) -> Formula:
    """Rewrite ``forall y. psi`` as ``~exists y. ~psi`` and ``/\\{psi_i}`` as ``~\\/{~psi_i}``.

    Finitary conjunctions are kept; the new disjunction keeps the infinitary
    tag.  The result is classically equivalent and lies in the sub-first-order
    fragment.
    """
    if isinstance(f, Forall):
        return Imp(Exists(f.vars, Imp(classicalize(f.body), Bot())), Bot())
    if isinstance(f, And):
        parts = tuple(classicalize(p) for p in f.parts)
        if f.infinitary:
            return Imp(Or(tuple(Imp(p, Bot()) for p in parts), infinitary=True), Bot())
        return And(parts)
    if isinstance(f, Or):
        return Or(tuple(classicalize(p) for p in f.parts), f.infinitary)
    if isinstance(f, Imp):
        return Imp(classicalize(f.ante), classicalize(f.cons))
    if isinstance(f, Exists):
        return Exists(f.vars, classicalize(f.body))
    return f


def classicalize_theory(T: Theory) -> Theory:
    axioms = [Sequent(ax.context, classicalize(ax.antecedent), classicalize(ax.consequent))
              for ax in T.axioms]
    return Theory.inferred(T.signature, axioms)


# ---------------------------------------------------------------------------
# Morleyisation
# ---------------------------------------------------------------------------

def _is_finitary(f: Formula) -> bool:
    return not any(isinstance(g, (And, Or)) and g.infinitary for g in subformulas(f))


def _ordered_free(f: Formula) -> tuple:
    return tuple(sorted(free_variables(f), key=lambda v: (v.name, v.sort)))


class _Namer:
    def __init__(self, taken):
        self.taken = set(taken)
        self.count = 0

    def fresh(self, prefix):
        while True:
            name = f"{prefix}{self.count}"
            self.count += 1
            if name not in self.taken:
                self.taken.add(name)
                return name


def morleyize(T: Theory) -> Theory:
    """Geometric theory naming each subformula of the non-geometric axioms.

    For a subformula ``phi`` with free variables ``x`` we add ``R_phi(x)``
    (atoms name themselves) and a complement ``N_phi(x)`` with
    ``R_phi /\\ N_phi |- bot`` and ``top |- R_phi \\/ N_phi``; each connective is
    then pinned down by geometric sequents:

        conjunction / disjunction   R ⊣⊢ /\\ R_parts  /  \\/ R_parts
        implication                 R ⊣⊢ N_ante \\/ R_cons
        existential                 R ⊣⊢ exists y. R_body
        universal                   N ⊣⊢ exists y. N_body

    Each non-geometric axiom ``phi |- psi`` becomes ``R_phi |- R_psi``.
    Geometric axioms are kept verbatim.
    """
    for ax in T.axioms:
        if not (_is_finitary(ax.antecedent) and _is_finitary(ax.consequent)):
            raise WellFormednessError("Morleyisation needs finitary axioms")
    if all(ax.fragment == Fragment.GEOMETRIC for ax in T.axioms):
        return Theory(T.signature, T.axioms, Fragment.GEOMETRIC)

    sig = T.signature
    namer = _Namer(set(sig.relations) | set(sig.functions) | set(sig.sorts))
    pos_of, neg_of = {}, {}
    new_rels = {}
    axioms = []

    def atomic(f):
        return isinstance(f, (Rel, Eq, Top, Bot))

    def name_pos(f):
        key = alpha_key(f)
        if key in pos_of:
            return pos_of[key]
        xs = _ordered_free(f)
        if atomic(f):
            atom_f = f
        else:
            name = namer.fresh("R")
            new_rels[name] = tuple(v.sort for v in xs)
            atom_f = Rel(name, xs)
        pos_of[key] = (atom_f, xs)
        return pos_of[key]

    def name_neg(f):
        key = alpha_key(f)
        if key in neg_of:
            return neg_of[key]
        xs = _ordered_free(f)
        name = namer.fresh("N")
        new_rels[name] = tuple(v.sort for v in xs)
        neg_of[key] = (Rel(name, xs), xs)
        return neg_of[key]

    def both_ways(ctx, a, b):
        axioms.append(Sequent(Context(ctx), a, b))
        axioms.append(Sequent(Context(ctx), b, a))

    done = set()

    def visit(f):
        key = alpha_key(f)
        if key in done:
            return
        done.add(key)
        for c in children(f):
            visit(c)
        r, xs = name_pos(f)
        n, _ = name_neg(f)
        axioms.append(Sequent(Context(xs), And((r, n)), Bot()))
        axioms.append(Sequent(Context(xs), Top(), Or((r, n))))
        if atomic(f):
            return
        if isinstance(f, (And, Or)):
            parts = tuple(name_pos(p)[0] for p in f.parts)
            if isinstance(f, And):
                rhs = And(parts, f.infinitary) if (f.infinitary or len(parts) >= 2) else parts[0]
            else:
                rhs = Or(parts, f.infinitary) if (f.infinitary or len(parts) >= 2) else parts[0]
            both_ways(xs, r, rhs)
        elif isinstance(f, Imp):
            both_ways(xs, r, Or((name_neg(f.ante)[0], name_pos(f.cons)[0])))
        elif isinstance(f, Exists):
            # free variables of the body are those of f plus the bound ones
            both_ways(xs, r, Exists(f.vars, name_pos(f.body)[0]))
        elif isinstance(f, Forall):
            both_ways(xs, n, Exists(f.vars, name_neg(f.body)[0]))

    for ax in T.axioms:
        if ax.fragment == Fragment.GEOMETRIC:
            axioms.append(ax)
            continue
        visit(ax.antecedent)
        visit(ax.consequent)
        ra, _ = name_pos(ax.antecedent)
        rc, _ = name_pos(ax.consequent)
        axioms.append(Sequent(ax.context, ra, rc))

    new_sig = sig.extend(relations=new_rels)
    return Theory(new_sig, tuple(axioms), Fragment.GEOMETRIC)

