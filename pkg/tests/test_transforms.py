import itertools
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from strategies import X, Y, Z, pred_formulas, prop_formulas
from toposdesk.algebra import boolean, boolean_catalogue, classical_models
from toposdesk.fincat import FinCategory, Presheaf, monoid_one_e
from toposdesk.semantics import (Structure, all_valuations, interpret, interpret_batch, presheaf_targets,
                                 theory_valid)
from toposdesk.syntax import (And, Bot, Exists, Forall, Fragment, Imp, Or, Rel, Sequent, Signature, Theory, Top,
                              WellFormednessError, atom, classify_fragment)
from toposdesk.transforms import classicalize, classicalize_theory, morleyize

p, q = atom("p"), atom("q")
CTX = (X, Y, Z)


@lru_cache(maxsize=None)
def boolean_psh_targets():
    return tuple(presheaf_targets(FinCategory.discrete(2), limit=12, seed=3))


def test_universal_becomes_negated_existential():
    R = lambda v: Rel("R", (v,))
    f = Forall((Y,), R(Y))
    assert classicalize(f) == Imp(Exists((Y,), Imp(R(Y), Bot())), Bot())


def test_infinitary_conjunction_becomes_negated_disjunction():
    g = classicalize(And((p, q), infinitary=True))
    assert classify_fragment(g) == Fragment.SUB_FIRST_ORDER
    assert isinstance(g.ante, Or) and g.ante.infinitary


@settings(max_examples=200, deadline=None)
@given(prop_formulas())
def test_classicalize_lands_in_sub_first_order(f):
    g = classicalize(f)
    assert classify_fragment(g) <= Fragment.SUB_FIRST_ORDER
    if classify_fragment(f) <= Fragment.SUB_FIRST_ORDER:
        assert g == f


@settings(max_examples=150, deadline=None)
@given(prop_formulas())
def test_classicalize_preserves_boolean_values(f):
    for entry in boolean_catalogue(8):
        env = all_valuations(entry.algebra, ("p", "q", "r"))
        a = interpret_batch(entry.algebra, f, env)
        b = interpret_batch(entry.algebra, classicalize(f), env)
        assert (a == b).all()


@settings(max_examples=60, deadline=None)
@given(pred_formulas(max_leaves=6))
def test_classicalize_preserves_values_in_boolean_presheaf_structures(f):
    g = classicalize(f)
    for M in boolean_psh_targets():
        assert interpret(M, f, CTX) == interpret(M, g, CTX)


def test_classicalize_changes_values_off_boolean_targets():
    # over {1, e} the universal quantifier and its double negation differ somewhere
    f = Forall((Y,), Rel("R", (Y,)))
    g = classicalize(f)
    diffs = [M for M in presheaf_targets(monoid_one_e(), limit=None) if interpret(M, f) != interpret(M, g)]
    assert diffs


def test_classicalize_theory_keeps_signature():
    T = Theory.inferred(Signature.propositional("pq"), [Sequent((), Top(), And((p, q), infinitary=True))])
    C = classicalize_theory(T)
    assert C.signature == T.signature and C.fragment == Fragment.SUB_FIRST_ORDER


def _two_valued_models(T, shown=("p", "q")):
    """Models of a propositional theory, vectorized over the two-element algebra."""
    two = boolean(1)
    env = all_valuations(two, T.signature.atoms)
    ok = np.ones(2 ** len(T.signature.atoms), dtype=bool)
    for ax in T.axioms:
        ok &= two.leq[interpret_batch(two, ax.antecedent, env), interpret_batch(two, ax.consequent, env)]
    return sorted(tuple(bool(env[a][i] == two.top) for a in shown) for i in np.flatnonzero(ok))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(prop_formulas(("p", "q"), 4, infinitary=False),
                          prop_formulas(("p", "q"), 4, infinitary=False)), min_size=1, max_size=2))
def test_morleyize_keeps_models_and_is_geometric(pairs):
    sig = Signature.propositional("pq")
    T = Theory.inferred(sig, [Sequent((), a, b) for a, b in pairs])
    M = morleyize(T)
    assert M.fragment == Fragment.GEOMETRIC
    assume(len(M.signature.atoms) <= 18)
    old = sorted(tuple(v[a] for a in ("p", "q")) for v in classical_models(T, ("p", "q")))
    # every model extends, and uniquely
    assert _two_valued_models(M) == old


def test_morleyize_geometric_theory_unchanged():
    T = Theory.inferred(Signature.propositional("pq"), [Sequent((), p, q)])
    assert morleyize(T).axioms == T.axioms


def test_morleyize_rejects_infinitary_axioms():
    T = Theory.inferred(Signature.propositional("pq"), [Sequent((), Imp(p, q), And((p,), infinitary=True))])
    with pytest.raises(WellFormednessError):
        morleyize(T)


def _set_structures(sig, base_rels):
    """All Set-valued structures (as presheaves on one object) with |A| <= 2 for the relations of ``sig``."""
    C = FinCategory.discrete(1)
    for n in range(3):
        A = Presheaf.constant(C, [f"a{i}" for i in range(n)]) if n else Presheaf.empty(C)
        probe = Structure.presheaf(sig, C, {"A": A}, {r: [()] for r in sig.relations})
        names = sorted(sig.relations)
        choices = []
        for r in names:
            size = len(probe.carrier(sig.relations[r]).sets[0])
            choices.append([frozenset(i for i in range(size) if m >> i & 1) for m in range(2 ** size)])
        for combo in itertools.product(*choices):
            rels = {r: (parts,) for r, parts in zip(names, combo)}
            yield n, {r: rels[r] for r in base_rels}, Structure.presheaf(sig, C, {"A": A}, rels)


def test_morleyize_first_order_model_sets():
    R, S = (lambda v: Rel("R", (v,))), (lambda v: Rel("S", (v,)))
    sig = Signature({"A"}, {"R": ("A",), "S": ("A",)})
    T = Theory.inferred(sig, [Sequent((), Exists((Y,), S(Y)), Forall((Y,), R(Y)))])
    M = morleyize(T)
    assert M.fragment == Fragment.GEOMETRIC
    old = {(n, tuple(sorted(r.items()))) for n, r, N in _set_structures(sig, ("R", "S"))
           if theory_valid(N, T.axioms)}
    new = [(n, tuple(sorted(r.items()))) for n, r, N in _set_structures(M.signature, ("R", "S"))
           if theory_valid(N, M.axioms)]
    assert set(new) == old
    # the new symbols are determined by the old ones
    assert len(new) == len(old)
