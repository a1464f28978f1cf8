import pytest
from hypothesis import given, settings

from strategies import PRED_SIG, X, Y, Z, pred_formulas, prop_formulas
from toposdesk.cli.parser import parse_formula, parse_sequent
from toposdesk.syntax import (And, Bot, Exists, Forall, Fragment, Imp, Or, Rel, Sequent, Signature, Theory,
                              Top, Var, WellFormednessError, alpha_equal, atom, check_formula, classify_fragment,
                              expand_infinitary, free_variables, pretty, rename_bound, show, show_sequent,
                              subformulas, substitute)

p, q, r = atom("p"), atom("q"), atom("r")
PROP = Signature.propositional("pqr")


def test_fragment_of_each_connective():
    assert classify_fragment(And((p, q))) == Fragment.GEOMETRIC
    assert classify_fragment(Or((p, q), infinitary=True)) == Fragment.GEOMETRIC
    assert classify_fragment(Exists((X,), Rel("R", (X,)))) == Fragment.GEOMETRIC
    assert classify_fragment(Imp(p, q)) == Fragment.SUB_FIRST_ORDER
    assert classify_fragment(Or((p, Imp(p, Bot())))) == Fragment.SUB_FIRST_ORDER
    assert classify_fragment(Forall((X,), Rel("R", (X,)))) == Fragment.FIRST_ORDER
    assert classify_fragment(And((p,), infinitary=True)) == Fragment.FIRST_ORDER


def test_fragments_are_ordered():
    assert Fragment.GEOMETRIC < Fragment.SUB_FIRST_ORDER < Fragment.FIRST_ORDER


def test_finitary_connectives_need_two_parts():
    with pytest.raises(WellFormednessError):
        And((p,))
    with pytest.raises(WellFormednessError):
        Or(())
    Or((), infinitary=True)


def test_binder_rules():
    with pytest.raises(WellFormednessError):
        Exists((), p)
    with pytest.raises(WellFormednessError):
        Exists((X, X), p)


def test_sequent_context_must_cover_free_variables():
    with pytest.raises(WellFormednessError):
        Sequent((), Rel("R", (X,)), Top())
    Sequent((X,), Rel("R", (X,)), Top())


def test_theory_rejects_axiom_outside_declared_fragment():
    with pytest.raises(WellFormednessError):
        Theory(PROP, [Sequent((), Top(), Imp(p, q))], Fragment.GEOMETRIC)
    assert Theory.inferred(PROP, [Sequent((), Top(), Imp(p, q))]).fragment == Fragment.SUB_FIRST_ORDER


def test_sort_checking():
    with pytest.raises(WellFormednessError):
        check_formula(PRED_SIG, Rel("R", (Var("x", "B"),)))
    with pytest.raises(WellFormednessError):
        check_formula(PRED_SIG, Rel("E", (X,)))


def test_substitution_avoids_capture():
    f = Exists((Y,), Rel("E", (X, Y)))
    g = substitute(f, [Y], [X])
    assert free_variables(g) == {Y}
    assert isinstance(g, Exists) and g.vars[0].name == "y'"
    assert g.body == Rel("E", (Y, Var("y'", "A")))


def test_substitution_checks_sorts():
    with pytest.raises(WellFormednessError):
        substitute(Rel("R", (X,)), [Var("b", "B")], [X])


def test_alpha_equality():
    f = Exists((X,), Rel("R", (X,)))
    g = Exists((Y,), Rel("R", (Y,)))
    assert alpha_equal(f, g)
    assert not alpha_equal(f, Exists((Y,), Rel("S", (Y,))))


def test_negated_quantifier_printing():
    f = Imp(Exists((Y,), Imp(Rel("R", (Y,)), Bot())), Bot())
    assert pretty(f) == "¬∃y ¬R(y)"
    assert show(And((f, p))) == r"(~exists y:A. ~R(y)) /\ p"


def test_expand_infinitary_empty_families():
    assert expand_infinitary(Or((), infinitary=True)) == Bot()
    assert expand_infinitary(And((), infinitary=True)) == Top()
    assert expand_infinitary(Or((p,), infinitary=True)) == p


@settings(max_examples=300, deadline=None)
@given(prop_formulas())
def test_prop_print_parse_round_trip(f):
    assert parse_formula(show(f), PROP) == f
    assert parse_formula(pretty(f), PROP) == f


@settings(max_examples=300, deadline=None)
@given(pred_formulas())
def test_pred_print_parse_round_trip(f):
    assert parse_formula(show(f), PRED_SIG, (X, Y, Z)) == f


@settings(max_examples=100, deadline=None)
@given(pred_formulas(), pred_formulas())
def test_sequent_round_trip(a, b):
    s = Sequent((X, Y, Z), a, b)
    assert parse_sequent(show_sequent(s), PRED_SIG) == s


@settings(max_examples=200, deadline=None)
@given(pred_formulas())
def test_rename_bound_preserves_alpha_class(f):
    g = rename_bound(f, {"x", "y", "z"})
    assert alpha_equal(f, g)
    assert free_variables(f) == free_variables(g)


@settings(max_examples=200, deadline=None)
@given(pred_formulas())
def test_fragment_is_max_over_subformulas(f):
    frag = classify_fragment(f)
    assert all(classify_fragment(g) <= frag for g in subformulas(f))
