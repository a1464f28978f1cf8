import pytest
from hypothesis import given, settings

from strategies import PRED_SIG, X, Y, prop_formulas
from toposdesk.algebra import decide_classical, g4ip_provable
from toposdesk.proofkernel import (RULES, ProofTree, Rejection, Side, SystemTag, check_proof, check_step,
                                   rule_catalogue)
from toposdesk.syntax import (And, Bot, Exists, Forall, Imp, Or, Rel, Sequent, Signature, Theory, Top, atom,
                              sequent)

p, q, r = atom("p"), atom("q"), atom("r")
T_pq = Theory.inferred(Signature.propositional("pq"), [sequent(p, q)])


def leaf(rule, s, side=Side()):
    return ProofTree(s, rule, (), side)


def test_catalogue_grows_with_the_system():
    sizes = [len(rule_catalogue(s)) for s in SystemTag]
    assert sizes == sorted(sizes) and sizes[0] < sizes[-1]
    assert {r.name for r in rule_catalogue(SystemTag.CLASSICAL)} == set(RULES)


def test_system_parse():
    assert SystemTag.parse("sfo") == SystemTag.SUB_FIRST_ORDER
    assert SystemTag.parse("Classical") == SystemTag.CLASSICAL
    with pytest.raises(ValueError):
        SystemTag.parse("modal")


def test_cut_with_axiom():
    s1 = leaf("axiom", sequent(p, q), Side(0))
    s2 = leaf("identity", sequent(q, q))
    proof = ProofTree(sequent(p, q), "cut", (s1, s2))
    assert check_proof(proof, SystemTag.GEOMETRIC, T_pq)


def test_unknown_axiom():
    v = check_proof(leaf("axiom", sequent(p, q), Side(3)), SystemTag.GEOMETRIC, T_pq)
    assert not v and v.kind == "UnknownAxiom"


def test_schema_mismatch_reports_path():
    bad = leaf("identity", sequent(p, q))
    proof = ProofTree(sequent(p, q), "cut", (leaf("identity", sequent(p, p)), bad))
    v = check_proof(proof, SystemTag.GEOMETRIC)
    assert v.kind == "SchemaMismatch" and v.path == (1,)
    assert v.describe().startswith("rejected at root/1")


def test_rule_availability_per_system():
    lem = leaf("excluded_middle", sequent(Top(), Or((p, Imp(p, Bot())))))
    assert not check_proof(lem, SystemTag.FIRST_ORDER)
    assert check_proof(lem, SystemTag.FIRST_ORDER).kind == "UnavailableRule"
    assert check_proof(lem, SystemTag.CLASSICAL)

    mp = ProofTree(sequent(p, Imp(q, And((p, q)))), "imp_intro",
                   (leaf("identity", sequent(And((p, q)), And((p, q)))),))
    assert not check_proof(mp, SystemTag.GEOMETRIC)
    assert check_proof(mp, SystemTag.SUB_FIRST_ORDER)


def test_forall_rules_need_first_order():
    R = lambda v: Rel("R", (v,))
    s_prem = Sequent((X,), Top(), R(X))
    concl = Sequent((), Top(), Forall((X,), R(X)))
    fake = leaf("axiom", s_prem, Side(0))
    T = Theory.inferred(PRED_SIG, [s_prem])
    proof = ProofTree(concl, "forall_intro", (fake,))
    assert check_proof(proof, SystemTag.FIRST_ORDER, T)
    assert check_proof(proof, SystemTag.SUB_FIRST_ORDER, T).kind == "UnavailableRule"


def test_exists_elim_side_condition():
    R = Rel("R", (Y,))
    prem = Sequent((Y,), R, Rel("p"))
    check_step("exists_elim", [prem], Sequent((), Exists((Y,), R), Rel("p")))
    # the bound variable may not already sit in the conclusion context
    with pytest.raises(Rejection):
        check_step("exists_elim", [Sequent((Y,), R, R)], Sequent((Y,), Exists((Y,), R), R))


def test_frobenius_refuses_captured_variable():
    R = lambda v: Rel("R", (v,))
    with pytest.raises(Rejection):
        check_step("frobenius", [], Sequent((X,), And((R(X), Exists((X,), R(X)))),
                                            Exists((X,), And((R(X), R(X))))))


def test_substitution_side_terms():
    R = lambda v: Rel("R", (v,))
    prem = Sequent((X,), R(X), Rel("S", (X,)))
    check_step("substitution", [prem], Sequent((Y,), R(Y), Rel("S", (Y,))), Side(terms=(Y,)))
    with pytest.raises(Rejection):
        check_step("substitution", [prem], Sequent((Y,), R(Y), Rel("S", (Y,))))


def test_tagged_infinitary_rules():
    fam = Or((p, q), infinitary=True)
    check_step("ior_inj", [], sequent(q, fam))
    with pytest.raises(Rejection):
        check_step("or_inj", [], sequent(q, fam))
    check_step("ior_elim", [sequent(p, r), sequent(q, r)], sequent(fam, r))
    check_step("ior_elim", [], sequent(Or((), infinitary=True), r))


@settings(max_examples=150, deadline=None)
@given(prop_formulas(max_leaves=6), prop_formulas(max_leaves=6))
def test_conjunction_commutes_in_every_system(a, b):
    s = sequent(And((a, b)), And((b, a)))
    proof = ProofTree(s, "and_intro", (leaf("and_proj", sequent(And((a, b)), b)),
                                       leaf("and_proj", sequent(And((a, b)), a))))
    assert all(check_proof(proof, sys) for sys in SystemTag)
    assert decide_classical(None, s)


@settings(max_examples=100, deadline=None)
@given(prop_formulas(max_leaves=5, infinitary=False))
def test_excluded_middle_instances(a):
    s = sequent(Top(), Or((a, Imp(a, Bot()))))
    assert decide_classical(None, s)
    assert check_proof(leaf("excluded_middle", s), SystemTag.CLASSICAL)
    assert not check_proof(leaf("excluded_middle", s), SystemTag.FIRST_ORDER)


def test_excluded_middle_is_not_intuitionistic():
    assert not g4ip_provable(None, sequent(Top(), Or((p, Imp(p, Bot())))))
    assert g4ip_provable(None, sequent(Top(), Imp(Imp(Or((p, Imp(p, Bot()))), Bot()), Bot())))
