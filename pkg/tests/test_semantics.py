import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import PRED_SIG, X, Y, Z, geometric_pred_formulas, pred_formulas, prop_formulas
from toposdesk.algebra import LatticeHom, boolean, chain, enumerate_homs, heyting_catalogue
from toposdesk.fincat import FinCategory, NatTrans, Presheaf, Subpresheaf, monoid_one_e
from toposdesk.proofkernel import SystemTag, rule_catalogue
from toposdesk.semantics import (FragmentMismatch, Structure, StructureError, StructureMap, TargetMismatch,
                                 interpret, is_elementary, is_homomorphism, is_subelementary, predicate_signature,
                                 presheaf_targets, propositional_instances, propositional_targets, sequent_valid,
                                 soundness_suite)
from toposdesk.semantics.soundness import _prop_group_check
from toposdesk.syntax import (And, Bot, Exists, Forall, Fragment, Imp, Or, Rel, Signature, Top, atom, rename_bound,
                              sequent)

p, q = atom("p"), atom("q")
NOT = lambda f: Imp(f, Bot())
CTX = (X, Y, Z)


def test_predicate_signature_matches_strategies():
    assert predicate_signature() == PRED_SIG


# --- propositional values against join-irreducible forcing ------------------

def join_irreducibles(H):
    out = []
    for j in H.elements:
        below = [a for a in H.elements if H.leq[a, j] and a != j]
        # exactly one lower cover
        covers = [a for a in below if not any(H.leq[a, b] and a != b for b in below)]
        if len(covers) == 1:
            out.append(j)
    return out


def forces(H, points, j, f, val):
    """Forcing at join-irreducible ``j``, over the down-closed frame of join-irreducibles."""
    if isinstance(f, Rel):
        return bool(H.leq[j, val[f.name]])
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return all(forces(H, points, j, g, val) for g in f.parts)
    if isinstance(f, Or):
        return any(forces(H, points, j, g, val) for g in f.parts)
    below = [k for k in points if H.leq[k, j]]
    return all(not forces(H, points, k, f.ante, val) or forces(H, points, k, f.cons, val) for k in below)


@settings(max_examples=80, deadline=None)
@given(prop_formulas(("p", "q"), 8, big_and=False), st.data())
def test_propositional_values_match_forcing(f, data):
    H = data.draw(st.sampled_from([e.algebra for e in heyting_catalogue(6)] + [boolean(2)]))
    vp, vq = data.draw(st.tuples(st.sampled_from(H.elements), st.sampled_from(H.elements)))
    M = Structure.propositional(Signature.propositional("pq"), H, {"p": vp, "q": vq})
    v = interpret(M, f)
    points = join_irreducibles(H)
    assert {j for j in points if H.leq[j, v]} == {j for j in points if forces(H, points, j, f, {"p": vp, "q": vq})}


def test_three_chain_values():
    H = chain(3)
    m = H.labels.index("m")
    M = Structure.propositional(Signature.propositional("pq"), H, {"p": m, "q": H.bottom})
    assert interpret(M, NOT(p)) == H.bottom
    assert interpret(M, NOT(NOT(p))) == H.top
    assert interpret(M, Or((p, NOT(p)))) == m
    assert not sequent_valid(M, sequent(Top(), Or((p, NOT(p)))))
    assert sequent_valid(M, sequent(Top(), NOT(NOT(Or((p, NOT(p)))))))


def test_fragment_cap():
    M = Structure.propositional(Signature.propositional("pq"), chain(3), {"p": 0, "q": 0},
                                max_fragment=Fragment.GEOMETRIC)
    interpret(M, Or((p, q)))
    with pytest.raises(FragmentMismatch):
        interpret(M, Imp(p, q))


def test_propositional_value_outside_algebra():
    with pytest.raises(StructureError):
        Structure.propositional(Signature.propositional("p"), chain(3), {"p": 7})


# --- presheaf values against literal forcing ---------------------------------

def psh_forces(M, c, f, env):
    A, C = M.sorts["A"], M.category
    if isinstance(f, Rel):
        parts = M.relations[f.name][c]
        if not f.args:
            return 0 in parts
        P = M.carrier(("A",) * len(f.args))
        return P._tuples[c].index(tuple(env[v.name] for v in f.args)) in parts
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return all(psh_forces(M, c, g, env) for g in f.parts)
    if isinstance(f, Or):
        return any(psh_forces(M, c, g, env) for g in f.parts)
    if isinstance(f, Exists):
        names = [v.name for v in f.vars]
        return any(psh_forces(M, c, f.body, {**env, **dict(zip(names, xs))})
                   for xs in itertools.product(range(len(A.sets[c])), repeat=len(names)))
    if hasattr(f, "lhs"):
        return env[f.lhs.name] == env[f.rhs.name]
    # implication and the universal quantifier look at every stage d -> c
    for u in C.into(c):
        d = C.src[u]
        moved = {k: A.action[u][x] for k, x in env.items()}
        if isinstance(f, Imp):
            if psh_forces(M, d, f.ante, moved) and not psh_forces(M, d, f.cons, moved):
                return False
        else:
            names = [v.name for v in f.vars]
            for xs in itertools.product(range(len(A.sets[d])), repeat=len(names)):
                if not psh_forces(M, d, f.body, {**moved, **dict(zip(names, xs))}):
                    return False
    return True


def left_zero_monoid():
    return FinCategory.monoid(["1", "a", "b"], {(x, y): x for x in "ab" for y in "ab"}, "1")


@lru_cache(maxsize=None)
def psh_targets():
    cats = [monoid_one_e(), left_zero_monoid(), FinCategory.from_poset(chain(3).leq)]
    return tuple(M for i, C in enumerate(cats) for M in presheaf_targets(C, limit=10, seed=i))


@settings(max_examples=60, deadline=None)
@given(pred_formulas(max_leaves=6), st.data())
def test_presheaf_values_match_forcing(f, data):
    M = data.draw(st.sampled_from(psh_targets()))
    S = interpret(M, f, CTX)
    P = M.carrier(("A",) * 3)
    for c in range(M.category.n_objects):
        for k, t in enumerate(P._tuples[c]):
            assert (k in S.parts[c]) == psh_forces(M, c, f, dict(zip("xyz", t)))


@settings(max_examples=60, deadline=None)
@given(pred_formulas(max_leaves=6))
def test_bound_renaming_does_not_change_values(f):
    g = rename_bound(f, {"x", "y", "z"})
    for M in psh_targets()[::7]:
        assert interpret(M, f, CTX) == interpret(M, g, CTX)


def monoid_structure():
    C = monoid_one_e()
    y = Presheaf.representable(C, 0)
    e = y.sets[0].index("e")
    sig = Signature({"A"}, {"R": ("A",)})
    return Structure.presheaf(sig, C, {"A": y}, {"R": [{e}]})


def test_quantifiers_over_one_and_e():
    M = monoid_structure()
    R = Rel("R", (Y,))
    assert interpret(M, Exists((Y,), R)).is_full()
    assert interpret(M, Forall((Y,), R)).is_empty()
    # R is dense in the representable
    assert interpret(M, Forall((Y,), NOT(NOT(R)))).is_full()
    assert interpret(M, NOT(R), (Y,)).is_empty()


def test_relation_must_be_closed():
    C = monoid_one_e()
    y = Presheaf.representable(C, 0)
    one = y.sets[0].index("id_*")
    with pytest.raises(ValueError):
        Structure.presheaf(Signature({"A"}, {"R": ("A",)}), C, {"A": y}, {"R": [{one}]})


# --- morphisms ----------------------------------------------------------------

def inclusion_pairs():
    """Pairs of targets with the same carrier and pointwise smaller relations."""
    by_sort = {}
    for M in psh_targets():
        by_sort.setdefault((id(M.category), M.sorts["A"].sets), []).append(M)
    out = []
    for group in by_sort.values():
        for M, N in itertools.permutations(group, 2):
            if all(a <= b for r in M.relations for a, b in zip(M.relations[r], N.relations[r])):
                out.append((M, N))
    return out


@lru_cache(maxsize=None)
def identity_maps():
    out = []
    for M, N in inclusion_pairs():
        comps = {"A": NatTrans.identity(M.sorts["A"]).components}
        out.append(StructureMap(M, N, comps))
    return tuple(out)


@settings(max_examples=60, deadline=None)
@given(geometric_pred_formulas(max_leaves=6), st.data())
def test_homomorphisms_preserve_geometric_formulas(f, data):
    h = data.draw(st.sampled_from(identity_maps()))
    assert is_homomorphism(h)
    assert h.satisfies(f, CTX)


def test_negation_is_not_preserved_by_homomorphisms():
    R = Rel("R", (X,))
    broken = [h for h in identity_maps() if not h.satisfies(NOT(R), (X,))]
    assert broken
    h = broken[0]
    assert is_subelementary(h, [Exists((Y,), Rel("R", (Y,)))])
    assert not is_subelementary(h, [NOT(R)])
    with pytest.raises(FragmentMismatch):
        is_subelementary(h, [Forall((X,), R)])
    universal = Forall((X,), NOT(R))
    assert is_elementary(h, [universal]).ok == h.satisfies(universal)


def test_map_to_terminal_is_a_homomorphism_when_relations_are_full():
    M = monoid_structure()
    C = M.category
    one = Presheaf.terminal(C)
    N = Structure.presheaf(M.signature, C, {"A": one}, {"R": Subpresheaf.full(one).parts})
    h = StructureMap(M, N, {"A": NatTrans.to_terminal(M.sorts["A"], one)})
    assert is_homomorphism(h)
    assert is_elementary(h, [Forall((Y,), Rel("R", (Y,)))])


def test_propositional_maps():
    sig = Signature.propositional("pq")
    c3, b4 = chain(3), boolean(2)
    m = c3.labels.index("m")
    M = Structure.propositional(sig, c3, {"p": m, "q": c3.bottom})
    for hom in enumerate_homs(c3, b4):
        N = Structure.propositional(sig, b4, {"p": hom(m), "q": b4.bottom})
        h = StructureMap(M, N, algebra_map=hom)
        assert is_homomorphism(h)
        assert is_subelementary(h, [NOT(p)]).ok == h.satisfies(NOT(p))
    with pytest.raises(StructureError):
        StructureMap(M, M, algebra_map=LatticeHom(c3, c3, (0, 0, 0)))


# --- soundness harness -------------------------------------------------------

QUANTIFIER_RULES = {"eq_refl", "eq_subst", "exists_elim", "exists_intro", "frobenius", "forall_intro", "forall_elim"}


@pytest.mark.parametrize("system", [SystemTag.GEOMETRIC, SystemTag.SUB_FIRST_ORDER, SystemTag.FIRST_ORDER])
def test_intuitionistic_systems_sound_on_three_chain(system):
    report = soundness_suite(system, propositional_targets(chain(3)))
    assert not report.counterexamples
    # propositional targets leave only the quantifier and equality rules without instances
    expected = QUANTIFIER_RULES & {r.name for r in rule_catalogue(system)}
    assert set(report.uncovered) == expected
    assert not report.passed


@pytest.mark.parametrize("system", [SystemTag.GEOMETRIC, SystemTag.SUB_FIRST_ORDER])
def test_mixed_targets_cover_every_rule(system):
    targets = propositional_targets(chain(3)) + presheaf_targets(monoid_one_e(), limit=6)
    report = soundness_suite(system, targets)
    assert report.passed, report.describe()


def test_classical_system_on_boolean_targets():
    targets = propositional_targets(boolean(1)) + presheaf_targets(FinCategory.discrete(1), limit=8)
    report = soundness_suite(SystemTag.CLASSICAL, targets)
    assert report.passed, report.describe()
    assert report.checks["excluded_middle"] > 0


def test_classical_system_refuses_non_boolean_target():
    with pytest.raises(TargetMismatch):
        soundness_suite(SystemTag.CLASSICAL, propositional_targets(chain(3)))


def test_harness_finds_excluded_middle_failure():
    lem = [i for i in propositional_instances() if i.rule == "excluded_middle"]
    checks, bad = {"excluded_middle": 0}, []
    _prop_group_check(chain(3), propositional_targets(chain(3)), lem, checks, bad)
    assert bad and checks["excluded_middle"] > 0


def test_first_order_system_on_presheaf_targets():
    targets = presheaf_targets(monoid_one_e(), limit=6)
    report = soundness_suite(SystemTag.FIRST_ORDER, targets)
    assert report.passed, report.describe()
    assert report.checks["forall_intro"] > 0 and report.checks["exists_elim"] > 0
