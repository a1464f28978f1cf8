import itertools
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import prop_formulas
from toposdesk.algebra import (FinHeyting, LatticeError, LatticeHom, Proved, Refuted, boolean, boolean_catalogue,
                               chain, check_distributive, check_heyting_preservation, check_residuation,
                               classical_models, decide_classical, decide_intuitionistic, distributive_lattices,
                               enumerate_homs, g4ip_provable, heyting_catalogue, is_isomorphic, kripke_search,
                               lindenbaum_boolean, lindenbaum_geometric, lindenbaum_heyting_bounded, product)
from toposdesk.algebra.decide import evaluate
from toposdesk.semantics import all_valuations, interpret_batch
from toposdesk.syntax import And, Bot, Imp, Or, Sequent, Signature, Theory, Top, atom, sequent

p, q = atom("p"), atom("q")
NOT = lambda f: Imp(f, Bot())

# unlabeled distributive lattices with n elements, n = 1..12
DISTRIBUTIVE_COUNTS = [1, 1, 1, 2, 3, 5, 8, 15, 26, 47, 82, 151]


@lru_cache(maxsize=None)
def small_algebras():
    return tuple(e.algebra for e in heyting_catalogue(6))


def brute_tables(leq):
    """Meet, join and implication straight from the order."""
    n = len(leq)
    idx = range(n)

    def glb(a, b):
        lower = [c for c in idx if leq[c, a] and leq[c, b]]
        return next(c for c in lower if all(leq[d, c] for d in lower))

    def lub(a, b):
        upper = [c for c in idx if leq[a, c] and leq[b, c]]
        return next(c for c in upper if all(leq[c, d] for d in upper))

    meet = np.array([[glb(a, b) for b in idx] for a in idx])
    join = np.array([[lub(a, b) for b in idx] for a in idx])
    imp = np.array([[max((c for c in idx if leq[meet[c, a], b]), key=lambda c: leq[:, c].sum())
                     for b in idx] for a in idx])
    return meet, join, imp


def test_tables_match_brute_force_definitions():
    for H in small_algebras() + (boolean(3), product(chain(3), chain(2))):
        meet, join, imp = brute_tables(H.leq)
        assert (H.meet == meet).all() and (H.join == join).all() and (H.imp == imp).all()


def test_catalogue_counts():
    counts = [0] * 12
    for e in distributive_lattices(12):
        counts[e.algebra.n - 1] += 1
    assert counts == DISTRIBUTIVE_COUNTS


def test_catalogue_has_no_duplicates_up_to_seven():
    algs = [e.algebra for e in distributive_lattices(7)]
    for a, b in itertools.combinations(algs, 2):
        if a.n == b.n:
            assert not is_isomorphic(a, b)


def test_boolean_catalogue():
    assert sorted(e.algebra.n for e in boolean_catalogue(16)) == [1, 2, 4, 8, 16]
    assert all(e.algebra.is_boolean() for e in boolean_catalogue(16))
    assert len(heyting_catalogue(6)) == 13


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(range(13)))
def test_catalogue_algebras_are_heyting(i):
    H = small_algebras()[i]
    assert check_residuation(H) and check_distributive(H)
    assert H.is_boolean() == all(H.join[a, H.neg(a)] == H.top for a in H.elements)


def test_chain_and_boolean_basics():
    c3 = chain(3)
    assert c3.is_chain() and not c3.is_boolean()
    m = c3.labels.index("m")
    assert c3.neg(m) == c3.bottom and c3.neg(c3.neg(m)) == c3.top
    assert boolean(2).is_boolean() and boolean(2).n == 4


def test_not_a_lattice_is_rejected():
    # two incomparable maxima
    leq = np.array([[1, 1, 1], [0, 1, 0], [0, 0, 1]], dtype=bool)
    with pytest.raises(LatticeError):
        FinHeyting.from_order(leq)


def brute_homs(a, b):
    out = []
    for m in itertools.product(range(b.n), repeat=a.n):
        h = LatticeHom(a, b, m)
        if h.is_lattice_hom():
            out.append(m)
    return sorted(out)


def test_enumerate_homs_matches_brute_force():
    algs = [e.algebra for e in heyting_catalogue(5)]
    for a in algs:
        for b in algs:
            if b.n ** a.n > 4000:
                continue
            assert sorted(h.mapping for h in enumerate_homs(a, b)) == brute_homs(a, b)


def test_three_chain_into_square_breaks_implication():
    c3, b4 = chain(3), boolean(2)
    m = c3.labels.index("m")
    for h in enumerate_homs(c3, b4):
        v = check_heyting_preservation(h)
        # m => 0 = 0 in the chain, so implication survives only when h(m) is top
        assert v.preserved == (h(m) == b4.top)
        if not v.preserved:
            assert "=>" in v.detail


def test_boolean_source_homs_preserve_implication():
    for src in (boolean(1), boolean(2)):
        for e in heyting_catalogue(6):
            for h in enumerate_homs(src, e.algebra):
                assert check_heyting_preservation(h).preserved


def test_non_homomorphism_is_refused():
    c3 = chain(3)
    with pytest.raises(LatticeError):
        check_heyting_preservation(LatticeHom(c3, c3, (0, 0, 0)))


# --- decision procedures -------------------------------------------------

INTUITIONISTIC_THEOREMS = [
    Imp(p, p), Imp(p, NOT(NOT(p))), NOT(NOT(Or((p, NOT(p))))), Imp(NOT(NOT(NOT(p))), NOT(p)),
    Imp(And((p, Imp(p, q))), q), Imp(Or((NOT(p), NOT(q))), NOT(And((p, q)))),
]
CLASSICAL_ONLY = [
    Or((p, NOT(p))), Imp(NOT(NOT(p)), p), Imp(Imp(Imp(p, q), p), p), Or((Imp(p, q), Imp(q, p))),
    Imp(NOT(And((p, q))), Or((NOT(p), NOT(q)))), Or((NOT(p), NOT(NOT(p)))),
]


@pytest.mark.parametrize("f", INTUITIONISTIC_THEOREMS)
def test_known_theorems(f):
    s = sequent(Top(), f)
    assert g4ip_provable(None, s) and decide_classical(None, s)
    assert isinstance(decide_intuitionistic(None, s), Proved)


@pytest.mark.parametrize("f", CLASSICAL_ONLY)
def test_known_classical_only(f):
    s = sequent(Top(), f)
    assert decide_classical(None, s)
    v = decide_intuitionistic(None, s)
    assert isinstance(v, Refuted)
    assert v.countermodel.is_persistent() and v.countermodel.refutes(None, s)


@settings(max_examples=150, deadline=None)
@given(prop_formulas(("p", "q"), 6, infinitary=False), prop_formulas(("p", "q"), 6, infinitary=False))
def test_decision_procedures_agree(a, b):
    s = sequent(a, b)
    proved = g4ip_provable(None, s)
    model = kripke_search(None, s, 5)
    assert not (proved and model is not None)
    if model is not None:
        assert model.refutes(None, s)
    if proved:
        assert decide_classical(None, s)
        # a derivable sequent holds in every Heyting algebra
        for H in small_algebras()[:8]:
            env = all_valuations(H, ("p", "q"))
            assert H.leq[interpret_batch(H, a, env), interpret_batch(H, b, env)].all()


def test_theory_hypotheses_are_used():
    T = Theory.inferred(Signature.propositional("pq"), [sequent(p, q)])
    s = sequent(p, And((p, q)))
    assert g4ip_provable(T, s) and not g4ip_provable(None, s)
    assert decide_classical(T, s)


# --- Lindenbaum algebras --------------------------------------------------

def truth_functions(n, monotone=False):
    points = list(itertools.product((0, 1), repeat=n))
    out = 0
    for values in itertools.product((0, 1), repeat=len(points)):
        f = dict(zip(points, values))
        if monotone and any(f[u] > f[v] for u in points for v in points
                            if all(x <= y for x, y in zip(u, v))):
            continue
        out += 1
    return out


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_lindenbaum_sizes_against_truth_functions(n):
    atoms = "pqr"[:n]
    T = Theory.inferred(Signature.propositional(atoms), [])
    if n <= 2:
        assert lindenbaum_boolean(T, atoms).size == truth_functions(n)
    assert lindenbaum_geometric(T, atoms).size == truth_functions(n, monotone=True)


@settings(max_examples=100, deadline=None)
@given(prop_formulas(("p", "q"), 6, infinitary=False))
def test_boolean_label_is_the_truth_table(f):
    T = Theory.inferred(Signature.propositional("pq"), [])
    L = lindenbaum_boolean(T, "pq")
    e = L.label(f)
    assert L.masks[e] == sum(1 << i for i, v in enumerate(L.models) if evaluate(f, v))


def test_lindenbaum_of_theory_counts_models():
    T = Theory.inferred(Signature.propositional("pq"), [sequent(p, q)])
    L = lindenbaum_boolean(T)
    assert len(L.models) == len(classical_models(T)) == 3 and L.size == 8
    assert L.label(p) == L.label(And((p, q)))


def test_bounded_heyting_one_atom_certificates():
    B = lindenbaum_heyting_bounded(None, [p], depth=3, bound=6)
    assert B.size >= 6
    for cert in B.certificates:
        left, right = B.representatives[cert.left], B.representatives[cert.right]
        assert cert.model.refutes(None, Sequent((), left, right))
        assert cert.model.size <= 6
