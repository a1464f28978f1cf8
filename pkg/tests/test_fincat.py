import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toposdesk.algebra import boolean, chain, check_residuation, heyting_catalogue
from toposdesk.fincat import (CategoryError, FinCategory, NatTrans, Presheaf, PresheafError, Subpresheaf,
                              TopologyError, boolean_core, closed_sieves, exists_along, forall_along, from_covering,
                              from_minimal, heyting_implication, is_boolean_site, is_sheaf, is_two_valued,
                              jkappa_covers_literal, jkappa_topology, monoid_one_e, negation, negneg_topology,
                              projection, pullback, sheafify, sheafify_negneg, subobject_lattice, trivial_topology,
                              yoneda_check)


def left_zero_monoid():
    # x . y = x unless x is the unit
    table = {(x, y): x for x in "ab" for y in "ab"}
    return FinCategory.monoid(["1", "a", "b"], table, "1")


def parallel_pair():
    return FinCategory.build(["a", "b"], [("f", "a", "b"), ("g", "a", "b")], {})


@lru_cache(maxsize=None)
def small_categories():
    return (
        monoid_one_e(), FinCategory.discrete(2), FinCategory.cyclic_group(3), left_zero_monoid(),
        parallel_pair(), FinCategory.from_poset(chain(3).leq), FinCategory.from_poset(boolean(2).leq),
    )


# --- literal definitions used as oracles ----------------------------------

def literal_sieves(C, c):
    arrows = C.into(c)
    out = []
    for k in range(len(arrows) + 1):
        for S in itertools.combinations(arrows, k):
            S = set(S)
            if all(C.comp[(f, g)] in S for f in S for g in C.into(C.src[f])):
                out.append(S)
    return out


def literal_pullback(C, f, S):
    return {g for g in C.into(C.src[f]) if C.comp[(f, g)] in S}


def mask(S):
    return sum(1 << f for f in S)


def literal_axioms(C, covers):
    """Maximality, stability and transitivity straight from the definitions."""
    for c in range(C.n_objects):
        sieves = literal_sieves(C, c)
        if not covers(c, set(C.into(c))):
            return "maximal"
        for S in sieves:
            if not covers(c, S):
                continue
            for f in C.into(c):
                if not covers(C.src[f], literal_pullback(C, f, S)):
                    return "stable"
            for R in sieves:
                if all(covers(C.src[f], literal_pullback(C, f, R)) for f in S) and not covers(c, R):
                    return "transitive"
    return None


def literal_dense(C, c, S):
    return all(any(C.comp[(f, g)] in S for g in C.into(C.src[f])) for f in C.into(c))


def literal_closed(C, J, c, S):
    return all(f in S for f in C.into(c) if J.covers(C.src[f], mask(literal_pullback(C, f, S))))


# --- categories and presheaves --------------------------------------------

def test_monoid_category_shape():
    C = monoid_one_e()
    assert C.n_objects == 1 and C.n_arrows == 2
    e = C.arrow_index("e")
    assert C.compose(e, e) == e and not C.is_poset


def test_bad_composition_is_rejected():
    with pytest.raises(CategoryError):
        FinCategory.build(["a"], [("f", "a", "a")], {})
    # (a.a).a = b but a.(a.a) = a
    table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
    with pytest.raises(CategoryError):
        FinCategory.monoid(["1", "a", "b"], table, "1")


def test_non_functorial_action_is_rejected():
    C = monoid_one_e()
    # e acting by a swap would need swap o swap = swap
    with pytest.raises(PresheafError):
        Presheaf(C, [("u", "v")], [(0, 1), (1, 0)])


def test_representable_sizes():
    for C in small_categories():
        for c in range(C.n_objects):
            y = Presheaf.representable(C, c)
            assert [len(s) for s in y.sets] == [len(C.hom(d, c)) for d in range(C.n_objects)]


def test_representable_on_monoid_has_three_subobjects():
    y = Presheaf.representable(monoid_one_e(), 0)
    L = subobject_lattice(y)
    assert L.algebra.n == 3 and L.algebra.is_chain() and not L.algebra.is_boolean()


def literal_subobjects(X):
    """Every subset of elements closed under the action."""
    C = X.category
    elems = [(c, x) for c in range(C.n_objects) for x in range(len(X.sets[c]))]
    out = set()
    for k in range(len(elems) + 1):
        for chosen in itertools.combinations(elems, k):
            parts = [set() for _ in range(C.n_objects)]
            for c, x in chosen:
                parts[c].add(x)
            if all(X.action[f][x] in parts[C.src[f]] for f in range(C.n_arrows) for x in parts[C.tgt[f]]):
                out.add(tuple(frozenset(p) for p in parts))
    return out


@pytest.mark.parametrize("i", range(7))
def test_subobject_lattice_matches_literal_enumeration(i):
    C = small_categories()[i]
    for c in range(C.n_objects):
        X = Presheaf.representable(C, c)
        L = subobject_lattice(X)
        assert {s.parts for s in L.subobjects} == literal_subobjects(X)
        subs = L.subobjects
        for A in subs:
            disjoint = [S for S in subs if S.meet(A).is_empty()]
            neg = negation(A)
            assert neg in disjoint and all(S <= neg for S in disjoint)
            for B in subs:
                best = [S for S in subs if S.meet(A) <= B]
                imp = heyting_implication(A, B)
                assert imp in best and all(S <= imp for S in best)
        assert check_residuation(L.algebra)


@lru_cache(maxsize=None)
def square_on_monoid():
    C = monoid_one_e()
    y = Presheaf.representable(C, 0)
    P = Presheaf.product([y, y])
    T, h = projection(P, (0,))
    return P, T, h, subobject_lattice(P).subobjects, subobject_lattice(T).subobjects


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_quantifiers_are_adjoint_to_pullback(data):
    P, T, h, sub_p, sub_t = square_on_monoid()
    A = data.draw(st.sampled_from(sub_p))
    B = data.draw(st.sampled_from(sub_t))
    assert (exists_along(h, A) <= B) == (A <= pullback(h, B))
    assert (pullback(h, B) <= A) == (B <= forall_along(h, A))


def test_projection_to_terminal():
    P, T, h, sub_p, _ = square_on_monoid()
    one, k = projection(P, ())
    assert [len(s) for s in one.sets] == [1]
    full = Subpresheaf.full(P)
    assert exists_along(k, full).is_full()
    assert NatTrans.identity(P).then(h).components == h.components


# --- topologies -------------------------------------------------------------

@pytest.mark.parametrize("i", range(7))
def test_builtin_topologies_satisfy_the_axioms(i):
    C = small_categories()[i]
    for J in (trivial_topology(C), negneg_topology(C)):
        assert literal_axioms(C, lambda c, S: J.covers(c, mask(S))) is None
        assert from_covering(C, J.covers) == J


@pytest.mark.parametrize("i", range(7))
def test_negneg_covers_exactly_the_dense_sieves(i):
    C = small_categories()[i]
    J = negneg_topology(C)
    for c in range(C.n_objects):
        for S in literal_sieves(C, c):
            assert J.covers(c, mask(S)) == literal_dense(C, c, S)


def test_non_stable_sieves_are_rejected():
    C = FinCategory.from_poset(chain(3).leq)
    into = [sum(1 << f for f in C.into(c)) for c in range(3)]
    top = 2
    bottom_arrow = C.hom(0, top)[0]
    with pytest.raises(TopologyError):
        from_minimal(C, [into[0], into[1], C.generated_masks[bottom_arrow]])


def test_every_choice_of_least_sieves():
    # a predicate passes the literal axioms iff from_covering accepts it
    C = FinCategory.from_poset(chain(3).leq)
    sieves = [literal_sieves(C, c) for c in range(3)]
    seen = 0
    for choice in itertools.product(*[range(len(s)) for s in sieves]):
        # "covers iff contains this sieve"
        least = [sieves[c][k] for c, k in enumerate(choice)]
        covers = lambda c, S: least[c] <= set(S)
        ok = literal_axioms(C, covers) is None
        try:
            from_minimal(C, [mask(s) for s in least])
            built = True
        except TopologyError:
            built = False
        assert ok == built
        seen += ok
    assert seen >= 2


@pytest.mark.parametrize("k", range(13))
def test_jkappa_against_joins(k):
    L = heyting_catalogue(6)[k].algebra
    J = jkappa_topology(L)
    C = J.category
    assert literal_axioms(C, lambda c, S: J.covers(c, mask(S))) is None
    for c in range(C.n_objects):
        for S in literal_sieves(C, c):
            j = L.bottom
            for f in S:
                j = int(L.join[j, J.embedding[C.src[f]]])
            assert J.covers(c, mask(S)) == (j == J.embedding[c]) == jkappa_covers_literal(J, c, mask(S))


@pytest.mark.parametrize("i", range(7))
def test_closed_sieves_match_literal_closure(i):
    C = small_categories()[i]
    for J in (trivial_topology(C), negneg_topology(C)):
        for c in range(C.n_objects):
            cs = closed_sieves(C, J, c)
            literal = {mask(S) for S in literal_sieves(C, c) if literal_closed(C, J, c, S)}
            assert set(cs.sieves) == literal
            assert check_residuation(cs.algebra)
        assert is_boolean_site(C, negneg_topology(C))


def test_trivial_topology_is_not_boolean_on_monoid():
    C = monoid_one_e()
    assert not is_boolean_site(C, trivial_topology(C))
    assert closed_sieves(C, negneg_topology(C), 0).algebra.n == 2


@pytest.mark.parametrize("k", range(13))
def test_yoneda_into_closed_sieves(k):
    assert yoneda_check(heyting_catalogue(6)[k].algebra)


def test_yoneda_fails_without_bottom():
    L = boolean(2)
    objects = [x for x in range(L.n) if x != L.bottom]
    v = yoneda_check(L, jkappa_topology(L, objects))
    assert not v and v.op == "meet"


# --- sheaves ------------------------------------------------------------------

@pytest.mark.parametrize("i", range(7))
def test_sheafification_gives_sheaves(i):
    C = small_categories()[i]
    samples = [Presheaf.terminal(C), Presheaf.empty(C), Presheaf.constant(C, "uv")]
    samples += [Presheaf.representable(C, c) for c in range(C.n_objects)]
    for J in (trivial_topology(C), negneg_topology(C)):
        for X in samples:
            S = sheafify(X, J).sheaf
            assert is_sheaf(S, J)
            # sheafifying again changes nothing
            assert [len(s) for s in sheafify(S, J).sheaf.sets] == [len(s) for s in S.sets]
            if J == trivial_topology(C):
                assert [len(s) for s in S.sets] == [len(s) for s in X.sets]
        assert is_sheaf(Presheaf.terminal(C), J)


def test_negneg_sheafification_on_monoid():
    C = monoid_one_e()
    y = Presheaf.representable(C, 0)
    assert not is_sheaf(y, negneg_topology(C))
    out = sheafify_negneg(y)
    assert [len(s) for s in out.sheaf.sets] == [1]


def test_unit_into_sheaf_is_identity_on_sheaves():
    C = FinCategory.discrete(2)
    X = Presheaf.constant(C, "uvw")
    out = sheafify(X, negneg_topology(C))
    assert all(sorted(row) == list(range(3)) for row in out.unit.components)


# --- Boolean core and two-valuedness ----------------------------------------

def literal_core(C):
    good = {d for d in range(C.n_objects)
            if all(S == set(C.into(d)) for S in literal_sieves(C, d) if literal_dense(C, d, S))}
    return {c for c in range(C.n_objects) if all(d in good for d in range(C.n_objects) if C.hom(d, c))}


@pytest.mark.parametrize("i", range(7))
def test_boolean_core_matches_literal(i):
    C = small_categories()[i]
    assert set(boolean_core(C).objects) == literal_core(C)


def test_boolean_core_examples():
    assert boolean_core(monoid_one_e()).describe(monoid_one_e()) == "U = {} (trivial)"
    D = FinCategory.discrete(2)
    assert boolean_core(D).objects == {0, 1}
    G = FinCategory.cyclic_group(3)
    assert boolean_core(G).objects == {0}
    P = FinCategory.from_poset(chain(3).leq)
    assert boolean_core(P).objects == {0}


def test_two_valued():
    assert is_two_valued(monoid_one_e()) and is_two_valued(FinCategory.cyclic_group(3))
    assert not is_two_valued(FinCategory.discrete(2))
    assert not is_two_valued(FinCategory.from_poset(chain(3).leq))
