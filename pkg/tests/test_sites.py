import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import prop_formulas
from toposdesk.algebra import chain, classical_models, heyting_catalogue, is_isomorphic
from toposdesk.fincat import all_sieves, bits, closed_sieves, is_dense
from toposdesk.sites import (EQUAL, INCOMPARABLE, NEGNEG_IN_KAPPA, SiteError, build_boolean_site,
                             build_geometric_site, compare_topologies, element_value, heyting_site,
                             sieve_as_join_of_representables, syncons, top_closed_sieves, tsfo_sequents)
from toposdesk.syntax import And, Bot, Or, Sequent, Signature, Theory, Top, atom, sequent

p, q = atom("p"), atom("q")
PQ = Signature.propositional("pq")


def theory(*axioms):
    return Theory.inferred(PQ, list(axioms))


def literal_comparison(site):
    """Compare the two covering relations sieve by sieve."""
    C, J, L = site.category, site.topology, site.algebra
    kn = nk = True
    for c in range(C.n_objects):
        for s in all_sieves(C, c):
            j = L.bottom
            for f in bits(s):
                j = int(L.join[j, site.objects[C.src[f]]])
            kappa, dense = j == site.objects[c], is_dense(C, c, s)
            assert kappa == J.covers(c, s)
            kn &= not kappa or dense
            nk &= not dense or kappa
    return kn, nk


@pytest.mark.parametrize("axioms", [(), (sequent(p, q),), (sequent(Top(), Or((p, q))),)])
def test_syncons_topologies_agree(axioms):
    site = syncons(build_boolean_site(theory(*axioms)))
    cmp = compare_topologies(site)
    assert cmp.verdict == EQUAL and not cmp.witnesses
    assert literal_comparison(site) == (True, True)
    for row in cmp.rows:
        assert row.agree and row.covering_counts[0] == row.covering_counts[1]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(prop_formulas(("p", "q"), 4, infinitary=False),
                          prop_formulas(("p", "q"), 4, infinitary=False)), max_size=2))
def test_syncons_agreement_for_random_theories(pairs):
    T = theory(*[Sequent((), a, b) for a, b in pairs])
    full = build_boolean_site(T)
    if not classical_models(T):
        with pytest.raises(SiteError):
            syncons(full)
        return
    site = syncons(full)
    assert compare_topologies(site).verdict == EQUAL
    kn, nk = literal_comparison(full)
    verdict = compare_topologies(full).verdict
    if full.algebra.n > 1:
        assert verdict == INCOMPARABLE and not kn and not nk


def test_full_site_witness_starts_at_bottom():
    cmp = compare_topologies(build_boolean_site(theory()))
    assert cmp.verdict == INCOMPARABLE
    first = cmp.witnesses[0]
    assert first.sieve == () and first.covers_in == "J_κ"
    assert first.describe().startswith("sieve {} on ")


def test_inconsistent_theory():
    T = theory(sequent(Top(), Bot()))
    full = build_boolean_site(T)
    assert full.algebra.n == 1
    with pytest.raises(SiteError, match="inconsistent"):
        syncons(full)
    # one object, where the empty sieve covers for joins only
    assert compare_topologies(full).verdict == NEGNEG_IN_KAPPA


def test_syncons_needs_classical_site():
    with pytest.raises(SiteError):
        syncons(build_geometric_site(theory()))


@pytest.mark.parametrize("axioms", [(), (sequent(p, q),), (sequent(And((p, q)), Bot()),)])
def test_closed_sieves_on_top(axioms):
    T = theory(*axioms)
    site = syncons(build_boolean_site(T))
    cs = top_closed_sieves(site)
    assert cs.algebra.n == 2 ** len(classical_models(T)) and cs.algebra.is_boolean()
    g = build_geometric_site(T)
    assert is_isomorphic(top_closed_sieves(g).algebra, g.algebra)


def test_labels_and_values():
    site = syncons(build_boolean_site(theory(sequent(p, q))))
    assert site.label(p) == site.label(And((p, q)))
    assert site.valid(sequent(p, q)) and not site.valid(sequent(q, p))
    assert element_value(site, Or((p, q))) == site.element(q)
    with pytest.raises(SiteError, match="not an object"):
        site.label(Bot())
    with pytest.raises(SiteError):
        heyting_site(chain(3)).element(p)


def test_tsfo_on_three_chain():
    rep = tsfo_sequents(chain(3))
    assert rep.all_valid
    site = heyting_site(chain(3))
    expected = sum(len(closed_sieves(site.category, site.topology, c).sieves) ** 2 for c in range(3))
    assert len(rep.entries) == expected
    assert rep.legend() == "e0=0, e1=m, e2=1"


@pytest.mark.parametrize("k", range(8))
def test_tsfo_valid_on_small_algebras(k):
    assert tsfo_sequents(heyting_catalogue(5)[k].algebra).all_valid


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_sieves_are_joins_of_representables(data):
    H = data.draw(st.sampled_from([e.algebra for e in heyting_catalogue(6)]))
    site = heyting_site(H)
    C = site.category
    c = data.draw(st.sampled_from(range(C.n_objects)))
    s = data.draw(st.sampled_from(all_sieves(C, c)))
    assert sieve_as_join_of_representables(site, c, s)
    # a lone arrow from a non-bottom object is not a sieve
    f = data.draw(st.sampled_from(C.into(c)))
    if C.generated_masks[f] != 1 << f:
        assert not sieve_as_join_of_representables(site, c, 1 << f)
