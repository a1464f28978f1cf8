"""Propositional syntactic sites.

A site here is a finite lattice of formula classes (a Lindenbaum algebra, or
a full subposet of one) viewed as a poset category, with the finite-join
covering topology.  The labeling sends a formula to the object naming its
class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.lattice import FinHeyting, ResourceError
from .algebra.lindenbaum import Lindenbaum, lindenbaum_boolean, lindenbaum_geometric
from .fincat.category import FinCategory
from .fincat.topology import (Sieve, Topology, all_sieves, bits, closed_sieves, jkappa_topology,
                              negneg_topology)
from .semantics.structure import Structure, interpret, sequent_valid
from .syntax import And, Formula, Iff, Or, Sequent, Signature, Theory, atom

CLASSICAL, GEOMETRIC, SUB_FIRST_ORDER = "Classical", "Geometric", "SubFirstOrder"


class SiteError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SyntacticSite:
    algebra: FinHeyting               # ambient lattice of classes
    topology: Topology                # lives on the full subposet ``topology.embedding``
    flag: str
    lindenbaum: Lindenbaum | None = None

    @property
    def category(self) -> FinCategory:
        return self.topology.category

    @property
    def objects(self) -> tuple:
        """Algebra element of each object."""
        return self.topology.embedding

    def element(self, f: Formula) -> int:
        if self.lindenbaum is None:
            raise SiteError("this site has no formula labeling")
        return self.lindenbaum.label(f)

    def label(self, f: Formula) -> int:
        """Object of the site naming the class of ``f``."""
        e = self.element(f)
        try:
            return self.objects.index(e)
        except ValueError:
            raise SiteError(f"the class of this formula ({self.algebra.labels[e]}) is not an object of the site") from None

    def universal_structure(self) -> Structure:
        """Each atom interpreted as its own class."""
        L = self.lindenbaum
        if L is None:
            raise SiteError("this site has no formula labeling")
        return Structure.propositional(Signature.propositional(L.atoms), self.algebra, L.atom_values(),
                                       name=f"universal model in {self.flag} Lindenbaum algebra")

    def valid(self, s: Sequent) -> bool:
        """Validity of ``s`` under the labeling."""
        return sequent_valid(self.universal_structure(), s)

    def describe(self) -> str:
        return f"{self.flag} site with {self.category.n_objects} objects"


def build_boolean_site(T: Theory, atoms=None) -> SyntacticSite:
    L = lindenbaum_boolean(T, atoms)
    return SyntacticSite(L.algebra, jkappa_topology(L.algebra), CLASSICAL, L)


def build_geometric_site(T: Theory, atoms=None) -> SyntacticSite:
    L = lindenbaum_geometric(T, atoms)
    return SyntacticSite(L.algebra, jkappa_topology(L.algebra), GEOMETRIC, L)


def heyting_site(H: FinHeyting) -> SyntacticSite:
    """``H`` as its own site of classes with the finite-join topology."""
    return SyntacticSite(H, jkappa_topology(H), SUB_FIRST_ORDER)


def syncons(site: SyntacticSite) -> SyntacticSite:
    """Remove the bottom class, keeping the topology induced from the ambient lattice."""
    if site.flag != CLASSICAL:
        raise SiteError("SynCons is built from a Classical site")
    L = site.algebra
    if L.n == 1:
        raise SiteError("theory inconsistent, SynCons empty")
    keep = [e for e in site.objects if e != L.bottom]
    return SyntacticSite(L, jkappa_topology(L, keep), CLASSICAL, site.lindenbaum)


# ---------------------------------------------------------------------------
# Comparing the covering topology with double negation
# ---------------------------------------------------------------------------

EQUAL = "equal"
KAPPA_IN_NEGNEG = "J_κ ⊊ J_¬¬"
NEGNEG_IN_KAPPA = "J_¬¬ ⊊ J_κ"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class CoverWitness:
    object: str
    sieve: tuple            # arrow names
    covers_in: str          # the topology that covers it ("J_κ" or "J_¬¬")

    def describe(self) -> str:
        other = "J_¬¬" if self.covers_in == "J_κ" else "J_κ"
        arrows = "{" + ", ".join(self.sieve) + "}"
        return f"sieve {arrows} on {self.object} covers in {self.covers_in}, not in {other}"


@dataclass(frozen=True)
class ObjectComparison:
    object: str
    kappa_minimal: int       # size of the least covering sieve
    negneg_minimal: int
    covering_counts: tuple | None   # (J_κ, J_¬¬) covering-sieve counts when enumerable
    agree: bool


@dataclass(frozen=True)
class TopologyComparison:
    verdict: str
    witnesses: tuple
    rows: tuple

    def __bool__(self):
        return self.verdict == EQUAL


def compare_topologies(site: SyntacticSite, count_guard: int = 4096) -> TopologyComparison:
    """Compare ``J_κ`` with ``J_¬¬`` object by object.

    A topology on a finite category is determined by its least covering sieve
    on each object, so the covering families agree on ``c`` iff the two least
    sieves coincide.  Witnesses are least sieves of one topology that the
    other does not cover, listed by object order.  When an object has at most
    ``count_guard`` sieves, the covering sieves of both topologies are also
    counted by enumeration.
    """
    C = site.category
    Jk = site.topology
    Jn = negneg_topology(C)
    kn_ok = True          # J_κ ⊆ J_¬¬
    nk_ok = True
    witnesses = []
    rows = []
    for c in range(C.n_objects):
        mk, mn = Jk.minimal[c], Jn.minimal[c]
        name = C.objects[c]
        if not Jn.covers(c, mk):
            kn_ok = False
            witnesses.append(CoverWitness(name, tuple(C.arrows[f] for f in bits(mk)), "J_κ"))
        if not Jk.covers(c, mn):
            nk_ok = False
            witnesses.append(CoverWitness(name, tuple(C.arrows[f] for f in bits(mn)), "J_¬¬"))
        try:
            sieves = all_sieves(C, c, guard=count_guard)
            counts = (sum(1 for s in sieves if Jk.covers(c, s)), sum(1 for s in sieves if Jn.covers(c, s)))
        except ResourceError:
            counts = None
        rows.append(ObjectComparison(name, bin(mk).count("1"), bin(mn).count("1"), counts, mk == mn))
    if kn_ok and nk_ok:
        verdict = EQUAL
    elif kn_ok:
        verdict = KAPPA_IN_NEGNEG
    elif nk_ok:
        verdict = NEGNEG_IN_KAPPA
    else:
        verdict = INCOMPARABLE
    return TopologyComparison(verdict, tuple(witnesses), tuple(rows))


def top_closed_sieves(site: SyntacticSite):
    """Closed-sieve lattice on the greatest object of the site."""
    top = site.objects.index(site.algebra.top)
    return closed_sieves(site.category, site.topology, top)


# ---------------------------------------------------------------------------
# Extra double sequents on a finite Heyting site
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TsfoEntry:
    object: int                 # algebra element a
    sieves: tuple               # (S1, S2) as tuples of algebra elements
    agreement: tuple            # K as a tuple of algebra elements
    sequents: tuple             # the two halves of the double sequent
    valid: bool


@dataclass(frozen=True)
class TsfoReport:
    algebra: FinHeyting
    entries: tuple
    atom_names: tuple           # atom i stands for element i

    @property
    def all_valid(self) -> bool:
        return all(e.valid for e in self.entries)

    def legend(self) -> str:
        return ", ".join(f"{n}={self.algebra.labels[i]}" for i, n in enumerate(self.atom_names))


def _join_formula(names, elems):
    return Or(tuple(atom(names[e]) for e in elems), infinitary=True)


def tsfo_sequents(H: FinHeyting | SyntacticSite) -> TsfoReport:
    """Double sequents ``\\/K -||- a /\\ (\\/S1 <-> \\/S2)`` for closed sieves ``S1, S2`` on ``a``.

    ``K = {b <= a : S1 & down(b) = S2 & down(b)}``.  Each element ``i`` of
    ``H`` is written as the atom ``e<i>``; validity is checked by
    interpreting the sequents in ``H`` with ``e<i>`` sent to ``i``.
    """
    site = H if isinstance(H, SyntacticSite) else heyting_site(H)
    H = site.algebra
    C, J = site.category, site.topology
    emb = site.objects
    names = tuple(f"e{i}" for i in range(H.n))
    M = Structure.propositional(Signature.propositional(names), H, {n: i for i, n in enumerate(names)},
                                name="H with each element naming itself")
    entries = []
    for c in range(C.n_objects):
        a = emb[c]
        cs = closed_sieves(C, J, c)
        sets = [tuple(sorted(emb[C.src[f]] for f in bits(m))) for m in cs.sieves]
        below = [b for b in range(H.n) if H.leq[b, a]]
        for s1 in sets:
            for s2 in sets:
                K = tuple(b for b in below
                          if {x for x in s1 if H.leq[x, b]} == {x for x in s2 if H.leq[x, b]})
                lhs = _join_formula(names, K)
                rhs = And((atom(names[a]), Iff(_join_formula(names, s1), _join_formula(names, s2))))
                seqs = (Sequent((), lhs, rhs), Sequent((), rhs, lhs))
                ok = all(sequent_valid(M, s) for s in seqs)
                entries.append(TsfoEntry(a, (s1, s2), K, seqs, ok))
    return TsfoReport(H, tuple(entries), names)


def sieve_as_join_of_representables(site: SyntacticSite, c: int, mask: int) -> bool:
    """Check ``S = \\/{down(b) : b in S}`` for a sieve ``S`` on object ``c``."""
    C = site.category
    out = 0
    for f in bits(mask):
        out |= C.generated_masks[f]
    return out == mask


def describe_sieve(site: SyntacticSite, c: int, mask: int) -> str:
    return Sieve(c, bits(mask)).describe(site.category)


def element_value(site: SyntacticSite, f: Formula) -> int:
    """Interpretation of ``f`` in the ambient algebra under the labeling."""
    return interpret(site.universal_structure(), f)
