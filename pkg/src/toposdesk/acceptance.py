"""The twelve end-to-end checks run by ``toposdesk paperchecks``.

Each check returns a ``CheckResult``; ``run_checks`` runs them in a fixed
order.  Everything is deterministic: corpora are seeded and enumerations are
ordered by construction.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from .algebra import (Proved, Refuted, boolean, chain, check_heyting_preservation,
                      decide_classical, decide_intuitionistic, distributive_lattices, enumerate_homs,
                      heyting_catalogue, lindenbaum_boolean, lindenbaum_geometric, lindenbaum_heyting_bounded)
from .algebra.lattice import LatticeHom
from .fincat import (FinCategory, Presheaf, boolean_core, closed_sieves, is_boolean_site, is_two_valued,
                     monoid_one_e, negneg_topology, sheafify_negneg, subobject_lattice, yoneda_check)
from .proofkernel import SystemTag
from .semantics import (TargetMismatch, all_valuations, interpret_batch, presheaf_targets, propositional_targets,
                        random_formulas, sequent_corpus, soundness_suite)
from .sites import (EQUAL, SiteError, build_boolean_site, build_geometric_site, compare_topologies, syncons,
                    top_closed_sieves, tsfo_sequents)
from .syntax import (And, Bot, Fragment, Imp, Or, Sequent, Signature, Theory, Top, atom, classify_fragment,
                     pretty, pretty_sequent, sequent)
from .transforms import classicalize


@dataclass(frozen=True)
class CheckResult:
    ident: str
    title: str
    passed: bool
    detail: str
    witness: str = ""
    seconds: float = 0.0


# ---------------------------------------------------------------------------
# Shared fixtures
# ---------------------------------------------------------------------------

FAMILY_ATOMS = ("p", "q", "r")


def axiom_pool() -> list:
    p, q, r = atom("p"), atom("q"), atom("r")
    neg = lambda f: Imp(f, Bot())
    S = lambda a, b: Sequent((), a, b)
    return [S(p, q), S(q, r), S(Top(), Or((p, q))), S(r, Bot()), S(And((p, q)), r),
            S(Top(), Or((p, neg(p)))), S(Top(), Imp(neg(q), r)), S(r, Or((p, q))),
            S(And((p, r)), Bot()), S(Top(), Or((Imp(p, r), q))), S(Top(), r), S(q, And((p, r)))]


def theory_family(max_axioms: int = 3) -> list:
    """Every theory given by at most ``max_axioms`` axioms of the pool, as (name, Theory)."""
    pool = axiom_pool()
    sig = Signature.propositional(FAMILY_ATOMS)
    out = []
    for k in range(max_axioms + 1):
        for idx in itertools.combinations(range(len(pool)), k):
            axioms = [pool[i] for i in idx]
            name = "{" + ", ".join(pretty_sequent(a) for a in axioms) + "}"
            out.append((name, Theory.inferred(sig, axioms)))
    return out


def _consistent_syncons(T):
    site = build_boolean_site(T)
    try:
        return site, syncons(site)
    except SiteError:
        return site, None


# ---------------------------------------------------------------------------
# The checks
# ---------------------------------------------------------------------------

def check_topology_equality() -> CheckResult:
    fails, vacuous, total = [], 0, 0
    for name, T in theory_family():
        total += 1
        _, sc = _consistent_syncons(T)
        if sc is None:
            vacuous += 1
            continue
        v = compare_topologies(sc, count_guard=0)
        if v.verdict != EQUAL:
            fails.append(f"{name}: {v.verdict}; {v.witnesses[0].describe()}")
    return CheckResult("1", "J_κ = J_¬¬ on SynCons", not fails,
                       f"{total} theories, {total - vacuous} consistent, {len(fails)} failures",
                       "; ".join(fails[:5]))


def check_boolean_site() -> CheckResult:
    fails, checked = [], 0
    for name, T in theory_family():
        site, sc = _consistent_syncons(T)
        if sc is None:
            continue
        checked += 1
        models = len(site.lindenbaum.models)
        top = top_closed_sieves(sc).algebra.n
        if not is_boolean_site(sc.category, sc.topology):
            fails.append(f"{name}: some closed-sieve lattice is not Boolean")
        elif top != 2 ** models:
            fails.append(f"{name}: {top} closed sieves on top, expected 2^{models}")
    return CheckResult("2", "SynCons with J_κ is a Boolean site", not fails,
                       f"{checked} consistent theories, {len(fails)} failures", "; ".join(fails[:5]))


def check_counterexample_boundary() -> CheckResult:
    fails, checked = [], 0
    first = ""
    for name, T in theory_family():
        site = build_boolean_site(T)
        if not site.lindenbaum.consistent:
            continue
        checked += 1
        v = compare_topologies(site, count_guard=0)
        C = site.category
        bottom = C.objects[site.objects.index(site.algebra.bottom)]
        w = v.witnesses[0] if v.witnesses else None
        ok = (v.verdict != EQUAL and w is not None and w.object == bottom and w.sieve == ()
              and w.covers_in == "J_κ")
        if not ok:
            fails.append(f"{name}: verdict {v.verdict}, first witness {w.describe() if w else None}")
        elif not first:
            first = f"{name}: {v.verdict}; {w.describe()}"
    return CheckResult("3", "full Boolean site: empty sieve on ⊥ separates J_κ from J_¬¬", not fails,
                       f"{checked} consistent theories, {len(fails)} failures",
                       "; ".join(fails[:5]) if fails else first)


def check_yoneda() -> CheckResult:
    algebras = [(e.name, e.algebra) for e in heyting_catalogue(6)]
    algebras += [(f"free Boolean on {n} atoms", boolean(2 ** n)) for n in range(3)]
    fails = []
    for name, H in algebras:
        v = yoneda_check(H)
        if not v:
            fails.append(f"{name}: {v}")
    return CheckResult("4", "Yoneda embedding into closed sieves preserves ⇒", not fails,
                       f"{len(algebras)} algebras, {len(fails)} failures", "; ".join(fails[:5]))


def check_boolean_source() -> CheckResult:
    cat = distributive_lattices(16)
    sources = [e for e in cat if e.algebra.is_boolean()]
    homs = 0
    fails = []
    for s in sources:
        for t in cat:
            for h in enumerate_homs(s.algebra, t.algebra):
                homs += 1
                v = check_heyting_preservation(h)
                if not v.preserved:
                    fails.append(f"{s.name} -> {t.name} {h.mapping}: {v.detail}")
    # non-Boolean sources: the 3-chain into the 4-element Boolean algebra, plus small sources exhaustively
    c3, b2 = chain(3), boolean(2)
    witness = LatticeHom(c3, b2, (b2.bottom, b2.bottom, b2.top))
    wv = check_heyting_preservation(witness)
    violations = 0
    small = [e for e in cat if e.algebra.n <= 5 and not e.algebra.is_boolean()]
    for s in small:
        for t in cat:
            if t.algebra.n > 8:
                break
            for h in enumerate_homs(s.algebra, t.algebra):
                violations += not check_heyting_preservation(h).preserved
    ok = not fails and not wv.preserved and violations > 0
    detail = (f"{len(sources)} Boolean sources, {len(cat)} targets, {homs} homs, {len(fails)} not preserved; "
              f"non-Boolean sources (size ≤ 5, targets ≤ 8): {violations} violations")
    witness_text = f"3-chain → B4 (0,m,1 ↦ 0,0,1): {'preserved' if wv.preserved else 'violated'}: {wv.detail}"
    return CheckResult("5", "Boolean-source lattice maps preserve ⇒", ok, detail,
                       "; ".join(fails[:5]) if fails else witness_text)


def soundness_targets():
    """(propositional, presheaf) target lists used by the soundness check."""
    prop = [M for e in heyting_catalogue(5) for M in propositional_targets(e.algebra)]
    psh = presheaf_targets(monoid_one_e()) + presheaf_targets(FinCategory.discrete(2))
    return prop, psh


def check_soundness() -> CheckResult:
    prop, psh = soundness_targets()
    lines, fails = [], []
    for sys in SystemTag:
        targets = prop + psh
        if sys == SystemTag.CLASSICAL:
            targets = [M for M in targets if M.is_boolean_target()]
        r = soundness_suite(sys, targets)
        lines.append(f"{sys}: {sum(r.checks.values())} checks on {len(targets)} targets")
        if not r.passed:
            fails.append(r.describe())
    # the Classical/non-Boolean pairing must be refused
    try:
        soundness_suite(SystemTag.CLASSICAL, propositional_targets(chain(3)))
        fails.append("Classical rules were accepted on the 3-chain")
    except TargetMismatch:
        pass
    return CheckResult("6", "soundness of the four deduction systems", not fails, "; ".join(lines),
                       "; ".join(fails[:3]))


def check_monoid() -> CheckResult:
    C = monoid_one_e()
    y = Presheaf.representable(C, 0)
    subs = subobject_lattice(y).algebra
    core = boolean_core(C)
    cs = closed_sieves(C, negneg_topology(C), 0).algebra
    sh = sheafify_negneg(y).sheaf
    parts = [
        ("two-valued", is_two_valued(C)),
        ("Sub(y) is a non-Boolean 3-chain", subs.n == 3 and subs.is_chain() and not subs.is_boolean()),
        ("Boolean core empty", not core.objects and core.describe(C) == "U = {} (trivial)"),
        ("J_¬¬ closed sieves form the 2-element Boolean algebra", cs.n == 2 and cs.is_boolean()),
        ("¬¬-sheafified representable is a singleton", all(len(s) == 1 for s in sh.sets)),
    ]
    bad = [n for n, ok in parts if not ok]
    return CheckResult("7", "the monoid {1, e}", not bad,
                       ", ".join(f"{n}: {'ok' if ok else 'FAIL'}" for n, ok in parts), core.describe(C))


def _truth_functions(n):
    vals = list(itertools.product((False, True), repeat=n))
    funcs = [frozenset(v for v, b in zip(vals, bits) if b)
             for bits in itertools.product((False, True), repeat=len(vals))]
    monotone = [f for f in funcs
                if all(w in f for v in f for w in vals if all(a <= b for a, b in zip(v, w)))]
    return funcs, monotone


def check_lindenbaum_sizes() -> CheckResult:
    names = ["p", "q", "r"]
    fails, rows = [], []
    for n in range(4):
        atoms = names[:n]
        T = Theory(Signature.propositional(atoms), ())
        funcs, monotone = _truth_functions(n)
        for kind, build, expected, limit in (("boolean", lindenbaum_boolean, funcs, 2),
                                             ("geometric", lindenbaum_geometric, monotone, 3)):
            if n > limit:
                continue
            L = build(T, atoms)
            sets = {frozenset(tuple(m[a] for a in atoms) for i, m in enumerate(L.models) if mask >> i & 1)
                    for mask in L.masks}
            rows.append(f"{kind}({n})={L.size}")
            if L.size != len(expected) or sets != set(expected):
                fails.append(f"{kind} on {n} atoms: {L.size} classes, brute force {len(expected)}")
    return CheckResult("8", "Lindenbaum algebra sizes", not fails, ", ".join(rows), "; ".join(fails))


def check_rieger_nishimura(depth: int = 5, bound: int = 6) -> CheckResult:
    bh = lindenbaum_heyting_bounded(None, [atom("p")], depth, bound)
    reps = bh.representatives
    fails = []
    largest = 0
    for i, j in itertools.combinations(range(len(reps)), 2):
        cert = bh.separations.get(frozenset((i, j)))
        if cert is None:
            fails.append(f"no certificate for {pretty(reps[i])} vs {pretty(reps[j])}")
            continue
        m = cert.model
        largest = max(largest, m.size)
        s = sequent(reps[cert.left], reps[cert.right])
        if m.size > bound or not m.is_persistent() or not m.refutes(None, s):
            fails.append(f"certificate for {pretty(reps[i])} vs {pretty(reps[j])} does not refute")
    ok = len(reps) >= 10 and not fails
    return CheckResult("9", "Rieger–Nishimura growth on one atom", ok,
                       f"depth {depth}: {len(reps)} classes, {len(reps) * (len(reps) - 1) // 2} pairs certified, "
                       f"largest countermodel {largest} nodes",
                       "; ".join(fails[:5]) if fails else ", ".join(pretty(f) for f in reps))


def check_classical_translation(count: int = 500, depth: int = 4, seed: int = 2024) -> CheckResult:
    atoms = ("p", "q", "r")
    corpus = random_formulas(atoms, count, depth, seed=seed, infinitary=True)
    algebras = [e for e in distributive_lattices(16) if e.algebra.is_boolean()]
    fails = []
    for f in corpus:
        g = classicalize(f)
        if classify_fragment(g) > Fragment.SUB_FIRST_ORDER:
            fails.append(f"{pretty(f)}: translation is {classify_fragment(g)}")
            continue
        for e in algebras:
            env = all_valuations(e.algebra, atoms)
            if not np.array_equal(interpret_batch(e.algebra, f, env), interpret_batch(e.algebra, g, env)):
                fails.append(f"{pretty(f)} differs from its translation in {e.name}")
                break
    return CheckResult("10", "classical translation preserves meaning", not fails,
                       f"{len(corpus)} formulas (depth ≤ {depth}), {len(algebras)} Boolean algebras, "
                       f"{len(fails)} failures", "; ".join(fails[:5]))


def check_tsfo() -> CheckResult:
    fails, total = [], 0
    for e in heyting_catalogue(5):
        rep = tsfo_sequents(e.algebra)
        total += len(rep.entries)
        for ent in rep.entries:
            if not ent.valid:
                fails.append(f"{e.name} at {e.algebra.labels[ent.object]}: {pretty_sequent(ent.sequents[0])}")
    return CheckResult("11", "extra double sequents hold in the algebra", not fails,
                       f"{len(heyting_catalogue(5))} algebras, {total} double sequents, {len(fails)} invalid",
                       "; ".join(fails[:5]))


def check_universal_model(count: int = 150, seed: int = 7) -> CheckResult:
    corpus = sequent_corpus(FAMILY_ATOMS, 3, count=count, seed=seed)
    geo_corpus = sequent_corpus(FAMILY_ATOMS, 3, count=count // 3, seed=seed + 1, geometric=True)
    disagreements = []
    classical_checks = heyting_checks = 0
    for name, T in theory_family():
        site = build_boolean_site(T, FAMILY_ATOMS)
        for s in corpus:
            classical_checks += 1
            if site.valid(s) != decide_classical(T, s):
                disagreements.append(f"{name}: {pretty_sequent(s)} (classical)")
        if all(ax.fragment == Fragment.GEOMETRIC for ax in T.axioms):
            gsite = build_geometric_site(T, FAMILY_ATOMS)
            for s in geo_corpus:
                heyting_checks += 1
                verdict = decide_intuitionistic(T, s)
                if not isinstance(verdict, (Proved, Refuted)) or gsite.valid(s) != isinstance(verdict, Proved):
                    disagreements.append(f"{name}: {pretty_sequent(s)} (intuitionistic: {verdict})")
    return CheckResult("12", "validity in the universal model matches provability", not disagreements,
                       f"{classical_checks} classical and {heyting_checks} intuitionistic comparisons, "
                       f"{len(disagreements)} disagreements", "; ".join(disagreements[:5]))


CHECKS = [check_topology_equality, check_boolean_site, check_counterexample_boundary, check_yoneda,
          check_boolean_source, check_soundness, check_monoid, check_lindenbaum_sizes, check_rieger_nishimura,
          check_classical_translation, check_tsfo, check_universal_model]


def run_checks(selected=None, on_result=None) -> list:
    """Run the checks (all, or those whose ident is in ``selected``) in order."""
    out = []
    for ident, fn in enumerate(CHECKS, start=1):
        if selected is not None and str(ident) not in selected:
            continue
        t = time.perf_counter()
        r = fn()
        r = CheckResult(r.ident, r.title, r.passed, r.detail, r.witness, time.perf_counter() - t)
        out.append(r)
        if on_result:
            on_result(r)
    return out
