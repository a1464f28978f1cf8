"""``toposdesk`` command line.

Every command builds a ``Report``; ``main`` prints it and exits with 0 when
all records pass, 1 when some record fails or errors, and 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from ..algebra import (NotPropositional, UndecidedComparison, heyting_catalogue, lindenbaum_boolean,
                       lindenbaum_geometric, lindenbaum_heyting_bounded)
from ..algebra.decide import DEFAULT_KRIPKE_BOUND, theory_atoms
from ..algebra.lattice import ResourceError
from ..fincat import (FinCategory, boolean_core, is_boolean_site, is_sheaf, is_two_valued, monoid_one_e,
                      negneg_topology, sheafify_negneg, subobject_lattice)
from ..fincat.topology import DEFAULT_SIEVE_GUARD, Sieve, bits
from ..proofkernel import SystemTag, check_proof
from ..semantics import (FragmentMismatch, StructureError, TargetMismatch, interpret, leq, presheaf_targets,
                         propositional_targets, soundness_suite)
from ..sites import (EQUAL, SiteError, build_boolean_site, build_geometric_site, compare_topologies, syncons,
                     tsfo_sequents)
from ..syntax import Fragment, WellFormednessError, atom, pretty, pretty_sequent
from ..transforms import classicalize_theory, morleyize
from .parser import ParseError, algebra_by_name, parse_category, parse_proof, parse_structure, parse_theory, structure_for
from .report import ERROR, FAIL, PASS, Report, cap

COMMANDS = ("check-proof", "classify", "translate", "morleyize", "lindenbaum", "site", "compare-topologies",
            "tsfo", "presheaf", "boolean-core", "validate", "soundness", "paperchecks")

GUARD_ENV = "TOPOSDESK_GUARD"


class UsageError(ValueError):
    pass


def default_guard() -> int:
    raw = os.environ.get(GUARD_ENV)
    if raw is None:
        return DEFAULT_SIEVE_GUARD
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{GUARD_ENV} must be an integer, got {raw!r}") from None


def _system(opts, default=None):
    raw = getattr(opts, "system", None) or default
    return None if raw is None else SystemTag.parse(raw)


def _value(M, v):
    """Readable form of an interpretation."""
    if M.mode == "propositional":
        return M.algebra.labels[v]
    return v.describe()


# ---------------------------------------------------------------------------
# Commands over theory files
# ---------------------------------------------------------------------------

def cmd_check_proof(opts, texts):
    pf = parse_proof(texts[0])
    rep = Report("check-proof")
    sys_ = _system(opts)
    least = next((s for s in SystemTag if check_proof(pf.proof, s, pf.theory)), None)
    if sys_ is None:
        sys_ = SystemTag.CLASSICAL
    v = check_proof(pf.proof, sys_, pf.theory)
    rep.add(f"proof in {sys_}", bool(v), f"{pretty_sequent(pf.proof.conclusion)}: {v.describe()}")
    rep.info("least system", str(least) if least is not None else "none")
    return rep


def cmd_classify(opts, texts):
    T = parse_theory(texts[0])
    rep = Report("classify")
    for i, ax in enumerate(T.axioms):
        rep.info(f"axiom {i}", f"{ax.fragment}: {pretty_sequent(ax)}")
    rep.info("theory", f"{T.fragment}, {len(T)} axioms")
    return rep


def cmd_translate(opts, texts):
    T = parse_theory(texts[0])
    rep = Report("translate")
    C = classicalize_theory(T)
    for i, ax in enumerate(C.axioms):
        rep.add(f"axiom {i}", ax.fragment <= Fragment.SUB_FIRST_ORDER, pretty_sequent(ax))
    return rep


def cmd_morleyize(opts, texts):
    T = parse_theory(texts[0])
    rep = Report("morleyize")
    M = morleyize(T)
    new = [r for r in M.signature.relations if r not in T.signature.relations]
    rep.info("new relations", ", ".join(f"{r}({', '.join(M.signature.relations[r])})" for r in new) or "none")
    for i, ax in enumerate(M.axioms):
        rep.add(f"axiom {i}", ax.fragment == Fragment.GEOMETRIC, pretty_sequent(ax))
    return rep


def cmd_lindenbaum(opts, texts):
    T = parse_theory(texts[0])
    rep = Report("lindenbaum")
    if opts.kind == "heyting":
        seeds = [atom(a) for a in theory_atoms(T)]
        B = lindenbaum_heyting_bounded(T, seeds, opts.depth, bound=opts.kripke_bound)
        rep.info("size", f"{B.size} classes after {opts.depth} rounds")
        rep.info("representatives", cap(pretty(f) for f in B.representatives))
        rep.info("certificates", f"{len(B.certificates)} Kripke countermodels")
        return rep
    L = (lindenbaum_boolean if opts.kind == "boolean" else lindenbaum_geometric)(T)
    rep.info("size", f"{L.size} elements over {len(L.models)} models")
    rep.info("elements", cap(L.algebra.labels))
    for a in L.atoms:
        rep.info(f"class of {a}", L.algebra.labels[L.label(atom(a))])
    return rep


def _site(opts, T, kind="boolean", full=True):
    site = build_boolean_site(T) if kind == "boolean" else build_geometric_site(T)
    if not full:
        site = syncons(site)
    return site


def cmd_site(opts, texts):
    T = parse_theory(texts[0])
    rep = Report("site")
    site = _site(opts, T, opts.kind, full=not opts.syncons)
    C, J = site.category, site.topology
    rep.info("site", site.describe())
    for c in range(C.n_objects):
        rep.info(f"object {C.objects[c]}", "least covering sieve " + Sieve(c, bits(J.minimal[c])).describe(C))
    rep.info("boolean", "yes" if is_boolean_site(C, J) else "no")
    return rep


def cmd_compare_topologies(opts, texts):
    T = parse_theory(texts[0])
    rep = Report("compare-topologies")
    site = _site(opts, T, "boolean", full=opts.full)
    cmp = compare_topologies(site, count_guard=opts.guard)
    rep.add("verdict", cmp.verdict == EQUAL, [cmp.verdict] + [w.describe() for w in cmp.witnesses])
    for row in cmp.rows:
        counts = ("covering sieves not counted (guard)" if row.covering_counts is None
                  else f"covering sieves J_κ {row.covering_counts[0]}, J_¬¬ {row.covering_counts[1]}")
        rep.add(f"object {row.object}", row.agree,
                f"least sieve sizes J_κ {row.kappa_minimal}, J_¬¬ {row.negneg_minimal}; {counts}")
    return rep


def cmd_validate(opts, texts):
    T = parse_theory(texts[0])
    M = structure_for(T, parse_structure(texts[1]))
    rep = Report("validate")
    for i, ax in enumerate(T.axioms):
        try:
            a = interpret(M, ax.antecedent, ax.context)
            b = interpret(M, ax.consequent, ax.context)
        except FragmentMismatch as e:
            rep.add(f"axiom {i}", ERROR, str(e))
            continue
        ok = leq(M, a, b)
        witness = pretty_sequent(ax) if ok else f"{pretty_sequent(ax)}: {_value(M, a)} is not below {_value(M, b)}"
        rep.add(f"axiom {i}", ok, witness)
    return rep


# ---------------------------------------------------------------------------
# Commands over algebras and categories
# ---------------------------------------------------------------------------

def cmd_tsfo(opts, texts):
    H = algebra_by_name(" ".join(opts.algebra))
    rep = Report("tsfo")
    r = tsfo_sequents(H)
    rep.info("legend", r.legend())
    lab = H.labels
    for e in r.entries:
        s1, s2 = ("{" + ", ".join(lab[x] for x in s) + "}" for s in e.sieves)
        rep.add(f"a={lab[e.object]} S1={s1} S2={s2}", e.valid, " ; ".join(pretty_sequent(s) for s in e.sequents))
    return rep


def cmd_presheaf(opts, texts):
    cf = parse_category(texts[0])
    C = cf.category
    rep = Report("presheaf")
    rep.info("category", C.describe())
    rep.info("two-valued", "yes" if is_two_valued(C) else "no")
    Jn = negneg_topology(C)
    names = [opts.name] if opts.name else list(cf.presheaves)
    for name in names:
        if name not in cf.presheaves:
            raise UsageError(f"no presheaf named {name}")
        X = cf.presheaves[name]
        rep.info(f"{name} sizes", ", ".join(f"{C.objects[c]}: {len(s)}" for c, s in enumerate(X.sets)))
        S = subobject_lattice(X, guard=opts.guard).algebra
        rep.info(f"{name} subobjects", f"{S.n} subobjects, {'Boolean' if S.is_boolean() else 'not Boolean'}"
                 f"{', a chain' if S.is_chain() else ''}")
        rep.info(f"{name} ¬¬-sheaf", "yes" if is_sheaf(X, Jn, guard=opts.guard) else "no")
        sh = sheafify_negneg(X, guard=opts.guard).sheaf
        rep.info(f"{name} ¬¬-sheafification", ", ".join(f"{C.objects[c]}: {len(s)}" for c, s in enumerate(sh.sets)))
    for name, A in cf.subpresheaves.items():
        rep.info(f"subpresheaf {name}", A.describe())
    return rep


def cmd_boolean_core(opts, texts):
    C = parse_category(texts[0]).category
    core = boolean_core(C)
    rep = Report("boolean-core")
    rep.info("boolean-core", core.describe(C))
    for c, why in enumerate(core.classification):
        rep.info(f"object {C.objects[c]}", why)
    return rep


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def cmd_soundness(opts, texts):
    rep = Report("soundness")
    systems = [_system(opts)] if opts.system else list(SystemTag)
    prop = [M for e in heyting_catalogue(opts.max_size) for M in propositional_targets(e.algebra)]
    psh = []
    if not opts.no_presheaf:
        psh = presheaf_targets(monoid_one_e()) + presheaf_targets(FinCategory.discrete(2))
    for s in systems:
        targets = prop + psh
        if s == SystemTag.CLASSICAL:
            targets = [M for M in targets if M.is_boolean_target()]
        t = time.perf_counter()
        r = soundness_suite(s, targets)
        secs = time.perf_counter() - t
        bad = {}
        for c in r.counterexamples:
            bad.setdefault(c.instance.rule, c)
        for rule in sorted(set(r.checks) | set(r.uncovered)):
            if rule in r.uncovered:
                rep.add(f"{s}/{rule}", FAIL, "no instances generated")
            elif rule in bad:
                c = bad[rule]
                rep.add(f"{s}/{rule}", FAIL, f"in {c.target}: {c.instance.describe()}")
            else:
                rep.add(f"{s}/{rule}", PASS, f"{r.checks[rule]} checks on {len(targets)} targets", secs)
    return rep


def cmd_paperchecks(opts, texts):
    from ..acceptance import run_checks
    rep = Report("paperchecks")
    selected = None if not opts.only else {x.strip() for x in opts.only.split(",")}
    for r in run_checks(selected):
        witness = r.detail + (f"\nwitness: {r.witness}" if r.witness else "")
        rep.add(f"item {r.ident}: {r.title}", r.passed, witness, r.seconds)
    return rep


HANDLERS = {
    "check-proof": cmd_check_proof, "classify": cmd_classify, "translate": cmd_translate,
    "morleyize": cmd_morleyize, "lindenbaum": cmd_lindenbaum, "site": cmd_site,
    "compare-topologies": cmd_compare_topologies, "tsfo": cmd_tsfo, "presheaf": cmd_presheaf,
    "boolean-core": cmd_boolean_core, "validate": cmd_validate, "soundness": cmd_soundness,
    "paperchecks": cmd_paperchecks,
}

# commands whose positional arguments are files, by argument name
FILE_ARGS = {
    "check-proof": ("proof",), "classify": ("theory",), "translate": ("theory",), "morleyize": ("theory",),
    "lindenbaum": ("theory",), "site": ("theory",), "compare-topologies": ("theory",),
    "presheaf": ("category",), "boolean-core": ("category",), "validate": ("theory", "structure"),
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", choices=("g", "sfo", "fo", "cl"), help="deduction system")
    common.add_argument("--depth", type=int, default=2, help="corpus or closure depth")
    common.add_argument("--kripke-bound", type=int, default=DEFAULT_KRIPKE_BOUND,
                        help="largest Kripke frame searched for countermodels")
    common.add_argument("--guard", type=int, default=None,
                        help=f"enumeration guard (default from {GUARD_ENV})")
    common.add_argument("--format", choices=("text", "record"), default="text")
    common.add_argument("--timing", action="store_true", help="include timings (output is then not reproducible)")

    ap = argparse.ArgumentParser(prog="toposdesk", description="Finite checks for theories, sites and toposes.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    add("check-proof", "check a proof file in the kernel").add_argument("proof")
    add("classify", "fragment of each axiom").add_argument("theory")
    add("translate", "rewrite universal quantifiers away").add_argument("theory")
    add("morleyize", "geometric theory with the same models").add_argument("theory")
    p = add("lindenbaum", "algebra of formula classes")
    p.add_argument("theory")
    p.add_argument("--kind", choices=("boolean", "geometric", "heyting"), default="boolean")
    p = add("site", "syntactic site and its covering topology")
    p.add_argument("theory")
    p.add_argument("--kind", choices=("boolean", "geometric"), default="boolean")
    p.add_argument("--syncons", action="store_true", help="drop the bottom class")
    p = add("compare-topologies", "compare the covering topology with double negation")
    p.add_argument("theory")
    p.add_argument("--full", action="store_true", help="keep the bottom class")
    add("tsfo", "extra double sequents on a finite Heyting algebra").add_argument(
        "algebra", nargs="+", help="chain N, boolean K, or a catalogue name such as D5.2")
    p = add("presheaf", "subobjects and double-negation sheafification")
    p.add_argument("category")
    p.add_argument("--name", help="only this presheaf")
    add("boolean-core", "Boolean core of a presheaf topos").add_argument("category")
    p = add("validate", "validity of a theory in a structure")
    p.add_argument("theory")
    p.add_argument("structure")
    p = add("soundness", "rule-by-rule soundness on finite targets")
    p.add_argument("--max-size", type=int, default=5, help="largest Heyting algebra target")
    p.add_argument("--no-presheaf", action="store_true", help="skip the presheaf targets")
    p = add("paperchecks", "run the acceptance suite")
    p.add_argument("--only", help="comma-separated item numbers")
    return ap


def run_command(name: str, args=None, files=()) -> Report:
    """Run ``name`` with option namespace or dict ``args`` on file paths ``files``."""
    if name not in HANDLERS:
        raise UsageError(f"unknown command {name!r}")
    if not isinstance(args, argparse.Namespace):
        opts = dict(args or {})
        argv = [name] + [str(f) for f in files]
        if name == "tsfo":
            # the algebra name is positional, e.g. {"algebra": "chain 3"}
            argv += str(opts.pop("algebra", "")).split()
        for k, v in opts.items():
            flag = "--" + k.replace("_", "-")
            if v is True:
                argv.append(flag)
            elif v not in (None, False):
                argv += [flag, str(v)]
        try:
            args = build_parser().parse_args(argv)
        except SystemExit:
            raise UsageError(f"bad arguments for {name}: {' '.join(argv[1:])}") from None
    if args.guard is None:
        args.guard = default_guard()
    texts = []
    for attr in FILE_ARGS.get(name, ()):
        path = getattr(args, attr)
        try:
            with open(path, encoding="utf-8") as fh:
                texts.append(fh.read())
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return HANDLERS[name](args, texts)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rep = run_command(args.command, args)
    except (UsageError, ParseError) as e:
        print(f"toposdesk {args.command}: {e}", file=sys.stderr)
        return 2
    except (ResourceError, TargetMismatch, FragmentMismatch, StructureError, SiteError, NotPropositional,
            UndecidedComparison, WellFormednessError) as e:
        rep = Report(args.command)
        rep.add(args.command, ERROR, f"{type(e).__name__}: {e}")
    sys.stdout.write(rep.render(args.format, args.timing))
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
