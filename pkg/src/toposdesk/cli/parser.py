"""Parsers for theory, proof, category and structure files.

Theory grammar (statements end with ``.``; ``#`` starts a comment)::

    sort A.
    rel R(A).   rel p.          atoms p q r.
    fun f(A) : A.   fun c : A.
    axiom <formula> |- <formula>.
    axiom <formula> |-[x:A, y:A] <formula>.
    axiom <formula> -||- <formula>.          (two axioms)

Formulas: ``top bot ~ /\\ \\/ ->``, ``exists x:A y:A. body``, ``forall ...``,
``t = s``, relation atoms ``R(t, ...)``, and tagged families ``\\/{f; g}`` and
``/\\{f; g}``.  The Unicode spellings ``⊤ ⊥ ¬ ∧ ∨ ⇒ ∃ ∀ ⊢ ⋀{ ⋁{`` are also
accepted.  Binding strength, tightest first: ``~``, ``/\\``, ``\\/``, ``->``
(right associative); a quantifier body extends as far as possible.

If a theory file declares no relations at all, undeclared nullary
identifiers are taken to be atoms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..fincat.category import FinCategory
from ..fincat.presheaf import Presheaf, Subpresheaf
from ..proofkernel import ProofTree, Side
from ..syntax import (And, App, Bot, Context, Eq, Exists, Forall, Imp, Or, Rel, Sequent, Signature, Theory, Top,
                      Var, WellFormednessError, check_sequent)


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)
        self.line, self.col = line, col


_SYMBOLS = [
    ("DSEQ", r"-\|\|-|⊣⊢"), ("IMP", r"->|⇒|→"), ("MAPSTO", r"\|->|↦"), ("SEQ", r"\|-|⊢"),
    ("IAND", r"/\\\{|⋀\{"), ("IOR", r"\\/\{|⋁\{"), ("AND", r"/\\|∧"), ("OR", r"\\/|∨"),
    ("NOT", r"~|¬"), ("TOPSYM", r"⊤"), ("BOTSYM", r"⊥"), ("EXSYM", r"∃"), ("ALLSYM", r"∀"),
    ("LE", r"<="),
    ("PUNCT", r"[()\[\]{},;:.=]"),
    ("NUM", r"[0-9]+(?![A-Za-z_])"), ("IDENT", r"[A-Za-z0-9_*'][A-Za-z0-9_*'.]*(?<!\.)"),
]
_TOKEN = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _SYMBOLS) + r"|(?P<WS>[ \t\r]+)|(?P<NL>\n)|(?P<COMMENT>#[^\n]*)")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "NL":
            line, start = line + 1, m.end()
        elif kind not in ("WS", "COMMENT"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("EOF", "", line, pos - start + 1))
    return out


_KEYWORD_KIND = {"top": "TOPSYM", "bot": "BOTSYM", "exists": "EXSYM", "forall": "ALLSYM"}


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # --- token helpers ------------------------------------------------------

    def peek(self, k=0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def kind(self, k=0) -> str:
        t = self.peek(k)
        if t.kind == "IDENT" and t.text in _KEYWORD_KIND:
            return _KEYWORD_KIND[t.text]
        return t.kind

    def at(self, text) -> bool:
        return self.peek().text == text

    def next(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, text) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}, found {self.peek().text or 'end of input'!r}")
        return self.next()

    def ident(self, what="identifier") -> Token:
        t = self.peek()
        if t.kind not in ("IDENT", "NUM"):
            self.error(f"expected {what}, found {t.text or 'end of input'!r}")
        return self.next()


class _FormulaParser(_Parser):
    def __init__(self, text, sig: Signature, auto_atoms=False):
        super().__init__(text)
        self.sig = sig
        self.auto_atoms = auto_atoms

    def _declare_atom(self, name, tok):
        if self.auto_atoms:
            self.sig = self.sig.extend(relations={name: ()})
            return
        self.error(f"unknown symbol {name}", tok)

    def binder(self, scope) -> list:
        vs = []
        while self.kind() == "IDENT" and not self.at("."):
            t = self.next()
            if self.at(":"):
                self.next()
                sort = self.ident("sort").text
                if sort not in self.sig.sorts:
                    self.error(f"unknown sort {sort}")
            elif len(self.sig.sorts) == 1:
                sort = self.sig.sorts[0]
            else:
                self.error(f"variable {t.text} needs a sort", t)
            vs.append(Var(t.text, sort))
        if not vs:
            self.error("quantifier without variables")
        return vs

    def context(self) -> Context:
        vs = []
        if self.at("["):
            self.next()
            while not self.at("]"):
                t = self.ident("variable")
                self.expect(":")
                sort = self.ident("sort").text
                if sort not in self.sig.sorts:
                    self.error(f"unknown sort {sort}")
                vs.append(Var(t.text, sort))
                if not self.at("]"):
                    self.expect(",")
            self.next()
        try:
            return Context(vs)
        except WellFormednessError as e:
            self.error(str(e))

    def formula(self, scope):
        k = self.kind()
        if k in ("EXSYM", "ALLSYM"):
            self.next()
            vs = self.binder(scope)
            self.expect(".")
            inner = dict(scope)
            inner.update({v.name: v for v in vs})
            body = self.formula(inner)
            try:
                return (Exists if k == "EXSYM" else Forall)(tuple(vs), body)
            except WellFormednessError as e:
                self.error(str(e))
        left = self.disjunction(scope)
        if self.kind() == "IMP":
            self.next()
            return Imp(left, self.formula(scope))
        return left

    def disjunction(self, scope):
        parts = [self.conjunction(scope)]
        while self.kind() == "OR":
            self.next()
            parts.append(self.conjunction(scope))
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self, scope):
        parts = [self.unary(scope)]
        while self.kind() == "AND":
            self.next()
            parts.append(self.unary(scope))
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self, scope):
        k = self.kind()
        if k == "NOT":
            self.next()
            if self.kind() in ("EXSYM", "ALLSYM"):
                return Imp(self.formula(scope), Bot())
            return Imp(self.unary(scope), Bot())
        if k in ("EXSYM", "ALLSYM"):
            return self.formula(scope)
        return self.primary(scope)

    def family(self, scope):
        parts = []
        while not self.at("}"):
            parts.append(self.formula(scope))
            if not self.at("}"):
                self.expect(";")
        self.next()
        return tuple(parts)

    def primary(self, scope):
        k = self.kind()
        t = self.peek()
        if k == "TOPSYM":
            self.next()
            return Top()
        if k == "BOTSYM":
            self.next()
            return Bot()
        if k == "IAND":
            self.next()
            return And(self.family(scope), infinitary=True)
        if k == "IOR":
            self.next()
            return Or(self.family(scope), infinitary=True)
        if self.at("("):
            self.next()
            f = self.formula(scope)
            self.expect(")")
            return f
        if k not in ("IDENT", "NUM"):
            self.error(f"expected a formula, found {t.text or 'end of input'!r}")
        # relation atom or the left side of an equation
        name = t.text
        if name in self.sig.relations and not self._is_equation_ahead():
            self.next()
            args = self.arguments(scope) if self.at("(") else ()
            arity = self.sig.relations[name]
            if len(args) != len(arity):
                self.error(f"{name} expects {len(arity)} arguments, got {len(args)}", t)
            for a, s in zip(args, arity):
                if a.sort != s:
                    self.error(f"argument {a} of {name} has sort {a.sort}, expected {s}", t)
            return Rel(name, args)
        if name in scope or name in self.sig.functions:
            lhs = self.term(scope)
            self.expect("=")
            rhs = self.term(scope)
            if lhs.sort != rhs.sort:
                self.error(f"equation between sorts {lhs.sort} and {rhs.sort}", t)
            return Eq(lhs, rhs)
        if self.peek(1).text != "(":
            self.next()
            self._declare_atom(name, t)
            return Rel(name)
        self.error(f"unknown symbol {name}", t)

    def _is_equation_ahead(self) -> bool:
        # ``R = ...`` never occurs for a relation; only terms stand left of ``=``
        return self.peek(1).text == "="

    def arguments(self, scope) -> tuple:
        self.expect("(")
        args = []
        while not self.at(")"):
            args.append(self.term(scope))
            if not self.at(")"):
                self.expect(",")
        self.next()
        return tuple(args)

    def term(self, scope):
        t = self.ident("term")
        if t.text in scope:
            return scope[t.text]
        if t.text in self.sig.functions:
            arg_sorts, res = self.sig.functions[t.text]
            args = self.arguments(scope) if self.at("(") else ()
            if tuple(a.sort for a in args) != tuple(arg_sorts):
                self.error(f"{t.text} applied to arguments of the wrong sorts", t)
            return App(t.text, args, res)
        self.error(f"unknown variable or function {t.text}", t)

    def sequent_parts(self):
        """``formula |-[ctx] formula`` (or ``-||-``); returns (double?, [Sequent])."""
        # the context follows the turnstile, so parse the left side once it is known
        start = self.i
        depth = 0
        while True:
            k = self.kind()
            if k == "EOF":
                self.error("expected a turnstile")
            if k in ("SEQ", "DSEQ") and depth == 0:
                break
            if self.peek().text in ("(", "[", "{") or k in ("IAND", "IOR"):
                depth += 1
            elif self.peek().text in (")", "]", "}"):
                depth -= 1
            self.next()
        turn_at = self.i
        turn = self.next()
        ctx = self.context()
        scope = {v.name: v for v in ctx}
        after = self.i
        self.i = start
        left = self.formula(scope)
        if self.i != turn_at:
            self.error("unexpected text before the turnstile")
        self.i = after
        right = self.formula(scope)
        try:
            seqs = [Sequent(ctx, left, right)]
            if turn.kind == "DSEQ":
                seqs.append(Sequent(ctx, right, left))
        except WellFormednessError as e:
            self.error(str(e), turn)
        return seqs


def parse_formula(text: str, sig: Signature, ctx=(), auto_atoms=False):
    p = _FormulaParser(text, sig, auto_atoms)
    f = p.formula({v.name: v for v in Context(ctx)})
    if p.kind() != "EOF":
        p.error(f"unexpected {p.peek().text!r}")
    return f


def parse_sequent(text: str, sig: Signature, auto_atoms=False) -> Sequent:
    p = _FormulaParser(text, sig, auto_atoms)
    seqs = p.sequent_parts()
    if p.kind() != "EOF":
        p.error(f"unexpected {p.peek().text!r}")
    return seqs[0]


# ---------------------------------------------------------------------------
# Theory files
# ---------------------------------------------------------------------------

class _TheoryParser(_FormulaParser):
    def __init__(self, text):
        super().__init__(text, Signature())
        self.axioms = []
        self.explicit_rels = any(t.kind == "IDENT" and t.text in ("rel", "atoms") for t in self.toks)
        self.auto_atoms = not self.explicit_rels

    def declaration(self) -> bool:
        """Parse one signature statement; False if the next statement is something else."""
        t = self.peek()
        if t.text == "sort":
            self.next()
            while not self.at("."):
                name = self.ident("sort name").text
                self.sig = self.sig.extend(sorts=(name,))
                if self.at(","):
                    self.next()
            self.next()
        elif t.text == "atoms":
            self.next()
            names = []
            while not self.at("."):
                names.append(self.ident("atom").text)
            self.next()
            self._extend(relations={n: () for n in names}, tok=t)
        elif t.text == "rel":
            self.next()
            name = self.ident("relation name").text
            sorts = self._sort_list()
            self.expect(".")
            self._extend(relations={name: sorts}, tok=t)
        elif t.text == "fun":
            self.next()
            name = self.ident("function name").text
            sorts = self._sort_list()
            self.expect(":")
            res = self._sort()
            self.expect(".")
            self._extend(functions={name: (sorts, res)}, tok=t)
        else:
            return False
        return True

    def _extend(self, tok, **kw):
        try:
            self.sig = self.sig.extend(**kw)
        except WellFormednessError as e:
            self.error(str(e), tok)

    def _sort(self):
        s = self.ident("sort").text
        if s not in self.sig.sorts:
            self.error(f"unknown sort {s}")
        return s

    def _sort_list(self) -> tuple:
        if not self.at("("):
            return ()
        self.next()
        out = []
        while not self.at(")"):
            out.append(self._sort())
            if not self.at(")"):
                self.expect(",")
        self.next()
        return tuple(out)

    def axiom(self):
        t = self.expect("axiom")
        seqs = self.sequent_parts()
        self.expect(".")
        for s in seqs:
            try:
                check_sequent(self.sig, s)
            except WellFormednessError as e:
                self.error(str(e), t)
        self.axioms.extend(seqs)

    def theory(self) -> Theory:
        try:
            return Theory.inferred(self.sig, self.axioms)
        except WellFormednessError as e:
            raise ParseError(str(e)) from None


def parse_theory(text: str) -> Theory:
    p = _TheoryParser(text)
    while p.kind() != "EOF":
        if p.declaration():
            continue
        if p.at("axiom"):
            p.axiom()
            continue
        p.error(f"unknown statement {p.peek().text!r}")
    return p.theory()


# ---------------------------------------------------------------------------
# Proof files: theory statements followed by proof steps
#
#   step s1 = identity : p |- p.
#   step s2 = cut s1 s1 : p |- p.
#   step s3 = axiom 0 : p |- q.
#   step s4 = substitution s3 [y, x] : ... .
#   root s4.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProofFile:
    theory: Theory
    proof: ProofTree
    steps: dict


def parse_proof(text: str) -> ProofFile:
    p = _TheoryParser(text)
    steps = {}
    root = None
    last = None
    while p.kind() != "EOF":
        if p.declaration():
            continue
        if p.at("axiom"):
            p.axiom()
            continue
        if p.at("step"):
            p.next()
            name = p.ident("step name")
            if name.text in steps:
                p.error(f"step {name.text} defined twice", name)
            p.expect("=")
            rule = p.ident("rule").text
            premises = []
            index = None
            while p.kind() in ("IDENT", "NUM") and not p.at(":"):
                t = p.next()
                if t.kind == "NUM":
                    index = int(t.text)
                elif t.text in steps:
                    premises.append(steps[t.text])
                else:
                    p.error(f"unknown step {t.text}", t)
            terms = None
            term_toks = None
            if p.at("["):
                term_toks = p.i
                depth = 0
                while True:
                    if p.at("["):
                        depth += 1
                    elif p.at("]"):
                        depth -= 1
                        if depth == 0:
                            p.next()
                            break
                    elif p.kind() == "EOF":
                        p.error("unterminated term list")
                    p.next()
            p.expect(":")
            seqs = p.sequent_parts()
            if len(seqs) != 1:
                p.error("a proof step concludes a single sequent", name)
            concl = seqs[0]
            if term_toks is not None:
                end = p.i
                p.i = term_toks + 1
                scope = {v.name: v for v in concl.context}
                terms = []
                while not p.at("]"):
                    terms.append(p.term(scope))
                    if not p.at("]"):
                        p.expect(",")
                p.i = end
            p.expect(".")
            steps[name.text] = ProofTree(concl, rule, tuple(premises), Side(index, terms))
            last = name.text
            continue
        if p.at("root"):
            p.next()
            t = p.ident("step name")
            if t.text not in steps:
                p.error(f"unknown step {t.text}", t)
            root = t.text
            p.expect(".")
            continue
        p.error(f"unknown statement {p.peek().text!r}")
    if last is None:
        raise ParseError("proof file has no steps")
    return ProofFile(p.theory(), steps[root or last], steps)


# ---------------------------------------------------------------------------
# Category files
#
#   objects a b.
#   arrow f: a -> b.
#   compose g o f = h.
#   presheaf X.
#     a: x1 x2.
#     b: y.
#     f: y |-> x1.          (action X(b) -> X(a) of f: a -> b)
#   end.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CategoryFile:
    category: FinCategory
    presheaves: dict
    subpresheaves: dict


def _parse_category_stream(p: _Parser, stop=()):
    objects, arrows, compose = [], [], {}
    blocks = []
    while p.kind() != "EOF" and p.peek().text not in stop:
        t = p.peek()
        if t.text == "objects":
            p.next()
            while not p.at("."):
                objects.append(p.ident("object").text)
            p.next()
        elif t.text == "arrow":
            p.next()
            name = p.ident("arrow name").text
            p.expect(":")
            src = p.ident("object").text
            if p.kind() != "IMP":
                p.error("expected '->'")
            p.next()
            tgt = p.ident("object").text
            p.expect(".")
            arrows.append((name, src, tgt))
        elif t.text == "compose":
            p.next()
            g = p.ident("arrow").text
            if not p.at("o"):
                p.error("expected 'o'")
            p.next()
            f = p.ident("arrow").text
            p.expect("=")
            h = p.ident("arrow").text
            p.expect(".")
            compose[(g, f)] = h
        elif t.text in ("presheaf", "subpresheaf"):
            blocks.append(_presheaf_block(p))
        else:
            break
    return objects, arrows, compose, blocks


def _presheaf_block(p: _Parser):
    kw = p.next()
    name = p.ident("presheaf name").text
    parent = None
    if kw.text == "subpresheaf":
        p.expect("of")
        parent = p.ident("presheaf").text
    p.expect(".")
    sets, maps = {}, {}
    while not p.at("end"):
        if p.kind() == "EOF":
            p.error(f"presheaf block {name} is not closed with 'end.'")
        key = p.ident("object or arrow").text
        p.expect(":")
        elems = []
        pairs = {}
        while not p.at("."):
            x = p.ident("element").text
            if p.kind() == "MAPSTO":
                p.next()
                pairs[x] = p.ident("element").text
                if p.at(","):
                    p.next()
            else:
                elems.append(x)
        p.next()
        if pairs:
            maps[key] = pairs
        else:
            sets[key] = elems
    p.next()
    p.expect(".")
    return kw.text, name, parent, sets, maps, kw


def _build_category(p, objects, arrows, compose):
    try:
        return FinCategory.build(objects, arrows, compose)
    except Exception as e:
        raise ParseError(f"invalid category: {e}") from None


def _build_blocks(p, C, blocks):
    presheaves, subs = {}, {}
    for kind, name, parent, sets, maps, tok in blocks:
        for o in sets:
            if o not in C.objects:
                p.error(f"unknown object {o} in {name}", tok)
        try:
            if kind == "presheaf":
                presheaves[name] = Presheaf.from_named(C, sets, maps)
            else:
                if parent not in presheaves:
                    p.error(f"unknown presheaf {parent}", tok)
                X = presheaves[parent]
                parts = []
                for c, o in enumerate(C.objects):
                    names = sets.get(o, ())
                    missing = [x for x in names if x not in X.sets[c]]
                    if missing:
                        p.error(f"elements {missing} are not in {parent}({o})", tok)
                    parts.append([X.sets[c].index(x) for x in names])
                subs[name] = Subpresheaf(X, parts)
        except ParseError:
            raise
        except Exception as e:
            raise ParseError(f"{name}: {e}", tok.line, tok.col) from None
    return presheaves, subs


def parse_category(text: str) -> CategoryFile:
    p = _Parser(text)
    objects, arrows, compose, blocks = _parse_category_stream(p)
    if p.kind() != "EOF":
        p.error(f"unknown statement {p.peek().text!r}")
    C = _build_category(p, objects, arrows, compose)
    presheaves, subs = _build_blocks(p, C, blocks)
    return CategoryFile(C, presheaves, subs)


# ---------------------------------------------------------------------------
# Structure files
#
# Propositional:                      Presheaf (category statements first):
#   algebra chain 3.                    objects ... arrow ... presheaf Y. ... end.
#   value p = m.                        sort A = Y.
#                                       subpresheaf R of Y. ... end.
#                                       rel R = R.          (0-ary: rel p = P.)
# Function symbols are not supported in presheaf structure files.
# Algebras: "chain N", "boolean K", or a catalogue name such as "D5.2".
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureSpec:
    kind: str                   # "propositional" | "presheaf"
    algebra: object = None
    values: dict = None
    category_file: CategoryFile = None
    sorts: dict = None
    relations: dict = None


def algebra_by_name(spec: str):
    from ..algebra.catalogue import distributive_lattices
    from ..algebra.lattice import boolean, chain
    spec = spec.strip()
    m = re.fullmatch(r"chain\s*:?\s*(\d+)", spec)
    if m:
        return chain(int(m.group(1)))
    m = re.fullmatch(r"(?:boolean|B)\s*:?\s*(\d+)", spec)
    if m:
        k = int(m.group(1))
        if spec.startswith("B"):
            # catalogue name B<size>
            size = k
            if size & (size - 1):
                raise ParseError(f"no Boolean algebra of size {size}")
            return boolean(size.bit_length() - 1)
        return boolean(k)
    m = re.fullmatch(r"D(\d+)\.(\d+)", spec)
    if m:
        size = int(m.group(1))
        for e in distributive_lattices(size):
            if e.name == spec:
                return e.algebra
    raise ParseError(f"unknown algebra {spec!r} (use chain N, boolean K, or a catalogue name)")


def parse_structure(text: str) -> StructureSpec:
    p = _Parser(text)
    if p.at("algebra"):
        p.next()
        words = []
        while not p.at("."):
            if p.kind() == "EOF":
                p.error("unterminated algebra statement")
            words.append(p.next().text)
        p.next()
        alg = algebra_by_name(" ".join(words))
        values = {}
        while p.kind() != "EOF":
            t = p.expect("value")
            name = p.ident("atom").text
            p.expect("=")
            label = p.ident("element").text
            if label not in alg.labels:
                p.error(f"{label} is not an element of the algebra (elements: {', '.join(alg.labels)})", t)
            values[name] = alg.labels.index(label)
            p.expect(".")
        return StructureSpec("propositional", algebra=alg, values=values)
    objects, arrows, compose, blocks = _parse_category_stream(p, stop=("sort", "rel"))
    sort_of, rel_of = {}, {}
    while p.kind() != "EOF":
        t = p.next()
        if t.text not in ("sort", "rel"):
            p.error(f"unknown statement {t.text!r}", t)
        name = p.ident("symbol").text
        p.expect("=")
        ref = p.ident("block name").text
        p.expect(".")
        (sort_of if t.text == "sort" else rel_of)[name] = (ref, t)
    C = _build_category(p, objects, arrows, compose)
    presheaves, subs = _build_blocks(p, C, blocks)
    cf = CategoryFile(C, presheaves, subs)
    sorts = {}
    for s, (ref, t) in sort_of.items():
        if ref not in presheaves:
            p.error(f"unknown presheaf {ref}", t)
        sorts[s] = presheaves[ref]
    rels = {}
    for r, (ref, t) in rel_of.items():
        if ref not in subs:
            p.error(f"unknown subpresheaf {ref}", t)
        rels[r] = subs[ref]
    return StructureSpec("presheaf", category_file=cf, sorts=sorts, relations=rels)


def structure_for(theory: Theory, spec: StructureSpec):
    """Instantiate a Structure for ``theory``'s signature from a parsed file."""
    from ..semantics.structure import Structure, StructureError
    sig = theory.signature
    try:
        if spec.kind == "propositional":
            missing = [a for a in sig.atoms if a not in spec.values]
            if missing:
                raise ParseError(f"no value given for {', '.join(missing)}")
            return Structure.propositional(sig, spec.algebra, spec.values)
        C = spec.category_file.category
        rels = {}
        for r, arg_sorts in sig.relations.items():
            if r not in spec.relations:
                raise ParseError(f"no interpretation for relation {r}")
            rels[r] = spec.relations[r].parts
        if sig.functions:
            raise ParseError("function symbols are not supported in presheaf structure files")
        return Structure.presheaf(sig, C, spec.sorts, rels)
    except (StructureError, WellFormednessError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e)) from None

