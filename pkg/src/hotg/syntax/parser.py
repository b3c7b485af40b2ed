"""Recursive-descent parser producing the surface AST.

Precedence, loosest first: binders, ``->`` (right), ``<->`` (none),
``\\/`` and ``/\\`` (left), ``~``, the relations ``:e /:e c= = <>`` (none),
application, atoms.  A binder may start any operand and then extends as far
right as possible; application arguments must be atoms.
"""

from __future__ import annotations

from typing import Optional

from ..errors import DuplicateDeclaration, ParseError
from .lexer import Token, tokenize
from .surface import (
    Apply, ApplyStep, Article, Assume, Binder, Cases, Claim, DefinitionDecl, Destruct,
    Exact, ImportDecl, Infix, Let, Name, Not, Prove, Rewrite, SetLocal, SetPair,
    SetRepl, SetReplSep, SetSep, SetSing, TheoremDecl, TrustedDecl, TyArrow, TyName,
    Witness, REL_OPS,
)

BINDERS = ("fun", "forall", "exists", "some")
MAX_TYPE_VARS = 3


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers -------------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def pos(self, tok: Optional[Token] = None):
        tok = tok or self.tok
        return (tok.line, tok.col)

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def at(self, value: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "kw") and t.value == value

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.at(value):
            raise self.error(f"expected {value!r}, found {self.describe()}")
        t = self.tok
        self.i += 1
        return t

    def describe(self) -> str:
        t = self.tok
        return "end of input" if t.kind == "eof" else repr(t.value)

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident":
            raise self.error(f"expected an identifier, found {self.describe()}")
        self.i += 1
        return t.value

    def at_eof(self) -> bool:
        return self.tok.kind == "eof"

    # -- types --------------------------------------------------------------------

    def parse_type(self):
        start = self.tok
        dom = self.type_atom()
        if self.accept("->"):
            return TyArrow(dom, self.parse_type(), pos=self.pos(start))
        return dom

    def type_atom(self):
        t = self.tok
        if self.accept("("):
            ty = self.parse_type()
            self.expect(")")
            return ty
        if t.kind == "kw" and t.value in ("set", "prop"):
            self.i += 1
            return TyName(t.value, pos=self.pos(t))
        if t.kind == "ident":
            self.i += 1
            return TyName(t.value, pos=self.pos(t))
        raise self.error(f"expected a type, found {self.describe()}")

    # -- terms --------------------------------------------------------------------

    def parse_term(self):
        return self.parse_imp()

    def at_binder(self) -> bool:
        t = self.tok
        return t.kind == "kw" and t.value in BINDERS

    def parse_imp(self):
        if self.at_binder():
            return self.parse_binder()
        start = self.tok
        left = self.parse_iff()
        if self.accept("->"):
            return Infix("->", left, self.parse_imp(), pos=self.pos(start))
        return left

    def parse_iff(self):
        if self.at_binder():
            return self.parse_binder()
        start = self.tok
        left = self.parse_or()
        if self.accept("<->"):
            return Infix("<->", left, self.parse_or(), pos=self.pos(start))
        return left

    def parse_or(self):
        return self._left_assoc("\\/", self.parse_and)

    def parse_and(self):
        return self._left_assoc("/\\", self.parse_not)

    def _left_assoc(self, op, operand):
        if self.at_binder():
            return self.parse_binder()
        start = self.tok
        left = operand()
        while self.accept(op):
            left = Infix(op, left, operand(), pos=self.pos(start))
        return left

    def parse_not(self):
        if self.at_binder():
            return self.parse_binder()
        start = self.tok
        if self.accept("~"):
            return Not(self.parse_not(), pos=self.pos(start))
        return self.parse_rel()

    def parse_rel(self):
        start = self.tok
        left = self.parse_app()
        t = self.tok
        if t.kind == "sym" and t.value in REL_OPS:
            self.i += 1
            right = self.parse_binder() if self.at_binder() else self.parse_app()
            return Infix(t.value, left, right, pos=self.pos(start))
        return left

    def at_atom_start(self) -> bool:
        t = self.tok
        return t.kind == "ident" or (t.kind == "sym" and t.value in ("(", "{"))

    def parse_app(self):
        start = self.tok
        if not self.at_atom_start():
            raise self.error(f"expected a term, found {self.describe()}")
        t = self.parse_atom()
        while self.at_atom_start():
            t = Apply(t, self.parse_atom(), pos=self.pos(start))
        return t

    def parse_atom(self):
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            targs = None
            if self.accept("["):
                targs = [self.parse_type()]
                while self.accept(","):
                    targs.append(self.parse_type())
                self.expect("]")
                targs = tuple(targs)
            return Name(t.value, targs, pos=self.pos(t))
        if self.accept("("):
            inner = self.parse_term()
            self.expect(")")
            return inner
        if self.accept("{"):
            return self.parse_braces(t)
        raise self.error(f"expected a term, found {self.describe()}")

    def parse_braces(self, open_tok: Token):
        p = self.pos(open_tok)
        first = self.parse_term()
        if self.accept("}"):
            return SetSing(first, pos=p)
        if self.accept(","):
            second = self.parse_term()
            self.expect("}")
            return SetPair(first, second, pos=p)
        self.expect("|")
        if (isinstance(first, Infix) and first.op == ":e" and isinstance(first.left, Name)
                and first.left.type_args is None):
            pred = self.parse_term()
            self.expect("}")
            return SetSep(first.left.name, first.right, pred, pos=p)
        var = self.ident()
        self.expect(":e")
        dom = self.parse_term()
        if self.accept("such"):
            self.expect("that")
            pred = self.parse_term()
            self.expect("}")
            return SetReplSep(first, var, dom, pred, pos=p)
        self.expect("}")
        return SetRepl(first, var, dom, pos=p)

    def parse_binder(self):
        kw = self.tok
        self.i += 1
        kind = kw.value
        sep = "=>" if kind == "fun" else ","
        groups = []
        if self.at("("):
            while self.accept("("):
                groups.append(self.binder_group(kind, ")"))
                self.expect(")")
        else:
            groups.append(self.binder_group(kind, sep))
        self.expect(sep)
        body = self.parse_term()
        for names, ty, bound in reversed(groups):
            body = Binder(kind, names, ty, bound, body, pos=self.pos(kw))
        return body

    def binder_group(self, kind: str, closer: str):
        names = [self.ident()]
        while self.tok.kind == "ident":
            names.append(self.ident())
        ty = bound = None
        if self.accept(":"):
            ty = self.parse_type()
        elif self.at(":e") or self.at("c="):
            if kind == "fun":
                raise self.error("'fun' binders cannot be bounded")
            rel = self.tok.value
            self.i += 1
            bound = (rel, self.parse_term())
        return tuple(names), ty, bound

    # -- scripts ------------------------------------------------------------------

    def parse_block(self):
        self.expect("{")
        steps = []
        while not self.accept("}"):
            steps.append(self.parse_step())
        return tuple(steps)

    def parse_steps_until(self, closer: str):
        steps = []
        while not self.at(closer):
            if self.at_eof():
                raise self.error(f"expected {closer!r} before end of input")
            steps.append(self.parse_step())
        return tuple(steps)

    def parse_step(self):
        t = self.tok
        p = self.pos(t)
        if t.kind != "kw":
            raise self.error(f"expected a proof step, found {self.describe()}")
        kw = t.value
        self.i += 1
        if kw == "let":
            names = [self.ident()]
            while self.tok.kind == "ident":
                names.append(self.ident())
            ty = self.parse_type() if self.accept(":") else None
            self.expect(".")
            return Let(tuple(names), ty, pos=p)
        if kw == "assume":
            name = self.ident()
            prop = self.parse_term() if self.accept(":") else None
            self.expect(".")
            return Assume(name, prop, pos=p)
        if kw == "claim":
            name = self.ident()
            self.expect(":")
            prop = self.parse_term()
            self.expect(".")
            return Claim(name, prop, self.parse_block(), pos=p)
        if kw == "set":
            name = self.ident()
            ty = self.parse_type() if self.accept(":") else None
            self.expect(":=")
            body = self.parse_term()
            self.expect(".")
            return SetLocal(name, ty, body, pos=p)
        if kw == "exact":
            e = self.parse_term()
            self.expect(".")
            return Exact(e, pos=p)
        if kw == "apply":
            e = self.parse_term()
            self.expect(".")
            blocks = []
            while self.at("{"):
                blocks.append(self.parse_block())
            return ApplyStep(e, tuple(blocks), pos=p)
        if kw == "witness":
            e = self.parse_term()
            self.expect(".")
            return Witness(e, pos=p)
        if kw == "cases":
            e = self.parse_term()
            self.expect("as")
            h1, h2 = self.ident(), self.ident()
            self.expect(".")
            return Cases(e, h1, h2, self.parse_block(), self.parse_block(), pos=p)
        if kw == "prove":
            e = self.parse_term()
            self.expect(".")
            return Prove(e, pos=p)
        if kw == "destruct":
            e = self.parse_term()
            self.expect("as")
            names = (self.ident(), self.ident())
            self.expect(".")
            return Destruct(e, names, pos=p)
        if kw == "rewrite":
            rev = self.accept("<-")
            e = self.parse_term()
            self.expect(".")
            return Rewrite(e, rev, pos=p)
        self.i -= 1
        raise self.error(f"expected a proof step, found {self.describe()}")

    # -- articles -----------------------------------------------------------------

    def tyvars(self):
        names = []
        if self.accept("["):
            while not self.accept("]"):
                names.append(self.ident())
            if len(names) > MAX_TYPE_VARS:
                raise self.error(f"at most {MAX_TYPE_VARS} type variables")
            if len(set(names)) != len(names):
                raise self.error("repeated type variable")
        return tuple(names)

    def parse_decl(self):
        t = self.tok
        p = self.pos(t)
        if self.accept("Import"):
            s = self.tok
            if s.kind != "string":
                raise self.error("expected a quoted path after Import")
            self.i += 1
            self.expect(".")
            return ImportDecl(s.value, pos=p)
        opaque = self.accept("Opaque")
        if opaque or self.at("Definition"):
            self.expect("Definition")
            name = self.ident()
            tvs = self.tyvars()
            self.expect(":")
            ty = self.parse_type()
            self.expect(":=")
            body = self.parse_term()
            self.expect(".")
            return DefinitionDecl(name, tvs, ty, body, opaque, pos=p)
        if self.accept("Theorem"):
            name = self.ident()
            tvs = self.tyvars()
            self.expect(":")
            stmt = self.parse_term()
            self.expect(".")
            self.expect("Proof")
            self.expect(".")
            steps = self.parse_steps_until("Qed")
            self.expect("Qed")
            self.expect(".")
            return TheoremDecl(name, tvs, stmt, steps, pos=p)
        if self.accept("Trusted"):
            name = self.ident()
            tvs = self.tyvars()
            self.expect(":")
            stmt = self.parse_term()
            self.expect(".")
            return TrustedDecl(name, tvs, stmt, pos=p)
        raise self.error(f"expected a declaration, found {self.describe()}")

    def parse_article(self):
        decls = []
        seen = set()
        while not self.at_eof():
            d = self.parse_decl()
            name = getattr(d, "name", None)
            if name is not None:
                if name in seen:
                    raise DuplicateDeclaration(f"{name!r} declared twice", *d.pos)
                seen.add(name)
            decls.append(d)
        return Article(tuple(decls))

    def finish(self):
        if not self.at_eof():
            raise self.error(f"unexpected {self.describe()} after end of term")


def parse_term(text: str):
    p = Parser(text)
    t = p.parse_term()
    p.finish()
    return t


def parse_type(text: str):
    p = Parser(text)
    t = p.parse_type()
    p.finish()
    return t


def parse_article(text: str) -> Article:
    return Parser(text).parse_article()


def parse_script(text: str):
    p = Parser(text)
    steps = []
    while not p.at_eof():
        steps.append(p.parse_step())
    return tuple(steps)
