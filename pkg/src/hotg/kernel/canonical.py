"""Canonical line format for signatures, and its re-checking reader.

One record per line, LF-terminated, after the header ``hotg-canonical 1``::

    def NAME ARITY transparent|opaque TYPE BODY
    thm NAME ARITY STATEMENT PROOF
    trusted NAME ARITY STATEMENT

Types, terms and proofs are fully parenthesized prefix expressions with de
Bruijn indices, single spaces between tokens.  The reader rebuilds the
signature through the ordinary ``add_*`` calls, so every proof is checked
again, and it rejects any line that does not re-serialize to itself.
"""

from __future__ import annotations

import hashlib
import re
from typing import Iterator, Union

from ..errors import ParseError
from ..terms import (
    All, App, Arrow, Const, ConstName, IND, Imp, Lam, PROP, Ref, Term, TVar, Type, Var,
)
from .._core import ALL, APP, CONST, IMP, LAM, REF, T_ARROW, T_IND, T_PROP, VAR
from .proof import AllElim, AllIntro, Hyp, ImpElim, ImpIntro, Known, Proof
from .signature import Definition, Opacity, Provenance, Signature, Theorem

HEADER = "hotg-canonical 1"
_INDEX_RE = re.compile(r"0|[1-9][0-9]*")


# -- writing --------------------------------------------------------------------


def type_sexp(ty: Type) -> str:
    tag = ty.tag
    if tag == T_PROP:
        return "o"
    if tag == T_IND:
        return "i"
    if tag == T_ARROW:
        return f"(-> {type_sexp(ty.domain)} {type_sexp(ty.codomain)})"
    return f"(t {ty.index})"


def _types_suffix(tys) -> str:
    return "".join(" " + type_sexp(a) for a in tys)


def term_sexp(t: Term) -> str:
    out: list[str] = []
    _term(t, out)
    return "".join(out)


def _term(t: Term, out: list) -> None:
    tag = t.tag
    if tag == VAR:
        out.append(f"(v {t.index})")
    elif tag == CONST:
        out.append(f"(c {t.name}{_types_suffix(t.type_args)})")
    elif tag == REF:
        out.append(f"(r {t.name}{_types_suffix(t.type_args)})")
    elif tag == APP:
        out.append("(App ")
        _term(t.fn, out)
        out.append(" ")
        _term(t.arg, out)
        out.append(")")
    elif tag == LAM or tag == ALL:
        out.append("(Lam " if tag == LAM else "(All ")
        out.append(type_sexp(t.domain))
        out.append(" ")
        _term(t.body, out)
        out.append(")")
    elif tag == IMP:
        out.append("(Imp ")
        _term(t.antecedent, out)
        out.append(" ")
        _term(t.consequent, out)
        out.append(")")


def proof_sexp(p: Proof) -> str:
    out: list[str] = []
    _proof(p, out)
    return "".join(out)


def _proof(p: Proof, out: list) -> None:
    if isinstance(p, Hyp):
        out.append(f"(Hyp {p.name})")
    elif isinstance(p, Known):
        out.append(f"(Known {p.name}{_types_suffix(p.type_args)})")
    elif isinstance(p, ImpIntro):
        out.append(f"(ImpI {p.hyp_name} ")
        _term(p.assumed, out)
        out.append(" ")
        _proof(p.body, out)
        out.append(")")
    elif isinstance(p, ImpElim):
        out.append("(ImpE ")
        _proof(p.major, out)
        out.append(" ")
        _proof(p.minor, out)
        out.append(")")
    elif isinstance(p, AllIntro):
        out.append(f"(AllI {type_sexp(p.domain)} ")
        _proof(p.body, out)
        out.append(")")
    elif isinstance(p, AllElim):
        out.append("(AllE ")
        _proof(p.fn, out)
        out.append(" ")
        _term(p.witness, out)
        out.append(")")
    else:
        raise TypeError(f"not a proof term: {p!r}")


def entry_line(entry: Union[Definition, Theorem]) -> str:
    if isinstance(entry, Definition):
        return (f"def {entry.name} {entry.ty_arity} {entry.opacity.value} "
                f"{type_sexp(entry.type)} {term_sexp(entry.body)}")
    if entry.provenance is Provenance.TRUSTED:
        return f"trusted {entry.name} {entry.ty_arity} {term_sexp(entry.statement)}"
    return (f"thm {entry.name} {entry.ty_arity} {term_sexp(entry.statement)} "
            f"{proof_sexp(entry.proof)}")


def export_entries(entries) -> bytes:
    lines = [HEADER]
    lines.extend(entry_line(e) for e in entries)
    return ("\n".join(lines) + "\n").encode("utf-8")


def export_canonical(sig: Signature) -> bytes:
    """Deterministic serialization of every entry of ``sig``, in order."""
    return export_entries(sig.entries)


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def theorem_digest(thm: Theorem) -> str:
    """Identity of what was proved: name, arity and statement (not the proof)."""
    return digest(f"{thm.name} {thm.ty_arity} {term_sexp(thm.statement)}".encode("utf-8"))


# -- reading --------------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str, line: int):
        self.toks = re.findall(r"\(|\)|[^\s()]+", text)
        self.pos = 0
        self.line = line

    def error(self, msg: str) -> ParseError:
        return ParseError(f"{msg} (token {self.pos})", self.line, 1)

    def next(self) -> str:
        if self.pos >= len(self.toks):
            raise self.error("unexpected end of record")
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise self.error(f"expected {tok!r}, got {got!r}")

    def index(self) -> int:
        tok = self.next()
        if not _INDEX_RE.fullmatch(tok):
            raise self.error(f"bad index {tok!r}")
        return int(tok)

    def done(self) -> bool:
        return self.pos >= len(self.toks)


def _read_type(ts: _Tokens) -> Type:
    tok = ts.next()
    if tok == "o":
        return PROP
    if tok == "i":
        return IND
    if tok != "(":
        raise ts.error(f"bad type token {tok!r}")
    head = ts.next()
    if head == "->":
        a = _read_type(ts)
        b = _read_type(ts)
        ts.expect(")")
        return Arrow(a, b)
    if head == "t":
        k = ts.index()
        ts.expect(")")
        try:
            return TVar(k)
        except Exception as e:
            raise ts.error(str(e)) from e
    raise ts.error(f"bad type constructor {head!r}")


def _read_type_args(ts: _Tokens) -> list[Type]:
    args = []
    while ts.peek() != ")":
        args.append(_read_type(ts))
    ts.expect(")")
    return args


def _read_term(ts: _Tokens) -> Term:
    ts.expect("(")
    head = ts.next()
    if head == "v":
        k = ts.index()
        ts.expect(")")
        return Var(k)
    if head == "c":
        name = ts.next()
        if name not in ConstName.__members__:
            raise ts.error(f"unknown constant {name!r}")
        return Const(name, _read_type_args(ts))
    if head == "r":
        name = ts.next()
        return Ref(name, _read_type_args(ts))
    if head == "App":
        f = _read_term(ts)
        a = _read_term(ts)
        ts.expect(")")
        return App(f, a)
    if head in ("Lam", "All"):
        ty = _read_type(ts)
        body = _read_term(ts)
        ts.expect(")")
        return Lam(ty, body) if head == "Lam" else All(ty, body)
    if head == "Imp":
        a = _read_term(ts)
        b = _read_term(ts)
        ts.expect(")")
        return Imp(a, b)
    raise ts.error(f"bad term constructor {head!r}")


def _read_proof(ts: _Tokens) -> Proof:
    ts.expect("(")
    head = ts.next()
    if head == "Hyp":
        name = ts.next()
        ts.expect(")")
        return Hyp(name)
    if head == "Known":
        name = ts.next()
        return Known(name, tuple(_read_type_args(ts)))
    if head == "ImpI":
        name = ts.next()
        a = _read_term(ts)
        body = _read_proof(ts)
        ts.expect(")")
        return ImpIntro(name, a, body)
    if head == "ImpE":
        p = _read_proof(ts)
        q = _read_proof(ts)
        ts.expect(")")
        return ImpElim(p, q)
    if head == "AllI":
        ty = _read_type(ts)
        body = _read_proof(ts)
        ts.expect(")")
        return AllIntro(ty, body)
    if head == "AllE":
        p = _read_proof(ts)
        w = _read_term(ts)
        ts.expect(")")
        return AllElim(p, w)
    raise ts.error(f"bad proof constructor {head!r}")


def parse_entries(data: bytes) -> Iterator[tuple[int, str, tuple]]:
    """Yield ``(line_no, kind, fields)`` records without checking anything."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"not UTF-8: {e}", 1, 1) from e
    if not text.endswith("\n"):
        raise ParseError("missing final newline", text.count("\n") + 1, 1)
    lines = text[:-1].split("\n")
    if lines[0] != HEADER:
        raise ParseError(f"expected header {HEADER!r}", 1, 1)
    for no, line in enumerate(lines[1:], start=2):
        ts = _Tokens(line, no)
        kind = ts.next()
        if kind not in ("def", "thm", "trusted"):
            raise ts.error(f"unknown record kind {kind!r}")
        name = ts.next()
        arity = ts.index()
        if kind == "def":
            opacity = ts.next()
            if opacity not in ("transparent", "opaque"):
                raise ts.error(f"bad opacity {opacity!r}")
            fields = (name, arity, _read_type(ts), _read_term(ts), Opacity(opacity))
        elif kind == "thm":
            fields = (name, arity, _read_term(ts), _read_proof(ts))
        else:
            fields = (name, arity, _read_term(ts))
        if not ts.done():
            raise ts.error("trailing tokens")
        yield no, kind, fields, line


def import_canonical(data: bytes, trust: bool = False) -> Signature:
    """Rebuild a signature from canonical bytes, re-checking every proof."""
    sig = Signature(allow_trusted=trust)
    for no, kind, fields, line in parse_entries(data):
        if kind == "def":
            sig = sig.add_definition(*fields)
        elif kind == "thm":
            sig = sig.add_theorem(*fields)
        else:
            sig = sig.add_trusted_import(*fields)
        if entry_line(sig.entries[-1]) != line:
            raise ParseError("record is not in canonical form", no, 1)
    return sig
