"""Named surface syntax: AST nodes for types, terms, script steps and
articles, plus a precedence-aware formatter that the parser inverts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Pos = Optional[tuple[int, int]]


def _pos():
    return field(default=None, compare=False, repr=False)


# -- types ------------------------------------------------------------------------


@dataclass(frozen=True)
class TyName:
    name: str  # "set", "prop" or a type variable
    pos: Pos = _pos()


@dataclass(frozen=True)
class TyArrow:
    domain: "SType"
    codomain: "SType"
    pos: Pos = _pos()


SType = Union[TyName, TyArrow]


# -- terms ------------------------------------------------------------------------


@dataclass(frozen=True)
class Name:
    name: str
    type_args: Optional[tuple[SType, ...]] = None
    pos: Pos = _pos()


@dataclass(frozen=True)
class Apply:
    fn: "STerm"
    arg: "STerm"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Binder:
    """``kind`` is fun/forall/exists/some; ``bound`` is ``(":e" | "c=", set)``."""

    kind: str
    names: tuple[str, ...]
    type: Optional[SType]
    bound: Optional[tuple[str, "STerm"]]
    body: "STerm"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Infix:
    op: str
    left: "STerm"
    right: "STerm"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Not:
    arg: "STerm"
    pos: Pos = _pos()


@dataclass(frozen=True)
class SetRepl:
    """``{e | x :e X}``"""

    expr: "STerm"
    var: str
    set: "STerm"
    pos: Pos = _pos()


@dataclass(frozen=True)
class SetSep:
    """``{x :e X | p}``"""

    var: str
    set: "STerm"
    pred: "STerm"
    pos: Pos = _pos()


@dataclass(frozen=True)
class SetReplSep:
    """``{e | x :e X such that p}``"""

    expr: "STerm"
    var: str
    set: "STerm"
    pred: "STerm"
    pos: Pos = _pos()


@dataclass(frozen=True)
class SetPair:
    left: "STerm"
    right: "STerm"
    pos: Pos = _pos()


@dataclass(frozen=True)
class SetSing:
    elem: "STerm"
    pos: Pos = _pos()


STerm = Union[Name, Apply, Binder, Infix, Not, SetRepl, SetSep, SetReplSep, SetPair, SetSing]


# -- script steps -------------------------------------------------------------------


@dataclass(frozen=True)
class Let:
    names: tuple[str, ...]
    type: Optional[SType]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Assume:
    name: str
    prop: Optional[STerm]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Claim:
    name: str
    prop: STerm
    proof: tuple["Step", ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class SetLocal:
    name: str
    type: Optional[SType]
    body: STerm
    pos: Pos = _pos()


@dataclass(frozen=True)
class Exact:
    expr: STerm
    pos: Pos = _pos()


@dataclass(frozen=True)
class ApplyStep:
    expr: STerm
    blocks: tuple[tuple["Step", ...], ...] = ()
    pos: Pos = _pos()


@dataclass(frozen=True)
class Witness:
    term: STerm
    pos: Pos = _pos()


@dataclass(frozen=True)
class Cases:
    expr: STerm
    left_name: str
    right_name: str
    left: tuple["Step", ...]
    right: tuple["Step", ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Prove:
    prop: STerm
    pos: Pos = _pos()


@dataclass(frozen=True)
class Destruct:
    expr: STerm
    names: tuple[str, str]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Rewrite:
    expr: STerm
    reverse: bool = False
    pos: Pos = _pos()


Step = Union[Let, Assume, Claim, SetLocal, Exact, ApplyStep, Witness, Cases, Prove,
             Destruct, Rewrite]


# -- articles -----------------------------------------------------------------------


@dataclass(frozen=True)
class ImportDecl:
    path: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class DefinitionDecl:
    name: str
    tyvars: tuple[str, ...]
    type: SType
    body: STerm
    opaque: bool = False
    pos: Pos = _pos()


@dataclass(frozen=True)
class TheoremDecl:
    name: str
    tyvars: tuple[str, ...]
    statement: STerm
    script: tuple[Step, ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class TrustedDecl:
    name: str
    tyvars: tuple[str, ...]
    statement: STerm
    pos: Pos = _pos()


Decl = Union[ImportDecl, DefinitionDecl, TheoremDecl, TrustedDecl]


@dataclass(frozen=True)
class Article:
    decls: tuple[Decl, ...] = ()

    @property
    def imports(self) -> list[str]:
        return [d.path for d in self.decls if isinstance(d, ImportDecl)]


# -- formatting ---------------------------------------------------------------------

P_BINDER, P_IMP, P_IFF, P_OR, P_AND, P_NOT, P_REL, P_APP, P_ATOM = range(9)

INFIX = {
    "->": (P_IMP, "right"),
    "<->": (P_IFF, "none"),
    "\\/": (P_OR, "left"),
    "/\\": (P_AND, "left"),
    ":e": (P_REL, "none"),
    "/:e": (P_REL, "none"),
    "c=": (P_REL, "none"),
    "=": (P_REL, "none"),
    "<>": (P_REL, "none"),
}
REL_OPS = frozenset({":e", "/:e", "c=", "=", "<>"})


def format_type(ty: SType, prec: int = 0) -> str:
    if isinstance(ty, TyName):
        return ty.name
    s = f"{format_type(ty.domain, 1)} -> {format_type(ty.codomain, 0)}"
    return f"({s})" if prec > 0 else s


def _type_args(args) -> str:
    if args is None:
        return ""
    return "[" + ", ".join(format_type(a) for a in args) + "]"


def format_term(t: STerm) -> str:
    return _fmt(t, 0, True)


def _paren(s: str, yes: bool) -> str:
    return f"({s})" if yes else s


def _fmt(t: STerm, prec: int, rightmost: bool) -> str:
    if isinstance(t, Name):
        return t.name + _type_args(t.type_args)
    if isinstance(t, Apply):
        s = f"{_fmt(t.fn, P_APP, False)} {_fmt(t.arg, P_ATOM, False)}"
        return _paren(s, prec > P_APP)
    if isinstance(t, Infix):
        p, assoc = INFIX[t.op]
        wrap = prec > p
        right_edge = True if wrap else rightmost
        lp = p if assoc == "left" else p + 1
        rp = p if assoc == "right" else p + 1
        if t.op in REL_OPS:
            lp = rp = P_APP
        s = f"{_fmt(t.left, lp, False)} {t.op} {_fmt(t.right, rp, right_edge)}"
        return _paren(s, wrap)
    if isinstance(t, Not):
        wrap = prec > P_NOT
        s = f"~ {_fmt(t.arg, P_NOT, True if wrap else rightmost)}"
        return _paren(s, wrap)
    if isinstance(t, Binder):
        names = " ".join(t.names)
        if t.bound is not None:
            head = f"{names} {t.bound[0]} {_fmt(t.bound[1], 0, False)}"
        elif t.type is not None:
            head = f"{names}:{format_type(t.type)}"
        else:
            head = names
        sep = " =>" if t.kind == "fun" else ","
        s = f"{t.kind} {head}{sep} {_fmt(t.body, 0, True)}"
        return _paren(s, not rightmost)
    if isinstance(t, SetRepl):
        return f"{{{_fmt(t.expr, 0, True)} | {t.var} :e {_fmt(t.set, 0, True)}}}"
    if isinstance(t, SetSep):
        return f"{{{t.var} :e {_fmt(t.set, 0, True)} | {_fmt(t.pred, 0, True)}}}"
    if isinstance(t, SetReplSep):
        return (f"{{{_fmt(t.expr, 0, True)} | {t.var} :e {_fmt(t.set, 0, False)}"
                f" such that {_fmt(t.pred, 0, True)}}}")
    if isinstance(t, SetPair):
        return f"{{{_fmt(t.left, 0, True)}, {_fmt(t.right, 0, True)}}}"
    if isinstance(t, SetSing):
        return f"{{{_fmt(t.elem, 0, True)}}}"
    raise TypeError(f"not a surface term: {t!r}")


def _block(steps, indent: str) -> str:
    inner = "".join(format_step(s, indent + "  ") for s in steps)
    return f"{indent}{{\n{inner}{indent}}}\n"


def format_step(step: Step, indent: str = "  ") -> str:
    if isinstance(step, Let):
        ty = f" : {format_type(step.type)}" if step.type is not None else ""
        return f"{indent}let {' '.join(step.names)}{ty}.\n"
    if isinstance(step, Assume):
        prop = f": {format_term(step.prop)}" if step.prop is not None else ""
        return f"{indent}assume {step.name}{prop}.\n"
    if isinstance(step, Claim):
        return (f"{indent}claim {step.name}: {format_term(step.prop)}.\n"
                + _block(step.proof, indent))
    if isinstance(step, SetLocal):
        ty = f" : {format_type(step.type)}" if step.type is not None else ""
        return f"{indent}set {step.name}{ty} := {format_term(step.body)}.\n"
    if isinstance(step, Exact):
        return f"{indent}exact {format_term(step.expr)}.\n"
    if isinstance(step, ApplyStep):
        return (f"{indent}apply {format_term(step.expr)}.\n"
                + "".join(_block(b, indent) for b in step.blocks))
    if isinstance(step, Witness):
        return f"{indent}witness {format_term(step.term)}.\n"
    if isinstance(step, Cases):
        return (f"{indent}cases {_fmt(step.expr, 0, False)} as {step.left_name} "
                f"{step.right_name}.\n" + _block(step.left, indent) + _block(step.right, indent))
    if isinstance(step, Prove):
        return f"{indent}prove {format_term(step.prop)}.\n"
    if isinstance(step, Destruct):
        return f"{indent}destruct {_fmt(step.expr, 0, False)} as {' '.join(step.names)}.\n"
    if isinstance(step, Rewrite):
        arrow = "<- " if step.reverse else ""
        return f"{indent}rewrite {arrow}{format_term(step.expr)}.\n"
    raise TypeError(f"not a script step: {step!r}")


def _tyvars(names) -> str:
    return f" [{' '.join(names)}]" if names else ""


def format_decl(d: Decl) -> str:
    if isinstance(d, ImportDecl):
        return f'Import "{d.path}".\n'
    if isinstance(d, DefinitionDecl):
        kw = "Opaque Definition" if d.opaque else "Definition"
        return (f"{kw} {d.name}{_tyvars(d.tyvars)} : {format_type(d.type)}\n"
                f"  := {format_term(d.body)}.\n")
    if isinstance(d, TheoremDecl):
        body = "".join(format_step(s) for s in d.script)
        return (f"Theorem {d.name}{_tyvars(d.tyvars)} : {format_term(d.statement)}.\n"
                f"Proof.\n{body}Qed.\n")
    if isinstance(d, TrustedDecl):
        return f"Trusted {d.name}{_tyvars(d.tyvars)} : {format_term(d.statement)}.\n"
    raise TypeError(f"not a declaration: {d!r}")


def format_article(a: Article) -> str:
    return "\n".join(format_decl(d) for d in a.decls)
