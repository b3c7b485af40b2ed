"""Kernel terms back to readable, re-parseable text.

Terms are first turned into surface AST (recognizing every notation the
desugarer produces) and then formatted.  Bound variables get fresh names
x, x0, x1, ... that avoid every global name and every enclosing binder.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .._core import ALL, APP, CONST, IMP, LAM, REF, T_ARROW, T_IND, T_PROP, VAR
from ..terms import IND, Term, Type, lift, occurs, spine
from .lexer import KEYWORDS
from .surface import (
    Apply, Binder, Infix, Name, Not, SetPair, SetRepl, SetReplSep, SetSep, SetSing,
    TyArrow, TyName, format_term, format_type,
)

DEFAULT_TYVARS = ("A", "B", "C")


def type_to_surface(ty: Type, tyvars: tuple[str, ...] = DEFAULT_TYVARS):
    tag = ty.tag
    if tag == T_PROP:
        return TyName("prop")
    if tag == T_IND:
        return TyName("set")
    if tag == T_ARROW:
        return TyArrow(type_to_surface(ty.domain, tyvars), type_to_surface(ty.codomain, tyvars))
    return TyName(tyvars[ty.index])


def print_type(ty: Type, tyvars: tuple[str, ...] = DEFAULT_TYVARS) -> str:
    return format_type(type_to_surface(ty, tyvars))


class Delaborator:
    def __init__(self, reserved: Iterable[str] = (), tyvars: tuple[str, ...] = DEFAULT_TYVARS):
        self.reserved = set(reserved) | set(KEYWORDS) | set(tyvars)
        self.tyvars = tyvars

    def fresh(self, stack: list[str]) -> str:
        taken = self.reserved.union(stack)
        if "x" not in taken:
            return "x"
        i = 0
        while f"x{i}" in taken:
            i += 1
        return f"x{i}"

    def ty(self, ty: Type):
        return type_to_surface(ty, self.tyvars)

    def targs(self, args):
        return tuple(self.ty(a) for a in args) if args else None

    # -- recognition helpers ---------------------------------------------------------

    @staticmethod
    def _is_ref(t: Term, name: str) -> bool:
        return t.tag == REF and t.name == name

    @staticmethod
    def _bound_guard(body: Term):
        """Match ``rel (Var 0) S`` with Var 0 not free in S; return (rel, S, rest)."""
        if body.tag != APP:
            return None
        head, args = spine(body)
        if len(args) != 2 or args[0].tag != VAR or args[0].index != 0 or occurs(args[1], 0):
            return None
        if head.tag == CONST and head.name == "In":
            return ":e", args[1]
        if head.tag == REF and head.name == "Subq" and not head.type_args:
            return "c=", args[1]
        return None

    def _bounded(self, t: Term, kind: str):
        """For ``forall`` t is the Imp body; otherwise an ``and`` application."""
        if kind == "forall":
            if t.tag != IMP:
                return None
            guard, rest = t.antecedent, t.consequent
        else:
            head, args = spine(t)
            if not (self._is_ref(head, "and") and not head.type_args and len(args) == 2):
                return None
            guard, rest = args
        m = self._bound_guard(guard)
        if m is None:
            return None
        return m[0], lift(m[1], 0, -1), rest

    # -- main -------------------------------------------------------------------------

    def term(self, t: Term, stack: list[str]):
        tag = t.tag
        if tag == VAR:
            return Name(stack[-1 - t.index])
        if tag == CONST or tag == REF:
            return Name(str(t.name), self.targs(t.type_args))
        if tag == IMP:
            return Infix("->", self.term(t.antecedent, stack), self.term(t.consequent, stack))
        if tag == LAM:
            return self.binder("fun", t.domain, t.body, stack, None)
        if tag == ALL:
            if t.domain == IND:
                b = self._bounded(t.body, "forall")
                if b is not None:
                    return self.binder("forall", IND, b[2], stack, b[:2])
            return self.binder("forall", t.domain, t.body, stack, None)
        return self.application(t, stack)

    def binder(self, kind: str, dom: Type, body: Term, stack, bound):
        name = self.fresh(stack)
        sbound = None
        if bound is not None:
            sbound = (bound[0], self.term(bound[1], stack))
        stack.append(name)
        try:
            sbody = self.term(body, stack)
        finally:
            stack.pop()
        return Binder(kind, (name,), None if bound else self.ty(dom), sbound, sbody)

    def lam_body(self, lam: Term, stack):
        name = self.fresh(stack)
        stack.append(name)
        try:
            return name, self.term(lam.body, stack)
        finally:
            stack.pop()

    def application(self, t: Term, stack):
        head, args = spine(t)
        used, node = self.notation(head, args, stack)
        if node is None:
            node = self.term(head, stack)
            used = 0
        for a in args[used:]:
            node = Apply(node, self.term(a, stack))
        return node

    def notation(self, head: Term, args, stack):
        """Return (number of args consumed, surface node) or (0, None)."""
        n = len(args)
        if head.tag == CONST:
            name = head.name
            if name == "In" and n >= 2:
                return 2, Infix(":e", self.term(args[0], stack), self.term(args[1], stack))
            if name == "Repl" and n >= 2 and args[1].tag == LAM:
                var, e = self.lam_body(args[1], stack)
                return 2, SetRepl(e, var, self.term(args[0], stack))
            if name == "Eps" and n >= 1 and args[0].tag == LAM:
                return 1, self.quantifier("some", args[0], stack)
            return 0, None
        if head.tag != REF:
            return 0, None
        name = head.name
        if head.type_args:
            if name == "eq" and n >= 2:
                return 2, Infix("=", self.term(args[0], stack), self.term(args[1], stack))
            if name == "ex" and n >= 1 and args[0].tag == LAM:
                return 1, self.quantifier("exists", args[0], stack)
            return 0, None
        infix = {"and": "/\\", "or": "\\/", "iff": "<->", "Subq": "c="}
        if name in infix and n >= 2:
            return 2, Infix(infix[name], self.term(args[0], stack), self.term(args[1], stack))
        if name == "not" and n >= 1:
            return 1, self.negation(args[0], stack)
        if name == "Sep" and n >= 2 and args[1].tag == LAM:
            var, p = self.lam_body(args[1], stack)
            return 2, SetSep(var, self.term(args[0], stack), p)
        if name == "ReplSep" and n >= 3 and args[1].tag == LAM and args[2].tag == LAM:
            var = self.fresh(stack)
            stack.append(var)
            try:
                p = self.term(args[1].body, stack)
                e = self.term(args[2].body, stack)
            finally:
                stack.pop()
            return 3, SetReplSep(e, var, self.term(args[0], stack), p)
        if name == "UPair" and n >= 2:
            return 2, SetPair(self.term(args[0], stack), self.term(args[1], stack))
        if name == "Sing" and n >= 1:
            return 1, SetSing(self.term(args[0], stack))
        return 0, None

    def negation(self, arg: Term, stack):
        head, args = spine(arg)
        if len(args) == 2:
            if head.tag == CONST and head.name == "In":
                return Infix("/:e", self.term(args[0], stack), self.term(args[1], stack))
            if self._is_ref(head, "eq") and head.type_args:
                return Infix("<>", self.term(args[0], stack), self.term(args[1], stack))
        return Not(self.term(arg, stack))

    def quantifier(self, kind: str, lam: Term, stack):
        if lam.domain == IND:
            b = self._bounded(lam.body, kind)
            if b is not None:
                return self.binder(kind, IND, b[2], stack, b[:2])
        return self.binder(kind, lam.domain, lam.body, stack, None)


def global_names(t: Term, acc: Optional[set] = None) -> set:
    """Names of every constant and reference occurring in ``t``."""
    acc = set() if acc is None else acc
    todo = [t]
    while todo:
        u = todo.pop()
        tag = u.tag
        if tag == CONST or tag == REF:
            acc.add(str(u.name))
        elif tag == APP:
            todo += (u.fn, u.arg)
        elif tag == IMP:
            todo += (u.antecedent, u.consequent)
        elif tag == LAM or tag == ALL:
            todo.append(u.body)
    return acc


def term_to_surface(t: Term, reserved: Iterable[str] = (), context: Optional[list[str]] = None,
                    tyvars: tuple[str, ...] = DEFAULT_TYVARS):
    names = global_names(t, set(reserved))
    return Delaborator(names, tyvars).term(t, list(context or ()))


def print_term(t: Term, reserved: Iterable[str] = (), context: Optional[list[str]] = None,
               tyvars: tuple[str, ...] = DEFAULT_TYVARS) -> str:
    """Readable text for ``t``.

    ``reserved`` holds the global names the printed text must not shadow
    (normally the signature's definitions); ``context`` names the free de
    Bruijn variables, innermost last.
    """
    return format_term(term_to_surface(t, reserved, context, tyvars))
