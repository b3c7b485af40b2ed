"""Combinators for writing closed terms without index arithmetic.

A builder is a function from the current binder depth to a Term; binders hand
their body a builder for the bound variable, which resolves to the right de
Bruijn index wherever it ends up.  Used for the built-in axioms and in tests.

>>> build(lam(IND, lambda x: x))
Lam(Ind(), Var(0))
"""

from __future__ import annotations

from typing import Callable

from ..terms import (
    All, App, Const, IND, Imp, Lam, PROP, Ref, Term, Type, Var, arrows, lift,
)

Builder = Callable[[int], Term]


def build(b: Builder) -> Term:
    return b(0)


def embed(t: Term, depth: int = 0) -> Builder:
    """Use a term built at binder depth ``depth`` inside deeper builders."""
    return lambda d: lift(t, 0, d - depth)


def _bound(level: int) -> Builder:
    return lambda d: Var(d - level - 1)


def lam(ty: Type, body: Callable[[Builder], Builder]) -> Builder:
    return lambda d: Lam(ty, body(_bound(d))(d + 1))


def forall(ty: Type, body: Callable[[Builder], Builder]) -> Builder:
    return lambda d: All(ty, body(_bound(d))(d + 1))


def imp(*parts: Builder) -> Builder:
    """Right-nested implication ``a -> b -> c``."""
    def go(d):
        result = parts[-1](d)
        for p in reversed(parts[:-1]):
            result = Imp(p(d), result)
        return result
    return go


def app(f: Builder, *args: Builder) -> Builder:
    def go(d):
        t = f(d)
        for a in args:
            t = App(t, a(d))
        return t
    return go


def const(name: str, *type_args: Type) -> Builder:
    c = Const(name, type_args)
    return lambda d: c


def ref(name: str, *type_args: Type) -> Builder:
    r = Ref(name, type_args)
    return lambda d: r


# -- primitive encodings of the derived connectives ---------------------------------
# These are exactly what the prelude definitions unfold to.

def false() -> Builder:
    return forall(PROP, lambda p: p)


def true() -> Builder:
    return forall(PROP, lambda p: imp(p, p))


def neg(a: Builder) -> Builder:
    return imp(a, false())


def conj(a: Builder, b: Builder) -> Builder:
    return forall(PROP, lambda p: imp(imp(a, b, p), p))


def disj(a: Builder, b: Builder) -> Builder:
    return forall(PROP, lambda p: imp(imp(a, p), imp(b, p), p))


def iff(a: Builder, b: Builder) -> Builder:
    return conj(imp(a, b), imp(b, a))


def exists(ty: Type, body: Callable[[Builder], Builder]) -> Builder:
    return forall(PROP, lambda p: imp(forall(ty, lambda x: imp(body(x), p)), p))


def eq(ty: Type, s: Builder, t: Builder) -> Builder:
    return forall(arrows(ty, PROP), lambda q: imp(app(q, s), app(q, t)))


def mem(x: Builder, s: Builder) -> Builder:
    return app(const("In"), x, s)


def subq(a: Builder, b: Builder) -> Builder:
    return forall(IND, lambda x: imp(mem(x, a), mem(x, b)))


def transset(u: Builder) -> Builder:
    return forall(IND, lambda x: imp(mem(x, u), subq(x, u)))


def union_closed(u: Builder) -> Builder:
    return forall(IND, lambda x: imp(mem(x, u), mem(app(const("Union"), x), u)))


def power_closed(u: Builder) -> Builder:
    return forall(IND, lambda x: imp(mem(x, u), mem(app(const("Power"), x), u)))


def repl_closed(u: Builder) -> Builder:
    return forall(IND, lambda x: imp(
        mem(x, u),
        forall(arrows(IND, IND), lambda f: imp(
            forall(IND, lambda y: imp(mem(y, x), mem(app(f, y), u))),
            mem(app(const("Repl"), x, f), u)))))


def zf_closed(u: Builder) -> Builder:
    return conj(conj(union_closed(u), power_closed(u)), repl_closed(u))
