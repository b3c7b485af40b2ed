"""Name resolution and notation expansion: surface AST to kernel terms.

Every notation rewrites locally to one fixed term shape; the connectives and
the set-builder forms resolve to definitions that must exist in the
environment (the prelude provides them).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..errors import (
    ArityMismatch, ElaborationError, HotgError, IllTypedApp, NonPropConnective, UnknownName,
)
from ..terms import (
    IND, PROP, All, App, Arrow, Const, ConstName, Imp, Lam, Ref, Term, TVar, Type,
    TypingContext, Var, instantiate_type, lift, type_of,
)
from .surface import (
    Apply, Binder, Infix, Name, Not, SetPair, SetRepl, SetReplSep, SetSep, SetSing,
    TyArrow,
)

# notation -> name of the definition it expands to
NOTATION_REFS = {
    "/\\": "and", "\\/": "or", "<->": "iff", "~": "not", "=": "eq", "exists": "ex",
    "c=": "Subq", "sep": "Sep", "replsep": "ReplSep", "pair": "UPair", "sing": "Sing",
}

_CONSTS = {c.value for c in ConstName}


@dataclass
class Local:
    """A script-local abbreviation: ``term`` lives at binder depth ``depth``."""

    term: Term
    type: Type
    depth: int


@dataclass
class Scope:
    """What names mean while desugaring.

    ``defs`` is the signature's definition table, ``tyvars`` the declaration's
    type variable names (TVar 0, 1, 2 in order) and ``locals`` script-local
    abbreviations.
    """

    defs: Mapping
    tyvars: tuple[str, ...] = ()
    locals: Mapping[str, Local] = field(default_factory=dict)


def _fail(cause: HotgError, node) -> ElaborationError:
    pos = getattr(node, "pos", None) or (None, None)
    return ElaborationError(cause, *pos)


def _unknown(msg: str, node) -> UnknownName:
    pos = getattr(node, "pos", None) or (None, None)
    return UnknownName(msg, *pos)


def desugar_type(sty, tyvars: tuple[str, ...] = ()) -> Type:
    if isinstance(sty, TyArrow):
        return Arrow(desugar_type(sty.domain, tyvars), desugar_type(sty.codomain, tyvars))
    if sty.name == "set":
        return IND
    if sty.name == "prop":
        return PROP
    if sty.name in tyvars:
        return TVar(tyvars.index(sty.name))
    raise _unknown(f"unknown type {sty.name!r}", sty)


class Desugarer:
    def __init__(self, scope: Scope):
        self.scope = scope

    def type(self, sty) -> Type:
        return desugar_type(sty, self.scope.tyvars)

    # -- helpers -------------------------------------------------------------------

    def ref(self, key: str, type_args, node) -> tuple[Term, Type]:
        name = NOTATION_REFS[key]
        d = self.scope.defs.get(name)
        if d is None:
            raise _unknown(f"notation needs the definition {name!r}", node)
        if len(type_args) != d.ty_arity:
            raise _unknown(f"definition {name!r} has an unexpected type arity", node)
        return Ref(name, tuple(type_args)), instantiate_type(d.type, type_args, d.ty_arity)

    @staticmethod
    def apply(fn: tuple[Term, Type], arg: tuple[Term, Type], node) -> tuple[Term, Type]:
        f, fty = fn
        a, aty = arg
        if not isinstance(fty, Arrow):
            raise _fail(IllTypedApp(f"applying a term of non-function type {fty!r}"), node)
        if fty.domain != aty:
            raise _fail(IllTypedApp(f"argument of type {aty!r} where {fty.domain!r} expected"),
                        node)
        return App(f, a), fty.codomain

    def prop(self, st, stack) -> Term:
        t, ty = self.term(st, stack)
        if ty != PROP:
            raise _fail(NonPropConnective(f"expected a proposition, found a term of type {ty!r}"),
                        st)
        return t

    def set_term(self, st, stack) -> Term:
        t, ty = self.term(st, stack)
        if ty != IND:
            raise _fail(IllTypedApp(f"expected a set, found a term of type {ty!r}"), st)
        return t

    def relation(self, op: str, left: Term, right: Term, node) -> Term:
        """``left op right`` for a membership or subset bound (both sides sets)."""
        if op == ":e":
            return App(App(Const("In"), left), right)
        sub, _ = self.ref("c=", (), node)
        return App(App(sub, left), right)

    # -- terms ---------------------------------------------------------------------

    def term(self, st, stack: list) -> tuple[Term, Type]:
        method = getattr(self, "_" + type(st).__name__)
        return method(st, stack)

    def _Name(self, st: Name, stack):
        name = st.name
        targs = tuple(self.type(a) for a in st.type_args) if st.type_args is not None else ()
        if st.type_args is None:
            for k in range(len(stack) - 1, -1, -1):
                if stack[k][0] == name:
                    return Var(len(stack) - 1 - k), stack[k][1]
            local = self.scope.locals.get(name)
            if local is not None:
                return lift(local.term, 0, len(stack) - local.depth), local.type
        if name in _CONSTS:
            try:
                c = Const(name, targs)
                return c, type_of(TypingContext(len(self.scope.tyvars)), None, c)
            except HotgError as e:
                raise _fail(e, st) from None
        d = self.scope.defs.get(name)
        if d is None:
            raise _unknown(f"unknown name {name!r}", st)
        if len(targs) != d.ty_arity:
            raise _fail(ArityMismatch(
                f"{name} takes {d.ty_arity} type arguments, got {len(targs)}"), st)
        return Ref(name, targs), instantiate_type(d.type, targs, d.ty_arity)

    def _Apply(self, st: Apply, stack):
        return self.apply(self.term(st.fn, stack), self.term(st.arg, stack), st)

    def _Infix(self, st: Infix, stack):
        op = st.op
        if op == "->":
            return Imp(self.prop(st.left, stack), self.prop(st.right, stack)), PROP
        if op in ("/\\", "\\/", "<->"):
            r = self.ref(op, (), st)
            r = self.apply(r, (self.prop(st.left, stack), PROP), st)
            return self.apply(r, (self.prop(st.right, stack), PROP), st)
        if op in (":e", "/:e"):
            t = self.relation(":e", self.set_term(st.left, stack),
                              self.set_term(st.right, stack), st)
            return (self.negate(t, st) if op == "/:e" else t), PROP
        if op == "c=":
            return self.relation("c=", self.set_term(st.left, stack),
                                 self.set_term(st.right, stack), st), PROP
        if op in ("=", "<>"):
            left = self.term(st.left, stack)
            r = self.ref("=", (left[1],), st)
            t, _ = self.apply(self.apply(r, left, st), self.term(st.right, stack), st)
            return (self.negate(t, st) if op == "<>" else t), PROP
        raise AssertionError(op)

    def negate(self, t: Term, node) -> Term:
        neg, _ = self.ref("~", (), node)
        return App(neg, t)

    def _Not(self, st: Not, stack):
        return self.negate(self.prop(st.arg, stack), st), PROP

    def _Binder(self, st: Binder, stack):
        if st.bound is None:
            ty = self.type(st.type) if st.type is not None else IND
            return self._binder_chain(st, stack, list(st.names), ty, None)
        rel, bound = st.bound
        s = self.set_term(bound, stack)
        return self._binder_chain(st, stack, list(st.names), IND, (rel, s, len(stack)))

    def _binder_chain(self, st: Binder, stack, names, ty, bound):
        if not names:
            if st.kind == "fun":
                return self.term(st.body, stack)
            return self.prop(st.body, stack), PROP
        name = names[0]
        stack.append((name, ty))
        try:
            body, body_ty = self._binder_chain(st, stack, names[1:], ty, bound)
            guard = None
            if bound is not None:
                rel, s, depth = bound
                guard = self.relation(rel, Var(0), lift(s, 0, len(stack) - depth), st)
        finally:
            stack.pop()
        kind = st.kind
        if kind == "fun":
            return Lam(ty, body), Arrow(ty, body_ty)
        if kind == "forall":
            return All(ty, Imp(guard, body) if guard is not None else body), PROP
        if guard is not None:
            conj, _ = self.ref("/\\", (), st)
            body = App(App(conj, guard), body)
        pred = Lam(ty, body)
        if kind == "exists":
            ex, _ = self.ref("exists", (ty,), st)
            return App(ex, pred), PROP
        return App(Const("Eps", (ty,)), pred), ty

    def _lam_over(self, var: str, body_st, stack, want_prop: bool) -> Term:
        stack.append((var, IND))
        try:
            body = self.prop(body_st, stack) if want_prop else self.set_term(body_st, stack)
        finally:
            stack.pop()
        return Lam(IND, body)

    def _SetRepl(self, st: SetRepl, stack):
        s = self.set_term(st.set, stack)
        f = self._lam_over(st.var, st.expr, stack, False)
        return App(App(Const("Repl"), s), f), IND

    def _SetSep(self, st: SetSep, stack):
        s = self.set_term(st.set, stack)
        p = self._lam_over(st.var, st.pred, stack, True)
        sep, _ = self.ref("sep", (), st)
        return App(App(sep, s), p), IND

    def _SetReplSep(self, st: SetReplSep, stack):
        s = self.set_term(st.set, stack)
        p = self._lam_over(st.var, st.pred, stack, True)
        f = self._lam_over(st.var, st.expr, stack, False)
        rs, _ = self.ref("replsep", (), st)
        return App(App(App(rs, s), p), f), IND

    def _SetPair(self, st: SetPair, stack):
        pair, _ = self.ref("pair", (), st)
        return App(App(pair, self.set_term(st.left, stack)), self.set_term(st.right, stack)), IND

    def _SetSing(self, st: SetSing, stack):
        sing, _ = self.ref("sing", (), st)
        return App(sing, self.set_term(st.elem, stack)), IND


def desugar(st, scope: Scope, context: Optional[list] = None) -> tuple[Term, Type]:
    """Desugar ``st`` under ``context``, a list of (name, Type), innermost last."""
    return Desugarer(scope).term(st, list(context or ()))
