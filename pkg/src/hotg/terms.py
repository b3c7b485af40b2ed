"""Simply typed terms with prefix polymorphism.

The node classes and the inner loops live in :mod:`hotg._core`; this module
adds typing, the unfold policy and convertibility on top of them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Protocol, Sequence

from ._core import (
    ALL, APP, CONST, IMP, LAM, REF, T_ARROW, T_PROP, T_TVAR, VAR,
    All, App, Arrow, Const, Imp, Ind, Lam, Prop, Ref, Term, TVar, Type, Var,
    beta_nf, eta_contract, lift, occurs, size, subst, term_inst, type_inst,
)
from ._core import nf as _nf
from .errors import (
    ArityMismatch, IllTypedApp, NonPropConnective, TVarOutOfScope, TypeMismatch,
    UnboundVar, UnknownRef,
)

__all__ = [
    "All", "App", "Arrow", "Const", "ConstName", "Imp", "Ind", "Lam", "Prop", "Ref",
    "Term", "TVar", "Type", "Var", "IND", "PROP", "MAX_TYPE_VARS",
    "TypingContext", "Unfold", "Normalizer",
    "arrows", "lift", "subst", "occurs", "size", "type_of", "check_type",
    "beta_nf", "eta_contract", "beta_eta_nf", "conv", "instantiate_types", "instantiate_type", "apply_args",
]

MAX_TYPE_VARS = 3

PROP = Prop()
IND = Ind()


class ConstName(str, enum.Enum):
    """The seven primitive constant families."""

    Eps = "Eps"
    In = "In"
    Empty = "Empty"
    Union = "Union"
    Power = "Power"
    Repl = "Repl"
    UnivOf = "UnivOf"

    def __str__(self) -> str:
        return self.value


def arrows(*tys: Type) -> Type:
    """``arrows(a, b, c)`` is ``a -> b -> c``."""
    result = tys[-1]
    for ty in reversed(tys[:-1]):
        result = Arrow(ty, result)
    return result


_SCHEMAS: dict[str, Type] = {
    "In": arrows(IND, IND, PROP),
    "Empty": IND,
    "Union": arrows(IND, IND),
    "Power": arrows(IND, IND),
    "Repl": arrows(IND, arrows(IND, IND), IND),
    "UnivOf": arrows(IND, IND),
}


class DefinitionView(Protocol):
    ty_arity: int
    type: Type
    body: Term
    transparent: bool


SigView = Mapping[str, DefinitionView]


@dataclass(frozen=True)
class TypingContext:
    """``n`` type variables in scope plus a de Bruijn stack (innermost last)."""

    n: int = 0
    vars: tuple[Type, ...] = ()

    def __post_init__(self):
        if not 0 <= self.n <= MAX_TYPE_VARS:
            raise TVarOutOfScope(f"type context {self.n} outside 0..{MAX_TYPE_VARS}")
        for ty in self.vars:
            check_type(ty, self.n)

    def push(self, ty: Type) -> "TypingContext":
        return TypingContext(self.n, self.vars + (ty,))

    @property
    def depth(self) -> int:
        return len(self.vars)


def check_type(ty: Type, n: int) -> None:
    """Raise TVarOutOfScope unless every type variable of ``ty`` is below ``n``."""
    if not ty.has_tvar:
        return
    if ty.tag == T_TVAR:
        if ty.index >= n:
            raise TVarOutOfScope(f"type variable {ty.index} not in type context {n}")
        return
    check_type(ty.domain, n)
    check_type(ty.codomain, n)


def type_of(ctx: TypingContext, sig_view: Optional[SigView], t: Term) -> Type:
    """The unique type of ``t`` in ``ctx``; raises an IllTyped subclass otherwise."""
    return _infer(t, ctx.n, list(ctx.vars), sig_view if sig_view is not None else {})


def _infer(t, n, stack, defs):
    tag = t.tag
    if tag == VAR:
        k = t.index
        if k >= len(stack):
            raise UnboundVar(f"Var({k}) under {len(stack)} binders")
        return stack[-1 - k]
    if tag == APP:
        f = _infer(t.fn, n, stack, defs)
        if f.tag != T_ARROW:
            raise IllTypedApp(f"applying a term of non-function type {f!r}")
        a = _infer(t.arg, n, stack, defs)
        if a != f.domain:
            raise IllTypedApp(f"argument of type {a!r} where {f.domain!r} expected")
        return f.codomain
    if tag == LAM:
        check_type(t.domain, n)
        stack.append(t.domain)
        try:
            return Arrow(t.domain, _infer(t.body, n, stack, defs))
        finally:
            stack.pop()
    if tag == IMP:
        if _infer(t.antecedent, n, stack, defs).tag != T_PROP:
            raise NonPropConnective("antecedent of an implication is not a proposition")
        if _infer(t.consequent, n, stack, defs).tag != T_PROP:
            raise NonPropConnective("consequent of an implication is not a proposition")
        return PROP
    if tag == ALL:
        check_type(t.domain, n)
        stack.append(t.domain)
        try:
            if _infer(t.body, n, stack, defs).tag != T_PROP:
                raise NonPropConnective("body of a universal quantifier is not a proposition")
        finally:
            stack.pop()
        return PROP
    if tag == CONST:
        return _const_type(t, n)
    if tag == REF:
        d = defs.get(t.name)
        if d is None:
            raise UnknownRef(f"unknown name {t.name!r}")
        if len(t.type_args) != d.ty_arity:
            raise ArityMismatch(
                f"{t.name} takes {d.ty_arity} type arguments, got {len(t.type_args)}")
        for a in t.type_args:
            check_type(a, n)
        return type_inst(d.type, t.type_args)
    raise TypeError(f"not a term: {t!r}")


def _const_type(t: Const, n: int) -> Type:
    name = str(t.name)
    if name == "Eps":
        if len(t.type_args) != 1:
            raise ArityMismatch(f"Eps takes 1 type argument, got {len(t.type_args)}")
        sigma = t.type_args[0]
        check_type(sigma, n)
        return Arrow(Arrow(sigma, PROP), sigma)
    schema = _SCHEMAS.get(name)
    if schema is None:
        raise UnknownRef(f"unknown primitive constant {name!r}")
    if t.type_args:
        raise ArityMismatch(f"{name} takes no type arguments")
    return schema


# -- normalization ------------------------------------------------------------------


class Unfold(enum.Enum):
    """Which references may be replaced by their bodies during normalization."""

    TRANSPARENT = "transparent"
    NONE = "none"


def _unfolder(sig_view: Optional[SigView], cache: dict) -> Optional[Callable]:
    if not sig_view:
        return None

    def unfold(ref):
        try:
            return cache[ref]
        except KeyError:
            pass
        d = sig_view.get(ref.name)
        body = None
        if d is not None and d.transparent:
            body = term_inst(d.body, ref.type_args) if ref.type_args else d.body
        cache[ref] = body
        return body

    return unfold


def beta_eta_nf(t: Term, sig_view: Optional[SigView] = None,
                unfold: Unfold = Unfold.TRANSPARENT) -> Term:
    """Beta-normalize to completion, then eta-contract to completion."""
    fn = _unfolder(sig_view, {}) if unfold is Unfold.TRANSPARENT else None
    return _nf(t, fn)


def conv(s: Term, t: Term, sig_view: Optional[SigView] = None,
         unfold: Unfold = Unfold.TRANSPARENT, ctx: Optional[TypingContext] = None) -> bool:
    """Beta-eta convertibility by normalize-and-compare.

    When ``ctx`` is given both sides are type-checked first and TypeMismatch is
    raised if their types differ.
    """
    if ctx is not None:
        a = type_of(ctx, sig_view, s)
        b = type_of(ctx, sig_view, t)
        if a != b:
            raise TypeMismatch(f"{a!r} vs {b!r}")
    return Normalizer(sig_view).conv(s, t, unfold)


class Normalizer:
    """Normal forms with memoization for one (append-only) definition table.

    The caches stay valid when the table grows because definitions are never
    changed or removed, so extended signatures hand theirs on.
    """

    def __init__(self, sig_view: Optional[SigView], parent: Optional["Normalizer"] = None):
        self.sig_view = sig_view
        if parent is not None:
            self._unfold_cache = parent._unfold_cache
            self._nf_cache = parent._nf_cache
        else:
            self._unfold_cache = {}
            self._nf_cache = {}
        self._unfold = _unfolder(sig_view, self._unfold_cache)

    def unfold_ref(self, ref: Ref) -> Optional[Term]:
        return self._unfold(ref) if self._unfold is not None else None

    def nf(self, t: Term, unfold: Unfold = Unfold.TRANSPARENT) -> Term:
        if unfold is Unfold.NONE:
            return _nf(t, None)
        cache = self._nf_cache
        r = cache.get(t)
        if r is None:
            r = _nf(t, self._unfold)
            cache[t] = r
        return r

    def conv(self, s: Term, t: Term, unfold: Unfold = Unfold.TRANSPARENT) -> bool:
        if s == t:
            return True
        # agreement without unfolding implies agreement with it
        if _nf(s, None) == _nf(t, None):
            return True
        if unfold is Unfold.NONE:
            return False
        return self.nf(s) == self.nf(t)

    def whnf(self, t: Term) -> Term:
        """Head normal form, unfolding transparent references at the head only."""
        while True:
            tag = t.tag
            if tag == REF:
                b = self.unfold_ref(t)
                if b is None:
                    return t
                t = b
                continue
            if tag != APP:
                return t
            head, args = spine(t)
            if head.tag == LAM:
                t = apply_args(subst(head.body, 0, args[0]), args[1:])
                continue
            if head.tag == REF:
                b = self.unfold_ref(head)
                if b is None:
                    return t
                t = apply_args(b, args)
                continue
            return t

    def expose(self, t: Term) -> Term:
        """Unfold and reduce the head until an Imp or All appears (or cannot)."""
        if t.tag == IMP or t.tag == ALL:
            return t
        return self.whnf(t)


def spine(t: Term) -> tuple[Term, list[Term]]:
    args = []
    while t.tag == APP:
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def apply_args(head: Term, args: Sequence[Term]) -> Term:
    for a in args:
        head = App(head, a)
    return head


def instantiate_types(t: Term, args: Sequence[Type], n: int) -> Term:
    """Replace TVar(i) by ``args[i]`` in a declaration of type-variable arity ``n``."""
    if len(args) != n:
        raise ArityMismatch(f"expected {n} type arguments, got {len(args)}")
    if n == 0:
        return t
    return term_inst(t, tuple(args))


def instantiate_type(ty: Type, args: Sequence[Type], n: int) -> Type:
    if len(args) != n:
        raise ArityMismatch(f"expected {n} type arguments, got {len(args)}")
    if n == 0:
        return ty
    return type_inst(ty, tuple(args))
