"""Core-term properties checked on one generated term at a time."""

from __future__ import annotations

import time

from hotg.syntax import Scope, desugar, parse_term, print_term
from hotg.terms import (
    IND, PROP, App, Arrow, Const, Imp, Lam, TypingContext, Var, lift, size, type_of,
)

MAX_SIZE = 50
NF_BUDGET_SECONDS = 0.1


class PropertyFailure(AssertionError):
    pass


def _require(ok: bool, what: str, t) -> None:
    if not ok:
        raise PropertyFailure(f"{what}: {t!r}")


def beta_expand(t):
    """A term convertible to ``t`` that is not syntactically ``t``."""
    return App(Lam(IND, lift(t, 0, 1)), Const("Empty"))


def eta_expand(t, ty):
    if isinstance(ty, Arrow):
        return Lam(ty.domain, App(lift(t, 0, 1), Var(0)))
    return beta_expand(t)


def congruence_context(t, ty):
    """Put ``t`` in a one-hole context of a type-correct shape."""
    if ty == IND:
        return App(Const("Power"), t)
    if ty == PROP:
        return Imp(t, t)
    return Lam(PROP, lift(t, 0, 1))


def check_term(t, ty, sig, other=None) -> float:
    """Check every property on ``t``; returns the normalization time in seconds.

    ``other`` is an unrelated term of the same type, used for the conversion
    laws on non-convertible pairs.
    """
    defs = sig.definitions
    norm = sig.normalizer
    ctx = TypingContext()
    _require(size(t) <= MAX_SIZE, "size bound", t)

    # unique typing: deterministic, and equal to the generator's type
    a, b = type_of(ctx, defs, t), type_of(ctx, defs, t)
    _require(a == b == ty, "typing determinism", t)

    start = time.perf_counter()
    n = norm.nf(t)
    elapsed = time.perf_counter() - start
    _require(elapsed < NF_BUDGET_SECONDS, "normalization time", t)
    _require(norm.nf(n) == n, "nf idempotence", t)
    _require(type_of(ctx, defs, n) == ty, "type preservation", t)

    # conversion: reflexive, symmetric, transitive and a congruence
    s1 = beta_expand(t)
    s2 = eta_expand(s1, ty)
    _require(norm.conv(t, t), "conv reflexivity", t)
    _require(norm.conv(t, s1) and norm.conv(s1, t), "conv symmetry", t)
    _require(norm.conv(s1, s2), "conv step", t)
    _require(norm.conv(t, s2), "conv transitivity", t)
    _require(norm.conv(congruence_context(t, ty), congruence_context(s2, ty)),
             "conv congruence", t)
    if other is not None:
        _require(norm.conv(t, other) == norm.conv(other, t), "conv symmetry (pair)", t)
        _require(norm.conv(t, other) == (n == norm.nf(other)), "conv decides nf equality", t)

    # parse . print round trip
    text = print_term(t, reserved=defs)
    back, back_ty = desugar(parse_term(text), Scope(defs))
    _require(back == t and back_ty == ty, f"print/parse round trip via {text!r}", t)
    return elapsed
