"""Shared test helpers: a typed random term generator and independent oracles.

The oracles deliberately avoid the de Bruijn machinery under test.  Terms
are converted to a named representation, manipulated there with textbook
capture-avoiding substitution and one-step reduction, and converted back.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Optional

from hotg.kernel.signature import Opacity, Signature
from hotg.terms import (
    IND, PROP, All, App, Arrow, Const, Imp, Lam, Ref, Var, arrows,
)

# -- a small signature used by the generators --------------------------------------

SET_TO_SET = Arrow(IND, IND)
SET_PRED = Arrow(IND, PROP)
REL = arrows(IND, IND, PROP)

GEN_TYPES = (PROP, IND, SET_TO_SET, SET_PRED, Arrow(PROP, PROP), REL, Arrow(SET_PRED, PROP))


def small_signature() -> Signature:
    sig = Signature()
    sig = sig.add_definition("ident", 0, SET_TO_SET, Lam(IND, Var(0)), Opacity.TRANSPARENT)
    subset = Lam(IND, Lam(IND, All(IND, Imp(
        App(App(Const("In"), Var(0)), Var(2)),
        App(App(Const("In"), Var(0)), Var(1))))))
    sig = sig.add_definition("subset", 0, REL, subset, Opacity.TRANSPARENT)
    sig = sig.add_definition("sealed", 0, SET_TO_SET, Lam(IND, App(Const("Union"), Var(0))),
                             Opacity.OPAQUE)
    return sig


_CONSTS = (
    (Const("Empty"), IND),
    (Const("Union"), SET_TO_SET),
    (Const("Power"), SET_TO_SET),
    (Const("In"), REL),
    (Const("Eps", (IND,)), Arrow(SET_PRED, IND)),
    (Ref("ident"), SET_TO_SET),
    (Ref("subset"), REL),
    (Ref("sealed"), SET_TO_SET),
)


def _target(ty, want):
    """Argument types needed to reach ``want`` from a head of type ``ty``, or None."""
    args = []
    while True:
        if ty == want:
            return args
        if not isinstance(ty, Arrow):
            return None
        args.append(ty.domain)
        ty = ty.codomain


class TermGen:
    """Generates well-typed terms; ``pick(n)`` returns an integer in ``range(n)``."""

    def __init__(self, pick: Callable[[int], int]):
        self.pick = pick

    def choose(self, seq):
        return seq[self.pick(len(seq))]

    def type(self):
        return self.choose(GEN_TYPES)

    def term(self, ty, ctx: list, budget: int):
        """A term of type ``ty`` under ``ctx`` (innermost last) with size near ``budget``."""
        heads = [(Var(len(ctx) - 1 - i), vty) for i, vty in enumerate(ctx)] + list(_CONSTS)
        cheap = [(h, args) for h, hty in heads
                 if (args := _target(hty, ty)) is not None and len(args) < budget]
        options = []
        if cheap:
            options.append("head")
        if budget >= 3:
            if isinstance(ty, Arrow):
                options.append("lam")
            if ty == PROP:
                options += ["imp", "all"]
            options.append("redex")
        if not options:
            return self.leaf(ty, ctx)
        kind = self.choose(options)
        if kind == "head":
            head, args = self.choose(cheap)
            share = max(1, (budget - 1) // max(1, len(args)))
            t = head
            for a in args:
                t = App(t, self.term(a, ctx, share))
            return t
        if kind == "lam":
            return Lam(ty.domain, self.term(ty.codomain, ctx + [ty.domain], budget - 1))
        if kind == "imp":
            half = (budget - 1) // 2
            return Imp(self.term(PROP, ctx, half), self.term(PROP, ctx, budget - 1 - half))
        if kind == "all":
            dom = self.choose((IND, PROP, SET_PRED))
            return All(dom, self.term(PROP, ctx + [dom], budget - 1))
        dom = self.choose((IND, PROP, SET_TO_SET))
        half = (budget - 2) // 2
        return App(Lam(dom, self.term(ty, ctx + [dom], half)),
                   self.term(dom, ctx, budget - 2 - half))

    def leaf(self, ty, ctx):
        """The smallest term of ``ty`` available without recursion budget."""
        if ty == IND:
            return Const("Empty")
        if ty == PROP:
            return All(PROP, Var(0))
        if isinstance(ty, Arrow):
            return Lam(ty.domain, self.leaf(ty.codomain, ctx + [ty.domain]))
        raise ValueError(f"no leaf for {ty!r}")


def random_term(rng: random.Random, ty=None, ctx=(), budget: int = 30):
    gen = TermGen(rng.randrange)
    ty = ty if ty is not None else gen.type()
    return gen.term(ty, list(ctx), budget), ty


# -- named representation ----------------------------------------------------------
#
# ("v", name) | ("k", leaf) | ("app", f, a) | ("lam", name, ty, body)
# | ("imp", a, b) | ("all", name, ty, body)

_fresh = itertools.count()


def fresh(base: str = "x") -> str:
    return f"{base}_{next(_fresh)}"


def to_named(t, names: list):
    tag = type(t).__name__
    if tag == "Var":
        return ("v", names[len(names) - 1 - t.index])
    if tag == "App":
        return ("app", to_named(t.fn, names), to_named(t.arg, names))
    if tag in ("Lam", "All"):
        x = fresh()
        return ("lam" if tag == "Lam" else "all", x, t.domain, to_named(t.body, names + [x]))
    if tag == "Imp":
        return ("imp", to_named(t.antecedent, names), to_named(t.consequent, names))
    return ("k", t)


def from_named(n, names: list):
    kind = n[0]
    if kind == "v":
        for i, x in enumerate(reversed(names)):
            if x == n[1]:
                return Var(i)
        raise KeyError(n[1])
    if kind == "app":
        return App(from_named(n[1], names), from_named(n[2], names))
    if kind == "lam":
        return Lam(n[2], from_named(n[3], names + [n[1]]))
    if kind == "all":
        return All(n[2], from_named(n[3], names + [n[1]]))
    if kind == "imp":
        return Imp(from_named(n[1], names), from_named(n[2], names))
    return n[1]


def free_names(n) -> set:
    kind = n[0]
    if kind == "v":
        return {n[1]}
    if kind in ("app", "imp"):
        return free_names(n[1]) | free_names(n[2])
    if kind in ("lam", "all"):
        return free_names(n[3]) - {n[1]}
    return set()


def named_subst(n, x: str, u):
    """Capture-avoiding ``n[x := u]``, renaming binders that would capture."""
    kind = n[0]
    if kind == "v":
        return u if n[1] == x else n
    if kind in ("app", "imp"):
        return (kind, named_subst(n[1], x, u), named_subst(n[2], x, u))
    if kind in ("lam", "all"):
        y, ty, body = n[1], n[2], n[3]
        if y == x:
            return n
        if y in free_names(u):
            z = fresh()
            body = named_subst(body, y, ("v", z))
            y = z
        return (kind, y, ty, named_subst(body, x, u))
    return n


def _beta_step(n, unfold):
    """One leftmost-outermost beta (or delta) step, or None when normal."""
    kind = n[0]
    if kind == "k" and unfold is not None:
        body = unfold(n[1]) if isinstance(n[1], Ref) else None
        if body is not None:
            return to_named(body, [])
        return None
    if kind == "app":
        f = n[1]
        if f[0] == "lam":
            return named_subst(f[3], f[1], n[2])
        s = _beta_step(f, unfold)
        if s is not None:
            return ("app", s, n[2])
        s = _beta_step(n[2], unfold)
        return None if s is None else ("app", f, s)
    if kind in ("lam", "all"):
        s = _beta_step(n[3], unfold)
        return None if s is None else (kind, n[1], n[2], s)
    if kind == "imp":
        s = _beta_step(n[1], unfold)
        if s is not None:
            return ("imp", s, n[2])
        s = _beta_step(n[2], unfold)
        return None if s is None else ("imp", n[1], s)
    return None


def _eta_step(n):
    kind = n[0]
    if kind == "lam":
        body = n[3]
        if body[0] == "app" and body[2] == ("v", n[1]) and n[1] not in free_names(body[1]):
            return body[1]
        s = _eta_step(body)
        return None if s is None else ("lam", n[1], n[2], s)
    if kind == "all":
        s = _eta_step(n[3])
        return None if s is None else ("all", n[1], n[2], s)
    if kind in ("app", "imp"):
        s = _eta_step(n[1])
        if s is not None:
            return (kind, s, n[2])
        s = _eta_step(n[2])
        return None if s is None else (kind, n[1], s)
    return None


class StepBudget(Exception):
    pass


def small_step_nf(t, names: list, unfold: Optional[Callable] = None, limit: int = 100_000):
    """Normal form by repeated single steps: all beta/delta first, then eta."""
    n = to_named(t, names)
    for _ in range(limit):
        s = _beta_step(n, unfold)
        if s is None:
            break
        n = s
    else:
        raise StepBudget("beta budget exhausted")
    for _ in range(limit):
        s = _eta_step(n)
        if s is None:
            break
        n = s
    else:
        raise StepBudget("eta budget exhausted")
    return from_named(n, names)
