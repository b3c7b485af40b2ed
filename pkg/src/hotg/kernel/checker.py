"""Proof-term verification: synthesize the proposition a proof term proves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from ..errors import (
    IllTyped, IllTypedWitness, NonPropConnective, NotAForall, NotAnImplication,
    PropMismatch, ShadowedHyp, UnknownHyp, UnknownRef,
)
from ..terms import (
    All, Imp, Term, TypingContext, check_type, instantiate_types, lift, subst, type_of,
)
from ..terms import PROP
from .._core import ALL, IMP
from .axioms import AXIOM_ARITY, builtin_axiom
from .proof import AllElim, AllIntro, Hyp, ImpElim, ImpIntro, Known, Proof


@dataclass(frozen=True)
class Step:
    """One rule application, recorded when a trace is requested.

    ``premises`` are the propositions the rule consumed, exactly as
    synthesized; ``conclusion`` is what the rule produced.
    """

    rule: str
    depth: int
    conclusion: Term
    premises: tuple[Term, ...] = ()
    extra: Any = None


class _Checker:
    def __init__(self, sig, n: int, trace: Optional[list]):
        self.sig = sig
        self.n = n
        self.norm = sig.normalizer
        self.defs = sig.definitions
        self.trace = trace

    def prop_check(self, t: Term, stack: list) -> None:
        ty = type_of(TypingContext(self.n, tuple(stack)), self.defs, t)
        if ty != PROP:
            raise NonPropConnective(f"hypothesis is not a proposition: {t!r}")

    def run(self, p: Proof, stack: list, hyps: dict) -> Term:
        trace = self.trace
        depth = len(stack)
        if isinstance(p, Hyp):
            entry = hyps.get(p.name)
            if entry is None:
                raise UnknownHyp(f"no hypothesis named {p.name!r}")
            prop, d = entry
            result = lift(prop, 0, depth - d)
            if trace is not None:
                trace.append(Step("Hyp", depth, result, extra=p.name))
            return result
        if isinstance(p, Known):
            result = self.known(p)
            if trace is not None:
                trace.append(Step("Ax", depth, result, extra=(p.name, p.type_args)))
            return result
        if isinstance(p, ImpIntro):
            if p.hyp_name in hyps:
                raise ShadowedHyp(f"hypothesis {p.hyp_name!r} already in scope")
            self.prop_check(p.assumed, stack)
            inner = dict(hyps)
            inner[p.hyp_name] = (p.assumed, depth)
            body = self.run(p.body, stack, inner)
            result = Imp(p.assumed, body)
            if trace is not None:
                trace.append(Step("ImpI", depth, result, (body,), p.hyp_name))
            return result
        if isinstance(p, ImpElim):
            major = self.run(p.major, stack, hyps)
            exposed = self.norm.expose(major)
            if exposed.tag != IMP:
                raise NotAnImplication(f"major premise proves {major!r}")
            minor = self.run(p.minor, stack, hyps)
            if not self.norm.conv(exposed.antecedent, minor):
                raise PropMismatch(
                    f"antecedent {exposed.antecedent!r} does not match {minor!r}")
            result = exposed.consequent
            if trace is not None:
                trace.append(Step("ImpE", depth, result, (major, minor)))
            return result
        if isinstance(p, AllIntro):
            check_type(p.domain, self.n)
            # hypotheses are stored with their depth and lifted on lookup
            stack.append(p.domain)
            try:
                body = self.run(p.body, stack, hyps)
            finally:
                stack.pop()
            result = All(p.domain, body)
            if trace is not None:
                trace.append(Step("AllI", depth, result, (body,), p.domain))
            return result
        if isinstance(p, AllElim):
            major = self.run(p.fn, stack, hyps)
            exposed = self.norm.expose(major)
            if exposed.tag != ALL:
                raise NotAForall(f"proves {major!r}")
            try:
                ty = type_of(TypingContext(self.n, tuple(stack)), self.defs, p.witness)
            except IllTyped as e:
                raise IllTypedWitness(str(e)) from e
            if ty != exposed.domain:
                raise IllTypedWitness(f"witness of type {ty!r}, expected {exposed.domain!r}")
            result = subst(exposed.body, 0, p.witness)
            if trace is not None:
                trace.append(Step("AllE", depth, result, (major,), p.witness))
            return result
        raise TypeError(f"not a proof term: {p!r}")

    def known(self, p: Known) -> Term:
        for a in p.type_args:
            check_type(a, self.n)
        if p.name in AXIOM_ARITY:
            return builtin_axiom(p.name, p.type_args)
        thm = self.sig.theorems.get(p.name)
        if thm is None:
            raise UnknownRef(f"no axiom or theorem named {p.name!r}")
        return instantiate_types(thm.statement, p.type_args, thm.ty_arity)


def check_proof(sig, ty_n: int, ctx: TypingContext | Sequence = (),
                hyps: Sequence[tuple[str, Term]] = (), proof: Proof = None,
                trace: Optional[list] = None) -> Term:
    """Synthesize the proposition proved by ``proof``.

    ``ctx`` is the de Bruijn typing stack (innermost last) and ``hyps`` the
    named hypotheses, each a proposition in that context.
    """
    stack = list(ctx.vars if isinstance(ctx, TypingContext) else ctx)
    checker = _Checker(sig, ty_n, trace)
    TypingContext(ty_n, tuple(stack))  # validates the context
    table: dict = {}
    for name, prop in hyps:
        if name in table:
            raise ShadowedHyp(f"hypothesis {name!r} given twice")
        checker.prop_check(prop, stack)
        table[name] = (prop, len(stack))
    return checker.run(proof, stack, table)
