"""Elaboration of proof scripts into kernel proof terms.

The elaborator is untrusted convenience: it only assembles ``Proof`` values,
and every theorem it produces is checked again by the kernel.  It does no
search.  The one inference it performs is first-order matching (plus Miller
patterns) to fill universally quantified positions of a lemma from the goal
or from the propositions of proof arguments.

Proof expressions are ordinary surface terms read differently: the head
names a hypothesis, theorem or axiom, and each argument either instantiates
a leading ``forall`` (a term) or discharges a leading implication (a proof).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Callable, Optional

from ._core import ALL, APP, CONST, IMP, LAM, REF, T_ARROW, VAR
from .errors import (
    ElaborationError, GoalMismatch, HotgError, LeftoverGoals, NotAForall, NotAnImplication,
    ShadowedHyp, UnknownName,
)
from .kernel.axioms import AXIOM_ARITY, builtin_axiom
from .kernel.proof import AllElim, AllIntro, Hyp, ImpElim, ImpIntro, Known, Proof
from .terms import (
    PROP, All, App, Imp, Lam, Ref, Term, Type, Unfold, Var,
    apply_args, beta_nf, instantiate_types, lift, spine, subst,
)
from .syntax import surface as S
from .syntax.desugar import Desugarer, Local, Scope, desugar_type
from .syntax.printer import print_term

META_PREFIX = "?"


def _pos(node):
    return getattr(node, "pos", None) or (None, None)


def _wrap(err: HotgError, node) -> HotgError:
    if isinstance(err, (ElaborationError, GoalMismatch, UnknownName, LeftoverGoals)):
        return err
    return ElaborationError(err, *_pos(node))


# -- metavariables --------------------------------------------------------------


def _is_meta(t: Term) -> bool:
    return t.tag == REF and t.name.startswith(META_PREFIX)


def _has_meta(t: Term) -> bool:
    tag = t.tag
    if tag == REF:
        return t.name.startswith(META_PREFIX)
    if tag == APP:
        return _has_meta(t.fn) or _has_meta(t.arg)
    if tag == IMP:
        return _has_meta(t.antecedent) or _has_meta(t.consequent)
    if tag == LAM or tag == ALL:
        return _has_meta(t.body)
    return False


def _instantiate(t: Term, sol: dict, depth: int = 0) -> Term:
    """Replace solved metavariables (values live at the outer depth)."""
    tag = t.tag
    if tag == REF:
        v = sol.get(t.name)
        if v is None:
            return t
        return lift(v, 0, depth) if depth else v
    if tag == APP:
        f = _instantiate(t.fn, sol, depth)
        a = _instantiate(t.arg, sol, depth)
        if f is t.fn and a is t.arg:
            return t
        return App(f, a)
    if tag == IMP:
        return Imp(_instantiate(t.antecedent, sol, depth), _instantiate(t.consequent, sol, depth))
    if tag == LAM:
        return Lam(t.domain, _instantiate(t.body, sol, depth + 1))
    if tag == ALL:
        return All(t.domain, _instantiate(t.body, sol, depth + 1))
    return t


def _proof_instantiate(p: Proof, sol: dict) -> Proof:
    if isinstance(p, AllElim):
        return AllElim(_proof_instantiate(p.fn, sol), _instantiate(p.witness, sol))
    if isinstance(p, ImpElim):
        return ImpElim(_proof_instantiate(p.major, sol), _proof_instantiate(p.minor, sol))
    if isinstance(p, ImpIntro):
        return ImpIntro(p.hyp_name, _instantiate(p.assumed, sol),
                        _proof_instantiate(p.body, sol))
    if isinstance(p, AllIntro):
        return AllIntro(p.domain, _proof_instantiate(p.body, sol))
    return p


class _NoMatch(Exception):
    pass


class Matcher:
    """Solve ``pattern == target`` for metavariables occurring in ``pattern``.

    With a ``delta`` callback, a failed comparison unfolds the head definition
    of the target (then of the pattern) and tries again, so solutions keep
    the folded form whenever one exists.
    """

    def __init__(self, metas: dict[str, Type], sol: dict[str, Term],
                 delta: Optional[Callable[[Term], Optional[Term]]] = None):
        self.metas = metas
        self.sol = sol
        self.delta = delta

    def match(self, pat: Term, tgt: Term, b: int = 0) -> None:
        if self.delta is None:
            self._match(pat, tgt, b)
            return
        saved = dict(self.sol)
        try:
            self._match(pat, tgt, b)
            return
        except _NoMatch:
            self.sol.clear()
            self.sol.update(saved)
        unfolded = self.delta(tgt)
        if unfolded is not None:
            self.match(pat, unfolded, b)
            return
        unfolded = self.delta(pat)
        if unfolded is None:
            raise _NoMatch
        self.match(unfolded, tgt, b)

    def _match(self, pat: Term, tgt: Term, b: int) -> None:
        if pat.tag == APP or _is_meta(pat):
            head, args = spine(pat)
            if _is_meta(head):
                self.assign(head.name, args, tgt, b)
                return
        if pat.tag != tgt.tag:
            raise _NoMatch
        tag = pat.tag
        if tag == VAR:
            if pat.index != tgt.index:
                raise _NoMatch
        elif tag == CONST or tag == REF:
            if pat != tgt:
                raise _NoMatch
        elif tag == APP:
            self.match(pat.fn, tgt.fn, b)
            self.match(pat.arg, tgt.arg, b)
        elif tag == IMP:
            self.match(pat.antecedent, tgt.antecedent, b)
            self.match(pat.consequent, tgt.consequent, b)
        else:  # LAM, ALL
            if pat.domain != tgt.domain:
                raise _NoMatch
            self.match(pat.body, tgt.body, b + 1)

    def assign(self, name: str, args, tgt: Term, b: int) -> None:
        # args must be distinct variables bound inside the pattern
        locals_ = []
        for a in args:
            if a.tag != VAR or a.index >= b or a.index in locals_:
                raise _NoMatch
            locals_.append(a.index)
        value = _abstract(tgt, locals_, b, self.metas[name])
        if value is None:
            raise _NoMatch
        old = self.sol.get(name)
        if old is None:
            self.sol[name] = value
        elif old != value:
            raise _NoMatch


def _abstract(tgt: Term, locals_: list[int], b: int, meta_ty: Type) -> Optional[Term]:
    """``λ args. tgt`` moved out of ``b`` local binders, or None if impossible."""
    n = len(locals_)
    position = {ix: n - 1 - i for i, ix in enumerate(locals_)}

    def go(t: Term, c: int) -> Term:
        tag = t.tag
        if tag == VAR:
            i = t.index
            if i < c:
                return t
            local = i - c
            if local < b:
                if local not in position:
                    raise _NoMatch
                return Var(c + position[local])
            return Var(i - b + n)
        if tag == APP:
            return App(go(t.fn, c), go(t.arg, c))
        if tag == IMP:
            return Imp(go(t.antecedent, c), go(t.consequent, c))
        if tag == LAM:
            return Lam(t.domain, go(t.body, c + 1))
        if tag == ALL:
            return All(t.domain, go(t.body, c + 1))
        return t

    try:
        body = go(tgt, 0)
    except _NoMatch:
        return None
    doms = []
    ty = meta_ty
    for _ in range(n):
        if ty.tag != T_ARROW:
            return None
        doms.append(ty.domain)
        ty = ty.codomain
    for d in reversed(doms):
        body = Lam(d, body)
    return body


# -- goal state -----------------------------------------------------------------


@dataclass(frozen=True)
class GoalState:
    """Everything a script step can see.

    ``vars`` are the term variables in scope (innermost last) and ``hyps``
    map hypothesis names to (proposition, depth at which it was stated).
    """

    goal: Term
    tyvars: tuple[str, ...] = ()
    vars: tuple[tuple[str, Type], ...] = ()
    hyps: tuple[tuple[str, Term, int], ...] = ()
    locals: tuple[tuple[str, Local], ...] = ()

    @property
    def depth(self) -> int:
        return len(self.vars)

    def hyp(self, name: str) -> Optional[Term]:
        for n, prop, d in reversed(self.hyps):
            if n == name:
                return lift(prop, 0, self.depth - d)
        return None

    def push_var(self, name: str, ty: Type, goal: Term) -> "GoalState":
        return replace(self, vars=self.vars + ((name, ty),), goal=goal)

    def push_hyp(self, name: str, prop: Term, goal: Term) -> "GoalState":
        return replace(self, hyps=self.hyps + ((name, prop, self.depth),), goal=goal)

    def with_goal(self, goal: Term) -> "GoalState":
        return replace(self, goal=goal)


class Elaborator:
    def __init__(self, sig, tyvars: tuple[str, ...] = ()):
        self.sig = sig
        self.norm = sig.normalizer
        self.tyvars = tyvars
        self._fresh = itertools.count()

    # -- helpers -------------------------------------------------------------------

    def scope(self, st: GoalState) -> Scope:
        return Scope(self.sig.definitions, self.tyvars, dict(st.locals))

    def term(self, node, st: GoalState) -> tuple[Term, Type]:
        return Desugarer(self.scope(st)).term(node, list(st.vars))

    def prop(self, node, st: GoalState) -> Term:
        t, ty = self.term(node, st)
        if ty != PROP:
            raise GoalMismatch(f"expected a proposition, got a term of type {ty!r}", *_pos(node))
        return t

    def show(self, t: Term, st: GoalState) -> str:
        return print_term(t, self.sig.definitions.keys(), [n for n, _ in st.vars], self.tyvars
                          or ("A", "B", "C"))

    @staticmethod
    def beta(t: Term) -> Term:
        return beta_nf(t, None)

    def conv(self, a: Term, b: Term) -> bool:
        return self.norm.conv(a, b)

    def new_meta(self, ty: Type, metas: dict) -> Term:
        name = f"{META_PREFIX}{next(self._fresh)}"
        metas[name] = ty
        return Ref(name)

    def head_step(self, t: Term) -> Optional[Term]:
        """One head unfolding or beta step, or None when the head is stuck."""
        head, args = spine(t)
        if head.tag == LAM and args:
            return apply_args(subst(head.body, 0, args[0]), args[1:])
        if head.tag == REF:
            body = self.norm.unfold_ref(head)
            if body is not None:
                return apply_args(body, args)
        return None

    def unfold_to(self, t: Term, names: tuple[str, ...]) -> Optional[tuple[str, Term, list]]:
        """Unfold the head of ``t`` until it is an application of one of ``names``."""
        seen = 0
        while True:
            head, args = spine(t)
            if head.tag == REF and head.name in names:
                return head.name, head, args
            t = self.head_step(t)
            seen += 1
            if t is None or seen > 1000:
                return None

    def delta(self, t: Term) -> Optional[Term]:
        """Unfold the head definition of ``t`` (metavariables never unfold)."""
        head, args = spine(t)
        if head.tag != REF or _is_meta(head):
            return None
        body = self.norm.unfold_ref(head)
        if body is None:
            return None
        return self.norm.nf(apply_args(body, args), Unfold.NONE)

    def try_match(self, pat: Term, tgt: Term, metas: dict, sol: dict) -> Optional[dict]:
        for unfold in (Unfold.NONE, Unfold.TRANSPARENT):
            trial = dict(sol)
            p = self.norm.nf(_instantiate(pat, trial), unfold)
            g = self.norm.nf(tgt, unfold)
            try:
                Matcher(metas, trial, self.delta if unfold is Unfold.NONE else None).match(p, g)
            except _NoMatch:
                continue
            return trial
        return None

    # -- proof expressions ---------------------------------------------------------

    def is_proof_name(self, name: str, st: GoalState) -> bool:
        if any(n == name for n, _ in st.vars) or name in dict(st.locals):
            return False
        return (st.hyp(name) is not None or name in self.sig.theorems
                or name in AXIOM_ARITY)

    def is_proof_expr(self, node, st: GoalState) -> bool:
        head = node
        while isinstance(head, S.Apply):
            head = head.fn
        return isinstance(head, S.Name) and self.is_proof_name(head.name, st)

    def proof_expr(self, node, st: GoalState, metas: dict, sol: dict) -> tuple[Proof, Term]:
        """Elaborate a proof expression; metavariables may remain in the result."""
        args = []
        head = node
        while isinstance(head, S.Apply):
            args.append(head.arg)
            head = head.fn
        args.reverse()
        if not isinstance(head, S.Name) or not self.is_proof_name(head.name, st):
            raise UnknownName(f"not a hypothesis, theorem or axiom: {S.format_term(head)}",
                              *_pos(head))
        proof, prop = self.proof_head(head, st)
        for arg in args:
            if self.is_proof_expr(arg, st):
                q, qprop = self.proof_expr(arg, st, metas, sol)
                while True:
                    e = self.norm.expose(_instantiate(prop, sol))
                    if e.tag == ALL:
                        m = self.new_meta(e.domain, metas)
                        proof = AllElim(proof, m)
                        prop = subst(e.body, 0, m)
                        continue
                    if e.tag != IMP:
                        raise ElaborationError(NotAnImplication(
                            f"{self.show(e, st)} takes no proof argument"), *_pos(arg))
                    break
                solved = self.try_match(e.antecedent, _instantiate(qprop, sol), metas, sol)
                if solved is None:
                    raise GoalMismatch(
                        f"argument proves {self.show(_instantiate(qprop, sol), st)}, expected "
                        f"{self.show(_instantiate(e.antecedent, sol), st)}", *_pos(arg))
                sol.update(solved)
                proof = ImpElim(proof, q)
                prop = e.consequent
            else:
                e = self.norm.expose(_instantiate(prop, sol))
                if e.tag != ALL:
                    raise ElaborationError(NotAForall(
                        f"{self.show(e, st)} takes no term argument"), *_pos(arg))
                w, ty = self.term(arg, st)
                if ty != e.domain:
                    raise GoalMismatch(f"term argument has type {ty!r}, expected {e.domain!r}",
                                       *_pos(arg))
                proof = AllElim(proof, w)
                prop = subst(e.body, 0, w)
        return proof, prop

    def proof_head(self, head: S.Name, st: GoalState) -> tuple[Proof, Term]:
        name = head.name
        if head.type_args is None:
            h = st.hyp(name)
            if h is not None:
                return Hyp(name), h
        targs = tuple(desugar_type(a, self.tyvars) for a in head.type_args or ())
        try:
            if name in AXIOM_ARITY:
                return Known(name, targs), builtin_axiom(name, targs)
            thm = self.sig.theorems[name]
            return Known(name, targs), instantiate_types(thm.statement, targs, thm.ty_arity)
        except HotgError as e:
            raise ElaborationError(e, *_pos(head)) from None

    def closed_proof(self, node, st: GoalState) -> tuple[Proof, Term]:
        metas: dict = {}
        sol: dict = {}
        p, prop = self.proof_expr(node, st, metas, sol)
        prop = _instantiate(prop, sol)
        if _has_meta(prop):
            raise GoalMismatch("cannot infer every instance in this proof expression; "
                               "supply the terms explicitly", *_pos(node))
        return _proof_instantiate(p, sol), prop

    # -- steps ---------------------------------------------------------------------

    def run(self, steps, st: GoalState, closing_node=None) -> Proof:
        if not steps:
            raise LeftoverGoals(f"unproved goal: {self.show(st.goal, st)}",
                                *_pos(closing_node))
        step, rest = steps[0], steps[1:]
        try:
            method = getattr(self, "step_" + type(step).__name__)
            return method(step, rest, st)
        except HotgError as e:
            raise _wrap(e, step) from None

    def require_done(self, rest, step) -> None:
        if rest:
            raise GoalMismatch("the goal is already closed", *_pos(rest[0]))

    def step_Let(self, step: S.Let, rest, st: GoalState) -> Proof:
        ty = desugar_type(step.type, self.tyvars) if step.type is not None else None
        return self._intro_vars(list(step.names), ty, step, rest, st)

    def _intro_vars(self, names, ty, step, rest, st):
        if not names:
            return self.run(rest, st, step)
        e = self.norm.expose(st.goal)
        if e.tag != ALL:
            raise GoalMismatch(f"'let' needs a universal goal, not {self.show(st.goal, st)}",
                               *_pos(step))
        if ty is not None and ty != e.domain:
            raise GoalMismatch(f"variable type {ty!r} does not match {e.domain!r}", *_pos(step))
        body = self._intro_vars(names[1:], ty, step, rest, st.push_var(names[0], e.domain, e.body))
        return AllIntro(e.domain, body)

    def step_Assume(self, step: S.Assume, rest, st: GoalState) -> Proof:
        e = self.norm.expose(st.goal)
        if e.tag != IMP:
            raise GoalMismatch(f"'assume' needs an implication, not {self.show(st.goal, st)}",
                               *_pos(step))
        assumed = e.antecedent
        if step.prop is not None:
            given = self.prop(step.prop, st)
            if not self.conv(given, assumed):
                raise GoalMismatch(f"assumption {self.show(given, st)} does not match "
                                   f"{self.show(assumed, st)}", *_pos(step))
            assumed = given
        self.check_fresh_hyp(step.name, st, step)
        body = self.run(rest, st.push_hyp(step.name, assumed, e.consequent), step)
        return ImpIntro(step.name, assumed, body)

    def check_fresh_hyp(self, name, st, node):
        if any(n == name for n, _, _ in st.hyps):
            raise ElaborationError(ShadowedHyp(f"hypothesis {name!r} already in scope"),
                                   *_pos(node))

    def step_Claim(self, step: S.Claim, rest, st: GoalState) -> Proof:
        claimed = self.prop(step.prop, st)
        sub = self.run(step.proof, st.with_goal(claimed), step)
        self.check_fresh_hyp(step.name, st, step)
        body = self.run(rest, st.push_hyp(step.name, claimed, st.goal), step)
        return ImpElim(ImpIntro(step.name, claimed, body), sub)

    def step_SetLocal(self, step: S.SetLocal, rest, st: GoalState) -> Proof:
        t, ty = self.term(step.body, st)
        if step.type is not None and desugar_type(step.type, self.tyvars) != ty:
            raise GoalMismatch(f"'{step.name}' has type {ty!r}", *_pos(step))
        local = Local(t, ty, st.depth)
        st = replace(st, locals=st.locals + ((step.name, local),))
        return self.run(rest, st, step)

    def step_Prove(self, step: S.Prove, rest, st: GoalState) -> Proof:
        p = self.prop(step.prop, st)
        if not self.conv(p, st.goal):
            raise GoalMismatch(f"{self.show(p, st)} is not the goal {self.show(st.goal, st)}",
                               *_pos(step))
        return self.run(rest, st.with_goal(p), step)

    def step_Exact(self, step: S.Exact, rest, st: GoalState) -> Proof:
        self.require_done(rest, step)
        return self.apply(step.expr, (), (), st, step, exact=True)

    def step_ApplyStep(self, step: S.ApplyStep, rest, st: GoalState) -> Proof:
        return self.apply(step.expr, step.blocks, rest, st, step, exact=False)

    def apply(self, expr, blocks, rest, st: GoalState, step, exact: bool) -> Proof:
        metas: dict = {}
        sol: dict = {}
        proof, prop = self.proof_expr(expr, st, metas, sol)
        # peel the fewest layers that make the conclusion match the goal
        layers = []
        cur = prop
        while True:
            solved = self.try_match(cur, st.goal, metas, sol)
            if solved is not None:
                break
            e = self.norm.expose(_instantiate(cur, sol))
            if e.tag == ALL:
                m = self.new_meta(e.domain, metas)
                layers.append(("all", m))
                cur = subst(e.body, 0, m)
            elif e.tag == IMP:
                layers.append(("imp", e.antecedent))
                cur = e.consequent
            else:
                raise GoalMismatch(
                    f"{self.show(_instantiate(prop, sol), st)} does not conclude the goal "
                    f"{self.show(st.goal, st)}", *_pos(step))
        sol = solved
        premises = [_instantiate(a, sol) for kind, a in layers if kind == "imp"]
        for kind, m in layers:
            if kind == "all" and _has_meta(_instantiate(m, sol)):
                raise GoalMismatch("cannot infer every universal instance; "
                                   "supply the terms explicitly", *_pos(step))
        if any(_has_meta(p) for p in premises):
            raise GoalMismatch("cannot infer every universal instance; "
                               "supply the terms explicitly", *_pos(step))
        # instantiated metavariables leave beta redexes behind
        premises = [self.beta(p) for p in premises]
        proof = _proof_instantiate(proof, sol)
        if _proof_has_meta(proof):
            raise GoalMismatch("cannot infer every universal instance; "
                               "supply the terms explicitly", *_pos(step))
        if exact and premises:
            raise LeftoverGoals(f"{len(premises)} premise(s) left: "
                                + "; ".join(self.show(p, st) for p in premises), *_pos(step))
        n_blocks = len(blocks)
        if n_blocks > len(premises):
            raise GoalMismatch(f"{n_blocks} blocks for {len(premises)} premise(s)", *_pos(step))
        if n_blocks < len(premises) - 1 or (n_blocks == len(premises) - 1 and not rest):
            missing = premises[n_blocks:]
            raise LeftoverGoals("unproved premise(s): "
                                + "; ".join(self.show(p, st) for p in missing), *_pos(step))
        if n_blocks == len(premises):
            self.require_done(rest, step)
        subproofs = [self.run(b, st.with_goal(p), step) for b, p in zip(blocks, premises)]
        if n_blocks < len(premises):
            subproofs.append(self.run(rest, st.with_goal(premises[-1]), step))
        it = iter(subproofs)
        for kind, m in layers:
            if kind == "all":
                proof = AllElim(proof, _instantiate(m, sol))
            else:
                proof = ImpElim(proof, next(it))
        return proof

    def step_Witness(self, step: S.Witness, rest, st: GoalState) -> Proof:
        found = self.unfold_to(st.goal, ("ex",))
        if found is None or len(found[2]) != 1:
            raise GoalMismatch(f"'witness' needs an existential goal, not "
                               f"{self.show(st.goal, st)}", *_pos(step))
        _, head, (pred,) = found
        ty = head.type_args[0]
        w, wty = self.term(step.term, st)
        if wty != ty:
            raise GoalMismatch(f"witness has type {wty!r}, expected {ty!r}", *_pos(step))
        new_goal = subst(pred.body, 0, w) if pred.tag == LAM else App(pred, w)
        sub = self.run(rest, st.with_goal(new_goal), step)
        intro = self.lemma("exI", (ty,), step)
        return ImpElim(AllElim(AllElim(intro, pred), w), sub)

    def lemma(self, name: str, targs, node) -> Proof:
        if name not in self.sig.theorems:
            raise UnknownName(f"this step needs the lemma {name!r} (from the prelude)",
                              *_pos(node))
        return Known(name, tuple(targs))

    def step_Cases(self, step: S.Cases, rest, st: GoalState) -> Proof:
        self.require_done(rest, step)
        p, prop = self.closed_proof(step.expr, st)
        found = self.unfold_to(prop, ("or",))
        if found is None or len(found[2]) != 2:
            raise GoalMismatch(f"'cases' needs a disjunction, not {self.show(prop, st)}",
                               *_pos(step))
        a, b = found[2]
        elim = self.lemma("orE", (), step)
        for h in (step.left_name, step.right_name):
            self.check_fresh_hyp(h, st, step)
        left = ImpIntro(step.left_name, a,
                        self.run(step.left, st.push_hyp(step.left_name, a, st.goal), step))
        right = ImpIntro(step.right_name, b,
                         self.run(step.right, st.push_hyp(step.right_name, b, st.goal), step))
        major = AllElim(AllElim(AllElim(elim, a), b), st.goal)
        return ImpElim(ImpElim(ImpElim(major, p), left), right)

    def step_Destruct(self, step: S.Destruct, rest, st: GoalState) -> Proof:
        p, prop = self.closed_proof(step.expr, st)
        found = self.unfold_to(prop, ("and", "ex"))
        first, second = step.names
        if found is None:
            raise GoalMismatch(f"'destruct' needs a conjunction or an existential, not "
                               f"{self.show(prop, st)}", *_pos(step))
        kind, head, args = found
        elim = AllElim(p, st.goal)
        if kind == "and" and len(args) == 2:
            a, b = args
            for h in (first, second):
                self.check_fresh_hyp(h, st, step)
            inner = st.push_hyp(first, a, st.goal)
            inner = inner.push_hyp(second, b, st.goal)
            body = self.run(rest, inner, step)
            return ImpElim(elim, ImpIntro(first, a, ImpIntro(second, b, body)))
        if kind == "ex" and len(args) == 1:
            (pred,) = args
            ty = head.type_args[0]
            self.check_fresh_hyp(second, st, step)
            inner_goal = lift(st.goal, 0, 1)
            hyp = pred.body if pred.tag == LAM else App(lift(pred, 0, 1), Var(0))
            inner = st.push_var(first, ty, inner_goal)
            inner = inner.push_hyp(second, hyp, inner_goal)
            body = self.run(rest, inner, step)
            return ImpElim(elim, AllIntro(ty, ImpIntro(second, hyp, body)))
        raise GoalMismatch(f"cannot destruct {self.show(prop, st)}", *_pos(step))

    def step_Rewrite(self, step: S.Rewrite, rest, st: GoalState) -> Proof:
        p, prop = self.closed_proof(step.expr, st)
        found = self.unfold_to(prop, ("eq",))
        if found is None or len(found[2]) != 2:
            raise GoalMismatch(f"'rewrite' needs an equation, not {self.show(prop, st)}",
                               *_pos(step))
        _, head, (lhs, rhs) = found
        ty = head.type_args[0]
        if step.reverse:
            # replace rhs by lhs: p : Q lhs -> Q rhs with Q := goal[rhs := z]
            pred = _abstract_occurrences(st.goal, rhs, ty)
            if pred is None:
                raise GoalMismatch("the right-hand side does not occur in the goal", *_pos(step))
            new_goal = subst(pred.body, 0, lhs)
            sub = self.run(rest, st.with_goal(new_goal), step)
            return ImpElim(AllElim(p, pred), sub)
        pred = _abstract_occurrences(st.goal, lhs, ty)
        if pred is None:
            raise GoalMismatch("the left-hand side does not occur in the goal", *_pos(step))
        new_goal = subst(pred.body, 0, rhs)
        sub = self.run(rest, st.with_goal(new_goal), step)
        sym = ImpElim(AllElim(AllElim(self.lemma("eq_sym", (ty,), step), lhs), rhs), p)
        return ImpElim(AllElim(sym, pred), sub)


def _proof_has_meta(p: Proof) -> bool:
    if isinstance(p, AllElim):
        return _has_meta(p.witness) or _proof_has_meta(p.fn)
    if isinstance(p, ImpElim):
        return _proof_has_meta(p.major) or _proof_has_meta(p.minor)
    if isinstance(p, (ImpIntro, AllIntro)):
        return _proof_has_meta(p.body)
    return False


def _abstract_occurrences(goal: Term, s: Term, ty: Type) -> Optional[Term]:
    """``λz. goal[s := z]``, or None when ``s`` does not occur."""
    found = False

    def go(t: Term, c: int) -> Term:
        nonlocal found
        if t == (lift(s, 0, c) if c else s):
            found = True
            return Var(c)
        tag = t.tag
        if tag == VAR:
            return Var(t.index + 1) if t.index >= c else t
        if tag == APP:
            return App(go(t.fn, c), go(t.arg, c))
        if tag == IMP:
            return Imp(go(t.antecedent, c), go(t.consequent, c))
        if tag == LAM:
            return Lam(t.domain, go(t.body, c + 1))
        if tag == ALL:
            return All(t.domain, go(t.body, c + 1))
        return t

    body = go(goal, 0)
    return Lam(ty, body) if found else None


def elaborate(goal: Term, steps, sig, tyvars: tuple[str, ...] = (),
              context: tuple = (), hyps: tuple = ()) -> Proof:
    """Turn ``steps`` into a proof of ``goal``; the result is not yet kernel-checked."""
    st = GoalState(goal, tuple(tyvars), tuple(context), tuple(hyps))
    return Elaborator(sig, tuple(tyvars)).run(tuple(steps), st)
