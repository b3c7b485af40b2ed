"""Brute-force evaluation of first-order set sentences over hereditarily finite sets.

This module is test tooling.  Nothing in the kernel, the elaborator or the
bundled articles imports it; it only gives the test suite an independent,
semantic way to confirm that a closed sentence about small sets is true.

Sets are plain ``frozenset`` values, so extensional equality is Python
equality.  Sentences are written in the article surface syntax and parsed
with :func:`hotg.syntax.parse_term`.  Unbounded quantifiers over ``set``
range over the finite level ``V_rank`` of the cumulative hierarchy, where
``V_0`` is empty and ``V_(n+1)`` is the power set of ``V_n``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import chain, combinations
from typing import Callable, Mapping, Union

from .errors import BudgetExceeded
from .syntax import parse_term
from .syntax import surface as S

HFSet = frozenset
Value = Union[HFSet, bool, Callable]

MAX_RANK = 5
# Power sets beyond 2**16 members are refused; V_5 itself is exactly that big.
MAX_POWER_EXPONENT = 16

EMPTY: HFSet = frozenset()


def power(x: HFSet) -> HFSet:
    if len(x) > MAX_POWER_EXPONENT:
        raise BudgetExceeded(f"power set of a {len(x)}-element set is over budget")
    items = sorted(x, key=_sort_key)
    subsets = chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))
    return frozenset(frozenset(s) for s in subsets)


def union(x: HFSet) -> HFSet:
    return frozenset().union(*x)


@lru_cache(maxsize=None)
def v_level(n: int) -> HFSet:
    """``V_n``: empty for ``n = 0``, otherwise the power set of ``V_(n-1)``."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    if n > MAX_RANK:
        raise BudgetExceeded(f"rank {n} exceeds the oracle budget of {MAX_RANK}")
    return EMPTY if n == 0 else power(v_level(n - 1))


def rank(x: HFSet) -> int:
    """The least ``n`` with ``x`` a member of ``V_(n+1)``."""
    return 1 + max((rank(y) for y in x), default=-1)


def _sort_key(x: HFSet):
    return (rank(x), len(x), sorted(_sort_key(y) for y in x))


def show(x: HFSet) -> str:
    """Readable text such as ``{{}, {{}}}``."""
    return "{" + ", ".join(show(y) for y in sorted(x, key=_sort_key)) + "}"


# -- evaluation -------------------------------------------------------------------


def _builtin_fn(arity: int, fn: Callable) -> Callable:
    """Curry ``fn`` so surface applications can feed it one argument at a time."""
    def take(args):
        if len(args) == arity:
            return fn(*args)
        return lambda a: take(args + (a,))
    return take(())


def _sep(x: HFSet, p: Callable) -> HFSet:
    return frozenset(y for y in x if p(y))


def _repl(x: HFSet, f: Callable) -> HFSet:
    return frozenset(f(y) for y in x)


def _trans(u: HFSet) -> bool:
    return all(x <= u for x in u)


BUILTINS: Mapping[str, Value] = {
    "Empty": EMPTY,
    "True": True,
    "False": False,
    "Power": power,
    "Union": union,
    "Sing": lambda x: frozenset((x,)),
    "UPair": _builtin_fn(2, lambda x, y: frozenset((x, y))),
    "Sep": _builtin_fn(2, _sep),
    "Repl": _builtin_fn(2, _repl),
    "ReplSep": _builtin_fn(3, lambda x, p, f: _repl(_sep(x, p), f)),
    "Subq": _builtin_fn(2, lambda x, y: x <= y),
    "TransSet": _trans,
    "ordinal": lambda a: _trans(a) and all(_trans(b) for b in a),
    "famunion": _builtin_fn(2, lambda x, f: union(_repl(x, f))),
    "kpair": _builtin_fn(2, lambda x, y: frozenset((frozenset((x,)), frozenset((x, y))))),
}


class Evaluator:
    """Evaluates surface terms with unbounded ``set`` quantifiers over ``V_rank``."""

    def __init__(self, rank_bound: int):
        self.universe = v_level(rank_bound)

    def domain(self, ty) -> tuple:
        if ty is None or (isinstance(ty, S.TyName) and ty.name == "set"):
            return tuple(self.universe)
        if isinstance(ty, S.TyName) and ty.name == "prop":
            return (False, True)
        raise BudgetExceeded(f"cannot enumerate a domain of type {S.format_type(ty)}")

    def eval(self, t, env: Mapping[str, Value]) -> Value:
        method = getattr(self, "_" + type(t).__name__, None)
        if method is None:
            raise ValueError(f"unsupported construct: {S.format_term(t)}")
        return method(t, env)

    def _Name(self, t, env):
        if t.name in env:
            return env[t.name]
        if t.name in BUILTINS:
            return BUILTINS[t.name]
        raise ValueError(f"unknown name {t.name!r}")

    def _Apply(self, t, env):
        return self.eval(t.fn, env)(self.eval(t.arg, env))

    def _Not(self, t, env):
        return not self.eval(t.arg, env)

    def _Infix(self, t, env):
        op = t.op
        left = self.eval(t.left, env)
        if op == "/\\":
            return left and self.eval(t.right, env)
        if op == "\\/":
            return left or self.eval(t.right, env)
        if op == "->":
            return (not left) or self.eval(t.right, env)
        right = self.eval(t.right, env)
        if op == "<->":
            return left == right
        if op == "=":
            return left == right
        if op == "<>":
            return left != right
        if op == ":e":
            return left in right
        if op == "/:e":
            return left not in right
        if op == "c=":
            return left <= right
        raise ValueError(f"unsupported operator {op!r}")

    def _SetSing(self, t, env):
        return frozenset((self.eval(t.elem, env),))

    def _SetPair(self, t, env):
        return frozenset((self.eval(t.left, env), self.eval(t.right, env)))

    def _SetRepl(self, t, env):
        return frozenset(self.eval(t.expr, {**env, t.var: y}) for y in self.eval(t.set, env))

    def _SetSep(self, t, env):
        return frozenset(y for y in self.eval(t.set, env) if self.eval(t.pred, {**env, t.var: y}))

    def _SetReplSep(self, t, env):
        return frozenset(self.eval(t.expr, {**env, t.var: y}) for y in self.eval(t.set, env)
                         if self.eval(t.pred, {**env, t.var: y}))

    def _Binder(self, t, env):
        if t.kind == "fun":
            return self._lambda(t.names, t.body, env)
        if t.kind == "some":
            raise ValueError("choice terms have no canonical finite value")
        if t.bound is None:
            ranges = [self.domain(t.type)] * len(t.names)
        else:
            rel, bound = t.bound
            # each name is bounded by the set evaluated in the outer scope
            base = self.eval(bound, env)
            members = tuple(base) if rel == ":e" else tuple(power(base))
            ranges = [members] * len(t.names)
        want_all = t.kind == "forall"
        return self._quantify(t.names, ranges, t.body, dict(env), want_all)

    def _quantify(self, names, ranges, body, env, want_all):
        if not names:
            return bool(self.eval(body, env))
        for v in ranges[0]:
            env[names[0]] = v
            if self._quantify(names[1:], ranges[1:], body, env, want_all) != want_all:
                return not want_all
        return want_all

    def _lambda(self, names, body, env):
        if len(names) == 1:
            return lambda v: self.eval(body, {**env, names[0]: v})
        return lambda v: self._lambda(names[1:], body, {**env, names[0]: v})


def hf_eval(sentence, rank_bound: int) -> bool:
    """Truth of a closed sentence when unbounded set quantifiers range over ``V_rank_bound``.

    ``sentence`` is surface text or an already parsed term.  Ranks above
    :data:`MAX_RANK` and power sets too large to enumerate raise
    :class:`~hotg.errors.BudgetExceeded`.
    """
    if not 0 <= rank_bound <= MAX_RANK:
        raise BudgetExceeded(f"rank bound {rank_bound} outside 0..{MAX_RANK}")
    term = parse_term(sentence) if isinstance(sentence, str) else sentence
    value = Evaluator(rank_bound).eval(term, {})
    if not isinstance(value, bool):
        raise ValueError("not a sentence: it evaluates to a set or function")
    return value
