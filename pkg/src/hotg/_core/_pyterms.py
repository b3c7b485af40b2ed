"""Pure-Python term kernel.

Types, de Bruijn terms and the inner loops (shifting, substitution, type
instantiation, beta normalization, eta contraction).  ``_cterms.pyx`` is a
compiled twin of this module with the identical API; ``hotg._core`` picks one
at import time.

Every node caches three facts at construction:

``_hash``
    structural hash, so equality can fail fast;
``fvb``
    one more than the largest free de Bruijn index (0 when closed), which
    lets lift/subst skip untouched subtrees;
``has_tvar``
    whether a type variable occurs, so type instantiation can skip subtrees.
"""

from __future__ import annotations

from ..errors import IndexUnderflow, TVarOutOfScope

BACKEND = "python"

# type tags
T_PROP = 0
T_IND = 1
T_ARROW = 2
T_TVAR = 3

# term tags
VAR = 0
CONST = 1
REF = 2
APP = 3
LAM = 4
IMP = 5
ALL = 6


class Type:
    __slots__ = ("tag", "_hash", "has_tvar")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Type) or self._hash != other._hash or self.tag != other.tag:
            return False
        return self._same(other)

    def _same(self, other):
        return True


class Prop(Type):
    __slots__ = ()

    def __init__(self):
        self.tag = T_PROP
        self._hash = 0x50524F50
        self.has_tvar = False

    def __reduce__(self):
        return (Prop, ())

    def __repr__(self):
        return "Prop()"


class Ind(Type):
    __slots__ = ()

    def __init__(self):
        self.tag = T_IND
        self._hash = 0x494E44
        self.has_tvar = False

    def __reduce__(self):
        return (Ind, ())

    def __repr__(self):
        return "Ind()"


class Arrow(Type):
    __slots__ = ("domain", "codomain")

    def __init__(self, domain, codomain):
        self.tag = T_ARROW
        self.domain = domain
        self.codomain = codomain
        self._hash = hash((T_ARROW, domain._hash, codomain._hash))
        self.has_tvar = domain.has_tvar or codomain.has_tvar

    def _same(self, other):
        return self.domain == other.domain and self.codomain == other.codomain

    def __reduce__(self):
        return (Arrow, (self.domain, self.codomain))

    def __repr__(self):
        return f"Arrow({self.domain!r}, {self.codomain!r})"


class TVar(Type):
    __slots__ = ("index",)

    def __init__(self, index):
        if not 0 <= index < 3:
            raise TVarOutOfScope(f"type variable index {index} outside 0..2")
        self.tag = T_TVAR
        self.index = index
        self._hash = hash((T_TVAR, index))
        self.has_tvar = True

    def _same(self, other):
        return self.index == other.index

    def __reduce__(self):
        return (TVar, (self.index,))

    def __repr__(self):
        return f"TVar({self.index})"


class Term:
    __slots__ = ("tag", "_hash", "fvb", "has_tvar")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term) or self._hash != other._hash or self.tag != other.tag:
            return False
        return self._same(other)


class Var(Term):
    __slots__ = ("index",)

    def __init__(self, index):
        self.tag = VAR
        self.index = index
        self._hash = hash((VAR, index))
        self.fvb = index + 1
        self.has_tvar = False

    def _same(self, other):
        return self.index == other.index

    def __reduce__(self):
        return (Var, (self.index,))

    def __repr__(self):
        return f"Var({self.index})"


class Const(Term):
    __slots__ = ("name", "type_args")

    def __init__(self, name, type_args=()):
        self.tag = CONST
        self.name = name
        self.type_args = tuple(type_args)
        self._hash = hash((CONST, name, self.type_args))
        self.fvb = 0
        self.has_tvar = any(a.has_tvar for a in self.type_args)

    def _same(self, other):
        return self.name == other.name and self.type_args == other.type_args

    def __reduce__(self):
        return (Const, (self.name, self.type_args))

    def __repr__(self):
        if self.type_args:
            return f"Const({self.name!s}, {list(self.type_args)!r})"
        return f"Const({self.name!s})"


class Ref(Term):
    __slots__ = ("name", "type_args")

    def __init__(self, name, type_args=()):
        self.tag = REF
        self.name = name
        self.type_args = tuple(type_args)
        self._hash = hash((REF, name, self.type_args))
        self.fvb = 0
        self.has_tvar = any(a.has_tvar for a in self.type_args)

    def _same(self, other):
        return self.name == other.name and self.type_args == other.type_args

    def __reduce__(self):
        return (Ref, (self.name, self.type_args))

    def __repr__(self):
        if self.type_args:
            return f"Ref({self.name!r}, {list(self.type_args)!r})"
        return f"Ref({self.name!r})"


class App(Term):
    __slots__ = ("fn", "arg")

    def __init__(self, fn, arg):
        self.tag = APP
        self.fn = fn
        self.arg = arg
        self._hash = hash((APP, fn._hash, arg._hash))
        self.fvb = fn.fvb if fn.fvb > arg.fvb else arg.fvb
        self.has_tvar = fn.has_tvar or arg.has_tvar

    def _same(self, other):
        return self.fn == other.fn and self.arg == other.arg

    def __reduce__(self):
        return (App, (self.fn, self.arg))

    def __repr__(self):
        return f"App({self.fn!r}, {self.arg!r})"


class Lam(Term):
    __slots__ = ("domain", "body")

    def __init__(self, domain, body):
        self.tag = LAM
        self.domain = domain
        self.body = body
        self._hash = hash((LAM, domain._hash, body._hash))
        self.fvb = body.fvb - 1 if body.fvb > 0 else 0
        self.has_tvar = domain.has_tvar or body.has_tvar

    def _same(self, other):
        return self.domain == other.domain and self.body == other.body

    def __reduce__(self):
        return (Lam, (self.domain, self.body))

    def __repr__(self):
        return f"Lam({self.domain!r}, {self.body!r})"


class Imp(Term):
    __slots__ = ("antecedent", "consequent")

    def __init__(self, antecedent, consequent):
        self.tag = IMP
        self.antecedent = antecedent
        self.consequent = consequent
        self._hash = hash((IMP, antecedent._hash, consequent._hash))
        a, c = antecedent.fvb, consequent.fvb
        self.fvb = a if a > c else c
        self.has_tvar = antecedent.has_tvar or consequent.has_tvar

    def _same(self, other):
        return self.antecedent == other.antecedent and self.consequent == other.consequent

    def __reduce__(self):
        return (Imp, (self.antecedent, self.consequent))

    def __repr__(self):
        return f"Imp({self.antecedent!r}, {self.consequent!r})"


class All(Term):
    __slots__ = ("domain", "body")

    def __init__(self, domain, body):
        self.tag = ALL
        self.domain = domain
        self.body = body
        self._hash = hash((ALL, domain._hash, body._hash))
        self.fvb = body.fvb - 1 if body.fvb > 0 else 0
        self.has_tvar = domain.has_tvar or body.has_tvar

    def _same(self, other):
        return self.domain == other.domain and self.body == other.body

    def __reduce__(self):
        return (All, (self.domain, self.body))

    def __repr__(self):
        return f"All({self.domain!r}, {self.body!r})"


# -- shifting and substitution ---------------------------------------------------


def lift(t, cutoff, amount):
    """Add ``amount`` to every free index ``>= cutoff``."""
    if amount == 0 or t.fvb <= cutoff:
        return t
    return _lift(t, cutoff, amount)


def _lift(t, c, a):
    if t.fvb <= c:
        return t
    tag = t.tag
    if tag == VAR:
        k = t.index + a
        if k < 0:
            raise IndexUnderflow(f"index {t.index} shifted by {a}")
        return Var(k)
    if tag == APP:
        return App(_lift(t.fn, c, a), _lift(t.arg, c, a))
    if tag == LAM:
        return Lam(t.domain, _lift(t.body, c + 1, a))
    if tag == IMP:
        return Imp(_lift(t.antecedent, c, a), _lift(t.consequent, c, a))
    if tag == ALL:
        return All(t.domain, _lift(t.body, c + 1, a))
    return t


def subst(t, target, u):
    """Replace ``Var(target)`` by ``u`` and close the gap above it."""
    if t.fvb <= target:
        return t
    tag = t.tag
    if tag == VAR:
        i = t.index
        if i == target:
            return lift(u, 0, target)
        return Var(i - 1)
    if tag == APP:
        return App(subst(t.fn, target, u), subst(t.arg, target, u))
    if tag == LAM:
        return Lam(t.domain, subst(t.body, target + 1, u))
    if tag == IMP:
        return Imp(subst(t.antecedent, target, u), subst(t.consequent, target, u))
    if tag == ALL:
        return All(t.domain, subst(t.body, target + 1, u))
    return t


def occurs(t, k):
    """True when ``Var(k)`` occurs free in ``t``."""
    if t.fvb <= k:
        return False
    tag = t.tag
    if tag == VAR:
        return t.index == k
    if tag == APP:
        return occurs(t.fn, k) or occurs(t.arg, k)
    if tag == LAM or tag == ALL:
        return occurs(t.body, k + 1)
    if tag == IMP:
        return occurs(t.antecedent, k) or occurs(t.consequent, k)
    return False


# -- type instantiation ------------------------------------------------------------


def type_inst(ty, args):
    if not ty.has_tvar:
        return ty
    if ty.tag == T_TVAR:
        if ty.index >= len(args):
            raise TVarOutOfScope(f"type variable {ty.index} has no instantiation")
        return args[ty.index]
    return Arrow(type_inst(ty.domain, args), type_inst(ty.codomain, args))


def term_inst(t, args):
    if not t.has_tvar:
        return t
    tag = t.tag
    if tag == CONST:
        return Const(t.name, [type_inst(a, args) for a in t.type_args])
    if tag == REF:
        return Ref(t.name, [type_inst(a, args) for a in t.type_args])
    if tag == APP:
        return App(term_inst(t.fn, args), term_inst(t.arg, args))
    if tag == LAM:
        return Lam(type_inst(t.domain, args), term_inst(t.body, args))
    if tag == IMP:
        return Imp(term_inst(t.antecedent, args), term_inst(t.consequent, args))
    if tag == ALL:
        return All(type_inst(t.domain, args), term_inst(t.body, args))
    return t


# -- normalization -------------------------------------------------------------------


def beta_nf(t, unfold):
    """Beta normal form, head-first.

    ``unfold`` is ``None`` or a callable mapping a Ref node to its instantiated
    body (or ``None`` when the reference must stay folded).
    """
    tag = t.tag
    if tag == VAR or tag == CONST:
        return t
    if tag == REF:
        if unfold is not None:
            b = unfold(t)
            if b is not None:
                return beta_nf(b, unfold)
        return t
    if tag == LAM:
        b = beta_nf(t.body, unfold)
        return t if b is t.body else Lam(t.domain, b)
    if tag == IMP:
        a = beta_nf(t.antecedent, unfold)
        c = beta_nf(t.consequent, unfold)
        if a is t.antecedent and c is t.consequent:
            return t
        return Imp(a, c)
    if tag == ALL:
        b = beta_nf(t.body, unfold)
        return t if b is t.body else All(t.domain, b)
    # application spine; stack[-1] is the next argument
    stack = []
    h = t
    while True:
        tag = h.tag
        if tag == APP:
            stack.append(h.arg)
            h = h.fn
        elif tag == LAM and stack:
            h = subst(h.body, 0, stack.pop())
        elif tag == REF and unfold is not None:
            b = unfold(h)
            if b is None:
                break
            h = b
        else:
            break
    tag = h.tag
    if tag == LAM or tag == IMP or tag == ALL:
        h = beta_nf(h, unfold)
    while stack:
        h = App(h, beta_nf(stack.pop(), unfold))
    return h


def eta_contract(t):
    """Contract ``fun x => s x`` to ``s`` bottom-up (input must be beta normal)."""
    tag = t.tag
    if tag == LAM:
        b = eta_contract(t.body)
        if b.tag == APP:
            arg = b.arg
            if arg.tag == VAR and arg.index == 0 and not occurs(b.fn, 0):
                return lift(b.fn, 0, -1)
        return t if b is t.body else Lam(t.domain, b)
    if tag == APP:
        f = eta_contract(t.fn)
        a = eta_contract(t.arg)
        return t if f is t.fn and a is t.arg else App(f, a)
    if tag == IMP:
        a = eta_contract(t.antecedent)
        c = eta_contract(t.consequent)
        if a is t.antecedent and c is t.consequent:
            return t
        return Imp(a, c)
    if tag == ALL:
        b = eta_contract(t.body)
        return t if b is t.body else All(t.domain, b)
    return t


def nf(t, unfold):
    return eta_contract(beta_nf(t, unfold))


def size(t):
    tag = t.tag
    if tag == APP:
        return 1 + size(t.fn) + size(t.arg)
    if tag == LAM or tag == ALL:
        return 1 + size(t.body)
    if tag == IMP:
        return 1 + size(t.antecedent) + size(t.consequent)
    return 1
