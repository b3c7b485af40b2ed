# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled term kernel.

Same API and the same results as ``_pyterms``; node classes are extension
types with C-level fields and the recursive inner loops are typed ``cdef``
functions.
"""

from ..errors import IndexUnderflow, TVarOutOfScope

BACKEND = "cython"

T_PROP = 0
T_IND = 1
T_ARROW = 2
T_TVAR = 3

VAR = 0
CONST = 1
REF = 2
APP = 3
LAM = 4
IMP = 5
ALL = 6

cdef enum:
    _VAR = 0
    _CONST = 1
    _REF = 2
    _APP = 3
    _LAM = 4
    _IMP = 5
    _ALL = 6
    _T_ARROW = 2
    _T_TVAR = 3


cdef class Type:
    cdef readonly int tag
    cdef readonly Py_hash_t _hash
    cdef readonly bint has_tvar

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Type):
            return False
        cdef Type o = <Type>other
        if self._hash != o._hash or self.tag != o.tag:
            return False
        return self._same(o)

    def __ne__(self, other):
        return not self.__eq__(other)

    cpdef bint _same(self, Type other):
        return True


cdef class Prop(Type):
    def __init__(self):
        self.tag = T_PROP
        self._hash = 0x50524F50
        self.has_tvar = False

    def __reduce__(self):
        return (Prop, ())

    def __repr__(self):
        return "Prop()"


cdef class Ind(Type):
    def __init__(self):
        self.tag = T_IND
        self._hash = 0x494E44
        self.has_tvar = False

    def __reduce__(self):
        return (Ind, ())

    def __repr__(self):
        return "Ind()"


cdef class Arrow(Type):
    cdef readonly Type domain
    cdef readonly Type codomain

    def __init__(self, Type domain, Type codomain):
        self.tag = T_ARROW
        self.domain = domain
        self.codomain = codomain
        self._hash = hash((T_ARROW, domain._hash, codomain._hash))
        self.has_tvar = domain.has_tvar or codomain.has_tvar

    cpdef bint _same(self, Type other):
        cdef Arrow o = <Arrow>other
        return self.domain == o.domain and self.codomain == o.codomain

    def __reduce__(self):
        return (Arrow, (self.domain, self.codomain))

    def __repr__(self):
        return f"Arrow({self.domain!r}, {self.codomain!r})"


cdef class TVar(Type):
    cdef readonly int index

    def __init__(self, int index):
        if not 0 <= index < 3:
            raise TVarOutOfScope(f"type variable index {index} outside 0..2")
        self.tag = T_TVAR
        self.index = index
        self._hash = hash((T_TVAR, index))
        self.has_tvar = True

    cpdef bint _same(self, Type other):
        return self.index == (<TVar>other).index

    def __reduce__(self):
        return (TVar, (self.index,))

    def __repr__(self):
        return f"TVar({self.index})"


cdef class Term:
    cdef readonly int tag
    cdef readonly Py_hash_t _hash
    cdef readonly long fvb
    cdef readonly bint has_tvar

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return False
        cdef Term o = <Term>other
        if self._hash != o._hash or self.tag != o.tag:
            return False
        return self._same(o)

    def __ne__(self, other):
        return not self.__eq__(other)

    cpdef bint _same(self, Term other):
        return True


cdef class Var(Term):
    cdef readonly long index

    def __init__(self, long index):
        self.tag = _VAR
        self.index = index
        self._hash = hash((VAR, index))
        self.fvb = index + 1
        self.has_tvar = False

    cpdef bint _same(self, Term other):
        return self.index == (<Var>other).index

    def __reduce__(self):
        return (Var, (self.index,))

    def __repr__(self):
        return f"Var({self.index})"


cdef class Const(Term):
    cdef readonly object name
    cdef readonly tuple type_args

    def __init__(self, name, type_args=()):
        self.tag = _CONST
        self.name = name
        self.type_args = tuple(type_args)
        self._hash = hash((CONST, name, self.type_args))
        self.fvb = 0
        self.has_tvar = any((<Type>a).has_tvar for a in self.type_args)

    cpdef bint _same(self, Term other):
        cdef Const o = <Const>other
        return self.name == o.name and self.type_args == o.type_args

    def __reduce__(self):
        return (Const, (self.name, self.type_args))

    def __repr__(self):
        if self.type_args:
            return f"Const({self.name!s}, {list(self.type_args)!r})"
        return f"Const({self.name!s})"


cdef class Ref(Term):
    cdef readonly object name
    cdef readonly tuple type_args

    def __init__(self, name, type_args=()):
        self.tag = _REF
        self.name = name
        self.type_args = tuple(type_args)
        self._hash = hash((REF, name, self.type_args))
        self.fvb = 0
        self.has_tvar = any((<Type>a).has_tvar for a in self.type_args)

    cpdef bint _same(self, Term other):
        cdef Ref o = <Ref>other
        return self.name == o.name and self.type_args == o.type_args

    def __reduce__(self):
        return (Ref, (self.name, self.type_args))

    def __repr__(self):
        if self.type_args:
            return f"Ref({self.name!r}, {list(self.type_args)!r})"
        return f"Ref({self.name!r})"


cdef class App(Term):
    cdef readonly Term fn
    cdef readonly Term arg

    def __init__(self, Term fn, Term arg):
        self.tag = _APP
        self.fn = fn
        self.arg = arg
        self._hash = hash((APP, fn._hash, arg._hash))
        self.fvb = fn.fvb if fn.fvb > arg.fvb else arg.fvb
        self.has_tvar = fn.has_tvar or arg.has_tvar

    cpdef bint _same(self, Term other):
        cdef App o = <App>other
        return self.fn == o.fn and self.arg == o.arg

    def __reduce__(self):
        return (App, (self.fn, self.arg))

    def __repr__(self):
        return f"App({self.fn!r}, {self.arg!r})"


cdef class Lam(Term):
    cdef readonly Type domain
    cdef readonly Term body

    def __init__(self, Type domain, Term body):
        self.tag = _LAM
        self.domain = domain
        self.body = body
        self._hash = hash((LAM, domain._hash, body._hash))
        self.fvb = body.fvb - 1 if body.fvb > 0 else 0
        self.has_tvar = domain.has_tvar or body.has_tvar

    cpdef bint _same(self, Term other):
        cdef Lam o = <Lam>other
        return self.domain == o.domain and self.body == o.body

    def __reduce__(self):
        return (Lam, (self.domain, self.body))

    def __repr__(self):
        return f"Lam({self.domain!r}, {self.body!r})"


cdef class Imp(Term):
    cdef readonly Term antecedent
    cdef readonly Term consequent

    def __init__(self, Term antecedent, Term consequent):
        self.tag = _IMP
        self.antecedent = antecedent
        self.consequent = consequent
        self._hash = hash((IMP, antecedent._hash, consequent._hash))
        self.fvb = antecedent.fvb if antecedent.fvb > consequent.fvb else consequent.fvb
        self.has_tvar = antecedent.has_tvar or consequent.has_tvar

    cpdef bint _same(self, Term other):
        cdef Imp o = <Imp>other
        return self.antecedent == o.antecedent and self.consequent == o.consequent

    def __reduce__(self):
        return (Imp, (self.antecedent, self.consequent))

    def __repr__(self):
        return f"Imp({self.antecedent!r}, {self.consequent!r})"


cdef class All(Term):
    cdef readonly Type domain
    cdef readonly Term body

    def __init__(self, Type domain, Term body):
        self.tag = _ALL
        self.domain = domain
        self.body = body
        self._hash = hash((ALL, domain._hash, body._hash))
        self.fvb = body.fvb - 1 if body.fvb > 0 else 0
        self.has_tvar = domain.has_tvar or body.has_tvar

    cpdef bint _same(self, Term other):
        cdef All o = <All>other
        return self.domain == o.domain and self.body == o.body

    def __reduce__(self):
        return (All, (self.domain, self.body))

    def __repr__(self):
        return f"All({self.domain!r}, {self.body!r})"


# -- shifting and substitution ---------------------------------------------------


cdef Term _lift(Term t, long c, long a):
    if t.fvb <= c:
        return t
    cdef int tag = t.tag
    cdef long k
    if tag == _VAR:
        k = (<Var>t).index + a
        if k < 0:
            raise IndexUnderflow(f"index {(<Var>t).index} shifted by {a}")
        return Var(k)
    if tag == _APP:
        return App(_lift((<App>t).fn, c, a), _lift((<App>t).arg, c, a))
    if tag == _LAM:
        return Lam((<Lam>t).domain, _lift((<Lam>t).body, c + 1, a))
    if tag == _IMP:
        return Imp(_lift((<Imp>t).antecedent, c, a), _lift((<Imp>t).consequent, c, a))
    if tag == _ALL:
        return All((<All>t).domain, _lift((<All>t).body, c + 1, a))
    return t


cpdef Term lift(Term t, long cutoff, long amount):
    """Add ``amount`` to every free index ``>= cutoff``."""
    if amount == 0 or t.fvb <= cutoff:
        return t
    return _lift(t, cutoff, amount)


cdef Term _subst(Term t, long target, Term u):
    if t.fvb <= target:
        return t
    cdef int tag = t.tag
    cdef long i
    if tag == _VAR:
        i = (<Var>t).index
        if i == target:
            return lift(u, 0, target)
        return Var(i - 1)
    if tag == _APP:
        return App(_subst((<App>t).fn, target, u), _subst((<App>t).arg, target, u))
    if tag == _LAM:
        return Lam((<Lam>t).domain, _subst((<Lam>t).body, target + 1, u))
    if tag == _IMP:
        return Imp(_subst((<Imp>t).antecedent, target, u),
                   _subst((<Imp>t).consequent, target, u))
    if tag == _ALL:
        return All((<All>t).domain, _subst((<All>t).body, target + 1, u))
    return t


cpdef Term subst(Term t, long target, Term u):
    """Replace ``Var(target)`` by ``u`` and close the gap above it."""
    return _subst(t, target, u)


cdef bint _occurs(Term t, long k):
    if t.fvb <= k:
        return False
    cdef int tag = t.tag
    if tag == _VAR:
        return (<Var>t).index == k
    if tag == _APP:
        return _occurs((<App>t).fn, k) or _occurs((<App>t).arg, k)
    if tag == _LAM:
        return _occurs((<Lam>t).body, k + 1)
    if tag == _ALL:
        return _occurs((<All>t).body, k + 1)
    if tag == _IMP:
        return _occurs((<Imp>t).antecedent, k) or _occurs((<Imp>t).consequent, k)
    return False


cpdef bint occurs(Term t, long k):
    """True when ``Var(k)`` occurs free in ``t``."""
    return _occurs(t, k)


# -- type instantiation ------------------------------------------------------------


cpdef Type type_inst(Type ty, args):
    if not ty.has_tvar:
        return ty
    if ty.tag == _T_TVAR:
        if (<TVar>ty).index >= len(args):
            raise TVarOutOfScope(f"type variable {(<TVar>ty).index} has no instantiation")
        return args[(<TVar>ty).index]
    return Arrow(type_inst((<Arrow>ty).domain, args), type_inst((<Arrow>ty).codomain, args))


cpdef Term term_inst(Term t, args):
    if not t.has_tvar:
        return t
    cdef int tag = t.tag
    if tag == _CONST:
        return Const((<Const>t).name, [type_inst(a, args) for a in (<Const>t).type_args])
    if tag == _REF:
        return Ref((<Ref>t).name, [type_inst(a, args) for a in (<Ref>t).type_args])
    if tag == _APP:
        return App(term_inst((<App>t).fn, args), term_inst((<App>t).arg, args))
    if tag == _LAM:
        return Lam(type_inst((<Lam>t).domain, args), term_inst((<Lam>t).body, args))
    if tag == _IMP:
        return Imp(term_inst((<Imp>t).antecedent, args), term_inst((<Imp>t).consequent, args))
    if tag == _ALL:
        return All(type_inst((<All>t).domain, args), term_inst((<All>t).body, args))
    return t


# -- normalization -------------------------------------------------------------------


cpdef Term beta_nf(Term t, unfold):
    """Beta normal form, head-first; ``unfold`` maps a Ref to its body or None."""
    cdef int tag = t.tag
    cdef Term a, c, b, h
    cdef list stack
    if tag == _VAR or tag == _CONST:
        return t
    if tag == _REF:
        if unfold is not None:
            r = unfold(t)
            if r is not None:
                return beta_nf(<Term>r, unfold)
        return t
    if tag == _LAM:
        b = beta_nf((<Lam>t).body, unfold)
        return t if b is (<Lam>t).body else Lam((<Lam>t).domain, b)
    if tag == _IMP:
        a = beta_nf((<Imp>t).antecedent, unfold)
        c = beta_nf((<Imp>t).consequent, unfold)
        if a is (<Imp>t).antecedent and c is (<Imp>t).consequent:
            return t
        return Imp(a, c)
    if tag == _ALL:
        b = beta_nf((<All>t).body, unfold)
        return t if b is (<All>t).body else All((<All>t).domain, b)
    stack = []
    h = t
    while True:
        tag = h.tag
        if tag == _APP:
            stack.append((<App>h).arg)
            h = (<App>h).fn
        elif tag == _LAM and stack:
            h = _subst((<Lam>h).body, 0, <Term>stack.pop())
        elif tag == _REF and unfold is not None:
            r = unfold(h)
            if r is None:
                break
            h = <Term>r
        else:
            break
    tag = h.tag
    if tag == _LAM or tag == _IMP or tag == _ALL:
        h = beta_nf(h, unfold)
    while stack:
        h = App(h, beta_nf(<Term>stack.pop(), unfold))
    return h


cpdef Term eta_contract(Term t):
    """Contract ``fun x => s x`` to ``s`` bottom-up (input must be beta normal)."""
    cdef int tag = t.tag
    cdef Term a, c, b, f, arg
    if tag == _LAM:
        b = eta_contract((<Lam>t).body)
        if b.tag == _APP:
            arg = (<App>b).arg
            if arg.tag == _VAR and (<Var>arg).index == 0 and not _occurs((<App>b).fn, 0):
                return lift((<App>b).fn, 0, -1)
        return t if b is (<Lam>t).body else Lam((<Lam>t).domain, b)
    if tag == _APP:
        f = eta_contract((<App>t).fn)
        a = eta_contract((<App>t).arg)
        return t if f is (<App>t).fn and a is (<App>t).arg else App(f, a)
    if tag == _IMP:
        a = eta_contract((<Imp>t).antecedent)
        c = eta_contract((<Imp>t).consequent)
        if a is (<Imp>t).antecedent and c is (<Imp>t).consequent:
            return t
        return Imp(a, c)
    if tag == _ALL:
        b = eta_contract((<All>t).body)
        return t if b is (<All>t).body else All((<All>t).domain, b)
    return t


cpdef Term nf(Term t, unfold):
    return eta_contract(beta_nf(t, unfold))


cpdef long size(Term t):
    cdef int tag = t.tag
    if tag == _APP:
        return 1 + size((<App>t).fn) + size((<App>t).arg)
    if tag == _LAM:
        return 1 + size((<Lam>t).body)
    if tag == _ALL:
        return 1 + size((<All>t).body)
    if tag == _IMP:
        return 1 + size((<Imp>t).antecedent) + size((<Imp>t).consequent)
    return 1
