"""The fixed axiom set.

Statements use only the primitive formers (implication, universal
quantification and the seven constants); derived connectives appear in their
impredicative encodings, which the prelude definitions unfold to.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Sequence, Union

from ..errors import UnknownAxiom
from ..terms import IND, PROP, Term, TVar, Type, arrows, beta_eta_nf, instantiate_types
from .builder import (
    app, build, conj, const, eq, exists, forall, iff, imp, mem, neg, subq,
    transset, zf_closed,
)


class AxiomName(str, enum.Enum):
    PropExt = "PropExt"
    FuncExt = "FuncExt"
    Choice = "Choice"
    SetExt = "SetExt"
    InInduction = "InInduction"
    EmptyAx = "EmptyAx"
    UnionAx = "UnionAx"
    PowerAx = "PowerAx"
    ReplacementAx = "ReplacementAx"
    UnivIn = "UnivIn"
    UnivTrans = "UnivTrans"
    UnivZFClosed = "UnivZFClosed"
    UnivMin = "UnivMin"

    def __str__(self) -> str:
        return self.value


AXIOM_ARITY: dict[str, int] = {a.value: 0 for a in AxiomName}
AXIOM_ARITY["FuncExt"] = 2
AXIOM_ARITY["Choice"] = 1

_A, _B = TVar(0), TVar(1)
_SET_FN = arrows(IND, IND)


def _schemas():
    yield "PropExt", forall(PROP, lambda p: forall(PROP, lambda q: imp(
        iff(p, q), eq(PROP, p, q))))
    yield "FuncExt", forall(arrows(_A, _B), lambda f: forall(arrows(_A, _B), lambda g: imp(
        forall(_A, lambda x: eq(_B, app(f, x), app(g, x))),
        eq(arrows(_A, _B), f, g))))
    yield "Choice", forall(arrows(_A, PROP), lambda p: forall(_A, lambda x: imp(
        app(p, x),
        app(p, app(const("Eps", _A), p)))))
    yield "SetExt", forall(IND, lambda x: forall(IND, lambda y: imp(
        subq(x, y), subq(y, x), eq(IND, x, y))))
    yield "InInduction", forall(arrows(IND, PROP), lambda p: imp(
        forall(IND, lambda big: imp(
            forall(IND, lambda x: imp(mem(x, big), app(p, x))),
            app(p, big))),
        forall(IND, lambda big: app(p, big))))
    yield "EmptyAx", neg(exists(IND, lambda x: mem(x, const("Empty"))))
    yield "UnionAx", forall(IND, lambda big: forall(IND, lambda x: iff(
        mem(x, app(const("Union"), big)),
        exists(IND, lambda y: conj(mem(x, y), mem(y, big))))))
    yield "PowerAx", forall(IND, lambda x: forall(IND, lambda y: iff(
        mem(y, app(const("Power"), x)), subq(y, x))))
    yield "ReplacementAx", forall(IND, lambda big: forall(_SET_FN, lambda f: forall(IND, lambda y: iff(
        mem(y, app(const("Repl"), big, f)),
        exists(IND, lambda x: conj(mem(x, big), eq(IND, y, app(f, x))))))))
    yield "UnivIn", forall(IND, lambda n: mem(n, app(const("UnivOf"), n)))
    yield "UnivTrans", forall(IND, lambda n: transset(app(const("UnivOf"), n)))
    yield "UnivZFClosed", forall(IND, lambda n: zf_closed(app(const("UnivOf"), n)))
    yield "UnivMin", forall(IND, lambda n: forall(IND, lambda u: imp(
        mem(n, u), transset(u), zf_closed(u), subq(app(const("UnivOf"), n), u))))


@lru_cache(maxsize=None)
def _schema_table() -> dict[str, Term]:
    return {name: beta_eta_nf(build(b)) for name, b in _schemas()}


def axiom_schema(name: Union[str, AxiomName]) -> Term:
    """The statement with type variables left uninstantiated."""
    key = str(name)
    try:
        return _schema_table()[key]
    except KeyError:
        raise UnknownAxiom(f"no built-in axiom named {key!r}") from None


def builtin_axiom(name: Union[str, AxiomName], type_args: Sequence[Type] = ()) -> Term:
    """The closed proposition of axiom ``name`` at the given types."""
    schema = axiom_schema(name)
    return instantiate_types(schema, tuple(type_args), AXIOM_ARITY[str(name)])


def is_axiom(name: str) -> bool:
    return name in AXIOM_ARITY
