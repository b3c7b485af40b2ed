"""Proof terms, one constructor per non-conversion rule of natural deduction.

Conversion has no node of its own: wherever two propositions meet they are
compared up to beta-eta (with transparent definitions unfolded).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..terms import Term, Type


@dataclass(frozen=True)
class Hyp:
    name: str


@dataclass(frozen=True)
class Known:
    """A built-in axiom or an earlier theorem, at explicit types."""

    name: str
    type_args: tuple[Type, ...] = ()


@dataclass(frozen=True)
class ImpIntro:
    hyp_name: str
    assumed: Term
    body: "Proof"


@dataclass(frozen=True)
class ImpElim:
    major: "Proof"
    minor: "Proof"


@dataclass(frozen=True)
class AllIntro:
    domain: Type
    body: "Proof"


@dataclass(frozen=True)
class AllElim:
    fn: "Proof"
    witness: Term


Proof = Union[Hyp, Known, ImpIntro, ImpElim, AllIntro, AllElim]


def proof_size(p: Proof) -> int:
    if isinstance(p, ImpIntro):
        return 1 + proof_size(p.body)
    if isinstance(p, ImpElim):
        return 1 + proof_size(p.major) + proof_size(p.minor)
    if isinstance(p, AllIntro):
        return 1 + proof_size(p.body)
    if isinstance(p, AllElim):
        return 1 + proof_size(p.fn)
    return 1
