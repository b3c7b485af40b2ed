"""The append-only environment of definitions and theorems."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

from ..errors import (
    ArityTooLarge, DuplicateName, IllTyped, InvalidName, ProofDoesNotMatchStatement, TrustDisabled,
)
from ..terms import (
    MAX_TYPE_VARS, PROP, ConstName, Normalizer, Term, Type, TypingContext, check_type,
    type_of,
)
from .axioms import AXIOM_ARITY
from .checker import check_proof
from .proof import Proof

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_'.]*\Z")


class Opacity(str, enum.Enum):
    TRANSPARENT = "transparent"
    OPAQUE = "opaque"


class Provenance(str, enum.Enum):
    PROVED = "proved"
    TRUSTED = "trusted-import"


@dataclass(frozen=True)
class Definition:
    name: str
    ty_arity: int
    type: Type
    body: Term
    opacity: Opacity = Opacity.TRANSPARENT

    @property
    def transparent(self) -> bool:
        return self.opacity is Opacity.TRANSPARENT


@dataclass(frozen=True)
class Theorem:
    name: str
    ty_arity: int
    statement: Term
    proof: Optional[Proof]
    provenance: Provenance = Provenance.PROVED


Entry = Union[Definition, Theorem]


class Signature:
    """Checked definitions and theorems, in declaration order.

    Every ``add_*`` method checks its input and returns a new signature; the
    receiver is left untouched.  ``allow_trusted`` is the session's trust
    switch for statements accepted without proof.
    """

    def __init__(self, allow_trusted: bool = False):
        self.allow_trusted = allow_trusted
        self._defs: dict[str, Definition] = {}
        self._thms: dict[str, Theorem] = {}
        self._entries: tuple[Entry, ...] = ()
        self.normalizer = Normalizer(self._defs)

    # -- views --------------------------------------------------------------------

    @property
    def definitions(self) -> Mapping[str, Definition]:
        return MappingProxyType(self._defs)

    @property
    def theorems(self) -> Mapping[str, Theorem]:
        return MappingProxyType(self._thms)

    @property
    def entries(self) -> tuple[Entry, ...]:
        return self._entries

    @property
    def trusted_names(self) -> list[str]:
        return [t.name for t in self._thms.values() if t.provenance is Provenance.TRUSTED]

    @property
    def proved_names(self) -> list[str]:
        return [t.name for t in self._thms.values() if t.provenance is Provenance.PROVED]

    def __contains__(self, name: str) -> bool:
        return name in self._defs or name in self._thms

    def __len__(self) -> int:
        return len(self._entries)

    # -- extension ------------------------------------------------------------------

    def _extend(self, entry: Entry) -> "Signature":
        new = Signature.__new__(Signature)
        new.allow_trusted = self.allow_trusted
        new._defs = dict(self._defs)
        new._thms = dict(self._thms)
        if isinstance(entry, Definition):
            new._defs[entry.name] = entry
        else:
            new._thms[entry.name] = entry
        new._entries = self._entries + (entry,)
        new.normalizer = Normalizer(new._defs, parent=self.normalizer)
        return new

    def _check_name(self, name: str, ty_arity: int) -> None:
        if not NAME_RE.match(name):
            raise InvalidName(f"invalid name {name!r}")
        if name in self or name in AXIOM_ARITY or name in ConstName.__members__:
            raise DuplicateName(f"name {name!r} already declared")
        if not 0 <= ty_arity <= MAX_TYPE_VARS:
            raise ArityTooLarge(f"{name}: {ty_arity} type variables (at most {MAX_TYPE_VARS})")

    def _check_statement(self, name: str, ty_arity: int, statement: Term) -> None:
        ty = type_of(TypingContext(ty_arity), self._defs, statement)
        if ty != PROP:
            raise IllTyped(f"{name}: statement has type {ty!r}, not prop")

    def add_definition(self, name: str, ty_arity: int, declared_type: Type, body: Term,
                       opacity: Opacity = Opacity.TRANSPARENT) -> "Signature":
        self._check_name(name, ty_arity)
        check_type(declared_type, ty_arity)
        ty = type_of(TypingContext(ty_arity), self._defs, body)
        if ty != declared_type:
            raise IllTyped(f"{name}: body has type {ty!r}, declared {declared_type!r}")
        return self._extend(Definition(name, ty_arity, declared_type, body, Opacity(opacity)))

    def add_theorem(self, name: str, ty_arity: int, statement: Term, proof: Proof,
                    trace: Optional[list] = None) -> "Signature":
        self._check_name(name, ty_arity)
        self._check_statement(name, ty_arity, statement)
        proved = check_proof(self, ty_arity, (), (), proof, trace)
        if not self.normalizer.conv(proved, statement):
            raise ProofDoesNotMatchStatement(f"{name}: proof establishes {proved!r}")
        return self._extend(Theorem(name, ty_arity, statement, proof, Provenance.PROVED))

    def add_trusted_import(self, name: str, ty_arity: int, statement: Term) -> "Signature":
        if not self.allow_trusted:
            raise TrustDisabled(f"{name}: trusted imports are disabled in this session")
        self._check_name(name, ty_arity)
        self._check_statement(name, ty_arity, statement)
        return self._extend(Theorem(name, ty_arity, statement, None, Provenance.TRUSTED))

    def add_checked(self, entries: Iterable[Entry]) -> "Signature":
        """Append entries already verified in this session (no re-check).

        Used by the driver to assemble an article's environment from the
        results of its imports.  Names must still be fresh.
        """
        sig = self
        for entry in entries:
            if entry.name in sig._defs or entry.name in sig._thms:
                if _same_entry(sig, entry):
                    continue
                raise DuplicateName(f"name {entry.name!r} declared by two articles")
            if isinstance(entry, Theorem) and entry.provenance is Provenance.TRUSTED \
                    and not sig.allow_trusted:
                raise TrustDisabled(f"{entry.name}: trusted imports are disabled")
            sig = sig._extend(entry)
        return sig


def _same_entry(sig: Signature, entry: Entry) -> bool:
    other = sig._defs.get(entry.name) or sig._thms.get(entry.name)
    return other is entry


add_definition = Signature.add_definition
add_theorem = Signature.add_theorem
add_trusted_import = Signature.add_trusted_import
