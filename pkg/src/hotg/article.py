"""Checking one parsed article against an environment signature."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ElaborationError, HotgError, NonPropConnective, SourceError
from .kernel.signature import Opacity, Signature
from .script import elaborate
from .syntax import surface as S
from .syntax.desugar import Scope, desugar, desugar_type
from .syntax.parser import parse_article
from .terms import PROP


@dataclass
class DeclFailure:
    name: str
    error: HotgError

    @property
    def code(self) -> str:
        return self.error.code

    def __str__(self) -> str:
        return f"{self.name}: {self.error.code}: {self.error}"


@dataclass
class ArticleResult:
    signature: Signature
    entries: list = field(default_factory=list)  # entries this article added
    failure: Optional[DeclFailure] = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def _located(err: HotgError, decl) -> HotgError:
    if isinstance(err, SourceError) and err.line is not None:
        return err
    pos = getattr(decl, "pos", None) or (None, None)
    return ElaborationError(err, *pos)


def _statement(decl, sig: Signature):
    scope = Scope(sig.definitions, decl.tyvars)
    t, ty = desugar(decl.statement, scope)
    if ty != PROP:
        raise NonPropConnective(f"{decl.name}: statement is not a proposition")
    return t


def check_decl(decl, sig: Signature) -> Signature:
    """Check one declaration and return the extended signature."""
    if isinstance(decl, S.DefinitionDecl):
        scope = Scope(sig.definitions, decl.tyvars)
        ty = desugar_type(decl.type, decl.tyvars)
        body, _ = desugar(decl.body, scope)
        opacity = Opacity.OPAQUE if decl.opaque else Opacity.TRANSPARENT
        return sig.add_definition(decl.name, len(decl.tyvars), ty, body, opacity)
    if isinstance(decl, S.TheoremDecl):
        stmt = _statement(decl, sig)
        proof = elaborate(stmt, decl.script, sig, decl.tyvars)
        return sig.add_theorem(decl.name, len(decl.tyvars), stmt, proof)
    if isinstance(decl, S.TrustedDecl):
        return sig.add_trusted_import(decl.name, len(decl.tyvars), _statement(decl, sig))
    raise TypeError(f"not a checkable declaration: {decl!r}")


def check_article(article: S.Article, sig: Signature) -> ArticleResult:
    """Check every declaration in order, stopping at the first failure.

    Import declarations are skipped: the caller supplies ``sig`` already
    containing the imported content.
    """
    start = len(sig.entries)
    for decl in article.decls:
        if isinstance(decl, S.ImportDecl):
            continue
        try:
            sig = check_decl(decl, sig)
        except HotgError as e:
            res = ArticleResult(sig, list(sig.entries[start:]))
            res.failure = DeclFailure(decl.name, _located(e, decl))
            return res
    return ArticleResult(sig, list(sig.entries[start:]))


def check_text(text: str, sig: Optional[Signature] = None, trust: bool = False) -> ArticleResult:
    """Parse and check a self-contained article (its imports are ignored)."""
    if sig is None:
        sig = Signature(allow_trusted=trust)
    return check_article(parse_article(text), sig)
