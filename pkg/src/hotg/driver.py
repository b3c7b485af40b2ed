"""Batch checking of article files: import resolution, ordering and reports."""

from __future__ import annotations

import graphlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .article import check_article
from .errors import CycleDetected, HotgError, MissingImport
from .kernel.canonical import digest, export_entries
from .kernel.signature import Provenance, Signature, Theorem
from .syntax import surface as S
from .syntax.parser import parse_article


@dataclass
class SourceArticle:
    """An article file and the files it imports (all resolved to absolute paths)."""

    name: str
    path: Path
    article: Optional[S.Article]
    imports: tuple[Path, ...]
    parse_error: Optional[HotgError] = None


@dataclass
class ArticleReport:
    name: str
    status: str  # "ok" | "failed"
    theorems: int = 0
    trusted: list[str] = field(default_factory=list)
    digest: Optional[str] = None
    failed_at: Optional[str] = None
    error_code: Optional[str] = None
    error: Optional[str] = None
    seconds: float = 0.0
    entries: tuple = ()

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def as_dict(self, with_time: bool = True) -> dict:
        d = {
            "name": self.name,
            "status": self.status,
            "theorems": self.theorems,
            "trusted": list(self.trusted),
            "digest": self.digest,
            "failed_at": self.failed_at,
            "error_code": self.error_code,
            "error": self.error,
        }
        if with_time:
            d["seconds"] = round(self.seconds, 6)
        return d


@dataclass
class CheckReport:
    articles: list[ArticleReport]
    seconds: float = 0.0
    trust_enabled: bool = False
    tarski_a: Optional[str] = None  # "proved" | "stated" | None when not in scope

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.articles)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    @property
    def theorems(self) -> int:
        return sum(a.theorems for a in self.articles)

    @property
    def trusted(self) -> list[str]:
        return [t for a in self.articles for t in a.trusted]

    def as_dict(self, with_time: bool = True) -> dict:
        d = {
            "ok": self.ok,
            "theorems": self.theorems,
            "trusted": self.trusted,
            "trust_enabled": self.trust_enabled,
            "tarski_a": self.tarski_a,
            "articles": [a.as_dict(with_time) for a in self.articles],
        }
        if with_time:
            d["seconds"] = round(self.seconds, 6)
        return d

    def to_json(self, with_time: bool = True) -> str:
        return json.dumps(self.as_dict(with_time), indent=2, sort_keys=True)

    def to_text(self, with_time: bool = True) -> str:
        lines = []
        for a in self.articles:
            if a.ok:
                lines.append(f"{a.name}: ok ({a.theorems} theorems, {len(a.trusted)} trusted)")
            else:
                lines.append(f"{a.name}: FAILED at {a.failed_at}: {a.error_code}: {a.error}")
        lines.append(f"total: {self.theorems} theorems proved, {len(self.trusted)} trusted")
        if self.trust_enabled:
            names = ", ".join(self.trusted) if self.trusted else "none"
            lines.append(f"trusted imports: {names}")
        if self.tarski_a is not None:
            lines.append(f"HOTG |- Tarski A: {self.tarski_a}")
        lines.append("status: " + ("ok" if self.ok else "FAILED"))
        if with_time:
            lines.append(f"wall time: {self.seconds:.3f}s")
        return "\n".join(lines) + "\n"


# -- import resolution --------------------------------------------------------------


def _article_name(path: Path, root: Path) -> str:
    try:
        rel = path.relative_to(root)
    except ValueError:
        rel = Path(path.name)
    return rel.with_suffix("").as_posix()


def _load(path: Path, root: Path) -> SourceArticle:
    name = _article_name(path, root)
    text = path.read_text(encoding="utf-8")
    try:
        art = parse_article(text)
    except HotgError as e:
        return SourceArticle(name, path, None, (), e)
    imports = tuple((root / imp).resolve() for imp in art.imports)
    return SourceArticle(name, path, art, imports)


def resolve(paths: Sequence[Path | str], root: Path | str = ".") -> list[SourceArticle]:
    """Load ``paths`` and everything they import, in dependency order.

    Imports are resolved relative to ``root``.  The order is deterministic:
    articles come out in a topological order that respects the order in
    which files were named and imports were declared.
    """
    root = Path(root).resolve()
    loaded: dict[Path, SourceArticle] = {}
    order: list[Path] = []
    active: list[Path] = []

    def visit(p: Path) -> None:
        if p in active:
            names = [loaded[q].name for q in active[active.index(p):]] + [loaded[p].name]
            raise CycleDetected("import cycle: " + " -> ".join(names))
        if p in order:
            return
        src = loaded.get(p) or _load(p, root)
        loaded[p] = src
        active.append(p)
        for imp in src.imports:
            if not imp.is_file():
                raise MissingImport(f"{src.name} imports {imp}, which does not exist")
            visit(imp)
        active.pop()
        order.append(p)

    starts = [Path(p).resolve() for p in paths]
    for p in starts:
        if not p.is_file():
            raise FileNotFoundError(f"no such article: {p}")
    for p in starts:
        visit(p)
    return [loaded[p] for p in order]


def _closure(src: SourceArticle, by_path: dict[Path, SourceArticle]) -> list[Path]:
    """Transitive imports of ``src`` in dependency order (dependencies first)."""
    seen: dict[Path, None] = {}

    def visit(p: Path) -> None:
        for q in by_path[p].imports:
            if q not in seen:
                visit(q)
                seen[q] = None

    visit(src.path.resolve())
    return list(seen)


# -- checking -----------------------------------------------------------------------


def _check_one(src: SourceArticle, env: Signature) -> ArticleReport:
    start = time.perf_counter()
    rep = ArticleReport(src.name, "ok")
    if src.parse_error is not None:
        rep.status, rep.failed_at = "failed", "(parse)"
        rep.error_code, rep.error = src.parse_error.code, str(src.parse_error)
        rep.seconds = time.perf_counter() - start
        return rep
    res = check_article(src.article, env)
    rep.seconds = time.perf_counter() - start
    if not res.ok:
        rep.status, rep.failed_at = "failed", res.failure.name
        rep.error_code, rep.error = res.failure.code, str(res.failure.error)
        return rep
    rep.entries = tuple(res.entries)
    rep.theorems = sum(1 for e in res.entries
                       if isinstance(e, Theorem) and e.provenance is Provenance.PROVED)
    rep.trusted = [e.name for e in res.entries
                   if isinstance(e, Theorem) and e.provenance is Provenance.TRUSTED]
    rep.digest = digest(export_entries(res.entries))
    return rep


def _tarski_status(reports: Iterable[ArticleReport], env: Signature) -> Optional[str]:
    if "TarskiA" not in env.definitions:
        return None
    target = env.definitions["TarskiA"]
    for rep in reports:
        for e in rep.entries:
            if isinstance(e, Theorem) and e.provenance is Provenance.PROVED and \
                    env.normalizer.conv(e.statement, target.body):
                return "proved"
    return "stated"


def run_check(paths: Sequence[Path | str], root: Path | str = ".", trust: bool = False,
              jobs: int = 1) -> CheckReport:
    """Check ``paths`` and their imports.  Raises MissingImport / CycleDetected."""
    start = time.perf_counter()
    sources = resolve(paths, root)
    by_path = {s.path.resolve(): s for s in sources}
    reports: dict[Path, ArticleReport] = {}

    def env_for(src: SourceArticle) -> Signature | ArticleReport:
        env = Signature(allow_trusted=trust)
        for dep in _closure(src, by_path):
            r = reports[dep]
            if not r.ok:
                return ArticleReport(src.name, "failed", failed_at="(import)",
                                     error_code="ImportFailed",
                                     error=f"imported article {r.name} failed")
            env = env.add_checked(r.entries)
        return env

    def task(src: SourceArticle) -> ArticleReport:
        try:
            env = env_for(src)
        except HotgError as e:
            return ArticleReport(src.name, "failed", failed_at="(import)",
                                 error_code=e.code, error=str(e))
        if isinstance(env, ArticleReport):
            return env
        return _check_one(src, env)

    sorter = graphlib.TopologicalSorter({s.path.resolve(): s.imports for s in sources})
    sorter.prepare()
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        while sorter.is_active():
            ready = sorted(sorter.get_ready(), key=lambda p: by_path[p].name)
            for p, rep in zip(ready, pool.map(lambda q: task(by_path[q]), ready)):
                reports[p] = rep
                sorter.done(p)

    ordered = [reports[s.path.resolve()] for s in sources]
    final_env = Signature(allow_trusted=True)
    if all(r.ok for r in ordered):
        for r in ordered:
            final_env = final_env.add_checked(r.entries)
    report = CheckReport(ordered, time.perf_counter() - start, trust,
                         _tarski_status(ordered, final_env) if final_env.definitions else None)
    return report


def export_reports(report: CheckReport, out_dir: Path | str) -> list[Path]:
    """Write one canonical file per successfully checked article."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for a in report.articles:
        if not a.ok:
            continue
        target = out / (a.name.replace("/", "__") + ".canon")
        target.write_bytes(export_entries(a.entries))
        written.append(target)
    return written
