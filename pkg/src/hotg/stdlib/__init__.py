"""The bundled library articles, shipped as ``.hotg`` data files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

# dependency order; every article imports only articles listed before it
ARTICLES = (
    "prelude_logic",
    "classical",
    "set_defs",
    "constructions",
    "inrec",
    "regularity_ordinals",
    "fo_bridge",
    "v_hierarchy",
    "fo_instances",
)


def stdlib_dir() -> Path:
    return Path(str(resources.files(__name__)))


def article_path(name: str) -> Path:
    return stdlib_dir() / f"{name}.hotg"


def article_text(name: str) -> str:
    return article_path(name).read_text(encoding="utf-8")


def all_paths() -> list[Path]:
    return [article_path(n) for n in ARTICLES]
