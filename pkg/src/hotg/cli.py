"""Command-line entry point: ``hotg check FILES...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .driver import export_reports, run_check
from .errors import CycleDetected, MissingImport
from .stdlib import all_paths, stdlib_dir

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hotg", description="Check HOTG article files.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="check articles and everything they import")
    check.add_argument("files", nargs="*", type=Path, help="article files (.hotg)")
    check.add_argument("--stdlib", action="store_true",
                       help="check the bundled library (implies --root at its directory)")
    check.add_argument("--root", type=Path, default=None,
                       help="directory that Import paths are relative to (default: .)")
    check.add_argument("--export", type=Path, metavar="DIR",
                       help="write canonical exports of checked articles to DIR")
    check.add_argument("--digest", action="store_true",
                       help="print one 'name sha256' line per checked article")
    check.add_argument("--trust-imports", action="store_true",
                       help="accept Trusted declarations (always reported)")
    check.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="check up to N independent articles at once")
    check.add_argument("--json", action="store_true", help="machine-readable report")
    check.add_argument("--no-time", action="store_true",
                       help="omit wall-clock times from the report")
    return parser


def _check(args) -> int:
    files = list(args.files)
    root = args.root
    if args.stdlib:
        files = all_paths() + files
        root = root or stdlib_dir()
    if not files:
        print("hotg check: no article files given", file=sys.stderr)
        return EXIT_USAGE
    if args.jobs < 1:
        print("hotg check: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = run_check(files, root or Path("."), trust=args.trust_imports, jobs=args.jobs)
    except (OSError, MissingImport, CycleDetected) as e:
        print(f"hotg check: {e}", file=sys.stderr)
        return EXIT_USAGE
    with_time = not args.no_time
    if args.json:
        sys.stdout.write(report.to_json(with_time) + "\n")
    else:
        sys.stdout.write(report.to_text(with_time))
        if args.digest:
            for a in report.articles:
                if a.ok:
                    print(f"{a.name} {a.digest}")
    if args.export is not None:
        try:
            export_reports(report, args.export)
        except OSError as e:
            print(f"hotg check: cannot export: {e}", file=sys.stderr)
            return EXIT_USAGE
    return report.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    return _check(args)


if __name__ == "__main__":
    sys.exit(main())
