"""Acceptance criteria, one check per criterion with pinned tolerances.

Each ``criterion_N`` returns ``(passed, detail)``.  The pytest tests assert
on them and record a one-line verdict that ``conftest.py`` prints in the
terminal summary; running this file directly prints the same lines.
"""

from __future__ import annotations

import functools
import json
import random
import subprocess
import sys
import time

import pytest

import mutation
import properties
import support
from hotg.driver import run_check
from hotg.errors import HotgError
from hotg.hf import hf_eval
from hotg.kernel.canonical import export_entries, import_canonical
from hotg.kernel.signature import Provenance, Signature
from hotg.stdlib import all_paths, stdlib_dir
from hotg.syntax import Scope, desugar, parse_term
from hotg.syntax.printer import global_names
from hotg.terms import PROP, All, App, Lam, TypingContext, size, type_of

# pinned tolerances
MIN_PROVED = 40
MAX_WALL_SECONDS = 10.0
EXPECTED_TRUSTED = {"EM", "DN", "In_rec_eq", "ordinal_trichotomy_or"}
MUTATIONS = 100
PROPERTY_TERMS = 1000
MIN_ORACLE_INSTANCES = 10
MAX_ORACLE_RANK = 4
ORACLE_FAMILIES = {"Empty", "Union", "Power", "UPair", "Sing", "Sep"}

VERDICTS: dict[int, str] = {}


def _library():
    start = time.perf_counter()
    report = run_check(all_paths(), stdlib_dir(), trust=True)
    wall = time.perf_counter() - start
    sig = Signature(allow_trusted=True)
    if report.ok:
        for art in report.articles:
            sig = sig.add_checked(art.entries)
    return report, wall, sig


@functools.lru_cache(maxsize=None)
def _cached_library():
    return _library()


def criterion_1():
    report, wall, _ = _library()
    trusted = set(report.trusted)
    ok = (report.exit_code == 0 and report.theorems >= MIN_PROVED
          and trusted == EXPECTED_TRUSTED and len(report.trusted) == len(trusted)
          and wall < MAX_WALL_SECONDS)
    return ok, (f"exit {report.exit_code}, {report.theorems} proved (>= {MIN_PROVED}), "
                f"trusted {sorted(trusted)}, {wall:.2f}s (< {MAX_WALL_SECONDS:.0f}s)")


def _conjuncts(t):
    """Flatten nested applications of ``and``."""
    if isinstance(t, App) and isinstance(t.fn, App) and getattr(t.fn.fn, "name", None) == "and":
        return _conjuncts(t.fn.arg) + _conjuncts(t.arg)
    return [t]


def criterion_2():
    from test_stdlib import _tarski_expected
    report, _, sig = _cached_library()
    if not report.ok:
        return False, "library does not check"
    tarski = sig.definitions.get("TarskiA")
    if tarski is None:
        return False, "no TarskiA statement"
    body = tarski.body
    typed = type_of(TypingContext(), sig.definitions, body) == PROP
    closed = body.fvb == 0
    conjuncts = 0
    # forall N, ex[set] (fun M => c1 /\ c2 /\ c3 /\ c4)
    if isinstance(body, All) and isinstance(body.body, App) and \
            getattr(body.body.fn, "name", None) == "ex" and isinstance(body.body.arg, Lam):
        conjuncts = len(_conjuncts(body.body.arg.body))
    norm = sig.normalizer
    faithful = norm.nf(body) == norm.nf(_tarski_expected())
    required = ["V_eq", "VI", "VE", "VSubq"]
    proved = [n for n in required
              if n in sig.theorems and sig.theorems[n].provenance is Provenance.PROVED]
    ok = typed and closed and conjuncts == 4 and faithful and proved == required
    return ok, (f"TarskiA : o {typed}, closed {closed}, {conjuncts} conjuncts, matches the "
                f"hand-built statement {faithful}; proved {', '.join(proved)}")


def criterion_3():
    _, _, sig = _cached_library()
    mutants = mutation.run_harness(sig, count=MUTATIONS)
    counts = mutation.summary(mutants)
    ok = len(mutants) == MUTATIONS and counts["silent"] == 0
    return ok, (f"{len(mutants)} mutations: {counts['rejected']} rejected, "
                f"{counts['changed']} accepted with changed digest, {counts['silent']} silent")


def criterion_4():
    sig = support.small_signature()
    rng = random.Random(20240601)
    checked = failures = slow = 0
    worst = 0.0
    while checked < PROPERTY_TERMS:
        t, ty = support.random_term(rng, budget=rng.randint(1, 45))
        if size(t) > properties.MAX_SIZE:
            continue
        other, _ = support.random_term(rng, ty=ty, budget=rng.randint(1, 30))
        if size(other) > properties.MAX_SIZE:
            other = None
        try:
            worst = max(worst, properties.check_term(t, ty, sig, other))
        except properties.PropertyFailure as e:
            failures += 1
            slow += "normalization time" in str(e)
        checked += 1
    ok = failures == 0
    return ok, (f"{checked} terms (size <= {properties.MAX_SIZE}), {failures} failures, "
                f"{slow} timeouts, slowest nf {worst * 1000:.1f} ms (< 100 ms)")


_MINIMAL = r"""
import sys, json
for blocked in ("hotg.script", "hotg.syntax", "hotg.article", "hotg.driver", "hotg.cli"):
    sys.modules[blocked] = None
from hotg.kernel.canonical import export_canonical, import_canonical
data = sys.stdin.buffer.read()
sig = import_canonical(data, trust=True)
loaded = sorted(m for m in sys.modules if m.startswith("hotg.") and sys.modules[m] is not None)
print(json.dumps({"identical": export_canonical(sig) == data,
                  "theorems": len(sig.proved_names), "modules": loaded}))
"""


def criterion_5():
    report, _, sig = _cached_library()
    if not report.ok:
        return False, "library does not check"
    data = export_entries(sig.entries)
    try:
        again = import_canonical(data, trust=True)
    except HotgError as e:
        return False, f"re-import failed: {e}"
    identical = export_entries(again.entries) == data
    proc = subprocess.run([sys.executable, "-c", _MINIMAL], input=data, capture_output=True,
                          check=False)
    if proc.returncode != 0:
        return False, "minimal re-checker failed: " + proc.stderr.decode()[-300:]
    minimal = json.loads(proc.stdout)
    no_elab = not any(m.startswith(("hotg.script", "hotg.syntax")) for m in minimal["modules"])
    ok = identical and minimal["identical"] and no_elab \
        and minimal["theorems"] == len(sig.proved_names)
    return ok, (f"re-export identical {identical}; minimal path re-verified "
                f"{minimal['theorems']} proofs without the elaborator ({no_elab})")


def criterion_6():
    from test_stdlib import INSTANCES
    _, _, sig = _cached_library()
    proved_rows = [r for r in INSTANCES if r[1] is not None]
    agree = provable = 0
    families = set()
    for expected, theorem, rank_bound, sentence in proved_rows:
        if rank_bound <= MAX_ORACLE_RANK and hf_eval(sentence, rank_bound) is True:
            agree += 1
        thm = sig.theorems.get(theorem)
        stmt, _ = desugar(parse_term(sentence), Scope(sig.definitions))
        if thm is not None and thm.provenance is Provenance.PROVED and thm.statement == stmt:
            provable += 1
        families |= global_names(stmt) & ORACLE_FAMILIES
    n = len(proved_rows)
    ok = n >= MIN_ORACLE_INSTANCES and agree == n and provable == n and families == ORACLE_FAMILIES
    return ok, (f"{n} instances (>= {MIN_ORACLE_INSTANCES}): {agree} true under hf_eval at "
                f"rank <= {MAX_ORACLE_RANK}, {provable} proved; families {sorted(families)}")


def criterion_7():
    report, _, _ = _cached_library()
    status = report.tarski_a
    return status == "proved", f"HOTG |- Tarski A: {status} (stretch, non-gating)"


CRITERIA = {
    1: ("stdlib gate", criterion_1),
    2: ("statement fidelity", criterion_2),
    3: ("mutation rejection", criterion_3),
    4: ("core property suite", criterion_4),
    5: ("de Bruijn re-check", criterion_5),
    6: ("oracle agreement", criterion_6),
    7: ("Tarski A proof (stretch)", criterion_7),
}


def _record(n: int):
    title, fn = CRITERIA[n]
    passed, detail = fn()
    gate = "" if n != 7 else " [non-gating]"
    VERDICTS[n] = f"criterion {n} {title}: {'PASS' if passed else 'FAIL'}{gate} - {detail}"
    return passed, detail


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_criterion(n):
    passed, detail = _record(n)
    assert passed, detail


@pytest.mark.xfail(strict=True, reason="the ordinal-embedding lemma and Axiom A proof scripts are not shipped")
def test_criterion_7_stretch():
    passed, detail = _record(7)
    assert passed, detail


if __name__ == "__main__":
    for n in CRITERIA:
        _record(n)
        print(VERDICTS[n])
