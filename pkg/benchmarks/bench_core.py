"""Compare the compiled term core against the pure-Python fallback.

Each backend runs in its own interpreter (the choice is made once, at import
time), so the script re-invokes itself with ``HOTG_PURE_PYTHON`` set or
unset and collects the timings as JSON.

    python benchmarks/bench_core.py            # both backends, table on stdout
    python benchmarks/bench_core.py --repeat 5
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import subprocess
import sys
import time


def _workloads():
    from hotg._core import BACKEND
    from hotg.driver import run_check
    from hotg.kernel.canonical import export_entries, import_canonical
    from hotg.kernel.signature import Signature
    from hotg.stdlib import all_paths, stdlib_dir
    from hotg.terms import IND, App, Arrow, Const, Lam, Var, beta_eta_nf, lift, subst

    def church(n):
        # fun f x => f (f (... x)) over set -> set, as a nest of applications
        body = Var(0)
        for _ in range(n):
            body = App(Var(1), body)
        return Lam(Arrow(IND, IND), Lam(IND, body))

    def nested_redexes():
        t = Const("Empty")
        for _ in range(400):
            t = App(Lam(IND, App(Const("Power"), Var(0))), t)
        return beta_eta_nf(t)

    def church_apply():
        c = church(60)
        t = App(App(c, Lam(IND, App(Const("Union"), Var(0)))), Const("Empty"))
        for _ in range(20):
            beta_eta_nf(t)

    deep = church(300).body.body

    def shifting():
        for k in range(200):
            lift(deep, 0, k % 5 + 1)
            subst(deep, 1, Const("Empty"))

    def check_library():
        return run_check(all_paths(), stdlib_dir(), trust=True)

    report = check_library()
    sig = Signature(allow_trusted=True)
    for art in report.articles:
        sig = sig.add_checked(art.entries)
    data = export_entries(sig.entries)

    def reimport():
        import_canonical(data, trust=True)

    return BACKEND, {
        "nested beta redexes": nested_redexes,
        "applied numerals": church_apply,
        "lift and subst": shifting,
        "check bundled library": check_library,
        "re-verify canonical export": reimport,
    }


def measure(repeat: int) -> dict:
    backend, work = _workloads()
    timings = {}
    for name, fn in work.items():
        fn()  # warm caches and imports
        runs = []
        for _ in range(repeat):
            start = time.perf_counter()
            fn()
            runs.append(time.perf_counter() - start)
        timings[name] = statistics.median(runs)
    return {"backend": backend, "timings": timings}


def run_backend(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("HOTG_PURE_PYTHON", None)
    if pure:
        env["HOTG_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(repeat)],
                         env=env, capture_output=True, text=True, check=True).stdout
    return json.loads(out)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args(argv)
    if args.worker:
        print(json.dumps(measure(args.repeat)))
        return 0

    python = run_backend(True, args.repeat)
    compiled = run_backend(False, args.repeat)
    if compiled["backend"] != "cython":
        print("compiled core not available; only the fallback was measured\n")
    width = max(len(k) for k in python["timings"])
    print(f"{'workload':<{width}}  {'python':>10}  {compiled['backend']:>10}  {'speedup':>8}")
    for name, slow in python["timings"].items():
        fast = compiled["timings"][name]
        print(f"{name:<{width}}  {slow * 1000:>8.1f}ms  {fast * 1000:>8.1f}ms  {slow / fast:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
