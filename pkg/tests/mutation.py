"""Single-node proof mutations over the bundled library.

Three mutation kinds are applied to proof terms of proved theorems:

* ``known``   replace the name of a ``Known`` leaf with another name of the
              same type arity that is in scope at that theorem;
* ``witness`` replace the witness of an ``AllElim`` by a different term of
              the same type;
* ``drop``    replace an ``ImpIntro`` node by its body.

Each mutant is handed to the kernel in the signature that preceded the
original theorem.  The outcome is ``rejected`` when the kernel raises, and
otherwise ``changed`` when the canonical export of the article differs from
the original (the acceptance is visible in the article digest).  ``silent``
means accepted with an unchanged digest or with a different recorded
statement; the harness expects zero of those.
"""

from __future__ import annotations

import dataclasses
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from hotg.errors import HotgError
from hotg.kernel.axioms import AXIOM_ARITY
from hotg.kernel.canonical import digest, export_entries, theorem_digest
from hotg.kernel.proof import AllElim, AllIntro, ImpElim, ImpIntro, Known
from hotg.kernel.signature import Provenance, Signature, Theorem
from hotg.terms import IND, PROP, App, Arrow, Const, Imp, Lam, TypingContext, Var, lift, type_of

KINDS = ("known", "witness", "drop")


@dataclass
class Site:
    path: tuple
    node: object
    stack: tuple  # de Bruijn typing stack at the node, innermost last


def sites(proof, stack=(), path=()) -> Iterator[Site]:
    yield Site(path, proof, stack)
    if isinstance(proof, ImpIntro):
        yield from sites(proof.body, stack, path + ("body",))
    elif isinstance(proof, ImpElim):
        yield from sites(proof.major, stack, path + ("major",))
        yield from sites(proof.minor, stack, path + ("minor",))
    elif isinstance(proof, AllIntro):
        yield from sites(proof.body, stack + (proof.domain,), path + ("body",))
    elif isinstance(proof, AllElim):
        yield from sites(proof.fn, stack, path + ("fn",))


def replace_at(proof, path: tuple, new):
    if not path:
        return new
    field = path[0]
    return dataclasses.replace(proof, **{field: replace_at(getattr(proof, field), path[1:], new)})


def perturb(w, ty):
    """A term of type ``ty`` that differs from ``w``, or None for type variables."""
    if ty == IND:
        return App(Const("Power"), w)
    if ty == PROP:
        return Imp(w, Imp(w, w))
    if isinstance(ty, Arrow):
        body = perturb(App(lift(w, 0, 1), Var(0)), ty.codomain)
        return None if body is None else Lam(ty.domain, body)
    return None


@dataclass
class Mutant:
    theorem: str
    kind: str
    path: tuple
    outcome: str = ""
    detail: str = ""


def _candidates(thm: Theorem, kind: str, sig: Signature):
    for site in sites(thm.proof):
        node = site.node
        if kind == "known" and isinstance(node, Known):
            arity = len(node.type_args)
            names = [n for n, a in AXIOM_ARITY.items() if a == arity]
            names += [n for n, t in sig.theorems.items() if t.ty_arity == arity]
            names = sorted(set(names) - {node.name})
            if names:
                yield site, names
        elif kind == "witness" and isinstance(node, AllElim):
            try:
                ty = type_of(TypingContext(thm.ty_arity, site.stack), sig.definitions, node.witness)
            except HotgError:
                continue
            if perturb(node.witness, ty) is not None:
                yield site, ty
        elif kind == "drop" and isinstance(node, ImpIntro):
            yield site, None


def run_harness(sig: Signature, count: int = 100, seed: int = 2024) -> list[Mutant]:
    """Apply ``count`` mutations, cycling through the three kinds."""
    rng = random.Random(seed)
    entries = sig.entries
    proved = [i for i, e in enumerate(entries)
              if isinstance(e, Theorem) and e.provenance is Provenance.PROVED]
    prefixes: dict[int, Signature] = {}

    def prefix(i: int) -> Signature:
        if i not in prefixes:
            s = Signature(allow_trusted=True)
            prefixes[i] = s.add_checked(entries[:i])
        return prefixes[i]

    original = digest(export_entries(entries))
    results = []
    while len(results) < count:
        kind = KINDS[len(results) % len(KINDS)]
        i = rng.choice(proved)
        thm = entries[i]
        before = prefix(i)
        cands = list(_candidates(thm, kind, before))
        if not cands:
            continue
        site, info = rng.choice(cands)
        node = site.node
        if kind == "known":
            new = Known(rng.choice(info), node.type_args)
        elif kind == "witness":
            new = AllElim(node.fn, perturb(node.witness, info))
        else:
            new = node.body
        mutated = replace_at(thm.proof, site.path, new)
        m = Mutant(thm.name, kind, site.path)
        try:
            after = before.add_theorem(thm.name, thm.ty_arity, thm.statement, mutated)
        except HotgError as e:
            m.outcome, m.detail = "rejected", e.code
        else:
            new_entry = after.entries[-1]
            new_entries = entries[:i] + (new_entry,) + entries[i + 1:]
            same_stmt = theorem_digest(new_entry) == theorem_digest(thm)
            changed = digest(export_entries(new_entries)) != original
            m.outcome = "changed" if changed and same_stmt else "silent"
        results.append(m)
    return results


def summary(mutants: list[Mutant]) -> Counter:
    return Counter(m.outcome for m in mutants)
