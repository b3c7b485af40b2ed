import random

import pytest

import mutation
from hotg.errors import HotgError
from hotg.kernel.canonical import digest, export_canonical, import_canonical, parse_entries


@pytest.fixture(scope="module")
def mutants(stdlib_sig):
    return mutation.run_harness(stdlib_sig, count=100)


def test_hundred_mutations_none_silent(mutants):
    assert len(mutants) == 100
    assert mutation.summary(mutants)["silent"] == 0


def test_every_kind_is_exercised(mutants):
    kinds = {m.kind for m in mutants}
    assert kinds == set(mutation.KINDS)
    assert min(sum(m.kind == k for m in mutants) for k in kinds) >= 30


def test_harness_is_reproducible(stdlib_sig, mutants):
    again = mutation.run_harness(stdlib_sig, count=100)
    assert [(m.theorem, m.kind, m.path, m.outcome) for m in again] == \
        [(m.theorem, m.kind, m.path, m.outcome) for m in mutants]


def test_perturbed_witnesses_differ():
    from hotg.terms import IND, PROP, Arrow, Const, TVar
    w = Const("Empty")
    assert mutation.perturb(w, IND) != w
    assert mutation.perturb(w, Arrow(IND, IND)) is not None
    assert mutation.perturb(w, TVar(0)) is None
    assert mutation.perturb(w, PROP) != w


def test_byte_mutations_of_canonical_proofs(stdlib_sig):
    """Flip single bytes inside proof fields of the exported library."""
    data = export_canonical(stdlib_sig)
    original = digest(data)
    lines = data.decode().split("\n")
    proof_lines = [i for i, line in enumerate(lines) if line.startswith("thm ")]
    rng = random.Random(99)
    alphabet = "()0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_ "
    silent = 0
    for _ in range(60):
        i = rng.choice(proof_lines)
        line = lines[i]
        # proof terms follow the statement; mutate in the last third of the line
        pos = rng.randrange(2 * len(line) // 3, len(line))
        repl = rng.choice([c for c in alphabet if c != line[pos]])
        mutated = lines[:i] + [line[:pos] + repl + line[pos + 1:]] + lines[i + 1:]
        blob = "\n".join(mutated).encode()
        try:
            sig = import_canonical(blob, trust=True)
        except HotgError:
            continue
        if digest(export_canonical(sig)) == original:
            silent += 1
        stmts = {e.name: e.statement for e in sig.theorems.values()}
        assert stmts == {e.name: e.statement for e in stdlib_sig.theorems.values()}
    assert silent == 0


def test_canonical_records_parse():
    from hotg.kernel.canonical import HEADER
    assert list(parse_entries((HEADER + "\n").encode())) == []
