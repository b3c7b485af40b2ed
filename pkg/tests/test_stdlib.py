"""Content checks on the bundled articles and the finite-set oracle."""

from pathlib import Path

import pytest

from hotg.errors import BudgetExceeded
from hotg.hf import EMPTY, hf_eval, power, rank, show, v_level
from hotg.kernel import builder as B
from hotg.kernel.signature import Provenance
from hotg.syntax import Scope, desugar, parse_article, parse_term
from hotg.syntax import surface as S
from hotg.stdlib import article_text
from hotg.terms import IND, PROP, All, TypingContext, arrows, type_of

FIXTURE = Path(__file__).parent / "fixtures" / "fo_instances.txt"


def load_instances():
    rows = []
    for line in FIXTURE.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        head, sentence = line.split("::", 1)
        expected, theorem, rank_bound = head.split()
        rows.append((expected == "true", None if theorem == "-" else theorem,
                     int(rank_bound), sentence.strip()))
    return rows


INSTANCES = load_instances()


# -- staging ------------------------------------------------------------------------


def test_trusted_entries_are_exactly_the_staged_ones(stdlib_report):
    trusted = {a.name: a.trusted for a in stdlib_report.articles if a.trusted}
    assert trusted == {
        "classical": ["EM", "DN"],
        "inrec": ["In_rec_eq"],
        "regularity_ordinals": ["ordinal_trichotomy_or"],
    }


def test_required_theorems_are_proved(stdlib_sig):
    required = [
        "V_eq", "VI", "VE", "VSubq", "bijinv",
        "In_irref", "Regularity", "ordinal_Hered",
        "UPair_iff", "Sing_iff", "Sep_iff", "ReplSep_iff",
    ]
    for name in required:
        assert stdlib_sig.theorems[name].provenance is Provenance.PROVED, name


def test_in_rec_is_opaque(stdlib_sig):
    assert not stdlib_sig.definitions["In_rec"].transparent


# -- definition fidelity --------------------------------------------------------------

SET_PRED = arrows(IND, PROP)

HAND_BUILT = {
    "Subq": B.lam(IND, lambda x: B.lam(IND, lambda y: B.subq(x, y))),
    "TransSet": B.lam(IND, B.transset),
    "Union_closed": B.lam(IND, B.union_closed),
    "Power_closed": B.lam(IND, B.power_closed),
    "Repl_closed": B.lam(IND, B.repl_closed),
    "ZF_closed": B.lam(IND, B.zf_closed),
    "ordinal": B.lam(IND, lambda a: B.conj(
        B.transset(a), B.forall(IND, lambda b: B.imp(B.mem(b, a), B.transset(b))))),
    "famunion": B.lam(IND, lambda x: B.lam(arrows(IND, IND), lambda f: B.app(
        B.const("Union"), B.app(B.const("Repl"), x, f)))),
}


@pytest.mark.parametrize("name", sorted(HAND_BUILT))
def test_set_defs_match_hand_built_terms(stdlib_sig, name):
    d = stdlib_sig.definitions[name]
    hand = B.build(HAND_BUILT[name])
    assert type_of(TypingContext(), stdlib_sig.definitions, hand) == d.type
    norm = stdlib_sig.normalizer
    assert norm.nf(d.body) == norm.nf(hand)


# -- the Tarski A statement ---------------------------------------------------------


def test_tarski_a_surface_shape():
    decl = next(d for d in parse_article(article_text("v_hierarchy")).decls
                if getattr(d, "name", None) == "TarskiA")
    outer = decl.body
    assert (outer.kind, outer.names) == ("forall", ("N",))
    inner = outer.body
    assert (inner.kind, inner.names) == ("exists", ("M",))
    conjuncts = []
    node = inner.body
    while isinstance(node, S.Infix) and node.op == "/\\":
        conjuncts.append(node.right)
        node = node.left
    conjuncts.append(node)
    assert len(conjuncts) == 4


def _tarski_expected():
    def body(n, m):
        c1 = B.mem(n, m)
        c2 = B.forall(IND, lambda x: B.imp(B.mem(x, m), B.forall(
            IND, lambda y: B.imp(B.subq(y, x), B.mem(y, m)))))
        c3 = B.forall(IND, lambda x: B.imp(B.mem(x, m), B.exists(IND, lambda z: B.conj(
            B.mem(z, m), B.forall(IND, lambda y: B.imp(B.subq(y, x), B.mem(y, z)))))))
        c4 = B.forall(IND, lambda x: B.imp(B.subq(x, m), B.disj(
            B.exists(arrows(IND, IND), lambda f: B.app(B.ref("bij"), x, m, f)),
            B.mem(x, m))))
        return B.conj(B.conj(B.conj(c1, c2), c3), c4)
    return B.build(B.forall(IND, lambda n: B.exists(IND, lambda m: body(n, m))))


def test_tarski_a_statement_fidelity(stdlib_sig):
    d = stdlib_sig.definitions["TarskiA"]
    assert d.type == PROP
    assert type_of(TypingContext(), stdlib_sig.definitions, d.body) == PROP
    assert d.body.fvb == 0
    assert isinstance(d.body, All) and d.body.domain == IND
    norm = stdlib_sig.normalizer
    assert norm.nf(d.body) == norm.nf(_tarski_expected())


def test_tarski_a_status_is_reported(stdlib_report):
    assert stdlib_report.tarski_a in ("proved", "stated")
    assert f"HOTG |- Tarski A: {stdlib_report.tarski_a}" in stdlib_report.to_text(False)


# -- the finite-set oracle ----------------------------------------------------------


def test_v_level_sizes():
    # independent recurrence on cardinalities: |V_(n+1)| = 2 ** |V_n|
    sizes = [0]
    for _ in range(5):
        sizes.append(2 ** sizes[-1])
    assert [len(v_level(n)) for n in range(6)] == sizes


def test_v_levels_are_cumulative_and_ranked():
    for n in range(1, 5):
        assert v_level(n - 1) <= v_level(n)
        assert all(rank(x) < n for x in v_level(n))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        v_level(6)
    with pytest.raises(BudgetExceeded):
        hf_eval("Empty = Empty", 6)
    with pytest.raises(BudgetExceeded):
        power(v_level(5))


def test_oracle_examples():
    assert hf_eval("~ exists x, x :e Empty", 3)
    assert hf_eval("forall z, z :e {Empty,{Empty}} <-> z = Empty \\/ z = {Empty}", 3)
    assert hf_eval("forall Y, Y :e Power {Empty} <-> Y c= {Empty}", 3)
    assert not hf_eval("exists x, x :e Empty", 3)
    assert hf_eval("forall x, x /:e x", 4)
    assert hf_eval("forall x y, (forall z, z :e x <-> z :e y) -> x = y", 3)


def test_oracle_bounded_quantifiers_and_builders():
    assert hf_eval("forall x :e Power {Empty}, x c= {Empty}", 2)
    assert hf_eval("exists Y c= {Empty,{Empty}}, Y = {{Empty}}", 0)
    assert hf_eval("{Union x|x :e {{Empty},{{Empty}}}} = {Empty,{Empty}}", 0)
    assert hf_eval("forall p:prop, p \\/ ~ p", 0)


def test_show():
    assert show(EMPTY) == "{}"
    assert show(power(frozenset({EMPTY}))) == "{{}, {{}}}"


def test_fixture_has_enough_instances():
    proved = [row for row in INSTANCES if row[1] is not None]
    assert len(proved) >= 10
    assert all(rank_bound <= 4 for _, _, rank_bound, _ in INSTANCES)


@pytest.mark.parametrize("expected, theorem, rank_bound, sentence", INSTANCES)
def test_oracle_agrees_with_fixture(expected, theorem, rank_bound, sentence):
    assert hf_eval(sentence, rank_bound) is expected


@pytest.mark.parametrize("expected, theorem, rank_bound, sentence",
                         [row for row in INSTANCES if row[1] is not None])
def test_each_instance_is_a_checked_theorem(stdlib_sig, expected, theorem, rank_bound, sentence):
    thm = stdlib_sig.theorems[theorem]
    assert thm.provenance is Provenance.PROVED
    stmt, _ = desugar(parse_term(sentence), Scope(stdlib_sig.definitions))
    assert stmt == thm.statement
