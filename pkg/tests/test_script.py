import pytest

from hotg.article import check_text
from hotg.errors import GoalMismatch, HotgError, LeftoverGoals, ParseError
from hotg.kernel.checker import check_proof
from hotg.kernel.proof import Hyp, ImpIntro
from hotg.kernel.signature import Signature
from hotg.script import elaborate
from hotg.syntax import Scope, desugar, parse_script, parse_term
from hotg.terms import Const, App, Imp, conv

IN_EE = App(App(Const("In"), Const("Empty")), Const("Empty"))


def _goal(text, sig):
    t, _ = desugar(parse_term(text), Scope(sig.definitions))
    return t


def test_assume_exact_is_imp_intro():
    sig = Signature()
    proof = elaborate(Imp(IN_EE, IN_EE), parse_script("assume H. exact H."), sig)
    assert proof == ImpIntro("H", IN_EE, Hyp("H"))


def test_let_then_axiom_instance():
    sig = Signature()
    goal = _goal("forall N:set, N :e UnivOf N", sig)
    proof = elaborate(goal, parse_script("let N. exact UnivIn N."), sig)
    assert conv(check_proof(sig, 0, [], [], proof), goal)


def test_set_local_expands_and_rechecks(stdlib_sig):
    goal = _goal("forall U:set, {alpha :e U | ordinal alpha} c= U", stdlib_sig)
    script = parse_script(
        "let U. set lambda : set := {alpha :e U|ordinal alpha}. prove lambda c= U."
        " exact Sep_Subq U ordinal.")
    proof = elaborate(goal, script, stdlib_sig)
    assert conv(check_proof(stdlib_sig, 0, [], [], proof), goal, stdlib_sig.definitions)
    # the statement recorded in the signature is the one declared, not an expansion
    sig = stdlib_sig.add_theorem("lambda_sub", 0, goal, proof)
    assert sig.theorems["lambda_sub"].statement == goal


def test_apply_against_non_implication_goal(stdlib_sig):
    goal = _goal("Empty :e Power Empty", stdlib_sig)
    with pytest.raises(GoalMismatch):
        elaborate(goal, parse_script("assume H. exact H."), stdlib_sig)
    with pytest.raises(HotgError):
        elaborate(goal, parse_script("apply andI."), stdlib_sig)


def test_leftover_goals_are_an_error():
    sig = Signature()
    with pytest.raises(LeftoverGoals):
        elaborate(Imp(IN_EE, IN_EE), parse_script("assume H."), sig)


def test_claim_compiles_to_a_cut(stdlib_sig):
    goal = _goal("forall A B:prop, A /\\ B -> B /\\ A", stdlib_sig)
    script = parse_script(
        "let A B. assume H. claim HB: B. { exact andER A B H. }"
        " exact andI B A HB (andEL A B H).")
    proof = elaborate(goal, script, stdlib_sig)
    assert conv(check_proof(stdlib_sig, 0, [], [], proof), goal, stdlib_sig.definitions)


def test_elaboration_is_deterministic(stdlib_sig):
    goal = _goal("forall x y:set, x = y -> y = x", stdlib_sig)
    script = parse_script("let x y. assume H. rewrite H. exact eq_refl[set] y.")
    assert elaborate(goal, script, stdlib_sig) == elaborate(goal, script, stdlib_sig)


def test_cases_and_witness(stdlib_sig):
    text = """
Theorem or_to_ex : forall P Q:set -> prop, forall x:set, P x \\/ Q x ->
    exists y:set, P y \\/ Q y.
Proof.
  let P Q x. assume H. witness x.
  cases H as H1 H2.
  { exact orIL (P x) (Q x) H1. }
  { exact orIR (P x) (Q x) H2. }
Qed.
"""
    res = check_text(text, stdlib_sig)
    assert res.ok, res.failure


def test_destruct_existential(stdlib_sig):
    text = """
Theorem ex_nonempty : (exists x:set, x :e Power Empty) -> exists y:set, y :e Power Empty.
Proof.
  assume H. destruct H as x Hx. witness x. exact Hx.
Qed.
"""
    res = check_text(text, stdlib_sig)
    assert res.ok, res.failure


def test_wrong_script_is_rejected_with_location(stdlib_sig):
    text = "Theorem bad : Empty :e Empty.\nProof.\n  exact EmptyE Empty.\nQed.\n"
    res = check_text(text, stdlib_sig)
    assert not res.ok
    assert res.failure.name == "bad"
    assert res.failure.error.line == 3


def test_unterminated_proof_is_a_parse_error():
    with pytest.raises(ParseError):
        check_text("Theorem t : forall p:prop, p -> p.\nProof.\n  let p.\n")
