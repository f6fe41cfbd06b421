"""Finite model evaluation and the empty-model falsification."""

import itertools

import pytest

from herbrand.semantics import (Model, ModelError, empty_model,
                                empty_model_check, eval_formula)
from herbrand.syntax import (
    And, Atom, Bottom, Const, Exists, Forall, Imp, Not, Or, Var,
)

P = lambda t: Atom("P", (t,))
Q0 = Atom("Q")

TWO = Model(domain=("a", "b"), consts={"a": "a", "b": "b"},
            preds={"P": {("a",)}, "Q": set()})


def test_atom_and_connectives():
    assert eval_formula(TWO, {}, P(Const("a")))
    assert not eval_formula(TWO, {}, P(Const("b")))
    assert not eval_formula(TWO, {}, And(P(Const("a")), Q0))
    assert eval_formula(TWO, {}, Or(P(Const("a")), Q0))
    assert eval_formula(TWO, {}, Imp(Q0, P(Const("b"))))


def test_empty_model_conjunction_false():
    m = Model(domain=("c",), consts={"c": "c"}, preds={"P": set(), "Q": set()})
    assert not eval_formula(m, {}, And(P(Const("c")), Q0))


def test_two_model_counterexample():
    # (P(a) | P(b)) -> P(x) has no uniform witness
    f = lambda x: Imp(Or(P(Const("a")), P(Const("b"))), P(Const(x)))
    model_a = Model(domain=("a", "b"), consts={"a": "a", "b": "b"},
                    preds={"P": {("a",)}})
    model_b = Model(domain=("a", "b"), consts={"a": "a", "b": "b"},
                    preds={"P": {("b",)}})
    assert eval_formula(model_a, {}, f("a")) is True
    assert eval_formula(model_b, {}, f("a")) is False
    assert eval_formula(model_b, {}, f("b")) is True
    assert eval_formula(model_a, {}, f("b")) is False


def test_quantifiers_range_over_domain():
    assert eval_formula(TWO, {}, Exists("v", P(Var("v"))))
    assert not eval_formula(TWO, {}, Forall("v", P(Var("v"))))
    assert not eval_formula(TWO, {}, Exists("v", Q0))


def test_unbound_variable_error():
    with pytest.raises(ModelError, match="unbound"):
        eval_formula(TWO, {}, P(Var("v")))


def test_classical_equivalences_by_enumeration():
    atoms = [P(Var("v")), Q0, Atom("R", (Var("v"), Var("w")))]
    model = Model(domain=("a", "b"),
                  preds={"P": {("a",)}, "Q": {()}, "R": {("a", "b")}})
    envs = [dict(zip(("v", "w"), vals))
            for vals in itertools.product(model.domain, repeat=2)]
    for x, y in itertools.product(atoms, repeat=2):
        de_morgan_l = Not(And(x, y))
        de_morgan_r = Or(Not(x), Not(y))
        for env in envs:
            assert (eval_formula(model, env, de_morgan_l)
                    == eval_formula(model, env, de_morgan_r))
            assert (eval_formula(model, env, Not(Not(x)))
                    == eval_formula(model, env, x))


def test_empty_model_shape():
    f = Exists("v", Or(P(Var("v")), P(Const("a"))))
    m = empty_model(f)
    assert m.domain == ("a",)
    assert m.preds == {"P": set()}
    g = Exists("v", P(Var("v")))
    assert empty_model(g).domain == ("el",)


def test_empty_model_check_clauses():
    assert empty_model_check(Exists("v", P(Var("v")))) is False
    assert empty_model_check(Exists("v", Or(P(Var("v")), Q0))) is False
    assert empty_model_check(Exists("v", And(P(Var("v")), Atom("Q2", (Var("v"),))))) is False
    assert empty_model_check(Exists("v", Bottom())) is False


def test_empty_model_check_preconditions():
    with pytest.raises(ModelError, match="existential"):
        empty_model_check(P(Const("a")))
    with pytest.raises(ModelError, match="implication"):
        empty_model_check(Exists("v", Imp(P(Var("v")), Q0)))
    with pytest.raises(ModelError, match="propositional"):
        empty_model_check(Exists("v", Forall("w", P(Var("w")))))
    with pytest.raises(ModelError, match="closed"):
        empty_model_check(Exists("v", P(Var("other"))))
