import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rieszmodal.formula import ONE, ZERO, Add, Dia, Join, Meet, Odot, Ominus, Oplus, Scale, Var, abs_, parse
from rieszmodal.proofs import axiom_catalogue
from rieszmodal.formula import substitute
from rieszmodal.sampling import random_formula, random_model
from rieszmodal.semantics import Evaluator, diamond, eval_at, evaluate
from rieszmodal.translate import expand
from oracles import naive_value
from strategies import formulas, models, small_rationals

F = Fraction


class TestGoldens:
    def test_total_mass(self, looping):
        assert dict(evaluate(parse("<>1"), looping)) == {"x1": F(5, 6), "x2": F(1, 3)}

    def test_termination_probability(self, looping):
        assert dict(evaluate(parse("-(<>1) + 1"), looping)) == {"x1": F(1, 6), "x2": F(2, 3)}

    def test_two_steps(self, looping):
        assert dict(evaluate(parse("<><>1"), looping)) == {"x1": F(8, 18), "x2": F(5, 18)}

    def test_diamond_does_not_distribute_over_join(self, branching):
        p1, p2 = parse("<>1"), parse("1 - <>1")
        assert eval_at(Dia(Join(p1, p2)), branching, "y") == 1
        assert eval_at(Join(Dia(p1), Dia(p2)), branching, "y") == F(2, 3)

    def test_zero_everywhere(self, chain4):
        assert set(evaluate(ZERO, chain4).values) == {0}

    def test_eval_at(self, looping, chain4):
        assert eval_at(parse("<>1"), looping, "x2") == F(1, 3)
        assert all(eval_at(ONE, chain4, s) == 1 for s in chain4.states)
        with pytest.raises(KeyError):
            eval_at(ONE, looping, "nope")

    def test_missing_label_is_null_measure(self, looping):
        assert set(evaluate(parse("<b>1 + 1"), looping).values) == {1}

    def test_open_terms_rejected(self, looping):
        with pytest.raises(ValueError):
            evaluate(Var("x"), looping)

    def test_lines(self, looping):
        assert evaluate(parse("<>1"), looping).lines() == ["x1 = 5/6", "x2 = 1/3"]


@given(formulas(label_choices=("tau", "a")), models())
def test_matches_naive_recursion(phi, m):
    v = evaluate(phi, m)
    assert list(v) == list(m.states)
    assert all(v[s] == naive_value(phi, m, s) for s in m.states)


@given(formulas(), models(), st.data())
def test_idempotent_meet_at_state(phi, m, data):
    s = data.draw(st.sampled_from(m.states))
    assert eval_at(Meet(phi, phi), m, s) == eval_at(phi, m, s)


def test_shared_subterms_evaluate_once(looping):
    phi = ONE
    for _ in range(200):
        phi = Add(Dia(phi), Dia(phi))  # exponential as a tree, linear as a DAG
    assert evaluate(phi, looping)["x2"] >= 0


@pytest.mark.parametrize("axiom", axiom_catalogue(), ids=lambda a: a.id)
def test_axioms_hold_on_random_models(axiom):
    rng = random.Random(axiom.id)
    for _ in range(40):
        eq = axiom.instance(axiom.sample_params(rng))
        m = random_model(rng, 5, ("tau", "a"))
        names = sorted({n.name for side in (eq.lhs, eq.rhs) for n in _vars(side)})
        inst = {n: random_formula(rng, 3, ("tau", "a")) for n in names}
        ev = Evaluator(m)
        assert ev.vector(substitute(eq.lhs, inst)) == ev.vector(substitute(eq.rhs, inst))


def _vars(phi):
    if isinstance(phi, Var):
        yield phi
    for k in phi.children():
        yield from _vars(k)


# The diamond as an operator on valuations: linear, positive, and below 1.
@given(models(label_choices=("tau",)), st.data())
def test_diamond_operator_properties(m, data):
    vec = st.lists(small_rationals, min_size=len(m.states), max_size=len(m.states))
    f = dict(zip(m.states, data.draw(vec)))
    g = dict(zip(m.states, data.draw(vec)))
    r1, r2 = data.draw(small_rationals), data.draw(small_rationals)
    combo = {s: r1 * f[s] + r2 * g[s] for s in m.states}
    df, dg, dc = diamond(m, f), diamond(m, g), diamond(m, combo)
    assert all(dc[s] == r1 * df[s] + r2 * dg[s] for s in m.states)
    pos = diamond(m, {s: max(f[s], F(0)) for s in m.states})
    assert all(v >= 0 for v in pos.values())
    assert all(v <= 1 for v in diamond(m, {s: F(1) for s in m.states}).values())


@given(formulas(label_choices=("tau", "a")), models())
def test_abs_of_diamond_below_diamond_of_abs(phi, m):
    for label in ("tau", "a"):
        assert evaluate(abs_(Dia(phi, label)), m) <= evaluate(Dia(abs_(phi), label), m)


@given(formulas(), formulas(), models(label_choices=("tau",)))
def test_diamond_monotone(phi, psi, m):
    lo, hi = Meet(phi, psi), Join(phi, psi)
    assert evaluate(lo, m) <= evaluate(hi, m)
    assert evaluate(Dia(lo), m) <= evaluate(Dia(hi), m)


@given(formulas(), formulas(), models(), st.builds(Fraction, st.integers(0, 8), st.just(8)))
def test_translation_identities(phi, psi, m, r):
    v, w = evaluate(phi, m), evaluate(psi, m)
    oplus = evaluate(expand(Oplus(phi, psi)), m)
    odot = evaluate(expand(Odot(phi, psi)), m)
    ominus = evaluate(expand(Ominus(phi, r)), m)
    for s in m.states:
        assert oplus[s] == min(F(1), v[s] + w[s])
        assert odot[s] == max(F(0), v[s] + w[s] - 1)
        assert ominus[s] == max(F(0), v[s] - r)
