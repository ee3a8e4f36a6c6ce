"""Acceptance suite: each test prints one PASS/FAIL line and asserts it."""

import random
from fractions import Fraction
from importlib import resources

from rieszmodal.equivalence import (BehaviourallyEquivalent, bisim_partition, distinguishing_formula, norm_on_model,
                                    rational_approx)
from rieszmodal.formula import ONE, ZERO, Add, Dia, Join, Odot, Ominus, Oplus, Scale, Var, parse, unit_bound
from rieszmodal.markov import quotient
from rieszmodal.proofs import Equation, ProofError, axiom_catalogue, check, load_derivation, soundness_fuzz
from rieszmodal.sampling import random_formula, random_model, random_unit_formula
from rieszmodal.semantics import Evaluator, eval_at, evaluate
from rieszmodal.sympoly import PiecewisePoly, Poly, eval_pointwise, eval_symbolic, pp_equal
from rieszmodal.translate import expand
from oracles import brute_force_blocks, decimal_formula
from test_proofs import BAD, CORPUS, GOOD, expectation

F = Fraction


def test_worked_examples(criterion, looping, branching):
    got = [tuple(evaluate(parse(t), looping).values) for t in ("<>1", "-(<>1) + 1", "<><>1")]
    want = [(F(5, 6), F(1, 3)), (F(1, 6), F(2, 3)), (F(8, 18), F(5, 18))]
    p1, p2 = parse("<>1"), parse("1 - <>1")
    split = (eval_at(Dia(Join(p1, p2)), branching, "y"), eval_at(Join(Dia(p1), Dia(p2)), branching, "y"))
    x = Poly.x()
    symbolic = (pp_equal(eval_symbolic(parse("<>1")), PiecewisePoly.poly(x)),
                pp_equal(eval_symbolic(parse("<><>1")), PiecewisePoly.poly(x * x)))
    ok = got == want and split == (1, F(2, 3)) and all(symbolic)
    assert criterion(1, "worked example values", ok, f"split at y: {split[0]} vs {split[1]}")


def test_axiom_soundness(criterion):
    failures = []
    symbolic = 0
    for i, axiom in enumerate(axiom_catalogue()):
        result = soundness_fuzz(axiom.instance(axiom.sample_params(random.Random(i))), trials=200, seed=i,
                                max_states=8)
        symbolic += result.symbolic_checks
        if not result.passed or result.trials != 200:
            failures.append(axiom.id)
    ok = not failures and symbolic > 0
    assert criterion(2, "axiom soundness, 22 axioms x 200 trials", ok,
                     f"{symbolic} symbolic checks, failures: {failures or 'none'}")


def test_non_theorem_rejected(criterion):
    x, y = Var("x"), Var("y")
    result = soundness_fuzz(Equation(Dia(Join(x, y)), Join(Dia(x), Dia(y))), trials=200, seed=0)
    ok = not result.passed and result.countermodel.left != result.countermodel.right
    assert criterion(3, "diamond over join refuted", ok, result.countermodel.describe() if not result.passed else "")


def test_bisimulation_oracle(criterion):
    rng = random.Random(4)
    mismatched = bad_certificates = disagreements = pairs = 0
    for _ in range(100):
        m = random_model(rng, 6)
        part, _ = bisim_partition(m)
        if set(part.blocks) != brute_force_blocks(m):
            mismatched += 1
        suite = [random_formula(rng, rng.randint(1, 6), m.labels) for _ in range(50)]
        ev = Evaluator(m)
        index = {s: i for i, s in enumerate(m.states)}
        vectors = [ev.vector(phi) for phi in suite]
        for i, a in enumerate(m.states):
            for b in m.states[i + 1:]:
                pairs += 1
                if part.block_of(a) == part.block_of(b):
                    if any(v[index[a]] != v[index[b]] for v in vectors):
                        disagreements += 1
                    continue
                try:
                    phi = distinguishing_formula(m, a, b)
                    if eval_at(phi, m, a) == eval_at(phi, m, b):
                        bad_certificates += 1
                except BehaviourallyEquivalent:
                    bad_certificates += 1
    ok = mismatched == bad_certificates == disagreements == 0
    assert criterion(4, "bisimulation vs brute force, certificates, same-block agreement", ok,
                     f"{pairs} pairs; {mismatched} partition mismatches, {bad_certificates} bad certificates, "
                     f"{disagreements} same-block disagreements")


def test_quotient_invariance(criterion):
    rng = random.Random(5)
    broken = 0
    for _ in range(50):
        m = random_model(rng, 6)
        part, _ = bisim_partition(m)
        q, proj = quotient(m, part)
        up, down = Evaluator(m), Evaluator(q)
        for _ in range(50):
            phi = random_formula(rng, 5, m.labels)
            v, w = up.vector(phi), down.vector(phi)
            qi = {s: i for i, s in enumerate(q.states)}
            if any(v[i] != w[qi[proj[s]]] for i, s in enumerate(m.states)):
                broken += 1
    assert criterion(5, "quotient preserves semantics, 50 models x 50 formulas", broken == 0, f"{broken} violations")


def test_symbolic_pointwise(criterion):
    rng = random.Random(6)
    bad = 0
    for _ in range(500):
        phi = random_formula(rng, 6, leaf_prob=rng.choice([0.05, 0.2, 0.35]))
        x0 = F(rng.randint(0, 1000), 1000)
        f = eval_symbolic(phi)
        f.validate()
        if f(x0) != eval_pointwise(phi, x0):
            bad += 1
    assert criterion(6, "symbolic vs pointwise, 500 pairs", bad == 0, f"{bad} disagreements")


def test_unit_bound(criterion):
    rng = random.Random(7)
    bad = 0
    for _ in range(500):
        phi = random_formula(rng, 5, ("tau", "a"))
        m = random_model(rng, 6, ("tau", "a"))
        s = rng.choice(m.states)
        if abs(eval_at(phi, m, s)) > unit_bound(phi):
            bad += 1
    assert criterion(7, "unit bound, 500 triples", bad == 0, f"{bad} violations")


def test_rational_approximation(criterion):
    rng = random.Random(8)
    worst = F(0)
    bad = 0
    for _ in range(50):
        phi = decimal_formula(rng, 4, ("tau", "a"))
        for eps in (F(1, 10), F(1, 100)):
            psi = rational_approx(phi, eps)
            diff = Add(phi, Scale(F(-1), psi))
            for _ in range(100):
                d = norm_on_model(diff, random_model(rng, 5, ("tau", "a")))
                worst = max(worst, d / eps)
                bad += d > eps
    assert criterion(8, "rational approximation within eps", bad == 0,
                     f"worst error/eps = {float(worst):.3f}, {bad} violations")


def test_proof_corpus(criterion):
    ok_count = sum(1 for name in GOOD if check(load_derivation(CORPUS.joinpath(name))) is not None)
    caught = 0
    for name in BAD:
        kind, step = expectation(name)
        try:
            check(load_derivation(CORPUS.joinpath(name)))
        except ProofError as exc:
            caught += (exc.kind, exc.step) == (kind, step)
    ok = ok_count == len(GOOD) == 10 and caught == len(BAD) == 5
    assert criterion(9, "proof corpus", ok, f"{ok_count}/10 check, {caught}/5 corrupted caught as documented")


def test_translation_semantics(criterion):
    rng = random.Random(10)
    bad = {"oplus": 0, "odot": 0, "ominus": 0}
    for _ in range(200):
        m = random_model(rng, 5)
        phi, psi = random_unit_formula(rng), random_unit_formula(rng)
        r = F(rng.randint(0, 16), 16)
        v, w = evaluate(phi, m), evaluate(psi, m)
        got = {name: evaluate(expand(e), m) for name, e in
               (("oplus", Oplus(phi, psi)), ("odot", Odot(phi, psi)), ("ominus", Ominus(phi, r)))}
        for s in m.states:
            bad["oplus"] += got["oplus"][s] != min(F(1), v[s] + w[s])
            bad["odot"] += got["odot"][s] != max(F(0), v[s] + w[s] - 1)
            bad["ominus"] += got["ominus"][s] != max(F(0), v[s] - r)
    ok = not any(bad.values())
    assert criterion(10, "translations vs pointwise min/max, 200 trials each", ok,
                     ", ".join(f"{k}: {n}" for k, n in bad.items()))
