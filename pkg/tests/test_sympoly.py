import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rieszmodal.formula import Var, parse, substitute, unit_bound
from rieszmodal.proofs import axiom_catalogue
from rieszmodal.sampling import random_formula
from rieszmodal.sympoly import (AlgebraicNumber, LabelError, PiecewisePoly, Poly, count_roots, dump, eval_pointwise,
                                eval_symbolic, format_poly, gcd, isolate_roots, max_abs_at_most, poly_add, poly_mul,
                                poly_scale, pp_equal, pp_join, pp_meet, rational_between, sign_at, squarefree,
                                sturm_sequence)
from strategies import formulas, unit_rationals

F = Fraction
X = Poly.x()
GRID = [F(k, 1000) for k in range(1001)]

polys = st.lists(st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4)), max_size=4).map(Poly)


def pp(*coeffs):
    return PiecewisePoly.poly(Poly(coeffs))


class TestPoly:
    def test_ring_examples(self):
        assert poly_add(X, -X) == Poly(())
        assert poly_mul(X, X) == Poly((0, 0, 1))
        assert poly_scale(F(1, 3), Poly((6, 3))) == Poly((2, 1))
        for t in (F(0), F(1, 2), F(7, 3)):
            assert poly_scale(F(1, 3), Poly((6, 3)))(t) == t + 2

    def test_normal_form(self):
        assert Poly((1, 0, 0)).coeffs == (1,)
        assert Poly((0,)).degree == -1 or not Poly((0,))

    @given(polys, polys, unit_rationals)
    def test_evaluation_is_a_homomorphism(self, p, q, t):
        assert (p + q)(t) == p(t) + q(t)
        assert (p * q)(t) == p(t) * q(t)

    @given(polys, polys)
    def test_division(self, p, q):
        if not q:
            return
        quo, rem = p.divmod(q)
        assert quo * q + rem == p
        assert rem.degree < q.degree or not rem

    def test_gcd_and_squarefree(self):
        p = poly_mul(Poly((-1, 1)), poly_mul(Poly((-1, 1)), Poly((1, 1))))  # (x-1)^2 (x+1)
        assert gcd(p, p.derivative()).monic() == Poly((-1, 1))
        assert squarefree(p).monic() == Poly((-1, 0, 1))

    def test_sturm_counts(self):
        seq = sturm_sequence(Poly((F(-1, 2), 0, 1)))
        assert count_roots(seq, 0, 1) == 1
        assert count_roots(seq, -1, 1) == 2

    def test_format(self):
        assert format_poly(Poly((1, -2, 1))) == "1 - 2*x + x^2"
        assert format_poly(Poly(())) == "0"


class TestRoots:
    def test_endpoints(self):
        roots = isolate_roots(Poly((0, -1, 1)))
        assert [r.value for r in roots] == [0, 1]

    def test_rational_root(self):
        assert [r.value for r in isolate_roots(Poly((-1, 2)))] == [F(1, 2)]

    def test_irrational_root(self):
        (r,) = isolate_roots(Poly((F(-1, 2), 0, 1)))
        r.check()
        assert not r.is_rational
        assert r.defining.monic() == Poly((F(-1, 2), 0, 1))
        assert count_roots(r.sturm, r.lo, r.hi) == 1
        close = r.refine_to(F(1, 10**6))
        assert abs(close.lo ** 2 - F(1, 2)) < F(1, 10**5)

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            isolate_roots(Poly(()))

    def test_comparisons(self):
        (r2,) = isolate_roots(Poly((-2, 0, 1)), 0, 2)
        (r3,) = isolate_roots(Poly((-3, 0, 1)), 0, 2)
        assert r2 < r3 and r3 > F(17, 10) and r2 < F(3, 2) and r2 > F(7, 5)
        assert r2 == isolate_roots(poly_mul(Poly((-2, 0, 1)), Poly((-5, 1))), 0, 2)[0]
        assert sign_at(Poly((-2, 0, 1)), r2) == 0
        assert sign_at(Poly((-3, 0, 1)), r2) < 0
        q = rational_between(r2, r3)
        assert r2 < q < r3

    @given(st.lists(st.builds(Fraction, st.integers(0, 20), st.just(20)), min_size=1, max_size=4, unique=True))
    def test_isolates_known_rational_roots(self, roots):
        p = Poly((1,))
        for r in roots:
            p = p * Poly((-r, 1))
        found = isolate_roots(p)
        assert len(found) == len(roots)
        assert all(a.compare(r) == 0 for a, r in zip(found, sorted(roots)))


class TestPiecewise:
    def test_join_example(self):
        f = pp_join(pp(0, 1), pp(1, -1))
        f.validate()
        assert [b.value for b in f.breakpoints] == [F(1, 2)]
        assert f.pieces == (Poly((1, -1)), Poly((0, 1)))
        assert all(f(t) == max(t, 1 - t) for t in GRID)

    def test_meet_example(self):
        f = pp_meet(pp(0, 2), pp(1))
        assert [b.value for b in f.breakpoints] == [F(1, 2)]
        assert f.pieces == (Poly((0, 2)), Poly((1,)))
        assert all(f(t) == min(2 * t, 1) for t in GRID)

    def test_irrational_breakpoint(self):
        f = pp_join(pp(0, 0, 2), pp(1))
        f.validate()
        (b,) = f.breakpoints
        assert not b.is_rational
        assert all(f(t) == max(2 * t * t, 1) for t in GRID)
        text = dump(f)
        assert text.startswith("on [0,0.707107]: 1\non [0.707107,1]: 2*x^2\nbreakpoints:\n  b1 = root of")

    def test_join_idempotent(self):
        f = pp_join(pp(0, 1), pp(F(1, 3)))
        assert pp_equal(pp_join(f, f), f)

    def test_equality(self):
        assert not pp_equal(pp(0, 1), pp(0, 0, 1))
        assert pp_equal(pp_join(pp(0, 1), pp(1, -1)), pp_join(pp(1, -1), pp(0, 1)))

    @given(polys, polys)
    def test_grid_oracle(self, p, q):
        f, g = PiecewisePoly.poly(p), PiecewisePoly.poly(q)
        j, m = pp_join(f, g), pp_meet(f, g)
        j.validate()
        m.validate()
        for t in GRID[::25]:
            assert j(t) == max(p(t), q(t))
            assert m(t) == min(p(t), q(t))

    @given(formulas(max_leaves=8), formulas(max_leaves=8))
    def test_lattice_laws(self, a, b):
        f, g = eval_symbolic(a), eval_symbolic(b)
        assert pp_equal(pp_join(f, g), pp_join(g, f))
        assert pp_equal(pp_meet(f, g), pp_meet(g, f))
        assert pp_equal(pp_join(f, f), f)
        assert pp_equal(pp_join(f, pp_meet(f, g)), f)
        assert pp_equal(pp_meet(f, pp_join(f, g)), f)

    def test_max_abs(self):
        bump = pp(0, 4, -4)  # 4x(1-x), peak 1 at x = 1/2
        assert max_abs_at_most(bump, 1)
        assert not max_abs_at_most(bump, F(99, 100))


class TestSymbolic:
    def test_diamond_is_identity(self):
        assert pp_equal(eval_symbolic(parse("<>1")), PiecewisePoly.poly(X))
        assert eval_symbolic(parse("<>1")).breakpoints == ()

    def test_two_diamonds_square(self):
        assert pp_equal(eval_symbolic(parse("<><>1")), PiecewisePoly.poly(X * X))
        assert not pp_equal(eval_symbolic(parse("<>1")), eval_symbolic(parse("<><>1")))

    def test_clamped_double(self):
        f = eval_symbolic(parse("(2*<>1) /\\ 1"))
        assert [b.value for b in f.breakpoints] == [F(1, 2)]
        assert f.pieces == (Poly((0, 2)), Poly((1,)))
        rng = random.Random(5)
        for _ in range(64):
            t = F(rng.randint(0, 997), 997)
            assert f(t) == eval_pointwise(parse("(2*<>1) /\\ 1"), t)

    def test_linearity_instance(self):
        assert pp_equal(eval_symbolic(parse("<>1 + <>1")), eval_symbolic(parse("2*<>1")))

    def test_pointwise_examples(self):
        assert eval_pointwise(parse("<>1"), F(1, 3)) == F(1, 3)
        assert eval_pointwise(parse("<><>1"), F(1, 2)) == F(1, 4)
        assert eval_pointwise(parse("1 - <>1"), 1) == 0
        with pytest.raises(ValueError):
            eval_pointwise(parse("<>1"), F(3, 2))

    def test_labels_rejected(self):
        with pytest.raises(LabelError):
            eval_symbolic(parse("<a>1"))
        with pytest.raises(LabelError):
            eval_pointwise(parse("<a>1"), 0)

    @given(formulas(max_leaves=16), st.lists(unit_rationals, min_size=8, max_size=8))
    def test_oracle_agreement_and_closure(self, phi, points):
        f = eval_symbolic(phi)
        f.validate()
        for t in points + [F(0), F(1)]:
            assert f(t) == eval_pointwise(phi, t)

    def test_deep_random_formulas(self):
        rng = random.Random(11)
        for _ in range(40):
            phi = random_formula(rng, 6, leaf_prob=0.05)
            f = eval_symbolic(phi)
            f.validate()
            for _ in range(64):
                t = F(rng.randint(0, 10**4), 10**4)
                assert f(t) == eval_pointwise(phi, t)
            assert max_abs_at_most(f, unit_bound(phi))

    @given(formulas(max_leaves=10))
    def test_bounded_by_unit_bound(self, phi):
        assert max_abs_at_most(eval_symbolic(phi), unit_bound(phi))

    @pytest.mark.parametrize("axiom", axiom_catalogue(),
                             ids=lambda a: a.id)
    def test_axioms_hold_symbolically(self, axiom):
        rng = random.Random(axiom.id)
        for _ in range(10):
            params = axiom.sample_params(rng)
            if "label" in params:
                params["label"] = "tau"
            eq = axiom.instance(params)
            names = sorted({v.name for side in (eq.lhs, eq.rhs) for v in _vars(side)})
            inst = {n: random_formula(rng, 3) for n in names}
            assert pp_equal(eval_symbolic(substitute(eq.lhs, inst)), eval_symbolic(substitute(eq.rhs, inst)))


def _vars(phi):
    if isinstance(phi, Var):
        yield phi
    for k in phi.children():
        yield from _vars(k)


def test_algebraic_rational_constructor():
    a = AlgebraicNumber.rational(F(1, 3))
    a.check()
    assert a.is_rational and a.value == F(1, 3) and a.certificate() == "1/3"
