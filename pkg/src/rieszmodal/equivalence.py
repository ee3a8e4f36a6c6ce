"""Model-level equivalence, norms, bisimulation and approximation.

Behavioural equivalence on a finite process is computed by partition
refinement.  Each refinement step records its splitter, which is enough to
build a formula separating any two states that end up in different blocks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .formula import (DEFAULT_LABEL, ONE, ZERO, Add, Dia, Formula, Join, Meet, One, Scale, Zero,
                      labels_of, modal_depth, size, unit_bound)
from .markov import MarkovProcess, Partition
from .sampling import example_models, random_model
from .semantics import Evaluator, evaluate
from .sympoly import eval_pointwise, eval_symbolic, isolate_roots, pp_equal, rational_between
from .sympoly.piecewise import ZERO_PT, ONE_PT, common_refinement


class BehaviourallyEquivalent(ValueError):
    """No distinguishing formula exists for a bisimilar pair."""


@dataclass(frozen=True)
class EquivReport:
    equal: bool
    witness: Optional[tuple[str, Fraction, Fraction]] = None

    def __post_init__(self) -> None:
        if not self.equal and (self.witness is None or self.witness[1] == self.witness[2]):
            raise ValueError("an inequality report needs a witness with differing values")


def equiv_on_model(phi: Formula, psi: Formula, process: MarkovProcess) -> EquivReport:
    ev = Evaluator(process)
    left, right = ev.vector(phi), ev.vector(psi)
    for state, a, b in zip(process.states, left, right):
        if a != b:
            return EquivReport(False, (state, a, b))
    return EquivReport(True)


def norm_on_model(phi: Formula, process: MarkovProcess) -> Fraction:
    """Unit norm of ``[[phi]]``: the maximum of its absolute values."""
    return max(abs(v) for v in evaluate(phi, process).values)


# ---------------------------------------------------------------------------
# Bisimulation


@dataclass(frozen=True)
class RefinementStep:
    partition: Partition
    splitter: frozenset[str]
    label: str


@dataclass
class RefinementTrace:
    initial: Partition
    steps: list[RefinementStep] = field(default_factory=list)

    def partitions(self) -> list[Partition]:
        return [self.initial] + [s.partition for s in self.steps]

    def lines(self, states: Sequence[str]) -> list[str]:
        out = [f"start: {_fmt_partition(self.initial, states)}"]
        for i, step in enumerate(self.steps, 1):
            block = "{" + ", ".join(s for s in states if s in step.splitter) + "}"
            out.append(f"step {i}: split by <{step.label}> mass into {block} -> "
                       f"{_fmt_partition(step.partition, states)}")
        return out


def _fmt_partition(p: Partition, states: Sequence[str]) -> str:
    return " ".join("{" + ", ".join(b) + "}" for b in p.ordered(states))


def _split(process: MarkovProcess, blocks: list[list[str]], splitter: Sequence[str], label: str):
    out: list[list[str]] = []
    changed = False
    for block in blocks:
        groups: dict[Fraction, list[str]] = {}
        for s in block:
            groups.setdefault(process.mass(label, s, splitter), []).append(s)
        out.extend(groups.values())
        changed |= len(groups) > 1
    return out, changed


def bisim_partition(process: MarkovProcess) -> tuple[Partition, RefinementTrace]:
    """Coarsest partition stable under per-label block masses, with its refinement trace."""
    blocks = [list(process.states)]
    trace = RefinementTrace(Partition((frozenset(process.states),)))
    changed = True
    while changed:
        changed = False
        for splitter in list(blocks):
            for label in process.labels:
                blocks, changed = _split(process, blocks, splitter, label)
                if changed:
                    part = Partition(tuple(frozenset(b) for b in blocks)).canonical(process.states)
                    blocks = part.ordered(process.states)
                    trace.steps.append(RefinementStep(part, frozenset(splitter), label))
                    break
            if changed:
                break
    return Partition(tuple(frozenset(b) for b in blocks)), trace


# ---------------------------------------------------------------------------
# Distinguishing formulas


def _clamp01(phi: Formula) -> Formula:
    return Join(Meet(phi, ONE), ZERO)


def _point_indicator(sigma: Formula, v: Fraction, others: Sequence[Fraction]) -> Formula:
    """A formula that is 1 where ``sigma = v`` and 0 where ``sigma`` is in ``others``."""
    parts = []
    for w in others:
        # (sigma - w) / (v - w) is 1 at v and 0 at w
        k = 1 / (v - w)
        parts.append(_clamp01(Add(Scale(k, sigma), Scale(-w * k, ONE))))
    out: Formula = ONE
    for part in parts:
        out = part if out is ONE else Meet(out, part)
    return out


def _indicators(process: MarkovProcess, trace: RefinementTrace) -> Iterator[tuple[RefinementStep, Formula, dict]]:
    """Replay ``trace`` keeping, for every current block, an exact indicator formula.

    Yields each step with its test formula ``<l> chi_C`` and the indicator map
    before the step.
    """
    ev = Evaluator(process)
    chi: dict[frozenset[str], Formula] = {frozenset(process.states): ONE}
    for step in trace.steps:
        sigma = Dia(chi[step.splitter], step.label)
        yield step, sigma, chi
        values = dict(zip(process.states, ev.vector(sigma)))
        new_chi: dict[frozenset[str], Formula] = {}
        for block in step.partition.blocks:
            parent = next(b for b in chi if block <= b)
            if parent == block:
                new_chi[block] = chi[parent]
                continue
            v = values[next(iter(block))]
            others = sorted({values[s] for s in parent} - {v})
            ind = _point_indicator(sigma, v, others)
            new_chi[block] = ind if chi[parent] is ONE else Meet(chi[parent], ind)
        chi = new_chi


def _separates(phi: Formula, process: MarkovProcess, x: str, y: str) -> bool:
    values = evaluate(phi, process)
    return values[x] != values[y]


def _simplify_candidates(phi: Formula) -> Iterator[Formula]:
    """Strictly smaller formulas obtained by one local rewrite."""
    if isinstance(phi, (Zero, One)):
        return
    yield ZERO
    yield ONE
    kids = phi.children()
    for k in kids:
        yield k
    if isinstance(phi, Scale):
        for c in _simplify_candidates(phi.arg):
            yield Scale(phi.r, c)
    elif isinstance(phi, Dia):
        for c in _simplify_candidates(phi.arg):
            yield Dia(c, phi.label)
    else:
        cls = type(phi)
        for c in _simplify_candidates(phi.left):
            yield cls(c, phi.right)
        for c in _simplify_candidates(phi.right):
            yield cls(phi.left, c)


def minimize(phi: Formula, process: MarkovProcess, x: str, y: str, max_rounds: int = 200) -> Formula:
    """Greedy local simplification preserving the separation of ``x`` and ``y``."""
    for _ in range(max_rounds):
        if size(phi) > 400:
            break
        for cand in _simplify_candidates(phi):
            if size(cand) < size(phi) and _separates(cand, process, x, y):
                phi = cand
                break
        else:
            break
    return phi


def distinguishing_formula(process: MarkovProcess, x: str, y: str) -> Formula:
    """A verified formula taking different values at ``x`` and ``y``."""
    for s in (x, y):
        if s not in process.states:
            raise KeyError(f"unknown state {s!r}")
    for label in process.labels:
        cand = Dia(ONE, label)
        if _separates(cand, process, x, y):
            return cand
    partition, trace = bisim_partition(process)
    if partition.block_of(x) == partition.block_of(y):
        raise BehaviourallyEquivalent(f"states {x!r} and {y!r} are behaviourally equivalent")
    for step, sigma, _ in _indicators(process, trace):
        if _separates(sigma, process, x, y):
            phi = minimize(sigma, process, x, y)
            if not _separates(phi, process, x, y):  # pragma: no cover - defensive
                raise AssertionError("distinguishing formula failed verification")
            return phi
    raise AssertionError("separated states not split by any refinement step")  # pragma: no cover


# ---------------------------------------------------------------------------
# Counterexample search


@dataclass(frozen=True)
class Counterexample:
    process: MarkovProcess
    state: str
    left: Fraction
    right: Fraction
    source: str


def unit_interval_state(x0: Fraction) -> MarkovProcess:
    """The sub-process of the unit-interval model generated by point ``x0``."""
    trans = {(DEFAULT_LABEL, "x"): (("x", Fraction(x0)),)} if x0 else {}
    return MarkovProcess(("x",), (DEFAULT_LABEL,), trans)


def symbolic_witness(phi: Formula, psi: Formula) -> Optional[Fraction]:
    """A rational point of [0, 1] where the two formulas differ on the unit-interval model."""
    f, g = eval_symbolic(phi), eval_symbolic(psi)
    if pp_equal(f, g):
        return None
    breaks, fs, gs = common_refinement(f, g)
    ends = [ZERO_PT] + breaks + [ONE_PT]
    for k, (pf, pg) in enumerate(zip(fs, gs)):
        if pf == pg:
            continue
        left, right = ends[k], ends[k + 1]
        points = [left] + [r for r in isolate_roots(pf - pg, left, right) if left < r < right] + [right]
        x0 = rational_between(points[0], points[1])
        assert eval_pointwise(phi, x0) != eval_pointwise(psi, x0)
        return x0
    return None  # pragma: no cover


def _first_difference(phi: Formula, psi: Formula, process: MarkovProcess, source: str) -> Optional[Counterexample]:
    report = equiv_on_model(phi, psi, process)
    if report.equal:
        return None
    state, a, b = report.witness
    return Counterexample(process, state, a, b, source)


def search_counterexample(phi: Formula, psi: Formula, budget: int = 200, max_states: int = 4,
                          seed: int = 0) -> Optional[Counterexample]:
    """Probe ``phi ~ psi``: bundled example models, then the unit-interval model, then random models.

    Deterministic for a fixed seed.  ``None`` means inconclusive, not equivalent.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    for name, model in example_models():
        found = _first_difference(phi, psi, model, f"example model {name}")
        if found:
            return found
    if labels_of(phi) | labels_of(psi) <= {DEFAULT_LABEL}:
        x0 = symbolic_witness(phi, psi)
        if x0 is not None:
            model = unit_interval_state(x0)
            return Counterexample(model, "x", eval_pointwise(phi, x0), eval_pointwise(psi, x0),
                                  "unit-interval model")
    labels = tuple(sorted(labels_of(phi) | labels_of(psi) | {DEFAULT_LABEL}))
    rng = random.Random(seed)
    for i in range(budget):
        model = random_model(rng, max_states, labels)
        found = _first_difference(phi, psi, model, f"random model {i}")
        if found:
            return found
    return None


# ---------------------------------------------------------------------------
# Rational approximation


def _simple_rational(r: Fraction, tol: Fraction) -> Fraction:
    """A rational with small denominator within ``tol`` of ``r``."""
    d = 1
    while True:
        s = r.limit_denominator(d)
        if abs(r - s) <= tol:
            return s
        d *= 2


def _const_value(phi: Formula) -> Fraction:
    return evaluate(phi, MarkovProcess(("x",), (DEFAULT_LABEL,), {})).values[0]


def _const_formula(s: Fraction) -> Formula:
    if s == 0:
        return ZERO
    if s == 1:
        return ONE
    return Scale(s, ONE)


def rational_approx_bound(phi: Formula, eps: Fraction) -> tuple[Formula, Fraction]:
    """Approximation of ``phi`` and its certified sup-distance bound (at most ``eps``)."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if modal_depth(phi) == 0:
        c = _const_value(phi)
        s = _simple_rational(c, eps)
        return _const_formula(s), abs(c - s)
    if isinstance(phi, Scale):
        b = unit_bound(phi.arg)
        s = _simple_rational(phi.r, eps / (2 * b)) if b else Fraction(0)
        sub, sub_err = rational_approx_bound(phi.arg, eps / (2 * max(Fraction(1), abs(s))))
        return Scale(s, sub), abs(phi.r - s) * b + abs(s) * sub_err
    if isinstance(phi, Add):
        a, ea = rational_approx_bound(phi.left, eps / 2)
        b, eb = rational_approx_bound(phi.right, eps / 2)
        return Add(a, b), ea + eb
    if isinstance(phi, (Join, Meet)):
        a, ea = rational_approx_bound(phi.left, eps)
        b, eb = rational_approx_bound(phi.right, eps)
        return type(phi)(a, b), max(ea, eb)
    if isinstance(phi, Dia):
        a, ea = rational_approx_bound(phi.arg, eps)
        return Dia(a, phi.label), ea
    raise TypeError(f"cannot approximate {type(phi).__name__}")


def rational_approx(phi: Formula, eps: Fraction) -> Formula:
    """A formula with small-denominator coefficients within sup distance ``eps`` of ``phi``."""
    psi, bound = rational_approx_bound(phi, eps)
    assert bound <= Fraction(eps)
    return psi
