"""Command-line interface.

Exit codes: 0 success, 1 negative semantic result (formulas differ,
countermodel or certificate found, proof rejected), 2 usage or input error.
Every subcommand accepts ``--json`` for a machine-readable envelope::

    {"command": "...", "status": "ok" | "negative" | "error", "result": {...}}
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__
from .equivalence import (BehaviourallyEquivalent, bisim_partition, distinguishing_formula, equiv_on_model,
                          norm_on_model, rational_approx_bound, search_counterexample)
from .formula import Formula, FormulaSyntaxError, format_rational, is_core, labels_of, parse, parse_rational, to_text
from .markov import MarkovProcess, ModelError, load
from .proofs import ProofError, check, load_derivation
from .sampling import EXAMPLE_MODELS, bundled_model
from .semantics import evaluate
from .sympoly import LabelError, eval_pointwise, eval_symbolic
from .sympoly.piecewise import dump
from .translate import TranslationError, expand

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Output:
    def __init__(self, command: str, as_json: bool):
        self.command = command
        self.as_json = as_json
        self.lines: list[str] = []
        self.result: dict = {}
        self.notes: list[str] = []

    def line(self, text: str) -> None:
        self.lines.append(text)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def emit(self, code: int) -> int:
        if self.as_json:
            status = {OK: "ok", NEGATIVE: "negative"}.get(code, "error")
            envelope = {"command": self.command, "status": status, "result": self.result}
            if self.notes:
                envelope["notes"] = self.notes
            print(json.dumps(envelope, indent=2, sort_keys=True))
        else:
            for note in self.notes:
                print(f"note: {note}", file=sys.stderr)
            for text in self.lines:
                print(text)
        return code


def q(x: Fraction) -> str:
    return format_rational(x)


def _formula(text: str) -> Formula:
    """Parse, accepting extended connectives, and return the core formula."""
    return expand(parse(text, extended=True))


def _model(path: str) -> MarkovProcess:
    p = Path(path)
    if not p.exists():
        stem = p.name[:-5] if p.name.endswith(".json") else p.name
        if stem in EXAMPLE_MODELS and p.parent == Path("."):
            return bundled_model(stem)
    return load(p)


def _label_notes(out: Output, phi: Formula, model: MarkovProcess) -> None:
    for label in sorted(labels_of(phi) - set(model.labels)):
        out.note(f"label {label!r} is not declared by the model; <{label}> acts as the null measure")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_eval(args, out: Output) -> int:
    model = _model(args.model)
    phi = _formula(args.formula)
    _label_notes(out, phi, model)
    values = evaluate(phi, model)
    out.lines.extend(values.lines())
    out.result = {"formula": to_text(phi), "values": {s: q(v) for s, v in values.items()}}
    return OK


def cmd_equiv(args, out: Output) -> int:
    model = _model(args.model)
    phi, psi = _formula(args.formula), _formula(args.other)
    _label_notes(out, phi + psi, model)
    report = equiv_on_model(phi, psi, model)
    if report.equal:
        out.line("EQUAL")
        out.result = {"equal": True}
        return OK
    state, a, b = report.witness
    out.line(f"DIFFERENT at {state}: {q(a)} vs {q(b)}")
    out.result = {"equal": False, "witness": {"state": state, "left": q(a), "right": q(b)}}
    return NEGATIVE


def cmd_norm(args, out: Output) -> int:
    model = _model(args.model)
    phi = _formula(args.formula)
    _label_notes(out, phi, model)
    n = norm_on_model(phi, model)
    out.line(q(n))
    out.result = {"norm": q(n)}
    return OK


def cmd_bisim(args, out: Output) -> int:
    model = _model(args.model)
    partition, trace = bisim_partition(model)
    blocks = partition.ordered(model.states)
    for block in blocks:
        out.line("{" + ", ".join(block) + "}")
    out.result = {"blocks": blocks}
    if args.trace:
        out.line("trace:")
        out.lines.extend(f"  {line}" for line in trace.lines(model.states))
        out.result["trace"] = [
            {"splitter": [s for s in model.states if s in step.splitter], "label": step.label,
             "partition": step.partition.ordered(model.states)} for step in trace.steps]
    return OK


def cmd_distinguish(args, out: Output) -> int:
    model = _model(args.model)
    for s in (args.x, args.y):
        if s not in model.states:
            raise UsageError(f"unknown state {s!r}")
    try:
        phi = distinguishing_formula(model, args.x, args.y)
    except BehaviourallyEquivalent:
        out.line("EQUIVALENT")
        out.result = {"equivalent": True}
        return OK
    values = evaluate(phi, model)
    out.line(to_text(phi))
    out.line(f"{args.x} = {q(values[args.x])}")
    out.line(f"{args.y} = {q(values[args.y])}")
    out.result = {"equivalent": False, "formula": to_text(phi),
                  "values": {args.x: q(values[args.x]), args.y: q(values[args.y])}}
    return NEGATIVE


def cmd_search(args, out: Output) -> int:
    if args.seed is None:
        if os.environ.get("CI"):
            raise UsageError("--seed is required when CI is set")
        args.seed = 0
    phi, psi = _formula(args.formula), _formula(args.other)
    found = search_counterexample(phi, psi, budget=args.budget, max_states=args.max_states, seed=args.seed)
    if found is None:
        out.line("INCONCLUSIVE")
        out.result = {"found": False, "budget": args.budget, "seed": args.seed}
        return OK
    doc = found.process.to_dict()
    out.result = {"found": True, "source": found.source, "state": found.state, "left": q(found.left),
                  "right": q(found.right), "model": doc}
    summary = f"COUNTERMODEL ({found.source}) at {found.state}: {q(found.left)} vs {q(found.right)}"
    if args.out:
        Path(args.out).write_text(found.process.dumps() + "\n", encoding="utf-8")
        out.line(f"{summary}; model written to {args.out}")
        out.result["file"] = args.out
    else:
        out.line(summary)
        out.line(found.process.dumps())
    return NEGATIVE


def cmd_sympoly(args, out: Output) -> int:
    phi = _formula(args.formula)
    if args.at is not None:
        x0 = parse_rational(args.at)
        v = eval_pointwise(phi, x0)
        out.line(q(v))
        out.result = {"at": q(x0), "value": q(v)}
        return OK
    f = eval_symbolic(phi)
    out.lines.extend(dump(f).splitlines())
    out.result = {
        "pieces": [{"poly": [q(c) for c in piece.coeffs]} for piece in f.pieces],
        "breakpoints": [b.certificate() for b in f.breakpoints],
        "dump": dump(f),
    }
    return OK


def cmd_approx(args, out: Output) -> int:
    phi = _formula(args.formula)
    eps = parse_rational(args.eps)
    if eps <= 0:
        raise UsageError("--eps must be positive")
    psi, bound = rational_approx_bound(phi, eps)
    out.line(to_text(psi))
    out.result = {"formula": to_text(psi), "bound": q(bound), "eps": q(eps)}
    return OK


def cmd_check(args, out: Output) -> int:
    try:
        derivation = load_derivation(args.proof)
        eq = check(derivation)
    except ProofError as exc:
        out.line(f"REJECTED {exc}")
        out.result = {"ok": False, "error": exc.to_dict()}
        return NEGATIVE
    out.line(f"OK {eq}")
    out.result = {"ok": True, "equation": str(eq), "steps": len(derivation.steps)}
    return OK


def cmd_translate(args, out: Output) -> int:
    phi = expand(parse(args.formula, extended=True))
    assert is_core(phi)
    out.line(to_text(phi))
    out.result = {"formula": to_text(phi)}
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a JSON envelope instead of text")
    parser = argparse.ArgumentParser(prog="rieszmodal", parents=[common],
                                     description="Riesz modal logic over finite Markov processes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        p.set_defaults(func=func)
        return p

    model_help = "model JSON file (looping, branching and chain4 name the bundled examples)"
    p = add("eval", cmd_eval, "exact value of a formula at every state")
    p.add_argument("-m", "--model", required=True, help=model_help)
    p.add_argument("-f", "--formula", required=True)

    p = add("equiv", cmd_equiv, "compare two formulas on one model")
    p.add_argument("-m", "--model", required=True, help=model_help)
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("-g", "--other", required=True)

    p = add("norm", cmd_norm, "unit norm of a formula on one model")
    p.add_argument("-m", "--model", required=True, help=model_help)
    p.add_argument("-f", "--formula", required=True)

    p = add("bisim", cmd_bisim, "behavioural equivalence classes")
    p.add_argument("-m", "--model", required=True, help=model_help)
    p.add_argument("--trace", action="store_true", help="also print the refinement steps")

    p = add("distinguish", cmd_distinguish, "formula separating two states")
    p.add_argument("-m", "--model", required=True, help=model_help)
    p.add_argument("-x", required=True, help="first state")
    p.add_argument("-y", required=True, help="second state")

    p = add("search", cmd_search, "look for a model on which two formulas differ")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("-g", "--other", required=True)
    p.add_argument("--budget", type=int, default=200, help="number of random models (default 200)")
    p.add_argument("--max-states", type=int, default=4, help="largest random model (default 4)")
    p.add_argument("--seed", type=int, default=None, help="random seed (required when CI is set)")
    p.add_argument("-o", "--out", help="write the countermodel to this file")

    p = add("sympoly", cmd_sympoly, "piecewise-polynomial semantics on the unit-interval model")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--at", help="evaluate at this rational point instead of dumping")

    p = add("approx", cmd_approx, "replace coefficients by small-denominator rationals")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--eps", required=True, help="error budget, a positive rational")

    p = add("check", cmd_check, "check a derivation file")
    p.add_argument("proof", help="derivation file")

    p = add("translate", cmd_translate, "expand (+), (.) and (-) into core connectives")
    p.add_argument("-f", "--formula", required=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.command, getattr(args, "json", False))
    if args.command == "search" and args.budget < 1:
        return _fail(out, "--budget must be at least 1")
    try:
        code = args.func(args, out)
    except (UsageError, FormulaSyntaxError, ModelError, ProofError, TranslationError, LabelError,
            ValueError, OSError, KeyError) as exc:
        return _fail(out, str(exc.args[0]) if isinstance(exc, KeyError) else str(exc))
    return out.emit(code)


def _fail(out: Output, message: str) -> int:
    if out.as_json:
        out.result = {"error": message}
        return out.emit(USAGE)
    print(f"error: {message}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
