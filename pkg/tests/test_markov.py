import json
import random
from fractions import Fraction

import pytest
from hypothesis import given

from rieszmodal.markov import (MarkovProcess, ModelError, NotBisimulationError, Partition, build, is_morphism, load,
                               loads, quotient)
from rieszmodal.sampling import random_formula
from rieszmodal.semantics import evaluate
from strategies import models

F = Fraction


def _doc(rows, labels=("tau",), states=None):
    states = states or sorted({s for r in rows.values() for s in r} | set(rows))
    return json.dumps({"states": list(states), "labels": list(labels), "transitions": {"tau": rows}})


class TestLoad:
    def test_example_file(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(_doc({"x1": {"x1": "1/3", "x2": "1/2"}, "x2": {"x1": "1/3"}}, states=["x1", "x2"]))
        m = load(path)
        assert m.states == ("x1", "x2")
        assert m.mass("tau", "x1") == F(5, 6)
        assert m.mass("tau", "x2") == F(1, 3)

    def test_bundled_matches(self, looping):
        assert [looping.mass("tau", s) for s in looping.states] == [F(5, 6), F(1, 3)]

    def test_empty_transitions(self):
        m = loads('{"states": ["a", "b"], "labels": ["tau"], "transitions": {"tau": {"a": {}}}}')
        assert all(m.mass("tau", s) == 0 for s in m.states)
        m = loads('{"states": ["a"], "labels": ["tau"], "transitions": {}}')
        assert m.dist("tau", "a") == ()

    def test_excess_mass_reported(self):
        with pytest.raises(ModelError) as info:
            loads(_doc({"x": {"x": "2/3", "y": "1/2"}}, states=["x", "y"]))
        msg = str(info.value)
        assert "'x'" in msg and "7/6" in msg and "1/6" in msg

    @pytest.mark.parametrize("text, fragment", [
        ('{"states": ["a"], "labels": ["tau"], "transitions": {"tau": {"a": {"b": "1/2"}}}}', "undeclared"),
        ('{"states": ["a"], "labels": ["tau"], "transitions": {"tau": {"a": {"a": "3/2"}}}}', "outside"),
        ('{"states": ["a"], "labels": ["tau"], "transitions": {"tau": {"a": {"a": "-1/2"}}}}', "outside"),
        ('{"states": ["a", "a"], "labels": ["tau"], "transitions": {}}', "duplicate"),
        ('{"states": ["a"], "labels": ["tau"], "transitions": {"b": {}}}', "label"),
        ('{"states": ["a"], "labels": ["tau"], "transitions": {"tau": {"a": {"a": 0.5}}}}', "string"),
        ('{"states": [], "labels": ["tau"], "transitions": {}}', "state"),
        ('[1, 2]', "object"),
        ('{not json', "JSON"),
    ])
    def test_schema_violations(self, text, fragment):
        with pytest.raises(ModelError, match=fragment):
            loads(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load(tmp_path / "nope.json")

    @given(models())
    def test_dump_round_trip(self, m):
        again = loads(m.dumps())
        assert again.states == m.states and set(again.labels) == set(m.labels)
        for label in m.labels:
            for s in m.states:
                assert dict(again.dist(label, s)) == dict(m.dist(label, s))


class TestQuotient:
    def test_identity_partition(self, looping):
        q, f = quotient(looping, Partition(tuple(frozenset([s]) for s in looping.states)))
        assert q.states == looping.states
        assert f == {"x1": "x1", "x2": "x2"}
        assert all(dict(q.dist("tau", s)) == dict(looping.dist("tau", s)) for s in q.states)

    def test_chain_merges_twins(self, chain4):
        blocks = (frozenset("a"), frozenset("b"), frozenset("cd"))
        q, f = quotient(chain4, Partition(blocks))
        assert len(q.states) == 3
        assert f["c"] == f["d"] == "c"
        assert is_morphism(chain4, q, f)
        # exhaustive exact check of the morphism equation on a batch of formulas
        rng = random.Random(3)
        for _ in range(50):
            phi = random_formula(rng, 5)
            up, down = evaluate(phi, chain4), evaluate(phi, q)
            assert all(up[s] == down[f[s]] for s in chain4.states)

    def test_unstable_partition_reports_witness(self, looping):
        with pytest.raises(NotBisimulationError) as info:
            quotient(looping, Partition((frozenset(looping.states),)))
        assert set(info.value.witness) == {"x1", "x2"}
        assert info.value.label == "tau"

    def test_partition_must_cover(self, looping):
        with pytest.raises(ModelError):
            quotient(looping, Partition((frozenset(["x1"]),)))

    def test_overlapping_blocks(self):
        with pytest.raises(ModelError):
            Partition((frozenset("ab"), frozenset("bc")))

    def test_morphism_detects_mismatch(self, looping):
        other = build(["x1", "x2"], {"x1": {"x1": "1/3"}, "x2": {"x1": "1/3"}})
        assert not is_morphism(looping, other, {"x1": "x1", "x2": "x2"})

    @given(models())
    def test_identity_partition_is_identity(self, m):
        q, f = quotient(m, Partition(tuple(frozenset([s]) for s in m.states)))
        assert all(f[s] == s for s in m.states)
        assert is_morphism(m, q, f) and is_morphism(q, m, f)


def test_process_is_immutable(looping):
    with pytest.raises(Exception):
        looping.states = ()
    assert isinstance(looping, MarkovProcess)
