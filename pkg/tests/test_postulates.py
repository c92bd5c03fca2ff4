import json

import pytest

from beliefchange import base_change as bc
from beliefchange import beliefset_change as bs
from beliefchange import horn_change as hc
from beliefchange import postulates as po
from beliefchange.errors import InputError, InvalidParameter, UnknownPostulate
from beliefchange.formula import parse
from beliefchange.semantics import PropBeliefSet

from conftest import SIG2, SIG3


class TestNames:
    @pytest.mark.parametrize(
        "text,kind,expected",
        [
            ("K-6", "prop-set", "K-6"),
            ("(K − 6)", "horn-set", "K-6"),
            ("recovery", "horn-set", "K-6"),
            ("relevance", "base", "B-4"),
            ("core-retainment", "base", "B-5"),
            ("core-retainment", "horn-set", "core-retainment"),
            ("H-e6", "horn-set", "H-e6"),
        ],
    )
    def test_resolution(self, text, kind, expected):
        assert po.canonical_name(text, kind) == expected

    def test_unknown(self):
        with pytest.raises(UnknownPostulate):
            po.canonical_name("K-9", "prop-set")
        with pytest.raises(UnknownPostulate):
            po.canonical_name("relevance", "prop-set")


def _pm_table():
    K = PropBeliefSet.from_formulas([parse("p & q")], SIG2)
    return po.build_table("prop-set", K, lambda K, f: bs.bs_contract(K, f))


class TestPropositional:
    def test_full_meet_satisfies_agm(self):
        table = _pm_table()
        for report in po.check_all(table):
            assert report.passed, str(report)

    def test_maxichoice_operator(self):
        K = PropBeliefSet.from_formulas([parse("p -> q")], SIG2)

        def op(K, f):
            rems = bs.bs_remainders(K, f)
            return rems[-1] if rems else K

        table = po.build_table("prop-set", K, op)
        assert all(r.passed for r in po.check_all(table))

    def test_recovery_violation_reported(self):
        K = PropBeliefSet.from_formulas([parse("p & q")], SIG2)
        top = PropBeliefSet.from_formulas([], SIG2)
        table = po.build_table("prop-set", K, lambda K, f: top if K.contains(f) and f != parse("T") else K)
        assert po.check(table, "K-2").passed
        rec = po.check(table, "recovery")
        assert not rec.passed
        assert str(rec).startswith("K-6 (Recovery): fail - ")


class TestHorn:
    def test_recovery_counterexample(self):
        H = hc.HornBeliefSet.from_generators([parse("p -> q"), parse("q -> r")], SIG3)
        table = po.build_table("horn-set", H, lambda H, f: hc.e_contract(H, f))
        rec = po.check(table, "K-6")
        assert not rec.passed
        assert any(c.get("sentence") == "q -> r" and c.get("phi") == "p -> r" for c in rec.counterexamples)
        for name in ("K-1", "K-2", "K-3", "K-4", "K-5", "H-e6", "H-e7", "core-retainment"):
            assert po.check(table, name).passed, name

    def test_unclosed_output_fails_closure(self):
        data = {
            "kind": "horn-set",
            "signature": ["p", "q", "r"],
            "subject": ["p -> q", "q -> r"],
            "entries": {"p -> r": ["q -> r", "p & r -> q"]},
            "closure": False,
        }
        table = po.ContractionTable.from_json(data)
        assert not po.check(table, "K-1").passed
        data["closure"] = True
        assert po.check(po.ContractionTable.from_json(data), "K-1").passed

    def test_check_point(self):
        H = hc.HornBeliefSet.from_generators([parse("p -> q"), parse("q -> r")], SIG3)
        phi = parse("p -> r")
        assert po.check_point("horn-set", H, phi, hc.e_contract(H, phi), "K-4") == []
        assert po.check_point("horn-set", H, phi, H, "K-4")
        with pytest.raises(InvalidParameter):
            po.check_point("horn-set", H, phi, H, "K-5")


class TestBase:
    def test_example3_relevance_vs_core(self):
        B = bc.BeliefBase.of(["p", "p | q", "p <-> q"], SIG2)
        f = parse("p & q")
        out = bc.base_kernel_contraction(B, f, bc.Explicit([parse("p | q"), parse("p <-> q")]))
        table = po.ContractionTable("base", B, [f], {f: out.elements})
        assert not po.check(table, "relevance").passed
        assert po.check(table, "core-retainment").passed

    def test_full_meet_base_operator(self):
        B = bc.BeliefBase.of(["p -> q", "q -> r", "p & q -> r", "p & r -> q"], SIG3)
        table = po.build_table("base", B, lambda B, f: bc.base_full_meet(B, f))
        for r in po.check_all(table):
            assert r.passed, str(r)

    def test_success_failure(self):
        B = bc.BeliefBase.of(["p", "q"], SIG2)
        table = po.build_table("base", B, lambda B, f: B)
        report = po.check(table, "success")
        assert not report.passed
        assert report.counterexample["phi"]


class TestSerialisation:
    def test_round_trip(self):
        table = _pm_table()
        again = po.ContractionTable.loads(table.dumps())
        assert again.to_json() == table.to_json()
        assert json.loads(table.dumps())["kind"] == "prop-set"

    def test_report_json(self):
        report = po.check(_pm_table(), "K-4")
        data = report.to_json()
        assert data["verdict"] == "pass" and data["title"] == "Success"

    def test_malformed(self):
        with pytest.raises(InputError):
            po.ContractionTable.loads("{not json")
        with pytest.raises(InputError):
            po.ContractionTable.from_json({"kind": "base"})
        with pytest.raises(InputError):
            po.ContractionTable.from_json({"kind": "tree", "signature": ["p"], "subject": [], "entries": {}})
