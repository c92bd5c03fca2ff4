import io
import json
import subprocess
import sys

import pytest

from beliefchange.cli import parse_kb, run
from beliefchange.errors import InputError
from beliefchange.formula import render


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, report = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue(), report


@pytest.fixture
def kb(tmp_path):
    path = tmp_path / "ex4.kb"
    path.write_text("# Horn theory\nsig: p, q, r\n\np -> q\nq -> r  # chain\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def kb3(tmp_path):
    path = tmp_path / "ex3.kb"
    path.write_text("sig: p, q\np\np | q\np <-> q\n", encoding="utf-8")
    return str(path)


class TestKnowledgeBases:
    def test_parse(self):
        parsed = parse_kb("# c\nsig: p, q\np -> q\n\n")
        assert parsed.sig.atoms == ("p", "q")
        assert [render(f) for f in parsed.formulas] == ["p -> q"]

    def test_missing_signature(self):
        with pytest.raises(InputError) as exc:
            parse_kb("p -> q\n", "a.kb")
        assert "a.kb:1" in str(exc.value)

    def test_error_location(self):
        with pytest.raises(InputError) as exc:
            parse_kb("sig: p, q\np -> \n", "b.kb")
        assert "b.kb:2" in str(exc.value)

    def test_unknown_atom(self):
        with pytest.raises(InputError) as exc:
            parse_kb("sig: p, q\np -> s\n", "c.kb")
        assert "c.kb:2" in str(exc.value)


class TestCommands:
    def test_contract_horn(self, kb):
        code, out, _, _ = call("contract", "--mode", "horn-set", "--kb", kb, "--phi", "p -> r")
        assert code == 0
        assert "Cn_HL({p & r -> q})" in out

    def test_contract_methods(self, kb):
        code, out, _, _ = call(
            "contract", "--mode", "horn-set", "--kb", kb, "--phi", "p -> r", "--method", "maxichoice", "--selection", "idx:1"
        )
        assert code == 0 and "Cn_HL({q -> r, p & r -> q})" in out

    def test_kernels(self, kb3):
        code, out, _, report = call("kernels", "--kb", kb3, "--phi", "p & q", "--json")
        assert code == 0
        members = report["outputs"]["members"]
        assert sorted(map(sorted, members)) == [["p", "p <-> q"], ["p <-> q", "p | q"]]

    def test_invalid_incision(self, kb3):
        code, _, err, report = call("contract", "--kb", kb3, "--phi", "p & q", "--method", "kernel", "--incision", "set:p")
        assert code == 1
        assert "incision misses the kernel {p | q, p <-> q}" in err
        assert report["error"]["kind"] == "InvalidIncision"

    def test_valid_incision(self, kb3):
        code, out, _, _ = call(
            "contract", "--kb", kb3, "--phi", "p & q", "--method", "kernel", "--incision", 'set:"p | q","p <-> q"'
        )
        assert code == 0 and "{p}" in out

    def test_truncation(self, kb):
        code, out, _, report = call("infra", "--mode", "horn-set", "--kb", kb, "--phi", "p -> r", "--limit", "2", "--json")
        assert code == 0
        assert report["outputs"]["truncated"] is True
        assert len(report["outputs"]["members"]) == 2
        assert report["outputs"]["count"] == 4

    def test_infra_membership(self, kb):
        code, out, _, _ = call(
            "infra", "--mode", "horn-set", "--kb", kb, "--phi", "p -> r", "--member", "p & q -> r, p & r -> q", "--no-list"
        )
        assert code == 0
        assert out.strip() == "member {p & q -> r, p & r -> q}: yes"
        _, out, _, _ = call("infra", "--mode", "horn-set", "--kb", kb, "--phi", "p -> r", "--member", "q -> r", "--no-list")
        assert out.strip() == "member {q -> r}: no"

    def test_closure(self, kb):
        code, out, _, _ = call("closure", "--mode", "horn-set", "--kb", kb)
        assert code == 0 and "p & q -> r" in out

    def test_check_recovery(self, kb):
        code, out, _, report = call("check", "--mode", "horn-set", "--kb", kb, "--postulate", "K-6", "--operator", "full-meet")
        assert code == 3
        assert "q -> r" in out

    def test_check_table(self, tmp_path):
        table = {
            "kind": "horn-set",
            "signature": ["p", "q", "r"],
            "subject": ["p -> q", "q -> r"],
            "entries": {"p -> r": ["q -> r", "p & r -> q"]},
            "closure": False,
        }
        path = tmp_path / "t.json"
        path.write_text(json.dumps(table))
        code, _, _, _ = call("check", "--postulate", "K-1", "--table", str(path))
        assert code == 3
        code, _, _, _ = call("check", "--postulate", "K-4", "--table", str(path))
        assert code == 0

    def test_verify(self):
        code, out, _, _ = call("verify", "--suite", "thm7")
        assert code == 0
        assert out.rstrip().splitlines()[-1].startswith("thm7: pass")


class TestErrors:
    def test_usage_error(self):
        code, _, err, _ = call("contract", "--mode", "tree")
        assert code == 1 and err

    def test_missing_file(self, tmp_path):
        code, _, err, _ = call("contract", "--kb", str(tmp_path / "none.kb"), "--phi", "p")
        assert code == 1 and "none.kb" in err

    def test_limit_exceeded(self, tmp_path):
        path = tmp_path / "big.kb"
        path.write_text("sig: a, b, c, d, e\na -> b\n")
        code, _, _, report = call("closure", "--mode", "horn-set", "--kb", str(path), "--json")
        assert code == 2
        assert report["error"]["kind"] == "limit-exceeded"

    def test_unknown_suite(self):
        code, _, _, _ = call("verify", "--suite", "nope")
        assert code == 1

    def test_unknown_postulate(self, kb):
        code, _, err, _ = call("check", "--mode", "horn-set", "--kb", kb, "--postulate", "K-9", "--operator", "full-meet")
        assert code == 1 and "K-9" in err


class TestReports:
    def test_json_round_trip(self, kb):
        code, out, _, report = call("remainders", "--mode", "horn-set", "--kb", kb, "--phi", "p -> r", "--json")
        assert code == 0
        assert json.loads(out) == report
        assert report["timing"] is None

    def test_timing_opt_in(self, kb):
        _, _, _, report = call("remainders", "--kb", kb, "--phi", "p -> r", "--json", "--timing")
        assert isinstance(report["timing"], float)

    @pytest.mark.parametrize("suite", ["example1", "example2", "example3", "example4", "example5", "non-decomposability"])
    def test_golden_stability(self, suite):
        first = call("verify", "--suite", suite)
        second = call("verify", "--suite", suite)
        assert first[0] == 0
        assert first[1] == second[1]

    def test_module_entry_point(self, kb):
        proc = subprocess.run(
            [sys.executable, "-m", "beliefchange", "contract", "--mode", "horn-set", "--kb", kb, "--phi", "p -> r"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "Cn_HL({p & r -> q})" in proc.stdout
