import io
import json
import subprocess
import sys

import pytest

from sylowkit.cli import SCHEMA_VERSION, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call("--json", *argv)
    return code, json.loads(out) if out else None


def test_platonov_pair():
    code, rep = call_json("platonov", "--primes", "3,7", "--pairs", "all")
    assert code == 0
    names = [c["name"] for c in rep["checks"]]
    assert names == ["generator p=3", "generator p=7", "non-conjugacy p_i=3 p_j=7"]
    assert rep["schema_version"] == SCHEMA_VERSION and rep["passed"]
    assert rep["rng"].startswith("python-random-mt19937")


def test_platonov_bad_prime_is_usage_error():
    code, out, err = call("platonov", "--primes", "3,5")
    assert code == 2 and "BadPrime" in err


def test_dichotomy_s4():
    code, rep = call_json("dichotomy", "--group", "S4")
    assert code == 0
    ev = rep["checks"][0]["evidence"]
    assert ev["failures"] == [] and ev["first_order_truth"] is True


def test_dichotomy_max_order():
    code, rep = call_json("dichotomy", "--max-order", "12")
    assert code == 0 and len(rep["checks"]) > 20


def test_fo_check_commutativity(tmp_path):
    path = tmp_path / "commutativity.fo"
    path.write_text("# commutativity\nA x . A y . x*y = y*x\n")
    code, rep = call_json("fo-check", "--group", "S3", "--formula-file", str(path))
    assert code == 1
    ev = rep["checks"][0]["evidence"]
    assert ev["assignment_kind"] == "counterexample"
    assert ev["assignment"] == {"x": "(2,3)", "y": "(1,2)"}
    code, text, _ = call("fo-check", "--group", "S3", "--formula-file", str(path))
    assert code == 1 and "[FAIL ]" in text and "counterexample" in text


def test_fo_check_builtin_and_budget():
    assert call("fo-check", "--group", "C5", "--builtin", "doubling")[0] == 0
    code, _, err = call("--budget", "100", "fo-check", "--group", "S4", "--builtin", "dichotomy")
    assert code == 2 and "ResourceLimit" in err
    assert call("fo-check", "--group", "S4", "--builtin", "nope")[0] == 2


def test_fo_check_syntax_error(tmp_path):
    path = tmp_path / "bad.fo"
    path.write_text("A x .")
    assert call("fo-check", "--group", "S3", "--formula-file", str(path))[0] == 2
    assert call("fo-check", "--group", "S3", "--formula-file", str(tmp_path / "missing.fo"))[0] == 2


def test_unknown_group_prints_grammar():
    code, _, err = call("sylow", "--group", "X9", "--p", "2")
    assert code == 2 and "NAME :=" in err


def test_usage_errors():
    assert call()[0] == 2
    assert call("sylow", "--group", "S4")[0] == 2
    assert call("sylow", "--group", "S4", "--p", "4")[0] == 2
    assert call("conjugator", "--group", "S4", "--p", "3")[0] == 2


def test_sylow_and_conjugator():
    code, rep = call_json("sylow", "--group", "A5", "--p", "2")
    assert code == 0 and rep["checks"][0]["evidence"]["count"] == 5
    code, rep = call_json("conjugator", "--group", "S4", "--all-pairs")
    assert code == 0 and len(rep["checks"]) == 6
    code, rep = call_json("conjugator", "--group", "C2xC2")
    assert code == 0


def test_valuation_and_sl2q():
    assert call("valuation-lemma", "--p", "7", "--samples", "300")[0] == 0
    assert call("valuation-lemma", "--p", "13", "--samples", "300")[0] == 0
    code, rep = call_json("sl2q-properties", "--samples", "200")
    assert code == 0 and len(rep["checks"]) == 4


def test_centralizer_dim():
    code, rep = call_json("centralizer-dim", "--group", "S3")
    assert code == 0
    assert rep["checks"][0]["evidence"] == {"value": 2}
    assert any(c["name"].startswith("cdim_le") for c in rep["checks"])


@pytest.mark.parametrize("argv", [
    ("platonov", "--count", "3", "--pairs", "all"),
    ("valuation-lemma", "--p", "11", "--samples", "200"),
    ("conjugator", "--group", "S5", "--all-pairs"),
])
def test_json_is_deterministic(argv):
    a = call("--json", "--seed", "9", *argv)
    b = call(*argv, "--seed", "9", "--json")
    assert a == b and a[0] == 0


def test_seed_changes_sampling():
    a = call("--json", "--seed", "1", "valuation-lemma", "--p", "7", "--samples", "50")[1]
    b = call("--json", "--seed", "2", "valuation-lemma", "--p", "7", "--samples", "50")[1]
    assert a != b


def test_timing_flag():
    _, rep = call_json("--timing", "sylow", "--group", "S3", "--p", "3")
    assert "wall_time" in rep
    _, rep = call_json("sylow", "--group", "S3", "--p", "3")
    assert "wall_time" not in rep


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sylowkit", "sylow", "--group", "S4", "--p", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "[PASS ]" in proc.stdout
