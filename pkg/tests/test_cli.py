import json
import subprocess
import sys

import pytest

from conftest import built
from gtqd.cli import UsageError, main, resolve_element, resolve_normal


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_info_text_and_json(capsys):
    code, out, _ = run(capsys, "group-info", "--group", "bd:3")
    assert code == 0 and "order 12" in out
    code, out, _ = run(capsys, "--group", "bd:3", "--output", "json", "group-info")
    js = json.loads(out)
    assert js["schema"] == "gtqd/1" and js["kind"] == "group-info" and js["quotient_order"] == 6


def test_options_after_subcommand_match_options_before(capsys):
    a = run(capsys, "--group", "bt", "--output", "json", "irreps")
    b = run(capsys, "irreps", "--group", "bt", "--output", "json")
    assert a == b and a[0] == 0


def test_irreps_default_configuration(capsys):
    code, out, _ = run(capsys, "--output", "json", "irreps")
    js = json.loads(out)
    assert js["group"] == "bo" and js["normal"] == "center" and js["normal_order"] == 2
    assert js["dimension_check"] and js["total"] == len(js["labels"])


def test_chartab_and_stabilizer(capsys):
    code, out, _ = run(capsys, "chartab", "--group", "bd:2", "--output", "json")
    assert code == 0 and sorted(json.loads(out)["degrees"]) == [1, 1, 1, 1, 2]
    code, out, _ = run(capsys, "chartab", "--group", "cyclic:4", "--cocycle", "cyclic:1", "--stabilizer", "1",
                       "--output", "json")
    js = json.loads(out)
    assert code == 0 and js["stabilizer"] == 1 and len(js["rows"]) == 4
    code, _, err = run(capsys, "chartab", "--group", "bd:2", "--stabilizer", "9")
    assert code == 2 and "stabilizer" in err


def test_fusion_commands(capsys):
    code, out, _ = run(capsys, "fusion", "--group", "bd:2", "0", "1", "1")
    assert code == 0 and out.strip() == "N(0, 1, 1) = 1"
    code, out, _ = run(capsys, "fusion", "--group", "bd:2", "--canonical", "--full", "--output", "json")
    js = json.loads(out)
    assert js["kind"] == "fusion" and js["W"] == "canonical" and all(e[1] == "W" for e in js["entries"])
    assert run(capsys, "fusion", "--group", "bd:2", "0", "1")[0] == 2
    assert run(capsys, "fusion", "--group", "bd:2", "--canonical")[0] == 2
    assert run(capsys, "fusion", "--group", "bd:2", "0", "1", "999")[0] == 2


def test_mckay_outputs_are_byte_stable(capsys):
    a = run(capsys, "mckay", "--output", "dot")
    b = run(capsys, "mckay", "--output", "dot")
    assert a == b and a[0] == 0
    assert a[1].count("subgraph cluster_") == 5
    code, out, _ = run(capsys, "mckay", "--group", "bt", "--output", "json")
    js = json.loads(out)
    assert js["kind"] == "mckay" and js["schema"] == "gtqd/1"
    assert sorted(c["type"] for c in js["components"]) == sorted(["E~_6", "D~_4", "A~_5", "A~_5"])
    code, out, _ = run(capsys, "mckay", "--group", "cyclic:6")
    assert code == 0 and "A~_5" in out


def test_dot_only_for_mckay(capsys):
    code, _, err = run(capsys, "irreps", "--output", "dot")
    assert code == 2 and "dot" in err


@pytest.mark.parametrize("argv", [
    ("irreps", "--group", "bq"),
    ("irreps", "--group", "bt", "--cocycle", "cyclic:1"),
    ("irreps", "--group", "bd:3", "--normal", "gens:y"),
    ("irreps", "--group", "bd:3", "--normal", "gens:q7"),
    ("irreps", "--normal", "half"),
    ("irreps", "--cocycle", "weird"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("gtqd: error:")


def test_verify_all_passes_on_twisted_cyclic(capsys):
    code, out, _ = run(capsys, "verify", "--group", "cyclic:4", "--cocycle", "cyclic:1")
    assert code == 0 and out.rstrip().endswith("all checks passed")
    assert "[FAIL]" not in out


def test_verify_normality_reports_noncentral(capsys):
    code, out, _ = run(capsys, "verify", "--group", "bd:3", "--normal", "gens:x2", "--suite", "normality")
    assert code == 0 and "N ⊄ Z(G)" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--group", "bd:2", "--suite", "orthonormality", "--output", "json")
    js = json.loads(out)
    assert code == 0 and js["passed"] and js["kind"] == "verify"
    assert js["results"][0]["suite"] == "orthonormality"


def test_verify_theorem_is_reported_only_for_large_N(capsys):
    code, out, _ = run(capsys, "verify", "--group", "bd:4", "--normal", "gens:x2", "--suite", "theorem")
    assert code == 0 and "reported only" in out


def test_resolve_element_and_normal():
    B = built("bd:3")
    G = B.group
    assert resolve_element(G, "x2") == G.labels.index("x2")
    assert resolve_element(G, "g5") == 5
    assert resolve_element(G, "x1x1") == G.labels.index("x2")
    assert resolve_element(G, "y2") == B.involution
    with pytest.raises(UsageError):
        resolve_element(G, "w")
    with pytest.raises(UsageError):
        resolve_element(G, "x-1")
    assert resolve_normal(B, "center").order == 2
    assert resolve_normal(B, "gens:x2, y2").order == 6
    assert resolve_normal(built("cyclic:5"), "center").order == 1
    assert resolve_normal(B, "full").order == 12


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gtqd", "group-info", "--group", "cyclic:3"], capture_output=True, text=True)
    assert r.returncode == 0 and "order 3" in r.stdout
