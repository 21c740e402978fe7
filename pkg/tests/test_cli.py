import io
import json
import shutil
import subprocess
import sys

import pytest

from magmadual import __version__
from magmadual.cli import dumps, run
from magmadual.golden import default_corpus_dir

CORPUS = default_corpus_dir()
Z = {f"{k}/z{i}": str(CORPUS / k / f"z{i}.tbl") for k, m in (("n3", 8), ("n4", 4)) for i in range(1, m + 1)}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, report = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, report, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, report, out, err = call(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_classify_z1():
    doc = call_json("classify", Z["n3/z1"])
    assert doc["command"] == "classify" and doc["version"] == __version__
    r = doc["result"]
    assert (r["nd"], r["sg"], r["mn"], r["gr"], r["identity"]) == (True, True, True, True, "a")
    assert r["table"]["code"] == "4069"
    assert r["table"]["rows"] == ["a b c", "b c a", "c a b"]


def test_classify_witnesses_use_labels():
    r = call_json("classify", "--table", "n=2 / labels=x,y / y y / x y")["result"]
    assert r["sg"] is False and r["assoc_counterexample"] == ["x", "x", "x"]


def test_dual_z6_has_81_members():
    r = call_json("dual", Z["n3/z6"], "--method", "exhaustive")["result"]
    assert r["size"] == "81" and len(r["members"]) == 81 and r["method"] == "exhaustive"
    r = call_json("dual", Z["n4/z2"])["result"]
    assert r["method"] == "sandwich" and r["size"] == "4"


def test_count_groups():
    assert call_json("count-groups", 4)["result"] == {"count": "2"}
    code, _, out, _ = call("count-groups", 3)
    assert code == 0 and "count: 1" in out


def test_hat_inline_and_file_operands():
    r = call_json("hat", "--table", "a b c / b c a / c a b", "b", Z["n3/z2"])["result"]
    assert r["table"]["rows"] == ["a b c", "b c a", "c a b"]
    r = call_json("hat", Z["n3/z2"], "a", Z["n3/z2"])["result"]
    assert r["table"]["rows"] == ["b c a", "c a b", "a b c"]


def test_compatible_phi_conjugate_iso_aut():
    r = call_json("compatible", Z["n3/z4"], Z["n3/z7"])["result"]
    assert r["compatible"] is False and len(r["witness"]) == 3
    assert call_json("compatible", Z["n3/z1"], Z["n3/z2"])["result"]["witness"] is None
    r = call_json("phi", Z["n3/z1"], "b")["result"]
    assert r["table"]["rows"] == ["b c a", "c a b", "a b c"]
    r = call_json("conjugate", Z["n4/z1"], "--perm", "b<->c")["result"]
    assert r["table"]["rows"] == ["a b c d", "b a d c", "c d b a", "d c a b"]
    r = call_json("conjugate", Z["n4/z1"], "--perm", "(b d)(b c)")["result"]
    assert r["table"]["rows"] == ["a b c d", "b d a c", "c a d b", "d c b a"]
    assert call_json("iso", Z["n4/z1"], Z["n4/z4"])["result"] == {"isomorphic": False, "map": None}
    r = call_json("aut", Z["n4/z1"])["result"]
    assert r["size"] == "2" and r["automorphisms"] == ["()", "(b d)"]


def test_group_commands():
    r = call_json("groups", 4)["result"]
    assert r["count"] == "4" and r["identity"] == "a"
    corpus = sorted(tuple(open(Z[f"n4/z{i}"]).read().splitlines()[2:]) for i in range(1, 5))
    assert sorted(tuple(t["rows"]) for t in r["tables"]) == corpus
    assert call_json("groups", 4, "--identity", "c")["result"]["count"] == "4"
    r = call_json("partition", 4)["result"]
    assert r["total"] == "16" and [b["size"] for b in r["blocks"]] == ["4"] * 4
    r = call_json("classes", 4)["result"]
    assert sorted((c["size"], c["aut_size"]) for c in r["classes"]) == [("1", "6"), ("3", "2")]


def test_enumerate_and_explore():
    r = call_json("enumerate", 3, "--filter", "gr")["result"]
    assert r["count"] == "3" and len(r["codes"]) == 3 and "4069" in r["codes"]
    r = call_json("enumerate", 3, "--filter", "sg", "--count-only", "--workers", 4)["result"]
    assert r == {"filter": "sg", "count": "113"}
    r = call_json("explore-question", 2)["result"]
    assert r["status"] == "COMPLETE" and r["part2_holds"] is True
    assert r["part1_missing"] == ["0", "15"]


def test_json_round_trip_and_determinism(tmp_path):
    out = tmp_path / "report.json"
    code, _, first, _ = call("dual", Z["n3/z4"], "--format", "json", "--out", out)
    assert code == 0
    assert dumps(json.loads(first)) == first
    assert out.read_text() == first
    assert call("dual", Z["n3/z4"], "--format", "json", "--out", out)[2] == first
    doc = json.loads(first)
    assert list(doc) == ["command", "inputs", "result", "version"]


@pytest.mark.parametrize("argv", [
    ["classify", "/no/such/file.tbl"],
    ["classify", "--table", "a b / b x"],
    ["phi", "--table", "c c c / c c c / c c c", "a"],
    ["phi", "--table", "a b c / b c a / c a b", "q"],
    ["dual", "--table", "a b c d / b a d c / c d a b / d c b a", "--method", "exhaustive"],
    ["hat", "--table", "a b / b a"],
    ["iso", "--table", "a b / b a", "--table", "a b c / b c a / c a b"],
    ["groups", "0"],
    ["groups", "9"],
    ["enumerate", "4"],
    ["explore-question", "4"],
    ["conjugate", "--table", "a b / b a"],
    ["no-such-command"],
    [],
])
def test_usage_errors_exit_2(argv):
    code, report, _, _ = call(*argv)
    assert code == 2 and report is None


def test_exhausted_budget_exits_1():
    code, _, _, err = call("dual", "--table", "c c c / c c c / c c c", "--method", "backtrack", "--budget", 5)
    assert code == 1 and "BudgetError" in err


def _corpus_copy(tmp_path):
    dst = tmp_path / "corpus"
    shutil.copytree(CORPUS, dst)
    return dst


def test_verify_paper_selected_items():
    code, report, out, _ = call("verify-paper", "--only", "A1,A2,A3,A4,A6,A7,A8")
    assert code == 0, out
    assert [i["item"] for i in report["result"]["items"]] == ["A1", "A2", "A3", "A4", "A6", "A7", "A8"]
    assert "A1   PASS" in out


def test_verify_paper_detects_corrupted_z1(tmp_path):
    corpus = _corpus_copy(tmp_path)
    path = corpus / "n3" / "z1.tbl"
    text = path.read_text().replace("b c a", "b a a")  # (b, b) := a
    path.write_text(text)
    code, report, out, _ = call("verify-paper", "--corpus", corpus, "--only", "A1")
    assert code == 1
    assert report["result"]["items"][0]["passed"] is False and "A1   FAIL" in out


def test_verify_paper_detects_missing_z4(tmp_path):
    corpus = _corpus_copy(tmp_path)
    (corpus / "n4" / "z4.tbl").unlink()
    code, report, _, _ = call("verify-paper", "--corpus", corpus, "--only", "A6", "--format", "json")
    assert code == 1
    assert report["result"]["items"][0]["passed"] is False


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "magmadual", "count-groups", "4", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["count"] == "2"
    proc = subprocess.run([sys.executable, "-m", "magmadual", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage:" in proc.stderr
