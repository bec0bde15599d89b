from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from infratop.cli import load_space_file, main, space_to_json


def run(*argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    code = main(list(argv), stdout=buf)
    return code, buf.getvalue()


def fx(fixtures_dir, name):
    return str(fixtures_dir / name)


def test_classify(fixtures_dir):
    code, out = run("classify", fx(fixtures_dir, "ex41.json"), "--set", "c,d")
    classes = out.strip().split(", ")
    assert code == 0
    assert "e-star-open" in classes and "e-open" not in classes


def test_op_closure(fixtures_dir):
    assert run("op", fx(fixtures_dir, "ex41.json"), "--set", "a", "--which", "closure") == (0, "{a,c,d}\n")
    assert run("op", fx(fixtures_dir, "ex41.json"), "--set", "", "--which", "exterior") == (0, "{a,b,c,d}\n")
    code, out = run("op", fx(fixtures_dir, "ex41.json"), "--set", "b", "--which", "delta-closure")
    assert out == "{b,d}\n"
    code, out = run("op", fx(fixtures_dir, "ex41.json"), "--set", "b", "--which", "delta-closure",
                    "--literal-delta-closure")
    assert out == "{b}\n"


def test_op_with_family(fixtures_dir):
    code, out = run("op", fx(fixtures_dir, "ex41.json"), "--set", "c", "--which", "interior",
                    "--family", "e-open")
    assert code == 0 and out == "{c}\n"


def test_families(fixtures_dir):
    code, out = run("families", fx(fixtures_dir, "ex42.json"), "--class", "regular-open")
    assert code == 0 and out == "{{}, {b}, {c}, {a,b,c,d}}\n"


def test_enumerate_count():
    assert run("enumerate", "--n", "3", "--count-only") == (0, "45\n")
    assert run("enumerate", "--n", "4", "--count-only", "--jobs", "2") == (0, "2271\n")
    assert run("enumerate", "--n", "4", "--up-to-iso", "--count-only") == (0, "165\n")


def test_enumerate_jsonl():
    code, out = run("enumerate", "--n", "2", "--jsonl")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 4
    assert rows[0] == {"n": 2, "opens": [[], ["a", "b"]]}


def test_enumerate_shards_sum():
    total = sum(int(run("enumerate", "--n", "4", "--count-only", "--shard", f"{i}/3")[1]) for i in range(3))
    assert total == 2271


def test_check_exit_codes():
    code, out = run("check", "--enumerated", "3", "--theorem", "T2.19.ii")
    assert code == 0 and "T2.19.ii" in out
    assert run("check", "--enumerated", "3", "--theorem", "T2.19.ii", "--strict")[0] == 2
    assert run("check", "--enumerated", "3", "--theorem", "T2.20.iv", "--strict")[0] == 0


def test_check_jsonl_deterministic(fixtures_dir, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run("check", "--enumerated", "3", "--jsonl", str(a))
    run("check", "--enumerated", "3", "--jsonl", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes()
    first = json.loads(a.read_text().splitlines()[0])
    assert set(first) == {"theorem", "space_opens", "status", "witnesses", "checked"}


def test_check_file_strict_ignores_known_fail(fixtures_dir):
    # the full registry on S3 only fails KNOWN-FAIL and CHECK entries
    code, out = run("check", fx(fixtures_dir, "s3.json"))
    assert code == 0 and "T-ICS-INT" in out


def test_usage_errors(fixtures_dir, capsys):
    assert run("check", "--enumerated", "3", "--theorem", "NOPE")[0] == 1
    assert "valid ids" in capsys.readouterr().err
    assert run("classify", fx(fixtures_dir, "ex41.json"), "--set", "q")[0] == 1
    assert run("families", fx(fixtures_dir, "ex41.json"), "--class", "open-ish")[0] == 1
    assert "valid classes" in capsys.readouterr().err
    assert run("enumerate", "--n", "7", "--count-only")[0] == 1
    assert run("bogus")[0] == 1
    assert run("hunt", "--n", "2", "--from", "open", "--not-to", "open")[0] == 1


def test_validate(tmp_path, fixtures_dir):
    assert run("validate", fx(fixtures_dir, "ex41.json"))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ground": ["a", "b", "c"], "opens": [[], ["a", "b"], ["b", "c"], ["a", "b", "c"]]}))
    assert run("validate", str(bad))[0] == 1
    code, out = run("validate", str(bad), "--complete")
    assert code == 0 and out.startswith("added: {b}")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run("validate", str(broken))[0] == 1


def test_file_round_trip(fixtures_dir, tmp_path):
    s, _ = load_space_file(fixtures_dir / "ex41.json")
    shuffled = {"ground": ["a", "b", "c", "d"], "opens": [["c", "a"], ["a", "b", "c", "d"], [], ["b"], ["a"]]}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(shuffled))
    again, _ = load_space_file(path)
    assert again == s
    assert space_to_json(again) == json.loads((fixtures_dir / "ex41.json").read_text())


def test_hunt(fixtures_dir):
    code, out = run("hunt", fx(fixtures_dir, "ex41.json"), "--from", "delta-pre-open", "--not-to", "pre-open")
    assert code == 0 and out.startswith("witness: {c} in")
    assert run("hunt", "--n", "3", "--from", "open", "--not-to", "pre-open") == (0, "none\n")


def test_implications_dot_and_json(fixtures_dir):
    code, out = run("implications", "--n", "3", "--dot")
    assert code == 0 and out.startswith("digraph")
    assert '"open" -> "pre-open"' in out
    code, out = run("implications", fx(fixtures_dir, "ex41.json"), "--json", "--duals")
    data = json.loads(out)
    assert len(data["classes"]) == 22 and data["spaces"] == 1


def test_report_stable(tmp_path, fixtures_dir):
    paths = [tmp_path / "r1.json", tmp_path / "r2.json"]
    for p in paths:
        run("--report", str(p), "classify", fx(fixtures_dir, "ex41.json"), "--set", "c,d")
    stable = [json.loads(p.read_text())["stable"] for p in paths]
    assert stable[0] == stable[1]
    assert stable[0]["results"] and len(stable[0]["input_digest"]) == 64


def test_xref_lists_items():
    code, out = run("xref")
    assert code == 0 and "Thm 2.20:" in out


def test_module_entry_point(fixtures_dir):
    proc = subprocess.run([sys.executable, "-m", "infratop", "enumerate", "--n", "2", "--count-only"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "4\n"
