"""End-to-end command-line behavior: documents, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

TRIANGLE = "digraph 3 3\n0 1\n1 2\n2 0\n"
BI_TRIANGLE = "digraph 3 6\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n"
PATH = "digraph 3 2\n0 1\n1 2\n"
DAG = "digraph 3 3\n0 1\n0 2\n1 2\n"
RAINBOW4 = "rainbow 4 4\n0-1\n2-3\n0-2,1-2\n0-3,1-3\n"


def run_cli(*args, files=None, tmp_path=None):
    argv = [sys.executable, "-m", "cyclecert"]
    for a in args:
        if files and a in files:
            path = tmp_path / f"{abs(hash(a))}.txt"
            path.write_text(files[a])
            argv.append(str(path))
        else:
            argv.append(a)
    return subprocess.run(argv, capture_output=True, text=True)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestGirth:
    def test_triangle(self, tmp_path):
        r = run_cli("girth", write(tmp_path, "d.txt", TRIANGLE))
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["girth"] == 3
        assert doc["certificate"]["vertices"] == [0, 1, 2]
        assert doc["certificate"]["kind"] == "exact-girth"

    def test_acyclic(self, tmp_path):
        r = run_cli("girth", write(tmp_path, "d.txt", DAG))
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["girth"] == "inf"
        assert "certificate" not in doc

    def test_stdout_is_one_json_document(self, tmp_path):
        r = run_cli("girth", write(tmp_path, "d.txt", BI_TRIANGLE))
        assert json.loads(r.stdout)["girth"] == 2
        assert r.stdout == json.dumps(json.loads(r.stdout), indent=2, sort_keys=True) + "\n"


class TestPeel:
    def test_bidirected_triangle(self, tmp_path):
        r = run_cli("peel", write(tmp_path, "d.txt", BI_TRIANGLE))
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["trace"]["phi_initial"] == {"num": 1, "den": 1}
        assert [s["vertex"] for s in doc["trace"]["steps"]] == [0]
        assert doc["certificate"]["kind"] == "two-phi"
        assert doc["certificate"]["vertices"] == [1, 2]
        assert doc["certificate"]["bound"] == {"num": 2, "den": 1}

    def test_sink_is_usage_error(self, tmp_path):
        r = run_cli("peel", write(tmp_path, "d.txt", PATH))
        assert r.returncode == 2
        assert r.stdout == ""
        assert "sink" in r.stderr


class TestRainbow:
    def test_constructive(self, tmp_path):
        r = run_cli("rainbow", write(tmp_path, "r.txt", RAINBOW4))
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["bound"] == 3
        assert doc["certificate"]["length"] <= 3

    def test_oracle_mode(self, tmp_path):
        r = run_cli("rainbow", "--oracle", write(tmp_path, "r.txt", RAINBOW4))
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["rg"] == 3
        assert doc["certificate"]["length"] == 3

    def test_family_count_mismatch_is_usage_error(self, tmp_path):
        r = run_cli("rainbow", write(tmp_path, "r.txt", "rainbow 3 2\n0-1\n1-2\n"))
        assert r.returncode == 2

    def test_oracle_mode_accepts_any_family_count(self, tmp_path):
        r = run_cli(
            "rainbow", "--oracle", write(tmp_path, "r.txt", "rainbow 3 2\n0-1\n1-2\n")
        )
        assert r.returncode == 0
        assert json.loads(r.stdout)["rg"] == "inf"


class TestTwoCycles:
    def test_bidirected_triangle(self, tmp_path):
        r = run_cli("two-cycles", write(tmp_path, "d.txt", BI_TRIANGLE))
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["intersection"] == [0]
        assert doc["p"] == 0
        assert not doc["degenerate"]

    def test_acyclic_is_usage_error(self, tmp_path):
        r = run_cli("two-cycles", write(tmp_path, "d.txt", DAG))
        assert r.returncode == 2


class TestVerify:
    def test_small_labeled_run(self):
        r = run_cli(
            "verify", "--generator", "labeled", "--n", "1-3",
            "--checks", "two-phi,two-psi-strict",
        )
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["checked"] == {"two-phi": 28, "two-psi-strict": 28}
        assert doc["violations"] == []

    def test_default_checks_cover_generator(self):
        r = run_cli("verify", "--generator", "outmaps:1:1", "--n", "3")
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["instances_generated"] == 8
        assert set(doc["checked"]) == {
            "two-phi", "two-psi-strict", "chc", "two-cycles",
            "deg2-girth", "eq1-identity",
        }

    def test_rainbow_generator(self):
        r = run_cli(
            "verify", "--generator", "rainbow:20", "--n", "4-5", "--seed", "3"
        )
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        assert doc["checked"]["rainbow-bound"] == 40
        assert doc["violations"] == []

    def test_byte_stable_across_runs(self):
        args = (
            "verify", "--generator", "labeled", "--n", "1-3",
            "--checks", "two-phi,eq1-identity", "--seed", "0",
        )
        a = run_cli(*args)
        b = run_cli(*args)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout

    def test_cap_exit_code(self):
        r = run_cli("verify", "--generator", "labeled", "--n", "1-9")
        assert r.returncode == 3
        assert r.stdout == ""

    def test_bad_check_name_is_usage_error(self):
        r = run_cli("verify", "--generator", "labeled", "--n", "2", "--checks", "nope")
        assert r.returncode == 2

    def test_mismatched_checks_are_usage_error(self):
        r = run_cli(
            "verify", "--generator", "labeled", "--n", "2",
            "--checks", "rainbow-bound",
        )
        assert r.returncode == 2


class TestSearchRatio:
    def test_exhaustive_small(self):
        r = run_cli("search-ratio", "--n", "3", "--budget", "1000")
        assert r.returncode == 0
        doc = json.loads(r.stdout)
        top = doc["extremal"]["max_girth_psi_ratio"]
        assert top["ratio"] == {"num": 4, "den": 3}

    def test_budget_zero(self):
        r = run_cli("search-ratio", "--n", "6", "--budget", "0")
        assert r.returncode == 0
        assert json.loads(r.stdout)["extremal"] == {}

    def test_bad_n_is_usage_error(self):
        r = run_cli("search-ratio", "--n", "1")
        assert r.returncode == 2


class TestUsage:
    def test_missing_file(self):
        r = run_cli("girth", "/nonexistent/file.txt")
        assert r.returncode == 2
        assert r.stdout == ""

    def test_malformed_input(self, tmp_path):
        r = run_cli("girth", write(tmp_path, "d.txt", "not a digraph\n"))
        assert r.returncode == 2

    def test_bad_n_syntax(self):
        r = run_cli("verify", "--generator", "labeled", "--n", "x-y")
        assert r.returncode == 2

    def test_no_command_is_usage_error(self):
        r = run_cli()
        assert r.returncode == 2
