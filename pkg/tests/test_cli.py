import json
import subprocess
import sys

import pytest

from _cli_examples import EXAMPLES, argv_for, run, write_table


@pytest.fixture(scope="module")
def table(tmp_path_factory):
    return write_table(tmp_path_factory.mktemp("tables"))


def run_json(argv):
    code, out, _ = run(list(argv) + ["--json"])
    return code, json.loads(out)


def test_orbit_principal(table):
    code, doc = run_json(argv_for("orbit-principal", table))
    assert code == 0 and doc["schema"] == 1
    assert doc["dim_V"] == {"even": 2, "odd": 2}
    assert doc["dimension_factor"] == 2
    assert doc["clifford_weights"] == [["-1", "1"]]
    assert doc["torus"]["theta"] == ["0", "0"]


def test_orbit_zero_nilpotent(table):
    code, doc = run_json(argv_for("orbit-zero", table))
    assert code == 0
    assert {g["degree"] for g in doc["grading"]} == {0}
    assert doc["dimension_factor"] == 1


def test_orbit_gl31_reports_even_odd_part(table):
    code, doc = run_json(argv_for("orbit-gl31", table))
    assert code == 0
    assert {"degree": -1, "parity": "odd", "dim": 2} in doc["grading"]


def test_char_typical(table):
    code, doc = run_json(argv_for("char-typical", table))
    assert code == 0
    ch = doc["characters"]
    assert list(ch) == ["soergel_simple", "wtilde", "w"]
    assert len(ch["soergel_simple"]["terms"]) == 3 and ch["soergel_simple"]["value_at_one"] == 20
    assert ch["w"]["terms"] == [{"weight": ["6", "-3"], "coeff": 5}, {"weight": ["5", "-2"], "coeff": 5}]
    assert len(doc["table"]["entries"]) == 4


def test_char_atypical_needs_a_table(table):
    code, doc = run_json(argv_for("char-atypical", table))
    assert code == 16 and doc["error"]["name"] == "AtypicalWeight"
    code, doc = run_json(argv_for("char-table", table))
    assert code == 0 and doc["table"]["source"] == "user-supplied"


def test_char_proper_levi_is_truncated(table):
    code, doc = run_json(argv_for("char-proper-levi", table))
    assert code == 0
    w = doc["characters"]["w"]
    assert not w["polynomial"] and w["truncation"]["depth"] == 6
    assert all(isinstance(x, str) for t in w["terms"] for x in t["weight"])


def test_orbit_size_inconsistency():
    argv = EXAMPLES["char-typical"] + ["--orbit-size", "2"]
    code, doc = run_json(argv)
    assert code == 18 and doc["error"]["name"] == "NonIntegralDivision"


def test_kac_char(table):
    code, doc = run_json(argv_for("kac-char", table))
    assert code == 0 and doc["verma_terms"] == 8 and len(doc["table"]["entries"]) == 4


def test_verify_battery(table):
    code, doc = run_json(argv_for("verify-battery", table))
    assert code == 0 and doc["pass"]
    assert len(doc["records"]) == 15


def test_verify_single_datum():
    code, doc = run_json(["verify", "--algebra", "gl(2|2)", "--nilpotent", "2|2", "--truncation", "10"])
    assert code == 0 and len(doc["records"]) == 1
    code, doc = run_json(["verify", "--algebra", "gl(2|2)"])
    assert code == 2


def test_kl_tables(table):
    code, doc = run_json(argv_for("kl-s3", table))
    assert code == 0 and doc["order"] == 6
    assert all(e["poly"] == [1] for e in doc["entries"])
    code, doc = run_json(["kl", "--type", "A", "--rank", "4", "--x", "1,3,2,4", "--w", "3,4,1,2"])
    assert doc["entries"][0]["poly"] == [1, 1]
    code, doc = run_json(argv_for("kl-not-comparable", table))
    assert code == 13 and doc["error"]["name"] == "NotComparable"


@pytest.mark.parametrize("argv,code,name", [
    (["orbit", "--algebra", "gl(2,1)", "--nilpotent", "2|1"], 2, "ParseError"),
    (["orbit", "--algebra", "sl(3|1)", "--nilpotent", "2,1|1"], 3, "UnsupportedFamily"),
    (["orbit", "--algebra", "gl(2|1)", "--nilpotent", "3|1"], 6, "InvalidPartition"),
    (["orbit", "--algebra", "gl(2|1)", "--nilpotent", "2|1", "--levi", "1+1|1"], 10, "NilpotentNotInLevi"),
    (["orbit", "--algebra", "gl(2|1)", "--nilpotent", "2|1", "--levi", "3|1"], 11, "InvalidLevi"),
    (["kl", "--rank", "8"], 12, "GroupTooLarge"),
    (["char", "--algebra", "gl(2|1)", "--nilpotent", "2|1", "--lambda", "1,2|0"], 14, "NotDominant"),
    (["char", "--algebra", "osp(2|4)", "--nilpotent", "1,1|2,2", "--lambda", "8|3,1"], 20, "OrbitSizeRequired"),
    (["frobnicate"], 2, "ParseError"),
])
def test_error_contract(argv, code, name):
    got, doc = run_json(argv)
    assert got == code and doc["error"]["name"] == name and doc["error"]["exit_code"] == code


def test_plain_text_errors_go_to_stderr():
    code, out, err = run(["kl", "--rank", "3", "--x", "2,1,3", "--w", "1,3,2"])
    assert code == 13 and out == "" and err.startswith("error: NotComparable:")


def test_plain_text_outputs(table):
    code, out, _ = run(argv_for("char-typical", table))
    assert code == 0 and out.splitlines()[-1].startswith("w: 5 e^(6,-3) + 5 e^(5,-2)")
    code, out, _ = run(argv_for("kl-s3", table))
    assert out.count("= [1]") == 19


def test_batch_keeps_input_order(tmp_path, table):
    jobs = [argv_for("kl-s3", table), argv_for("char-typical", table), argv_for("char-atypical", table),
            argv_for("orbit-zero", table)]
    f = tmp_path / "jobs.txt"
    f.write_text("# comment\n" + "\n".join(" ".join(f"'{a}'" for a in j) for j in jobs) + "\n")
    code, doc = run_json(["batch", str(f), "--workers", "3"])
    assert code == 1
    assert [j.get("command", "error") for j in doc["jobs"]] == ["kl", "char", "error", "orbit"]
    assert [j["exit_code"] for j in doc["jobs"]] == [0, 0, 16, 0]
    code, doc = run_json(["batch", str(tmp_path / "none.txt")])
    assert code == 2


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "wsc", "kl", "--rank", "2", "--json"], capture_output=True,
                         text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["order"] == 2


def test_batch_under_many_workers_matches_sequential_runs(tmp_path, table):
    names = ["kl-s3", "char-typical", "orbit-principal", "kac-char", "char-proper-levi", "orbit-zero"] * 3
    jobs = [argv_for(n, table) for n in names]
    f = tmp_path / "jobs.txt"
    f.write_text("\n".join(" ".join(f"'{a}'" for a in j) for j in jobs) + "\n")
    code, doc = run_json(["batch", str(f), "--workers", "8"])
    assert code == 0
    for job, got in zip(jobs, doc["jobs"]):
        _, single = run_json(job)
        single["exit_code"] = 0
        assert got == single
