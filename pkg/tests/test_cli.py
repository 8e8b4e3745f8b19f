import dataclasses
import json
import subprocess
import sys

import pytest

from degrowth import zoo
from degrowth.cli import EXIT_ABORT, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, main, verify_paper


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_degrees_csv(capsys):
    code, out, _ = run(capsys, "degrees", "--zoo", "tec1", "--param", "d=3", "-N", "5")
    assert code == EXIT_OK
    assert out == "n,deg\n1,4\n2,7\n3,10\n4,13\n5,16\n"


def test_degrees_from_text_json(capsys):
    code, out, _ = run(capsys, "degrees", "(z1 + z0*z2^2, z0, z2)", "-N", "3", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out) == {"N": 3, "degrees": [3, 5, 7]}


def test_degrees_inverse(capsys):
    code, out, _ = run(capsys, "degrees", "--zoo", "remark_bidegree", "--inverse", "-N", "4")
    assert out.splitlines()[1:] == ["1,2", "2,2", "3,4", "4,4"]


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--zoo", "p2_g", "-N", "8")
    d = json.loads(out)
    assert code == EXIT_OK and d["tag"] == "Polynomial" and d["ell"] == 1
    assert d["degrees"] == [2, 3, 4, 5, 6, 7, 8, 9]


def test_stability(capsys):
    code, out, _ = run(capsys, "stability", "--zoo", "p1_f")
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["stable"] is False and d["failure_step"] == 2
    assert d["blow_down"]["point"] == "(0:1:0:0)"


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--zoo", "remark_stability", "--point", "(-1:0:1:0)", "-N", "2")
    d = json.loads(out)
    assert d == {"start": "(1:0:-1:0)", "points": ["(0:1:0:0)"], "indeterminate_at": 2}


def test_blowdown(capsys):
    code, out, _ = run(capsys, "blowdown", "--zoo", "p3_f")
    assert json.loads(out) == {"hyperplane": 3, "blow_down": "(0:1:0:0)"}
    code, out, _ = run(capsys, "blowdown", "(z0, z1)")
    assert json.loads(out)["blow_down"] is None


def test_bidegree(capsys):
    code, out, _ = run(capsys, "bidegree", "--zoo", "remark_bidegree", "-N", "6")
    d = json.loads(out)
    assert d["bidegree"] == [2, 2]
    assert d["forward"] == [2, 4, 8, 16, 32, 64]
    assert d["backward"] == [2, 2, 4, 4, 8, 8]


def test_parse_command(capsys):
    code, out, _ = run(capsys, "parse", "(z0^2 + z1, z0)")
    d = json.loads(out)
    assert d["projective"] == "(z0^2 + z1*z2 : z0*z2 : z2^2)" and d["degree"] == 2


def test_text_format(capsys):
    code, out, _ = run(capsys, "degrees", "--zoo", "tec1", "-N", "2", "--format", "text")
    assert out.splitlines() == ["n  deg", "1  2", "2  3"]


class TestExitCodes:
    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "degrees", "(z0")
        assert code == EXIT_PARSE and "end of input" in err

    def test_bad_param(self, capsys):
        code, _, _ = run(capsys, "degrees", "--zoo", "tec1", "--param", "d=x")
        assert code == EXIT_PARSE
        code, _, _ = run(capsys, "degrees", "--zoo", "tec1", "--param", "d")
        assert code == EXIT_PARSE

    def test_unknown_entry(self, capsys):
        code, _, _ = run(capsys, "degrees", "--zoo", "nope")
        assert code == EXIT_PARSE

    def test_analysis_abort(self, capsys):
        code, _, err = run(capsys, "classify", "--zoo", "tec1", "-N", "3")
        assert code == EXIT_ABORT and "N >= 6" in err
        code, _, _ = run(capsys, "stability", "--zoo", "phi")
        assert code == EXIT_ABORT
        code, _, _ = run(capsys, "degrees", "(z0*z2 : z1*z3 : 0 : 0)", "-N", "3")
        assert code == EXIT_ABORT

    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["degrees", "--format", "xml"])
        assert info.value.code == 2

    def test_verify_mismatch(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--only", "p3_f")
        assert code == EXIT_MISMATCH and "FAIL" in out
        code, out, _ = run(capsys, "verify-paper", "--only", "tec1", "--only", "p2_g")
        assert code == EXIT_OK and "FAIL" not in out


def test_zoo_list_and_show(capsys):
    code, out, _ = run(capsys, "zoo", "list", "--format", "json")
    names = [e["name"] for e in json.loads(out)]
    assert names == list(zoo.CATALOG)
    code, out, _ = run(capsys, "zoo", "show", "tec4_g", "--param", "p=2")
    d = json.loads(out)
    assert d["parameters"] == {"p": 2, "d": 1} and d["dimension"] == 5


def test_output_is_byte_deterministic(capsys):
    argv = ("classify", "--zoo", "diller_favre_phi", "-N", "8")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_out_file(tmp_path, capsys):
    target = tmp_path / "rows.json"
    code, _, _ = run(capsys, "verify-paper", "--only", "tec1", "--out", str(target))
    rows = json.loads(target.read_text())
    assert code == EXIT_OK
    assert {r["params"] for r in rows} == {"d=1", "d=2", "d=3", "d=5"}
    assert len(rows) == 4 * 2 * 10


def test_off_by_one_mutation_fails_only_tec1():
    names = ("tec1", "p2_g", "p3_g", "bir_G", "henon")
    catalog = {n: zoo.CATALOG[n] for n in names}
    catalog["tec1"] = dataclasses.replace(catalog["tec1"], expected_degree=lambda n, q: q["d"] * n + 2)
    rows = verify_paper(catalog)
    failed = {r.entry for r in rows if r.status == "FAIL"}
    assert failed == {"tec1"}
    assert all(r.status == "FAIL" for r in rows if r.entry == "tec1" and r.direction == "forward")
    assert {r.status for r in rows if r.entry == "bir_G"} <= {"report", "report-mismatch"}


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "degrowth", "degrees", "--zoo", "tec1", "-N", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0 and res.stdout == "n,deg\n1,2\n2,3\n"
