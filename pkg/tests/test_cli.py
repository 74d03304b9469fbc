import json
import subprocess
import sys

import pytest

from freehaagerup.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_partitions_count(capsys):
    assert run_json(capsys, "partitions", "--k", "3", "--count") == (0, {"count": 5})
    code, data = run_json(capsys, "partitions", "--k", "4", "--class", "nc-eps", "--eps", "1*1*")
    assert code == 0 and data["count"] == 3


def test_partitions_csv(capsys):
    code, out, _ = run(capsys, "partitions", "--k", "2", "--class", "all", "--csv")
    assert code == 0
    assert out.splitlines()[0] == "index,blocks"
    assert len(out.splitlines()) == 3


def test_partitions_size_guard(capsys):
    code, _, err = run(capsys, "partitions", "--k", "15")
    assert code == 2 and "--unsafe-large" in err
    code, _, err = run(capsys, "partitions", "--k", "4", "--class", "eps")
    assert code == 2


def test_moebius(capsys):
    assert run_json(capsys, "moebius", "--k", "4")[1]["mu"] == -5
    code, data = run_json(capsys, "moebius", "--s", "[[1],[2],[3]]", "--p", "[[1,2],[3]]")
    assert data["mu"] == -1


def test_moments_and_cumulants(capsys):
    code, data = run_json(capsys, "moments", "--word", "c c* c c*")
    assert code == 0 and data == {"moment": {"re": "2/1", "im": "0/1"}}
    code, data = run_json(capsys, "moments", "--word", "z1 z1* z2 z2*", "--spec", "haar")
    assert data["moment"]["re"] == "1/1"
    code, data = run_json(capsys, "cumulants", "--word", '[{"label": "u", "exp": "1"}, {"label": "u", "exp": "*"}, '
                          '{"label": "u", "exp": "1"}, {"label": "u", "exp": "*"}]', "--family", '{"u": "haar"}')
    assert data["cumulant"]["re"] == "-1/1"


def test_moments_unknown_label(capsys):
    code, _, _ = run(capsys, "moments", "--word", "x y", "--family", '{"x": "circular"}')
    assert code == 2


def test_weingarten(capsys):
    assert run_json(capsys, "weingarten", "--n", "4", "--k", "1") == (0, {"basis": [[[1, 2]]], "W": [["1/4"]]})
    code, data = run_json(capsys, "weingarten", "--n", "3", "--k", "2", "--gram")
    assert data["G"][0][0] == "3/1"
    assert data["basis"][0] == [[1, 2, 3, 4]]
    code, out, _ = run(capsys, "weingarten", "--n", "3", "--k", "2", "--csv")
    assert code == 0 and len(out.splitlines()) == 4


def test_weingarten_singular(capsys):
    code, _, err = run(capsys, "weingarten", "--n", "1", "--k", "2")
    assert code == 2 and "singular" in err.lower()


def test_haar_moment(capsys):
    assert run_json(capsys, "haar-moment", "--n", "3", "--i", "1,1", "--j", "2,2") == (0, {"value": "1/3"})
    assert run_json(capsys, "haar-moment", "--n", "3", "--i", "1,2,1", "--j", "1,1,1")[1] == {"value": "0/1"}


def test_shi_certify(capsys):
    poly = json.dumps({"degree": 2, "terms": [{"index": ["x1", "x2"], "coeff": {"re": "1/1", "im": "0/1"}},
                                              {"index": ["x2", "x2"], "coeff": "2"}]})
    code, data = run_json(capsys, "shi-certify", "--poly", poly, "--m", "2")
    assert code == 0 and data["verdict"] == "pass" and data["mode"] == "tuple"
    code, data = run_json(capsys, "shi-certify", "--random", "--mode", "array", "--d", "2", "--m", "1", "--seed", "3")
    assert code == 0 and data["mode"] == "array"


def test_shi_certify_from_file(capsys, tmp_path):
    path = tmp_path / "poly.json"
    path.write_text(json.dumps({"degree": 1, "terms": [{"index": ["x1"], "coeff": "3/2"}]}))
    code, data = run_json(capsys, "shi-certify", "--poly", str(path), "--m", "3", "--spec", "haar")
    assert code == 0 and data["lhs_pow"] == "729/64"


def test_shi_certify_guards(capsys):
    code, _, _ = run(capsys, "shi-certify", "--random", "--d", "4", "--m", "2")
    assert code == 2
    code, _, _ = run(capsys, "shi-certify", "--random", "--spec", "semicircular")
    assert code == 2
    code, _, _ = run(capsys, "shi-certify")
    assert code == 2


def test_abc(capsys):
    code, data = run_json(capsys, "abc", "--random", "--d", "2", "--m", "2", "--spec", "haar")
    assert code == 0 and data["passed"] and data["A"] == 5


def test_chebyshev(capsys):
    assert run_json(capsys, "chebyshev", "--d", "3") == (0, {"d": 3, "coeffs": [0, -2, 0, 1], "value_at_2": 4})


def test_character_check(capsys):
    code, data = run_json(capsys, "character-check", "--d", "1", "--m-max", "6")
    assert code == 0 and data["fuss_catalan"] == [1, 2, 5, 14, 42, 132]
    code, out, _ = run(capsys, "character-check", "--d", "2", "--m-max", "3", "--csv")
    assert out.splitlines()[0] == "m,norm_pow,fuss_catalan,bound_pow"


def test_freegroup_check(capsys):
    code, data = run_json(capsys, "freegroup-check", "--random", "--d", "3", "--m", "2", "--semigroup", "--seed", "5")
    assert code == 0 and data["strong_pass"] is True
    f = json.dumps([{"word": [1, 2], "coeff": "1"}, {"word": [2, -1], "coeff": {"re": "0", "im": "1"}}])
    code, data = run_json(capsys, "freegroup-check", "--f", f, "--d", "2")
    assert code == 0 and data["classical_pass"]
    code, _, _ = run(capsys, "freegroup-check", "--f", f, "--d", "2", "--semigroup")
    assert code == 2


def test_oracle_check(capsys):
    assert run_json(capsys, "oracle-check", "--cap", "4") == (0, {"checked": 340, "mismatches": 0})
    code, _, _ = run(capsys, "oracle-check", "--cap", "9")
    assert code == 2


def test_bad_json(capsys):
    code, _, err = run(capsys, "shi-certify", "--poly", "{nope")
    assert code == 2 and "JSON" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "freehaagerup", "chebyshev", "--d", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coeffs"] == [-1, 0, 1]


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["partitions"])
    assert exc.value.code == 2
