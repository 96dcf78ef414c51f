import json
import subprocess
import sys

import pytest

from polystar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize(
    "argv, want",
    [
        (["gamma", "--", "-1", "-1"], {"gamma": "11/24"}),
        (["negli", "y2 y0"], {"a": ["0", "-2", "10", "-14", "6"]}),
        (["coeff", "x0* # x1*", "x0 x1"], {"coeff": "1"}),
        (["coeff", "(2 x1)*", "x1 x1 x1"], {"coeff": "8"}),
        (["hsum", "--neg", "y1 y0", "3"], {"hsum": "8"}),
        (["hsum", "y1", "3"], {"hsum": "11/6"}),
        (["lazard-check", "8"], {"lazard": True}),
    ],
)
def test_examples(capsys, argv, want):
    assert js(capsys, *argv) == (0, want)


def test_shuffle_and_stuffle(capsys):
    code, out = js(capsys, "shuffle", "x0", "x1")
    assert code == 0
    assert out["shuffle"] == [{"coef": "1", "word": ["x0", "x1"]}, {"coef": "1", "word": ["x1", "x0"]}]
    code, out = js(capsys, "stuffle", "y1", "y1")
    assert out["stuffle"] == [{"coef": "1", "word": ["y2"]}, {"coef": "2", "word": ["y1", "y1"]}]


def test_truncate(capsys):
    code, out = js(capsys, "truncate", "(1/2 x0)*", "2")
    assert out["truncate"] == [
        {"coef": "1", "word": []}, {"coef": "1/2", "word": ["x0"]}, {"coef": "1/4", "word": ["x0", "x0"]},
    ]


def test_rewrite(capsys):
    code, out = js(capsys, "rewrite", "x0* # x1* - x1* + 1")
    assert (code, out) == (0, {"normal_form": []})
    code, out = js(capsys, "rewrite", "(-x0)* # x1*")
    assert out["normal_form"] == [
        {"coef": "1", "k": -1, "l": 0, "w": []}, {"coef": "1", "k": 0, "l": 1, "w": []},
    ]


def test_faulhaber(capsys):
    code, out = js(capsys, "faulhaber", "y1 y0")
    assert (code, out) == (0, {"terms": [{"coef": "2", "m": 3, "n": 1}]})
    code, out = js(capsys, "faulhaber", "y4")
    assert code == 1 and "error" in out and len(out["terms"]) == 4


def test_li_eval(capsys):
    code, out = js(capsys, "li-eval", "x1", "1/2")
    assert code == 0
    assert out["value"] == pytest.approx(0.6931471805599453, rel=1e-14)
    assert out["terms"] == [{"coef": "1", "coeff_basis": "1", "log_pow": 0, "u": ["x1"]}]
    code, out = js(capsys, "li-eval", "x0* # x1* - x1* + 1", "0.3", "--trunc", "50")
    assert out["value"] == pytest.approx(0, abs=1e-14)


def test_domain_error_exit_1(capsys):
    code, out = js(capsys, "coeff", "(1 + x0)*", "x0")
    assert code == 1
    assert out["error"].startswith("star of non-proper series")


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    code, out, err = run(capsys, "coeff", "x0*(", "x0")
    assert code == 2 and "offset 4" in err and out == ""
    assert run(capsys, "gamma", "--", "1")[0] == 2
    assert run(capsys, "hsum", "y1", "1/2")[0] == 2


def test_text_output(capsys):
    code, out, _ = run(capsys, "--no-json", "truncate", "x0* # x1", "2")
    assert out.strip() == "truncate: x1 + x0 x1 + x1 x0"
    code, out, _ = run(capsys, "negli", "--no-json", "y1")
    assert out.strip() == "a: 0 -1 1"


def test_term_budget_flag(capsys):
    code, out = js(capsys, "--term-budget", "5", "truncate", "(x0 + x1)*", "4")
    assert code == 1 and "budget" in out["error"]


def test_check_subsuites(capsys):
    code, out = js(capsys, "check", "newton-girard", "--N", "20", "--kmax", "8")
    assert (code, out["passed"], out["failed"]) == (0, 1, 0)
    code, out = js(capsys, "check", "gamma-star", "--t", "1/2", "--t=-1/4")
    assert (code, out["passed"]) == (0, 2)
    code, out = js(capsys, "check", "words")
    assert code == 0


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "polystar.cli", "rewrite", "x0*^3 # x1*^2 # x1 - (-x0)*^2 # x1*"]
    outs = {subprocess.run(cmd, capture_output=True, text=True, check=True).stdout for _ in range(3)}
    assert len(outs) == 1
