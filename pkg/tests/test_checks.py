import json

from polystar import checks
from polystar.cli import main


def test_check_all_reports_counts(capsys):
    code = main(["check", "all"])
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] + out["failed"] == len(out["results"])
    names = {r["name"].split(".")[0] for r in out["results"]}
    assert names == set(checks.SUITES)
    failed = {r["name"] for r in out["results"] if not r["ok"]}
    assert code == (1 if failed else 0)
    # the term-count bound for the binomial compaction is the one known violation
    assert failed == {"neglog.faulhaber_bound"}


def test_crashing_property_is_a_failure():
    def boom():
        raise ArithmeticError("nope")

    res = checks._run("x", boom)
    assert not res.ok and "ArithmeticError" in res.detail
