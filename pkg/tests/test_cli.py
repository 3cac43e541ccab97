import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from eulermahonian import cli
from eulermahonian.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from eulermahonian.identities import verify as real_verify

ELEMENT = "[1^3 4^0 2^1 3^0 6^2 5^1]"
POINT = "2/10,1/10,2/10,3/10,1/10,1/10,3/10,3/10,2/10"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def schema(name):
    text = resources.files("eulermahonian").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def check(name, line):
    obj = json.loads(line)
    jsonschema.validate(obj, schema(name))
    return obj


class TestExamples:
    def test_stats(self):
        code, out, _ = run("stats", "--r", "4", "--n", "6", "--element", ELEMENT)
        d = check("stats", out)
        assert code == EXIT_OK
        assert (d["ndes"], d["nmajor"], d["fdes"], d["fmajor"], d["col"]) == (11, 40, 11, 31, 7)

    def test_verify(self):
        code, out, _ = run("verify", "--id", "carlitz", "--n", "3", "--K", "5")
        d = check("verify", out)
        assert code == EXIT_OK and d["match"] is True

    def test_locate(self):
        code, out, _ = run("locate", "--n", "9", "--r", "1", "--point", POINT)
        assert check("locate", out)["perm"] == [4, 7, 8, 1, 3, 9, 2, 5, 6]
        code, out, _ = run("locate", "--n", "9", "--point", POINT, "--format", "text")
        assert out == "[4,7,8,1,3,9,2,5,6]\n"


class TestSubcommands:
    def test_bijection(self):
        code, out, _ = run("bijection", "--r", "4", "--n", "6", "--element", ELEMENT)
        d = check("bijection", out)
        assert d["image"] == "[1^3 6^2 3^2 5^2 2^1 4^2]"
        assert (d["ndes"], d["nmajor"]) == (d["fdes"], d["fmajor"]) == (11, 40)

    def test_distribution_formats(self):
        base = ("distribution", "--r", "2", "--n", "2", "--pair", "ndes-nmajor")
        _, out, _ = run(*base)
        d = check("distribution", out)
        assert sum(map(sum, d["table"])) == 8
        _, csv_out, _ = run(*base, "--format", "csv")
        rows = csv_out.strip().split("\n")
        assert rows[0] == "t\\q,0,1,2,3,4"
        assert [list(map(int, r.split(",")[1:])) for r in rows[1:]] == d["table"]
        _, text, _ = run(*base, "--format", "text")
        assert text.strip() == d["polynomial"]

    def test_cone(self):
        code, out, _ = run("cone", "--n", "3", "--r", "2", "--element", "[1 3 2]",
                           "--scaling", "wreath", "--format", "json")
        d = check("cone", out)
        assert code == EXIT_OK and d["determinant"] == 8 == len(d["points"])
        for method in ("shiftOffBoundary", "direct"):
            _, o2, _ = run("cone", "--n", "3", "--r", "2", "--element", "[1 3 2]",
                           "--scaling", "typeD", "--method", method, "--format", "json")
            assert check("cone", o2)["determinant"] == 4

    def test_cone_signed(self):
        _, out, _ = run("cone", "--n", "3", "--r", "2", "--signed",
                        "--element", "[2^1 3 1^1]", "--format", "json")
        assert check("cone", out)["simplex"] == "0 < -x2 <= x3 < -x1 <= 1"

    def test_cone_text(self):
        code, out, _ = run("cone", "--n", "2", "--element", "[2 1]")
        assert code == EXIT_OK and out.splitlines()[0] == "simplex 0 <= x1 < x2 <= 1"

    def test_grid(self):
        code, out, _ = run("verify", "--id", "wreathNeg", "--grid", "r=2-3,n=1-2", "--K", "2")
        lines = out.splitlines()
        assert code == EXIT_OK and len(lines) == 4
        assert [(d["r"], d["n"]) for d in map(lambda l: check("verify", l), lines)] == [
            (2, 1), (2, 2), (3, 1), (3, 2)
        ]

    def test_geometric_grid_filters(self):
        code, out, _ = run("verify", "--grid", "acceptance", "--id", "carlitz", "--route", "geometric")
        assert code == EXIT_OK and out == ""

    def test_deterministic(self):
        argv = ("stats", "--r", "2", "--n", "4", "--element", "[2^1 4 1^1 3]")
        assert run(*argv)[1] == run(*argv)[1]
        argv = ("distribution", "--r", "3", "--n", "3", "--pair", "fdes-fmajor", "--format", "csv")
        assert run(*argv)[1] == run(*argv)[1]


class TestExitCodes:
    def test_mismatch(self, monkeypatch):
        monkeypatch.setattr(cli, "verify", lambda *a, **k: real_verify(*a, perturb="desA", **k))
        code, out, _ = run("verify", "--id", "carlitz", "--n", "3", "--K", "3")
        d = check("verify", out)
        assert code == EXIT_MISMATCH and d["match"] is False and "firstMismatch" in d

    def test_budget(self):
        code, out, _ = run("verify", "--id", "wreathNeg", "--r", "9", "--n", "8", "--K", "1")
        assert code == EXIT_BUDGET
        assert check("verify", out)["error"] == "budget"

    @pytest.mark.parametrize("argv", [
        (),
        ("verify", "--id", "nope", "--n", "2", "--K", "1"),
        ("verify", "--n", "2", "--K", "1"),
        ("verify", "--id", "carlitz", "--n", "2"),
        ("verify", "--id", "carlitz", "--r", "2", "--n", "2", "--K", "1"),
        ("verify", "--grid", "r=1-2", "--K", "1"),
        ("verify", "--id", "carlitz", "--grid", "x=1", "--K", "1"),
        ("stats", "--r", "2", "--n", "3", "--element", "[1 1 2]"),
        ("stats", "--r", "2", "--n", "3", "--element", "[1^5 2 3]"),
        ("locate", "--n", "2", "--point", "0.5,0.5"),
        ("locate", "--n", "2", "--point", "3/2,0"),
        ("cone", "--n", "2", "--element", "[2^1 1]", "--r", "2"),
        ("distribution", "--r", "3", "--n", "2", "--pair", "natdes-natfmaj"),
    ])
    def test_usage(self, argv, capsys):
        code, out, _ = run(*argv)
        assert code == EXIT_USAGE and out == ""


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "eulermahonian.cli", "verify", "--id", "eulerianA", "--n", "2", "--K", "3"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["match"] is True
