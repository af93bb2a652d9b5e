import json

import pytest

from app.cli import (
    GridParseError,
    Report,
    algebra_properties,
    check_diagram,
    format_grid,
    main,
    merge_profiles,
    parse_grid,
    random_diagrams,
    tally,
)
from app.cli import commands
from app.config import Config as DefaultConfig


UNKNOT2 = "grid v1\nn = 2\nx = 1 2\no = 2 1\n"


class Config(DefaultConfig):
    TESTING = True
    CHECK = {**DefaultConfig.CHECK, "max_exhaustive_n": 2}


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "unknot2.grid"
    path.write_text(UNKNOT2, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


################################################################
# Grid files


def test_parse_grid(unknot2):
    assert parse_grid(UNKNOT2) == unknot2
    noisy = "\ufeff# a comment\r\n\r\ngrid   v1\r\nn = 2  # size\r\nx = 1, 2\r\no = 2 1\r\n"
    assert parse_grid(noisy) == unknot2
    assert format_grid(unknot2) == UNKNOT2


@pytest.mark.parametrize(
    "text,line,message",
    [
        ("grid v1\nn = 2\nx = 1 1\no = 2 1\n", 3, "not injective"),
        ("grid v1\nn = 2\nx = 1 3\no = 2 1\n", 3, "outside 1..2"),
        ("grid v1\nn = 2\nx = 1 a\no = 2 1\n", 3, "integers"),
        ("grid v1\nn = 2\nx = 1\no = 2 1\n", 3, "1 entries"),
        ("n = 2\nx = 1 2\no = 2 1\n", 1, "header"),
        ("grid v1\nn = 0\nx =\no =\n", 2, "positive"),
        ("grid v1\nn = 2\nn = 2\n", 3, "twice"),
        ("grid v1\nn = 2\ny = 1 2\n", 3, "unknown key"),
        ("grid v1\nn = 2\nx = 1 2\n", 3, "missing 'o"),
        ("grid v1\nn = 2\nx 1 2\n", 3, "key = value"),
    ],
)
def test_parse_errors(text, line, message):
    with pytest.raises(GridParseError, match=message) as error:
        parse_grid(text)
    assert error.value.line == line
    assert str(error.value).startswith(f"line {line}:")


################################################################
# Commands


def test_complex(capsys, grid_file):
    code, out, _ = run(capsys, "complex", grid_file)
    assert code == 0
    assert "CFP: 6 generators, 2 nonzero rows" in out
    assert out.rstrip().endswith("verdict: ok")


def test_complex_json(capsys, grid_file):
    code, doc = run_json(capsys, "complex", grid_file)
    assert code == 0
    assert doc["command"] == "complex"
    assert doc["n"] == 2
    assert doc["timings_ms"] == {}
    assert doc["results"]["generators"] == 6
    rows = {row["generator"]: row for row in doc["results"]["rows"]}
    assert rows["[2,3,1]"]["d"] == "U1·[3,2,1]"
    assert (rows["[3,2,1]"]["A"], rows["[3,2,1]"]["mu"]) == (1, 0)


def test_complex_toroidal_with_timings(capsys, grid_file):
    code, doc = run_json(capsys, "complex", grid_file, "--toroidal", "--timings")
    assert code == 0
    assert doc["results"]["generators"] == 2
    assert "build" in doc["timings_ms"]


def test_homology(capsys, grid_file):
    code, doc = run_json(capsys, "homology", grid_file, "--amin", "-1", "--amax", "1", "--mumin", "-3", "--mumax", "0")
    assert code == 0
    dims = doc["results"]["dims"]
    assert dims["1,0"] == 1
    assert dims["1,-1"] == 1
    assert dims["0,-2"] == 2
    assert dims["-1,-3"] == 1
    assert doc["results"]["computed_window"]["mu_max"] == 1


def test_slice(capsys, grid_file):
    code, doc = run_json(capsys, "slice", grid_file, "--cuts", "1,2")
    assert code == 0
    pieces = doc["results"]["pieces"]
    assert [p["kind"] for p in pieces] == ["typeA", "middle", "typeD"]
    assert [p["generators"] for p in pieces] == [3, 3, 3]


def test_pair(capsys, grid_file):
    code, out, _ = run(capsys, "pair", grid_file, "--cut", "1", "--verify")
    assert code == 0
    assert "pairing: EXACT MATCH" in out

    code, out, _ = run(capsys, "pair", grid_file, "--cuts", "1,2", "--verify")
    assert code == 0
    assert "left association: EXACT MATCH" in out
    assert "right association: EXACT MATCH" in out


def test_usage_errors(capsys, grid_file, tmp_path):
    code, _, err = run(capsys, "pair", grid_file)
    assert code == 2
    assert "needs --cut" in err

    bad = tmp_path / "bad.grid"
    bad.write_text("grid v1\nn = 2\nx = 1 1\no = 2 1\n", encoding="utf-8")
    code, out, err = run(capsys, "complex", str(bad))
    assert code == 2
    assert "line 3" in err
    assert out == ""

    code, _, _ = run(capsys, "complex", str(tmp_path / "missing.grid"))
    assert code == 2

    latin = tmp_path / "latin.grid"
    latin.write_bytes(b"grid v1\nn = 2\n# \xff\nx = 1 2\no = 2 1\n")
    code, out, err = run(capsys, "complex", str(latin))
    assert code == 2
    assert "line 3" in err
    assert out == ""

    code, _, _ = run(capsys, "slice", grid_file, "--cut", "3")
    assert code == 2

    with pytest.raises(SystemExit) as error:
        main([])
    assert error.value.code == 2


def test_algebra(capsys):
    code, doc = run_json(capsys, "algebra", "basis", "--n", "1", "--k", "1")
    assert code == 0
    assert doc["results"]["size"] == 3

    code, doc = run_json(capsys, "algebra", "gradings", "--n", "1", "--k", "1", "--lx", "1", "--lo=")
    assert code == 0
    gradings = {row["element"]: (row["A"], row["mu"]) for row in doc["results"]["gradings"]}
    assert gradings["{0->1}"] == (1, 0)

    code, doc = run_json(capsys, "algebra", "diff", "--n", "2", "--k", "2")
    assert doc["results"]["diff"]["{0->2,1->1}"] == "{0->1,1->2}"

    code, doc = run_json(capsys, "algebra", "mult", "--n", "2", "--k", "1")
    assert "{0->1} * {1->2} = {0->2}" in doc["results"]["products"]

    code, _, _ = run(capsys, "algebra", "basis", "--n", "1", "--k", "5")
    assert code == 2


def test_dd(capsys, grid_file):
    code, doc = run_json(capsys, "dd", "--n", "1", "--k", "1")
    assert code == 0
    assert doc["results"]["basis"] == 5
    assert doc["results"]["d_squared"] == "ok"

    code, out, _ = run(capsys, "dd", grid_file, "--k", "1")
    assert code == 0
    assert "absorption: EXACT MATCH" in out

    code, _, err = run(capsys, "dd", grid_file, "--n", "3", "--k", "1")
    assert code == 2
    assert "does not match" in err


def test_check_exhaustive(capsys, mocker):
    spy = mocker.spy(commands, "run_tasks")
    code, doc = run_json(capsys, "check", "--exhaustive", "2", "--deep")
    assert code == 0
    assert spy.call_count == 1
    assert doc["results"]["instances"] == 4
    table = doc["results"]["properties"]
    assert table["pairing"]["passed"] == 4 * 2
    assert all(row["failed"] == 0 for row in table.values())


def test_check_refuses_large_exhaustive(capsys, mocker):
    mocker.patch.object(commands, "Config", Config)
    code, _, err = run(capsys, "check", "--exhaustive", "3")
    assert code == 2
    assert "n <= 2" in err


def test_check_random_with_algebra(capsys):
    code, doc = run_json(capsys, "check", "--random", "2", "--count", "3", "--seed", "7", "--algebra")
    assert code == 0
    table = doc["results"]["properties"]
    assert table["cfp.d2"]["passed"] == 3
    assert table["algebra.associativity"]["failed"] == 0
    assert table["relations.commute"]["failed"] == 0


def test_bench(capsys):
    code, doc = run_json(capsys, "bench", "--n", "2", "--seed", "3")
    assert code == 0
    rows = doc["results"]["rows"]
    assert [r["type_a"] for r in rows] == [3, 6]
    assert all(r["match"] for r in rows)
    assert "direct" in doc["timings_ms"]


################################################################
# Report and suites


def test_report():
    report = Report(command="x")
    report.say("hello")
    assert report.exit_code == 0
    report.fail("broken")
    assert report.exit_code == 1
    assert report.to_text().splitlines() == ["hello", "FAIL: broken", "verdict: fail"]
    doc = json.loads(report.to_json())
    assert list(doc) == ["command", "n", "results", "timings_ms", "verdict"]


def test_random_diagrams_are_reproducible():
    first = random_diagrams(3, 5, seed=11)
    assert first == random_diagrams(3, 5, seed=11)
    for n, sx, so in first:
        assert sorted(sx) == sorted(so) == [1, 2, 3]


def test_check_diagram_passes(unknot2):
    out = check_diagram(((2, (1, 2), (2, 1)), True))
    assert out["key"] == (2, (1, 2), (2, 1))
    failures = [name for name, failure in out["outcomes"] if failure is not None]
    assert failures == []
    assert not [key for key in out["profile"] if key.startswith("odd")]


def test_algebra_suite():
    assert [name for name, failure in algebra_properties(2) if failure is not None] == []


def test_tally_keeps_smallest_witnesses():
    big = {"n": 3, "x": [2, 1, 3], "o": [1, 2, 3], "cuts": [], "detail": "b"}
    small = {"n": 2, "x": [1, 2], "o": [2, 1], "cuts": [], "detail": "a"}
    table = tally([[("p", big)], [("p", None)], [("p", small)]], witness_limit=1)
    assert table["p"]["passed"] == 1
    assert table["p"]["failed"] == 2
    assert table["p"]["witnesses"] == [small]


def test_merge_profiles():
    assert merge_profiles([{"a": 1}, {"a": 2, "b": 1}]) == {"a": 3, "b": 1}


def test_run_returns_report(grid_file):
    report = commands.run("complex", [grid_file])
    assert report.exit_code == 0
    assert report.results["nonzero_rows"] == 2
    with pytest.raises(commands.UsageError):
        commands.run("pair", [grid_file])


def test_parse_errors_are_logged(caplog):
    with caplog.at_level("ERROR"):
        with pytest.raises(GridParseError):
            parse_grid("grid v1\nn = 2\nx = 1 2 3\no = 2 1\n")
    assert any(r.levelname == "ERROR" and "x has 3 entries" in r.getMessage() for r in caplog.records)
