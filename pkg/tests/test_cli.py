import json

import pytest
from click.testing import CliRunner

from weylext.cli import RunConfig, ResultCache, case_key, cases_for, main


@pytest.fixture
def runner():
    return CliRunner()


def lines(result):
    return [json.loads(x) for x in result.output.strip().splitlines()]


def test_ext_hook_into_row(runner):
    res = runner.invoke(main, ["ext", "2,1", "3"])
    assert res.exit_code == 0
    rows = lines(res)
    assert rows[1] == {"free_rank": 0, "i": 1, "lambda": "2,1", "mu": "3", "n": 2, "torsion": [3]}
    assert [r["i"] for r in rows] == [0, 1, 2]


def test_ext_self(runner):
    rows = lines(runner.invoke(main, ["ext", "2,1", "2,1", "--max-i", "1"]))
    assert rows[0]["free_rank"] == 1 and rows[1]["torsion"] == []


def test_ext_table(runner):
    res = runner.invoke(main, ["ext", "1,1", "2", "--format", "table"])
    assert res.exit_code == 0
    assert "Ext^1 = Z/2" in res.output


def test_basis_and_straighten(runner):
    out = lines(runner.invoke(main, ["basis", "2,1", "--n", "3"]))[0]
    assert out["rank"] == 8
    res = runner.invoke(main, ["straighten", "2,1", "1 2 | 1"])
    assert res.exit_code == 0
    assert lines(res)[0]["result"] == [{"coef": -1, "tableau": "1^2 | 2"}]


def test_hom(runner):
    assert lines(runner.invoke(main, ["hom", "2,1", "2,1"]))[0]["rank"] == 1
    assert lines(runner.invoke(main, ["hom", "2,1", "3"]))[0]["rank"] == 0


@pytest.mark.parametrize("args", [
    ["ext", "1,2", "3"],
    ["ext", "2,1", "2"],
    ["ext", "2,1", "3", "--max-i", "0"],
    ["basis", "2,1", "--n", "1"],
    ["straighten", "2,1", "1 | 2"],
    ["verify", "thm21", "--max-degree", "0"],
    ["verify", "nonsense"],
])
def test_invalid_input_exits_2(runner, args):
    assert runner.invoke(main, args).exit_code == 2


def test_verify_root_pairs_small(runner):
    res = runner.invoke(main, ["verify", "thm21", "--max-degree", "4"])
    assert res.exit_code == 0
    rows = lines(res)
    assert rows[-1]["summary"]["failed"] == 0
    assert all(r["status"] == "pass" for r in rows[:-1])
    assert [r["case"] for r in rows[:-1]] == sorted(r["case"] for r in rows[:-1])


def test_verify_failure_exits_1(runner, monkeypatch):
    from weylext import cli

    real = cli.run_case

    def broken(job):
        rep = real(job)
        rep["status"] = "fail"
        return rep

    monkeypatch.setattr(cli, "run_case", broken)
    res = runner.invoke(main, ["verify", "digit", "--max-degree", "2"])
    assert res.exit_code == 1
    assert lines(res)[-1]["summary"]["failed"] > 0


def test_output_is_deterministic(runner):
    a = runner.invoke(main, ["verify", "digit", "--max-degree", "4"]).output
    b = runner.invoke(main, ["verify", "digit", "--max-degree", "4"]).output
    assert a == b


def test_parallel_matches_serial(runner):
    serial = runner.invoke(main, ["verify", "vanishing", "--max-degree", "4"]).output
    parallel = runner.invoke(main, ["verify", "vanishing", "--max-degree", "4", "--jobs", "2"]).output
    assert serial == parallel


def test_cache_roundtrip(runner, tmp_path):
    args = ["ext", "2,1", "3", "--cache-dir", str(tmp_path)]
    first = runner.invoke(main, args)
    assert list(tmp_path.glob("*.json"))
    second = runner.invoke(main, args)
    fresh = runner.invoke(main, args[:3] + ["--no-cache"])
    assert first.output == second.output == fresh.output


def test_cache_serves_hits(runner, tmp_path, monkeypatch):
    from weylext import cli

    runner.invoke(main, ["verify", "digit", "--max-degree", "3", "--cache-dir", str(tmp_path)])
    monkeypatch.setattr(cli, "run_case", lambda job: pytest.fail("cache was bypassed"))
    res = runner.invoke(main, ["verify", "digit", "--max-degree", "3", "--cache-dir", str(tmp_path),
                               "--format", "table"])
    assert res.exit_code == 0
    assert "cached" in res.output


def test_corrupted_cache_entry(runner, tmp_path):
    args = ["ext", "2,1", "3", "--cache-dir", str(tmp_path)]
    good = runner.invoke(main, args).output
    for f in tmp_path.glob("*.json"):
        f.write_text("{not json")
    res = runner.invoke(main, args)
    assert res.exit_code == 0
    assert "warning" in res.stderr
    assert res.stdout == good


def test_stale_version_ignored(tmp_path):
    cache = ResultCache(tmp_path)
    key = case_key(("digit", ((2,), 2)))
    cache.put(key, {"x": 1})
    assert cache.get(key) == {"x": 1}
    path = next(tmp_path.glob("*.json"))
    entry = json.loads(path.read_text())
    entry["version"] = "old"
    path.write_text(json.dumps(entry))
    assert cache.get(key) is None


def test_unwritable_cache_dir(runner, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    res = runner.invoke(main, ["ext", "2,1", "3", "--cache-dir", str(blocker / "sub")])
    assert res.exit_code == 2


def test_env_vars_and_precedence(runner):
    env = {"WEYLEXT_MAX_I": "1"}
    assert len(lines(runner.invoke(main, ["ext", "2,1", "3"], env=env))) == 2
    assert len(lines(runner.invoke(main, ["ext", "2,1", "3", "--max-i", "2"], env=env))) == 3


def test_run_config_validation():
    import click

    with pytest.raises(click.BadParameter):
        RunConfig(max_i=0)
    with pytest.raises(click.BadParameter):
        RunConfig(parallelism=0)


def test_case_lists():
    cfg = RunConfig(max_degree=5)
    assert len(cases_for("stability", RunConfig(max_degree=6))) == 20
    skew = cases_for("skewrep", cfg)
    assert all(len(args[0]) >= args[1] for _, args in skew)
    assert {k for k, _ in cases_for("lemmas", cfg)} == {"lemmaA", "lemmaB", "lemmaC"}
