import json
from importlib import resources

import jsonschema
import pytest

from paritybench.batch import Case, ManifestError, load_manifest, parse_manifest, run_batch
from paritybench.core import load_game, save_game
from paritybench.gen import gen_clique

SCHEMA = json.loads(resources.files("paritybench").joinpath("report_schema.json").read_text())

TINY = [
    {"id": "gen-ladder", "action": "generate", "generator": {"family": "ladder", "n": 3}},
    {"id": "info-clique", "action": "info", "generator": {"family": "clique", "n": 4}},
    {"id": "solve-random", "action": "solve",
     "generator": {"family": "random", "params": {"n": 30, "min_out": 1, "max_out": 3, "max_prio": 4}, "seed": 5}},
]


def _strip_timing(record):
    record = dict(record)
    record.pop("wall_time_ms", None)
    result = record.get("result")
    if isinstance(result, dict) and "times_ms" in result:
        record["result"] = {k: v for k, v in result.items() if k != "times_ms"}
    return record


def _results(out):
    return {p.name: json.loads(p.read_text()) for p in sorted(out.glob("*.json")) if p.name != "index.json"}


def test_three_tiny_cases_parallel(tmp_path):
    index = run_batch(parse_manifest(TINY), tmp_path / "res", parallelism=2)
    assert [c["status"] for c in index["cases"]] == ["ok", "ok", "ok"]
    assert sorted(p.name for p in (tmp_path / "res").glob("*.json")) == [
        "gen-ladder.json", "index.json", "info-clique.json", "solve-random.json"]
    info = json.loads((tmp_path / "res" / "info-clique.json").read_text())
    jsonschema.validate(info["result"], SCHEMA)
    gen = json.loads((tmp_path / "res" / "gen-ladder.json").read_text())
    assert load_game(tmp_path / "res" / gen["result"]["file"]).num_vertices == 6


def test_resume_reruns_only_missing(tmp_path):
    out = tmp_path / "res"
    cases = parse_manifest(TINY)
    assert len(run_batch(cases, out)["executed"]) == 3
    assert run_batch(cases, out)["executed"] == []
    (out / "info-clique.json").unlink()
    assert run_batch(cases, out)["executed"] == ["info-clique"]


def test_partial_result_file_is_rerun(tmp_path):
    out = tmp_path / "res"
    out.mkdir()
    (out / "info-clique.json").write_text('{"id": "info-cl')
    assert run_batch(parse_manifest(TINY), out)["executed"] == ["gen-ladder", "info-clique", "solve-random"]


def test_results_independent_of_parallelism(tmp_path):
    cases = parse_manifest(TINY)
    run_batch(cases, tmp_path / "p1", parallelism=1)
    run_batch(cases, tmp_path / "p8", parallelism=8)
    a, b = _results(tmp_path / "p1"), _results(tmp_path / "p8")
    assert {k: _strip_timing(v) for k, v in a.items()} == {k: _strip_timing(v) for k, v in b.items()}
    assert (tmp_path / "p1" / "gen-ladder.gm").read_bytes() == (tmp_path / "p8" / "gen-ladder.gm").read_bytes()


def test_forced_timeout_leaves_siblings_intact(tmp_path):
    spec = {"family": "random", "params": {"n": 10000, "min_out": 1, "max_out": 3, "max_prio": 6}, "seed": 1}
    cases = parse_manifest(TINY + [
        {"id": "slow", "action": "info", "generator": spec, "measures": ["diameter"], "timeout": 0.001},
    ])
    index = run_batch(cases, tmp_path / "res", parallelism=2)
    status = {c["id"]: c["status"] for c in index["cases"]}
    assert status == {"gen-ladder": "ok", "info-clique": "ok", "solve-random": "ok", "slow": "timeout"}
    slow = json.loads((tmp_path / "res" / "slow.json").read_text())
    assert slow["result"] is None or slow["result"]["diameter"] is None


def test_isolate_mode(tmp_path):
    index = run_batch(parse_manifest(TINY[:2]), tmp_path / "res", parallelism=2, isolate=True)
    assert [c["status"] for c in index["cases"]] == ["ok", "ok"]


def test_isolate_kills_runaway_case(tmp_path, monkeypatch):
    import paritybench.batch as batch

    def hang(case, results_dir):
        import time
        time.sleep(60)

    monkeypatch.setattr(batch, "execute_case", hang)
    case = Case(id="hang", action="info", generator={"family": "clique", "n": 2}, timeout=0.05)
    record = batch._run_isolated(case, str(tmp_path), grace=0.1)
    assert record["status"] == "timeout"
    assert "hard time limit" in record["error"]


def test_error_case_is_recorded(tmp_path):
    missing = tmp_path / "nope.gm"
    cases = [Case(id="bad", action="info", input=str(missing))]
    index = run_batch(cases, tmp_path / "res")
    assert index["cases"][0]["status"] == "error"
    assert "nope.gm" in json.loads((tmp_path / "res" / "bad.json").read_text())["error"]


def test_manifest_resolves_inputs_and_defaults(tmp_path):
    save_game(gen_clique(3), tmp_path / "c3.gm")
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"defaults": {"timeout": 5, "measures": "sizes"},
                                "cases": [{"id": "c", "input": "c3.gm"}]}))
    (case,) = load_manifest(path)
    assert case.input == str((tmp_path / "c3.gm").resolve())
    assert case.timeout == 5 and case.measures == ["sizes"] and case.action == "info"
    index = run_batch([case], tmp_path / "res")
    assert index["cases"][0]["status"] == "ok"


@pytest.mark.parametrize(
    "data, fragment",
    [
        ({"cases": "x"}, "list of cases"),
        ([1], "not an object"),
        ([{"input": "a"}], "'id'"),
        ([{"id": "index", "input": "a"}], "reserved"),
        ([{"id": "a", "input": "a"}, {"id": "a", "input": "b"}], "duplicate"),
        ([{"id": "a", "action": "fly", "input": "a"}], "unknown action"),
        ([{"id": "a", "input": "a", "colour": 1}], "unknown field"),
        ([{"id": "a"}], "exactly one"),
        ([{"id": "a", "action": "generate", "input": "a"}], "needs a 'generator'"),
        ([{"id": "a", "generator": {"family": "ladder"}}], "bad generator"),
        ([{"id": "a", "input": "a", "measures": ["nope"]}], "unknown measure"),
        ([{"id": "a", "input": "a", "timeout": 0}], "timeout"),
    ],
)
def test_manifest_errors(data, fragment):
    with pytest.raises(ManifestError, match=fragment):
        parse_manifest(data)


def test_manifest_file_errors(tmp_path):
    with pytest.raises(ManifestError, match="cannot read"):
        load_manifest(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ManifestError, match="not valid JSON"):
        load_manifest(bad)


def test_parallelism_must_be_positive(tmp_path):
    with pytest.raises(ValueError):
        run_batch([], tmp_path, parallelism=0)
