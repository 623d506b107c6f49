import csv
import io
import json

import pytest

from dynparam.cli import BENCH_COLUMNS, main, replay
from dynparam.graph import EdgeUpdate, Mode
from dynparam.stream import REPORT_COLUMNS, QueryMark, UpdateStream, format_stream, parse_stream

from helpers import connected_stream, rng_for


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def dec40(tmp_path):
    s = connected_stream(40, False, Mode.DECREMENTAL, 60, rng_for("cli-dec40"))
    path = tmp_path / "stream.txt"
    path.write_text(format_stream(s))
    return path


def test_run_random_decremental_all_ok(dec40, tmp_path, capsys):
    out = tmp_path / "report.csv"
    code = main(["run", "--alg", "rand", "--param", "diameter", "--eps", "0.3", "--seed", "7",
                 str(dec40), "-o", str(out)])
    assert code == 0
    got = rows(out.read_text())
    assert got and all(r["ok"] == "true" for r in got)
    assert list(got[0]) == list(REPORT_COLUMNS)


def test_run_is_byte_identical(dec40, capsys):
    args = ["run", "--param", "radius", "--eps", "0.3", "--seed", "3", str(dec40)]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first


def test_run_verify_none_leaves_oracle_empty(dec40, capsys):
    assert main(["run", "--verify", "none", str(dec40)]) == 0
    got = rows(capsys.readouterr().out)
    assert got and all(r["oracle"] == r["lower_bound"] == r["ok"] == "" for r in got)


def test_run_verify_every_event(tmp_path, capsys):
    s = UpdateStream(4, False, Mode.DECREMENTAL, [(0, 1), (1, 2), (2, 3), (3, 0)],
                     [EdgeUpdate.delete(0, 1), EdgeUpdate.delete(2, 3), QueryMark()])
    path = tmp_path / "s.txt"
    path.write_text(format_stream(s))
    assert main(["run", "--verify", "event", "--param", "eccentricities", str(path)]) == 0
    got = rows(capsys.readouterr().out)
    # one row per vertex after each of the two updates
    assert [r["event_index"] for r in got] == ["1"] * 4 + ["2"] * 4
    assert got[-1]["oracle"] == "inf" and got[-1]["ok"] == "true"


def test_det_rejects_decremental(dec40, capsys):
    assert main(["run", "--alg", "det", str(dec40)]) == 2
    assert "IncompatibleSpec" in capsys.readouterr().err


def test_failed_rows_give_nonzero_exit(monkeypatch, dec40, capsys):
    import dynparam.cli as cli
    monkeypatch.setattr(cli, "bounds", lambda *a: (10**6, 10**6))
    assert main(["run", str(dec40)]) == 1
    assert "violate" in capsys.readouterr().err


def test_det_incremental_run(tmp_path, capsys):
    s = connected_stream(15, True, Mode.INCREMENTAL, 20, rng_for("cli-det"))
    path = tmp_path / "s.txt"
    path.write_text(format_stream(s))
    for param in ("diameter", "radius", "eccentricities"):
        assert main(["run", "--alg", "det", "--param", param, "--eps", "1.0", str(path)]) == 0
    capsys.readouterr()


def test_gen_diam32_stream_and_sidecar(tmp_path, capsys):
    prefix = tmp_path / "g" / "diam"
    code = main(["gen", "diam32", "--eps", "0.1", "--random-ov", "4", "4", "4", "3",
                 "--seed", "1", "--certify", "-o", str(prefix)])
    assert code == 0
    s = parse_stream((tmp_path / "g" / "diam.stream").read_text())
    assert s.mode is Mode.FULLY_DYNAMIC
    side = [json.loads(x) for x in (tmp_path / "g" / "diam.jsonl").read_text().splitlines()]
    assert len(side) == sum(isinstance(e, QueryMark) for e in s.events)
    assert all(d["a"] == 2 and d["expect"][0]["param"] == "diameter" for d in side)


def test_gen_kcycle_and_single_stage(tmp_path, capsys):
    prefix = tmp_path / "k"
    assert main(["gen", "kcycle", "--k", "3", "--seed", "2", "--certify", "-o", str(prefix)]) == 0
    assert main(["gen", "kcycle", "--k", "3", "--seed", "2", "--stage", "0",
                 "--polarity", "decremental", "-o", str(prefix)]) == 0
    s = parse_stream((tmp_path / "k.stream").read_text())
    assert s.mode is Mode.DECREMENTAL


def test_gen_from_instance_file(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps({"U": [[1, 0], [0, 1]], "V": [[0, 1], [1, 1]]}))
    assert main(["gen", "2approx", "--instance", str(inst), "--certify",
                 "-o", str(tmp_path / "two")]) == 0
    lines = (tmp_path / "two.jsonl").read_text().splitlines()
    assert [json.loads(x)["decision"] for x in lines] == [True, False]


def test_gen_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "pentagon"])
    assert exc.value.code == 2
    assert main(["gen", "diam32", "--random-ov", "4", "4", "-o", str(tmp_path / "x")]) == 2


def test_bench_columns_and_determinism(dec40, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["bench", str(dec40), "--seed", "5", "-o", str(a)])
    main(["bench", str(dec40), "--seed", "5", "-o", str(b)])
    ra, rb = rows(a.read_text()), rows(b.read_text())
    assert list(ra[0]) == list(BENCH_COLUMNS) and len(ra) == 60
    strip = [{k: v for k, v in r.items() if k != "seconds"} for r in ra]
    assert strip == [{k: v for k, v in r.items() if k != "seconds"} for r in rb]
    totals = [int(r["work_total"]) for r in ra]
    assert totals == sorted(totals)


def test_bench_empty_stream_is_header_only(tmp_path, capsys):
    path = tmp_path / "empty.txt"
    path.write_text(format_stream(UpdateStream(3, False, Mode.DECREMENTAL, [(0, 1), (1, 2)], [])))
    assert main(["bench", str(path)]) == 0
    assert capsys.readouterr().out == ",".join(BENCH_COLUMNS) + "\n"


def test_oracle_subcommand(tmp_path, capsys):
    s = UpdateStream(3, False, Mode.DECREMENTAL, [(0, 1), (1, 2), (2, 0)],
                     [QueryMark(), EdgeUpdate.delete(2, 0), QueryMark(),
                      EdgeUpdate.delete(1, 2), QueryMark()])
    path = tmp_path / "s.txt"
    path.write_text(format_stream(s))
    assert main(["oracle", str(path)]) == 0
    got = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert [(r["event_index"], r["diameter"], r["radius"]) for r in got] == \
        [(0, 1, 1), (1, 2, 1), (2, "inf", "inf")]


def test_replay_matches_report(dec40):
    s = parse_stream(dec40.read_text())
    recs = replay(s, "rand", "diameter", 0.3, seed=7)
    assert len(recs) == sum(isinstance(e, QueryMark) for e in s.events)
