import json

import pytest

from intpoints.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def test_spectrum_tsv(capsys):
    assert main(["spectrum", "--q", "13"]) == EXIT_OK
    out, err = capsys.readouterr()
    assert out == "13\t30\t6:2\t7:11\t8:8\t9:5\t10:1\t13:3\n"
    assert "match" in err


def test_spectrum_json_and_records(tmp_path, capsys):
    rec = tmp_path / "r.jsonl"
    assert main(["spectrum", "--q", "11", "--format", "json", "--records", str(rec)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["summary"]["row"]["rows"] == {"7": 3, "11": 1}
    assert report["verdicts"][0]["status"] == "match"
    lines = [json.loads(x) for x in rec.read_text().splitlines()]
    assert [x["size"] for x in lines] == [7, 7, 7, 11]
    assert all(x["q"] == 11 and "stab_order" in x and "orbit_len" in x for x in lines)


def test_spectrum_even_and_errors(capsys):
    assert main(["spectrum", "--q", "4"]) == EXIT_OK
    assert capsys.readouterr().out == "4\t1\t16:1\n"
    assert main(["spectrum", "--q", "6"]) == EXIT_USAGE
    assert main(["spectrum", "--q", "53"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        main(["spectrum"])
    assert e.value.code == EXIT_USAGE
    assert main(["spectrum", "--q", "7", "--threads", "0"]) == EXIT_USAGE


def test_spectrum_budget(capsys):
    assert main(["spectrum", "--q", "17", "--budget-seconds", "0.001"]) == EXIT_BUDGET


def test_verify(capsys):
    assert main(["verify", "--q", "7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "srg parameters: computed=(49, 24, 11, 12)" in out
    assert "fail" not in out
    assert main(["verify", "--q", "9", "--format", "json"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert {v["status"] for v in rep["verdicts"]} == {"pass"}


def test_construct_check_plot(tmp_path, capsys):
    f = tmp_path / "w.jsonl"
    svg = tmp_path / "w.svg"
    assert main(["construct", "--q", "11", "--kind", "circle", "--out", str(f), "--svg", str(svg)]) == EXIT_OK
    rec = json.loads(f.read_text())
    assert rec["size"] == 7 and rec["maximal"] and rec["name"] == "circle"
    assert svg.read_text().count("<circle") == 7
    assert main(["check", str(f)]) == EXIT_OK
    assert "maximal=yes" in capsys.readouterr().out
    assert main(["plot", str(f), "--style", "ascii"]) == EXIT_OK
    assert capsys.readouterr().out.count("#") == 7
    assert main(["plot", str(f), "--index", "3"]) == EXIT_USAGE
    assert main(["construct", "--q", "11", "--kind", "sporadic-1"]) == EXIT_USAGE


def test_check_not_maximal(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps([{"q": 7, "points": [[0, 0], [1, 0]]}, {"q": 7, "points": [[0, 0], [1, 2]]}]))
    assert main(["check", str(f), "--format", "json"]) == EXIT_MISMATCH
    a, b = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert a["integral"] and not a["maximal"] and a["extensions"] == 11  # lambda of the q = 7 graph
    assert not b["integral"] and b["extensions"] is None
    f.write_text("garbage")
    assert main(["check", str(f)]) == EXIT_USAGE
    assert main(["check", str(tmp_path / "missing")]) == EXIT_USAGE


def test_autgroup(capsys):
    assert main(["autgroup", "--q", "5"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["h_order"] == 800 and out["g_order"] == 28800


def test_graph_dump(tmp_path):
    f = tmp_path / "g.txt"
    assert main(["graph-dump", "--q", "3", "--out", str(f)]) == EXIT_OK
    lines = f.read_text().splitlines()
    assert lines[0].startswith("# q=3") and len(lines) == 1 + 18
