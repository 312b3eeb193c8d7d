import json

import pytest

from raagbns.cli import main
from raagbns.graphs import SimpleGraph


@pytest.fixture
def f3_file(tmp_path):
    path = tmp_path / "f3.json"
    path.write_text(json.dumps({"vertices": ["a", "b", "c"], "edges": []}))
    return str(path)


@pytest.fixture
def f4_file(tmp_path):
    path = tmp_path / "f4.json"
    path.write_text(json.dumps({"vertices": ["a", "b", "c", "d"], "edges": []}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_classify_f3(capsys, f3_file):
    code, report = run(capsys, "classify", f3_file)
    assert code == 0
    assert report["verdict"] == "raag"
    assert report["defining_graph"] == {
        "vertices": ["a[b|c]", "b[a|c]", "c[a|b]"],
        "edges": [],
    }
    assert report["center_rank"] == 0
    assert report["relators_killed"] is True
    assert report["tool"] == {"name": "raagbns", "version": "0.1.0"}


def test_classify_f4(capsys, f4_file):
    code, report = run(capsys, "classify", f4_file)
    assert code == 0
    assert report["verdict"] == "not_raag"
    assert report["owner"] == "a"
    assert report["loop"] == [["b"], ["c"], ["d"]]
    assert report["homology_witness"]["pairing"] == "1"


def test_classify_with_basepoint_override(capsys, f3_file, tmp_path):
    override = tmp_path / "base.json"
    override.write_text(json.dumps({"a": [["c"]]}))
    code, report = run(capsys, "classify", f3_file, "--basepoints", str(override))
    assert code == 0
    rows = {r["owner"]: r["basepoint"] for r in report["preferred"]}
    assert rows["a"] == ["c"]
    assert rows["b"] == ["a"]


def test_input_echo_round_trips(capsys, f4_file):
    _, report = run(capsys, "classify", f4_file)
    echoed = SimpleGraph(report["input"]["vertices"], report["input"]["edges"])
    assert echoed == SimpleGraph("abcd", [])


def test_homology_example_files(capsys, tmp_path):
    lines = tmp_path / "three_lines.json"
    lines.write_text(
        json.dumps(
            {"ambient_dim": 2, "subspaces": [[["1", "0"]], [["0", "1"]], [["1", "1"]]]}
        )
    )
    code, report = run(capsys, "homology", str(lines))
    assert code == 0
    assert report["betti"] == [0, 1]
    planes = tmp_path / "four_planes.json"
    planes.write_text(
        json.dumps(
            {
                "ambient_dim": 3,
                "subspaces": [
                    [["0", "1", "0"], ["0", "0", "1"]],
                    [["1", "1", "0"], ["0", "0", "1"]],
                    [["1", "0", "0"], ["0", "1", "1"]],
                    [["1", "0", "0"], ["0", "1", "0"]],
                ],
            }
        )
    )
    code, report = run(capsys, "homology", str(planes))
    assert code == 0
    assert report["betti"] == [0, 0, 1]
    assert report["dims"] == [3, 8, 6]


def test_bns_pso_f4(capsys, f4_file):
    code, report = run(capsys, "bns", f4_file, "--group", "pso", "--witness")
    assert code == 0
    assert report["ambient_dim"] == 8
    assert len(report["subspaces"]) == 4
    assert report["betti"] == [0, 4]
    assert report["euler"] == -4
    assert report["witness"]["cocycle_support"] == [0]


def test_bns_witness_absent_on_forest_graph(capsys, f3_file):
    code, report = run(capsys, "bns", f3_file, "--group", "pso", "--witness")
    assert code == 0
    assert report["witness"] is None


def test_presentation_counts(capsys, f3_file):
    code, report = run(capsys, "presentation", f3_file, "--group", "psa")
    assert code == 0
    assert len(report["generators"]) == 6
    assert len(report["relators"]) == 9
    code, report = run(capsys, "presentation", f3_file, "--group", "pso")
    assert len(report["relators"]) == 12
    assert [["a[b]", 1], ["a[c]", 1]] in report["relators"]


def test_euler_report(capsys, f3_file):
    code, report = run(capsys, "euler-report", f3_file)
    assert code == 0
    assert report["psa"] == {"betti": [0, 3], "euler": -3}
    assert report["pso"] == {"betti": [0, 0], "euler": 0}


def test_word_reduce(capsys, f3_file):
    code, report = run(capsys, "word-reduce", f3_file, "b a a^-1 b^-1 c")
    assert code == 0
    assert report["reduced"] == "c"


def test_support_graphs(capsys, f4_file):
    code, report = run(capsys, "support-graphs", f4_file)
    assert code == 0
    entry = report["support_graphs"]["a"]
    assert entry["forest"] is False
    assert entry["loop"] == [["b"], ["c"], ["d"]]


def test_malformed_input_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("definitely not a graph")
    code = main(["classify", str(bad)])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_cap_exceeded_exit_code(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("RAAGBNS_CAP", "10")
    big = tmp_path / "f5.json"
    big.write_text(json.dumps({"vertices": list("abcde"), "edges": []}))
    code = main(["bns", str(big), "--group", "pso"])
    assert code == 3


def test_byte_identical_reports(capsys, f4_file):
    main(["classify", f4_file])
    first = capsys.readouterr().out
    main(["classify", f4_file])
    second = capsys.readouterr().out
    assert first == second
    main(["classify", f4_file, "--pretty"])
    pretty = capsys.readouterr().out
    assert json.loads(pretty) == json.loads(first)


def test_corpus_runner(capsys, tmp_path):
    corpus = tmp_path / "graphs"
    corpus.mkdir()
    (corpus / "f3.json").write_text(
        json.dumps({"vertices": ["a", "b", "c"], "edges": []})
    )
    (corpus / "path3.txt").write_text("vertices: a x b\na x\nx b\n")
    (corpus / "f4.json").write_text(
        json.dumps({"vertices": ["a", "b", "c", "d"], "edges": []})
    )
    code, report = run(capsys, "corpus", str(corpus))
    assert code == 0
    assert report["ok"] is True
    assert [r["file"] for r in report["files"]] == ["f3.json", "f4.json", "path3.txt"]
    f4_row = next(r for r in report["files"] if r["file"] == "f4.json")
    assert f4_row["pso_is_raag"] is False
    assert f4_row["checks"]["witness_pairing_is_one"] is True
