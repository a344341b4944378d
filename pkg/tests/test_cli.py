import json

import pytest
from click.testing import CliRunner

from gaelsem.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_grammar_check_accepts(runner):
    result = runner.invoke(main, ["grammar", "check", "--lang", "ga",
                                  "Is Impire olc é Palpatine"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("ACCEPT")
    assert "pairings:" in result.output


def test_grammar_check_rejects_with_residual(runner):
    result = runner.invoke(main, ["grammar", "check", "--lang", "ga",
                                  "Impire Is olc é Palpatine"])
    assert result.exit_code == 1
    assert result.output.startswith("REJECT")
    assert "residual" in result.output


def test_grammar_check_relative_clause_nodes(runner):
    result = runner.invoke(main, ["grammar", "check", "--lang", "ga",
                                  "Is ceannmáistir a casann Anakin go taobh dorcha na Fórsa é Palpatine"])
    assert result.exit_code == 0
    assert "copy nodes:" in result.output


def test_sentence_compare_json(runner):
    args = ["sentence", "compare", "Palpatine is an evil Emperor",
            "Is Impire olc é Palpatine"]
    first = runner.invoke(main, args)
    assert first.exit_code == 0, first.output
    payload = json.loads(first.output)
    assert payload == {"inner": 10174, "len_a": 10182, "len_b": 10180, "score": 0.99}
    second = runner.invoke(main, args)
    assert second.output == first.output  # byte-identical on identical inputs


def test_sentence_compare_yoda_pair(runner):
    result = runner.invoke(main, ["sentence", "compare", "Yoda is a powerful Jedi",
                                  "Is Jedi cróga é Palpatine"])
    payload = json.loads(result.output)
    assert payload["score"] == 0.21
    assert payload["inner"] == 8


def test_sentence_compare_missing_word_exits_one(runner):
    result = runner.invoke(main, ["sentence", "compare", "Anakin grok Yoda",
                                  "Is Impire olc é Palpatine"])
    assert result.exit_code == 1


def test_bleu_json(runner):
    result = runner.invoke(main, ["bleu", "--ref", "Anakin is a Sith Lord",
                                  "--cand", "Obi-Wan is a Sith Lord"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert abs(payload["score"] - 0.7) <= 0.05
    assert payload["p_n"] == ["4/5", "3/4", "2/3", "1/2"]
    assert payload["smoothing"] == "method7"


def test_bleu_row4_band(runner):
    result = runner.invoke(main, [
        "bleu", "--ref", "Casann na Jedi go Mace Windu cumhachtach",
        "--cand", "Casann Ginearál Grievous go Mace Windu cróga"])
    payload = json.loads(result.output)
    assert abs(payload["score"] - 0.27) <= 0.05


def test_concept_build_distance_translate_round_trip(runner, tmp_path):
    out_dir = tmp_path / "concepts"
    out_dir.mkdir()
    for noun in ["Venus", "Jupiter", "Mars", "Apple", "Sun"]:
        result = runner.invoke(main, ["concept", "build", "--lang", "en",
                                      "--noun", noun,
                                      "--out", str(out_dir / ("%s.json" % noun))])
        assert result.exit_code == 0, result.output
    result = runner.invoke(main, ["concept", "build", "--lang", "ga",
                                  "--noun", "Iúpatar",
                                  "--out", str(tmp_path / "query.json")])
    assert result.exit_code == 0

    result = runner.invoke(main, ["concept", "distance",
                                  "--a", str(out_dir / "Jupiter.json"),
                                  "--b", str(tmp_path / "query.json")])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert abs(payload["total"] - 0.3) <= 1e-9

    result = runner.invoke(main, ["concept", "translate",
                                  "--query", str(tmp_path / "query.json"),
                                  "--candidates", str(out_dir)])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["ranking"][0]["name"] == "Jupiter"
    assert payload["tie"] is False


def test_concept_build_from_corpus(runner, tmp_path):
    from gaelsem import resources as R

    corpus = R.data_path("corpus3_en.txt")
    result = runner.invoke(main, ["concept", "build", "--lang", "en",
                                  "--noun", "Apple", "--corpus", str(corpus)])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert sorted(payload["tree_nodes"], key=lambda n: int(n[1:])) == [
        "e0", "e1", "e3", "e6", "e7", "e9", "e11", "e13", "e16", "e18"]


def test_model_build_writes_file(runner, tmp_path):
    from gaelsem import resources as R

    out = tmp_path / "model.txt"
    result = runner.invoke(main, [
        "model", "build", "--corpus", str(R.data_path("corpus1_en.txt")),
        "--lang", "en", "--basis", "Anakin,Palpatine,Jedi,Obi-Wan,arg-evil",
        "--window", "3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    text = out.read_text(encoding="utf-8")
    assert "language: en" in text
    assert "verb turn:" in text


def test_reproduce_similarity_suite(runner):
    result = runner.invoke(main, ["reproduce", "--suite", "similarity"])
    assert result.exit_code == 0, result.output
    assert "[FAIL]" not in result.output
    assert "gating checks passed" in result.output


def test_reproduce_report_dir(runner, tmp_path):
    out = tmp_path / "report"
    result = runner.invoke(main, ["reproduce", "--suite", "bleu", "--suite", "metric",
                                  "--report-dir", str(out)])
    assert result.exit_code == 0, result.output
    names = {p.name for p in out.iterdir()}
    assert "bleu.csv" in names and "metric.csv" in names
    assert "bleu_scores.png" in names and "concept_distances.png" in names


def test_usage_error_exit_code(runner):
    result = runner.invoke(main, ["grammar", "check", "--lang", "xx", "hi"])
    assert result.exit_code == 2


def test_data_dir_override(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("GAELSEM_DATA", str(tmp_path))
    result = runner.invoke(main, ["grammar", "check", "--lang", "ga",
                                  "Is Impire olc é Palpatine"])
    assert result.exit_code == 1
    assert "not found" in result.output
