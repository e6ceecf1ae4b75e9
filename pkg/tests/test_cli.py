from __future__ import annotations

import json

from specinfer.cli import main

from .test_javadoc import INTENT_PAGE


def _read(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_infer_writes_outputs(figure1_path, tmp_path):
    out = tmp_path / "out"
    code = main(["infer", "--docs", str(figure1_path), "--backend", "lexicon", "-o", str(out), "--jobs", "1"])
    assert code == 0
    specs = _read(out / "specs.json")["specs"]
    assert [(s["store"], s["load"], s["paramPairs"], s["target"]) for s in specs] == [
        (
            "putStringArrayListExtra(java.lang.String,java.util.ArrayList<java.lang.String>)",
            "getStringArrayListExtra(java.lang.String)",
            [[0, 0]],
            1,
        ),
        ("setIdentifier(java.lang.String)", "getIdentifier()", [], 0),
        ("push(E)", "peek()", [], 0),
        ("push(E)", "pop()", [], 0),
    ]
    stats = _read(out / "stats.json")
    assert stats["specs"] == 4
    assert stats["pairsTotal"] == 36
    dataflow = _read(out / "dataflow.json")["summaries"]
    assert len(dataflow) == 9


def test_infer_class_filter(figure1_path, tmp_path):
    out = tmp_path / "out"
    code = main(["infer", "--docs", str(figure1_path), "--class", "android.*", "-o", str(out)])
    assert code == 0
    specs = _read(out / "specs.json")["specs"]
    assert all(s["class"] == "android.content.Intent" for s in specs)
    assert len(specs) == 2


def test_infer_no_lazy_same_specs_other_stats(figure1_path, tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["infer", "--docs", str(figure1_path), "-o", str(out_a)]) == 0
    assert main(["infer", "--docs", str(figure1_path), "-o", str(out_b), "--no-lazy"]) == 0
    assert (out_a / "specs.json").read_bytes() == (out_b / "specs.json").read_bytes()
    assert _read(out_a / "stats.json")["backendItems"] < _read(out_b / "stats.json")["backendItems"]


def test_infer_invalid_flags_aggregated(tmp_path, capsys):
    code = main(
        [
            "infer",
            "--docs", str(tmp_path / "missing.json"),
            "--threshold", "3.0",
            "--jobs", "0",
            "-o", str(tmp_path / "out"),
        ]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert "docs file not found" in err
    assert "threshold" in err
    assert "jobs" in err


def test_ingest_javadoc_command(tmp_path, capsys):
    pages = tmp_path / "pages"
    pages.mkdir()
    (pages / "Intent.html").write_text(INTENT_PAGE, encoding="utf-8")
    out = tmp_path / "canonical.json"
    assert main(["ingest-javadoc", "--dir", str(pages), "-o", str(out)]) == 0
    assert "ingested 1 classes" in capsys.readouterr().out
    payload = _read(out)
    assert payload["classes"][0]["name"] == "android.content.Intent"


def test_graph_command(figure1_path, capsys):
    assert main(["graph", "--docs", str(figure1_path), "--class", "android.content.Intent"]) == 0
    out = capsys.readouterr().out
    assert "name=value" in out
    assert "candidate edges" in out


def test_sentence_command(capsys):
    assert main(["sentence", "--text", "Removes the mapping if it is present."]) == 0
    out = capsys.readouterr().out
    assert "structure: Complex" in out
    assert "[independent] Removes the mapping" in out


def test_classify_command(capsys):
    assert main(["classify", "--text", "Removes the object at the top of this stack"]) == 0
    out = capsys.readouterr().out
    assert "op: D" in out
    assert out.count(":") >= 5  # four scores plus the verdict


def test_eval_command_self_comparison(figure1_path, tmp_path, capsys):
    out = tmp_path / "out"
    main(["infer", "--docs", str(figure1_path), "-o", str(out)])
    code = main(
        ["eval", "--pred", str(out / "specs.json"), "--truth", str(out / "specs.json")]
    )
    assert code == 0
    metrics = json.loads(capsys.readouterr().out)
    assert metrics["f1"] == 1.0 and metrics["tp"] == 4


def test_eval_dataflow_kind(figure1_path, tmp_path, capsys):
    out = tmp_path / "out"
    main(["infer", "--docs", str(figure1_path), "-o", str(out)])
    code = main(
        [
            "eval", "--kind", "dataflow",
            "--pred", str(out / "dataflow.json"),
            "--truth", str(out / "dataflow.json"),
        ]
    )
    assert code == 0
    assert json.loads(capsys.readouterr().out)["f1"] == 1.0


def test_cache_clear(tmp_path, capsys):
    cache = tmp_path / "cache"
    cache.mkdir()
    assert main(["cache", "clear", "--memop-cache", str(cache)]) == 0
    assert "removed 0 cache entries" in capsys.readouterr().out


def test_cache_clear_requires_directory(capsys, monkeypatch):
    monkeypatch.delenv("SPECINFER_CACHE_DIR", raising=False)
    assert main(["cache", "clear"]) == 1


def test_infer_with_persistent_cache(figure1_path, tmp_path):
    cache = tmp_path / "cache"
    out = tmp_path / "out"
    assert main(["infer", "--docs", str(figure1_path), "-o", str(out), "--memop-cache", str(cache)]) == 0
    entries = list(cache.glob("*.json"))
    assert entries  # scores persisted
    out2 = tmp_path / "out2"
    assert main(["infer", "--docs", str(figure1_path), "-o", str(out2), "--memop-cache", str(cache)]) == 0
    assert (out / "specs.json").read_bytes() == (out2 / "specs.json").read_bytes()


def test_classify_with_custom_verb_lexicon(tmp_path, capsys):
    table = tmp_path / "verbs.txt"
    # Reassign "push" to read: the verdict must follow the table, not the default.
    table.write_text("push\t0.0,0.0,0.9,0.0\n", encoding="utf-8")
    code = main(
        ["classify", "--text", "Pushes an item onto the top of this stack.",
         "--verb-lexicon", str(table)]
    )
    assert code == 0
    assert "op: R" in capsys.readouterr().out


def test_infer_with_custom_lexicon_files(figure1_path, tmp_path):
    from importlib import resources

    data = resources.files("specinfer") / "data"
    lex = tmp_path / "lex.txt"
    ovr = tmp_path / "ovr.txt"
    lex.write_text((data / "tag_lexicon.txt").read_text(encoding="utf-8"), encoding="utf-8")
    ovr.write_text((data / "noun_overrides.txt").read_text(encoding="utf-8"), encoding="utf-8")
    out = tmp_path / "out"
    code = main(
        ["infer", "--docs", str(figure1_path), "-o", str(out),
         "--lexicon", str(lex), "--noun-overrides", str(ovr)]
    )
    assert code == 0
    assert len(_read(out / "specs.json")["specs"]) == 4


def test_infer_unreachable_embedding_service_is_fatal(figure1_path, tmp_path, capsys):
    code = main(
        ["infer", "--docs", str(figure1_path), "--backend", "embedding",
         "--embed-url", "http://127.0.0.1:9", "-o", str(tmp_path / "out")]
    )
    assert code == 1
    assert "unreachable" in capsys.readouterr().err
