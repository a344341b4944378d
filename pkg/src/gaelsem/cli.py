"""Command-line interface.

Exit codes: 0 success, 1 domain error (ungrammatical sentence, missing word,
failed reproduction), 2 usage error.
"""
from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import resources as R
from . import report as report_mod
from .bleu import BleuError, bleu_report, tokenize
from .concepts import (
    Concept,
    ConceptError,
    build_concept,
    extract_descriptors,
    load_adjective_table,
    load_tree,
)
from .corpus import CorpusError, load_mapping_table, load_multiword_table, segment_and_tokenize
from .distrib import EvaluationError, ModelError, save_model, score_string
from .lexicon import LexiconError, parse_sentence
from .metric import MetricError, concept_distance, ranking_has_tie, translate_noun
from .pregroup import NotASentenceError, PregroupError, format_type

_DOMAIN_ERRORS = (NotASentenceError, PregroupError, LexiconError, CorpusError,
                  EvaluationError, ModelError, ConceptError, MetricError, BleuError,
                  FileNotFoundError, ValueError)


def domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except NotASentenceError as err:
            click.echo("REJECT residual: %s" % format_type(err.residual))
            sys.exit(1)
        except _DOMAIN_ERRORS as err:
            click.echo("error: %s" % err, err=True)
            sys.exit(1)
    return wrapper


@click.group()
def main():
    """Bilingual sentence-meaning comparison and concept translation."""


@main.group()
def grammar():
    """Pregroup grammar commands."""


@grammar.command("check")
@click.option("--lang", "language", type=click.Choice(["en", "ga"]), required=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None,
              help="Lexicon file (defaults to the packaged one).")
@click.argument("sentence")
@domain_errors
def grammar_check(language, lexicon_path, sentence):
    """Type-check SENTENCE; print ACCEPT with pairings or REJECT with residual."""
    res = R.load_language(language, lexicon_path=lexicon_path)
    parsed = parse_sentence(R.sentence_tokens(sentence, res), language, res.lexicon)
    click.echo("ACCEPT " + " | ".join(str(t) for t in parsed.tokens))
    click.echo("pairings: " + " ".join("(%d,%d)" % p for p in parsed.plan.pairings))
    if parsed.plan.copy_nodes:
        click.echo("copy nodes: %s  unit nodes: %s"
                   % (parsed.plan.copy_nodes, parsed.plan.unit_nodes))


@main.group()
def model():
    """Distributional model commands."""


@model.command("build")
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--lang", "language", type=click.Choice(["en", "ga"]), required=True)
@click.option("--basis", required=True, help="Comma-separated five basis labels.")
@click.option("--window", default=3, show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@domain_errors
def model_build(corpus_path, language, basis, window, out_path):
    """Count a model (noun vectors, verb matrices, adjectives) from a corpus."""
    res = R.load_language(language)
    basis_labels = [b.strip() for b in basis.split(",")]
    if len(basis_labels) != 5:
        raise click.UsageError("--basis needs exactly five comma-separated labels")
    text = Path(corpus_path).read_text(encoding="utf-8")
    doc = segment_and_tokenize(text, language, res.multiword, res.lemma,
                               subst_table=res.subst, lexicon=res.lexicon)
    built = report_mod.build_model_from_corpus(language, res, window=window,
                                               basis=basis_labels, doc=doc)
    save_model(built, out_path)
    click.echo("wrote %s (%d nouns, %d verbs, %d adjectives; %d sentences)"
               % (out_path, len(built.nouns), len(built.verbs),
                  len(built.adjectives), len(doc.sentences)))


@main.group()
def sentence():
    """Sentence meaning commands."""


@sentence.command("compare")
@click.option("--model-a", "model_a", type=click.Path(exists=True), default=None)
@click.option("--model-b", "model_b", type=click.Path(exists=True), default=None)
@click.option("--lang-a", default="en", show_default=True)
@click.option("--lang-b", default="ga", show_default=True)
@click.option("--places", default=2, show_default=True,
              help="Decimal places for the reported score.")
@click.argument("sent_a")
@click.argument("sent_b")
@domain_errors
def sentence_compare(model_a, model_b, lang_a, lang_b, places, sent_a, sent_b):
    """Similarity of two sentences under their language models (JSON)."""
    res_a = R.load_language(lang_a, model_path=model_a)
    res_b = R.load_language(lang_b, model_path=model_b)
    m_a = R.meaning_of(sent_a, res_a)
    m_b = R.meaning_of(sent_b, res_b)
    payload = {
        "inner": int(m_a.inner(m_b)),
        "len_a": int(m_a.length()),
        "len_b": int(m_b.length()),
        "score": float(score_string(m_a, m_b, places=places)),
    }
    click.echo(json.dumps(payload, ensure_ascii=False))


@main.command("bleu")
@click.option("--ref", required=True)
@click.option("--cand", required=True)
@click.option("--smoothing", type=click.Choice(["none", "method7"]), default="method7",
              show_default=True)
@click.option("--merge-names/--no-merge-names", default=True, show_default=True,
              help="Merge multiword person names before scoring.")
@domain_errors
def bleu_cmd(ref, cand, smoothing, merge_names):
    """BLEU score of a candidate against a reference sentence (JSON)."""
    merges = R.bleu_merge_names() if merge_names else []
    ref_toks = tokenize(ref, merges)
    cand_toks = tokenize(cand, merges)
    rep = bleu_report(ref_toks, cand_toks, smoothing=smoothing)
    rep.tokenization = {
        "case": "lower", "punctuation": "stripped",
        "merged_names": bool(merge_names),
        "reference_tokens": ref_toks, "candidate_tokens": cand_toks,
    }
    click.echo(json.dumps(rep.as_dict(), ensure_ascii=False))


@main.group()
def concept():
    """Conceptual-space commands."""


def _concept_resources(language, table_path, tree_path):
    table = (load_adjective_table(table_path, language) if table_path
             else R.load_concept_resources(language).table)
    tree = load_tree(tree_path, language) if tree_path else R.load_concept_resources(language).tree
    return table, tree


@concept.command("build")
@click.option("--lang", "language", type=click.Choice(["en", "ga"]), required=True)
@click.option("--noun", required=True)
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), default=None,
              help="Extract descriptors from this corpus text.")
@click.option("--descriptors", "descriptors_path", type=click.Path(exists=True), default=None,
              help="Use a descriptor table instead of corpus extraction.")
@click.option("--table", "table_path", type=click.Path(exists=True), default=None)
@click.option("--tree", "tree_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@domain_errors
def concept_build(language, noun, corpus_path, descriptors_path, table_path, tree_path, out_path):
    """Build the concept of NOUN from a corpus or a descriptor table (JSON)."""
    table, tree = _concept_resources(language, table_path, tree_path)
    if corpus_path:
        text = Path(corpus_path).read_text(encoding="utf-8")
        multiword = load_multiword_table(R.data_path("multiword_%s.txt" % language))
        lemma = load_mapping_table(R.data_path("lemma_%s.txt" % language))
        subst = (load_mapping_table(R.data_path("subst_concepts_ga.txt"))
                 if language == "ga" else {})
        doc = segment_and_tokenize(text, language, multiword, lemma, subst_table=subst)
        adjectives, nouns = extract_descriptors(doc, noun, table, tree)
    else:
        descriptors = R.load_descriptor_table(descriptors_path or
                                              R.data_path("descriptors_%s.txt" % language))
        if noun not in descriptors:
            raise ConceptError("no descriptor entry for %r" % noun)
        adjectives, nouns = descriptors[noun]
    built = build_concept(noun, adjectives, nouns, table, tree)
    text_out = built.to_json()
    if out_path:
        Path(out_path).write_text(text_out + "\n", encoding="utf-8")
        click.echo("wrote %s" % out_path)
    else:
        click.echo(text_out)


@concept.command("distance")
@click.option("--a", "path_a", type=click.Path(exists=True), required=True)
@click.option("--b", "path_b", type=click.Path(exists=True), required=True)
@domain_errors
def concept_distance_cmd(path_a, path_b):
    """Distance report between two concept JSON files."""
    c1 = Concept.from_json(Path(path_a).read_text(encoding="utf-8"))
    c2 = Concept.from_json(Path(path_b).read_text(encoding="utf-8"))
    report = concept_distance(c1, c2)
    click.echo(json.dumps(report.as_dict(), ensure_ascii=False))


@concept.command("translate")
@click.option("--query", "query_path", type=click.Path(exists=True), required=True)
@click.option("--candidates", "candidates_dir", type=click.Path(exists=True), required=True)
@domain_errors
def concept_translate(query_path, candidates_dir):
    """Rank candidate concepts (a directory of JSON files) by distance."""
    query = Concept.from_json(Path(query_path).read_text(encoding="utf-8"))
    candidates = {}
    for path in sorted(Path(candidates_dir).glob("*.json")):
        c = Concept.from_json(path.read_text(encoding="utf-8"))
        candidates[c.name] = c
    ranked = translate_noun(query, candidates)
    payload = {
        "query": query.name,
        "tie": ranking_has_tie(ranked),
        "ranking": [{"name": name, "total": round(rep.total, 12),
                     "tree_distance": rep.tree_distance} for name, rep in ranked],
    }
    click.echo(json.dumps(payload, ensure_ascii=False))


@main.command("reproduce")
@click.option("--suite", "suites", multiple=True,
              type=click.Choice(list(report_mod.SUITES) + ["all"]), default=("all",),
              show_default=True)
@click.option("--report-dir", "report_dir", type=click.Path(), default=None,
              help="Write CSV tables and figures to this directory.")
@domain_errors
def reproduce(suites, report_dir):
    """Re-run the published-number regressions and print a pass/fail table."""
    names = report_mod.SUITES if "all" in suites else tuple(suites)
    rows = report_mod.run_suites(names)
    click.echo(report_mod.format_rows(rows))
    if report_dir:
        for path in report_mod.write_report(rows, report_dir):
            click.echo("wrote %s" % path)
    if any(r.passed is False for r in rows):
        sys.exit(1)


if __name__ == "__main__":
    main()
