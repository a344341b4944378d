"""Packaged fixture data and convenience pipelines built on top of it.

Every file the pipelines need (corpora, lexicons, merge/lemma tables,
models, adjective tables, trees, descriptors) ships inside the package.
GAELSEM_DATA overrides the fixture directory wholesale.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .bleu import tokenize as _bleu_tokenize
from .concepts import (
    AdjectiveTable,
    Concept,
    HypernymTree,
    build_concept,
    load_adjective_table,
    load_tree,
)
from .corpus import CorpusDoc, load_mapping_table, load_multiword_table, segment_and_tokenize
from .distrib import DistribModel, SentenceMeaning, evaluate, load_model
from .lexicon import Lexicon, ParsedSentence, load_lexicon, parse_sentence


def data_dir() -> Path:
    override = os.environ.get("GAELSEM_DATA")
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    path = data_dir() / name
    if not path.exists():
        raise FileNotFoundError("fixture %s not found under %s" % (name, data_dir()))
    return path


@dataclass
class LanguageResources:
    language: str
    lexicon: Lexicon
    multiword: list
    lemma: dict
    subst: dict
    model: DistribModel


def load_language(language: str, lexicon_path=None, model_path=None) -> LanguageResources:
    if language not in ("en", "ga"):
        raise ValueError("language must be 'en' or 'ga'")
    lex = load_lexicon(lexicon_path or data_path("lexicon_%s.txt" % language))
    return LanguageResources(
        language=language,
        lexicon=lex,
        multiword=load_multiword_table(data_path("multiword_%s.txt" % language)),
        lemma=load_mapping_table(data_path("lemma_%s.txt" % language)),
        subst=load_mapping_table(data_path("subst_en.txt")) if language == "en" else {},
        model=load_model(model_path or data_path("model_%s.txt" % language)),
    )


def sentence_tokens(text: str, res: LanguageResources):
    doc = segment_and_tokenize(text, res.language, res.multiword, res.lemma,
                               lexicon=res.lexicon)
    if len(doc.sentences) != 1:
        raise ValueError("expected exactly one sentence, got %d" % len(doc.sentences))
    return doc.sentences[0]


def parse_text(text: str, res: LanguageResources) -> ParsedSentence:
    return parse_sentence(sentence_tokens(text, res), res.language, res.lexicon)


def meaning_of(text: str, res: LanguageResources) -> SentenceMeaning:
    return evaluate(parse_text(text, res), res.model)


def load_story_corpus(language: str, res: LanguageResources = None) -> CorpusDoc:
    res = res or load_language(language)
    name = "corpus1_en.txt" if language == "en" else "corpus2_ga.txt"
    text = data_path(name).read_text(encoding="utf-8")
    return segment_and_tokenize(text, language, res.multiword, res.lemma,
                                subst_table=res.subst, lexicon=res.lexicon)


@dataclass
class ConceptResources:
    language: str
    table: AdjectiveTable
    tree: HypernymTree
    descriptors: dict[str, tuple[list[str], list[str]]]


def load_concept_resources(language: str) -> ConceptResources:
    table = load_adjective_table(data_path("adjectives_%s.txt" % language), language)
    tree = load_tree(data_path("tree_%s.txt" % language), language)
    descriptors = load_descriptor_table(data_path("descriptors_%s.txt" % language))
    return ConceptResources(language, table, tree, descriptors)


def load_descriptor_table(path) -> dict[str, tuple[list[str], list[str]]]:
    """[Noun] sections with ``adjectives:`` and ``nouns:`` lists, | separated."""
    out: dict[str, tuple[list[str], list[str]]] = {}
    current = None
    for raw in open(path, encoding="utf-8"):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            out[current] = ([], [])
            continue
        if current is None or ":" not in line:
            raise ValueError("bad descriptor line %r in %s" % (line, path))
        key, value = (p.strip() for p in line.split(":", 1))
        items = [v.strip() for v in value.split("|") if v.strip()]
        if key == "adjectives":
            out[current] = (items, out[current][1])
        elif key == "nouns":
            out[current] = (out[current][0], items)
        else:
            raise ValueError("unknown descriptor field %r in %s" % (key, path))
    return out


def load_concepts_corpus(language: str, res: LanguageResources = None) -> CorpusDoc:
    name = "corpus3_en.txt" if language == "en" else "corpus4_ga.txt"
    text = data_path(name).read_text(encoding="utf-8")
    multiword = load_multiword_table(data_path("multiword_%s.txt" % language))
    lemma = load_mapping_table(data_path("lemma_%s.txt" % language))
    subst = {}
    if language == "ga":
        subst = load_mapping_table(data_path("subst_concepts_ga.txt"))
    # no lexicon: particles stay in place so multiword table phrases match
    return segment_and_tokenize(text, language, multiword, lemma, subst_table=subst)


def fixture_concepts(language: str) -> dict[str, Concept]:
    """The five concepts of a language, built from the descriptor fixtures."""
    cres = load_concept_resources(language)
    out = {}
    for name, (adjectives, nouns) in cres.descriptors.items():
        out[name] = build_concept(name, adjectives, nouns, cres.table, cres.tree)
    return out


def bleu_merge_names() -> list[str]:
    return [line.strip() for line in open(data_path("bleu_names.txt"), encoding="utf-8")
            if line.strip() and not line.startswith("#")]


def bleu_tokens(text: str) -> list[str]:
    return _bleu_tokenize(text, merges=bleu_merge_names())
