"""Corpus ingestion: segmentation, tokenization, multiword merging, counting.

The ingestion pipeline is deliberately plain text in, plain tokens out:
sentences split on ./!/?, punctuation stripped, multiword expressions
collapsed to single tokens, inflected forms mapped through a lemma table,
and determiner/particle words absorbed into their neighbours so that they
never occupy a window position.  Co-occurrence counting then runs over the
merged token streams.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

_SENTENCE_SPLIT = re.compile(r"[.!?]+")
_PUNCT = re.compile(r"[\"“”‘’,():;]|'s\b|’s\b")


class CorpusError(Exception):
    pass


@dataclass(frozen=True)
class Token:
    """A merged corpus token.

    ``key`` is the canonical lexicon/model key (e.g. "dark side of the Force"),
    ``display`` the hyphen-joined surface including any attached particle
    ("é-Palpatine").  Preposition-led tokens built by the grammar layer carry
    the preposition in ``prep`` and keep the inner noun in ``key``.
    """
    key: str
    display: str
    prep: Optional[str] = None

    def __str__(self):
        return self.display


@dataclass
class CorpusDoc:
    language: str
    sentences: list[list[Token]]

    def keys(self) -> Iterable[str]:
        for sent in self.sentences:
            for tok in sent:
                yield tok.key


def load_multiword_table(path) -> list[tuple[str, str]]:
    """(phrase, canonical) pairs, one per line.

    A bare line maps a phrase to itself; ``variant -> canonical`` folds a
    surface variant onto the canonical merged form.  Single-word entries
    register proper-noun casing.
    """
    phrases = []
    for line in open(path, encoding="utf-8"):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "->" in line:
            variant, canonical = (p.strip() for p in line.split("->", 1))
            phrases.append((variant, canonical))
        else:
            phrases.append((line, line))
    return phrases


def load_mapping_table(path) -> dict[str, str]:
    """Lines of the form ``source -> target``."""
    table = {}
    for line in open(path, encoding="utf-8"):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise CorpusError("bad mapping line %r in %s" % (line, path))
        src, dst = (part.strip() for part in line.split("->", 1))
        table[src.lower()] = dst
    return table


def split_sentences(text: str) -> list[str]:
    parts = _SENTENCE_SPLIT.split(text)
    return [p.strip() for p in parts if p.strip()]


def _raw_words(sentence: str) -> list[str]:
    cleaned = _PUNCT.sub(" ", sentence)
    return [w for w in cleaned.split() if w not in ("-", "–", "—")]


def segment_and_tokenize(text, language, multiword_table, lemma_table,
                         subst_table=None, lexicon=None) -> CorpusDoc:
    """Turn raw text into a CorpusDoc of merged tokens.

    Multiword phrases are collapsed longest-match-first into single tokens;
    tokens are lowercased unless the multiword table lists them (which doubles
    as the proper-noun registry).  Unknown words pass through unchanged.
    When a lexicon is supplied, its determiner entries are dropped and its
    particle entries attach to the following token's display form.
    """
    subst_table = subst_table or {}
    pairs = [(p, c) if isinstance(p, str) else p for p, c in
             (item if isinstance(item, tuple) else (item, item) for item in multiword_table)]
    pairs.sort(key=lambda pc: -len(pc[0].split()))
    proper = {c.lower(): c for _, c in pairs}
    sentences = []
    for raw in split_sentences(text):
        words = []
        for w in _raw_words(raw):
            repl = subst_table.get(w.lower(), w)
            if repl != "-":
                words.append(repl)
        merged = _merge_phrases(words, pairs)
        toks = []
        for surface, was_phrase in merged:
            if was_phrase:
                key = surface
            else:
                low = lemma_table.get(surface.lower(), surface.lower()).lower()
                key = proper.get(low, low)
            toks.append(Token(key=key, display=key.replace(" ", "-")))
        toks = _absorb_function_words(toks, language, lexicon)
        if toks:
            sentences.append(toks)
    return CorpusDoc(language=language, sentences=sentences)


def _merge_phrases(words, pairs):
    """Collapse multiword phrase occurrences, longest phrase first.

    Returns (surface, was_phrase) pairs where phrase hits carry their
    canonical form.
    """
    out = []
    i = 0
    lowered = [w.lower() for w in words]
    while i < len(words):
        hit = None
        for phrase, canonical in pairs:
            parts = phrase.lower().split()
            if len(parts) > 1 and lowered[i:i + len(parts)] == parts:
                hit = (canonical, len(parts))
                break
        if hit is not None:
            out.append((hit[0], True))
            i += hit[1]
        else:
            out.append((words[i], False))
            i += 1
    return out


def _absorb_function_words(tokens, language, lexicon):
    if lexicon is None:
        return tokens
    out = []
    pending_prefix = []
    for tok in tokens:
        cats = lexicon.categories_of(tok.key, language)
        if "determiner" in cats:
            continue
        if "particle" in cats:
            pending_prefix.append(tok.display)
            continue
        if pending_prefix:
            display = "-".join(pending_prefix + [tok.display])
            tok = Token(key=tok.key, display=display)
            pending_prefix = []
        out.append(tok)
    # a trailing particle with nothing to attach to is kept as-is
    for p in pending_prefix:
        out.append(Token(key=p, display=p))
    return out


@dataclass
class CooccurrenceTable:
    basis: list[str]
    counts: dict[str, list[int]] = field(default_factory=dict)

    def vector(self, key: str) -> list[int]:
        return self.counts.get(key.lower(), [0] * len(self.basis))

    def merge(self, other: "CooccurrenceTable") -> "CooccurrenceTable":
        if other.basis != self.basis:
            raise CorpusError("cannot merge tables over different bases")
        merged = {k: list(v) for k, v in self.counts.items()}
        for k, v in other.counts.items():
            if k in merged:
                merged[k] = [a + b for a, b in zip(merged[k], v)]
            else:
                merged[k] = list(v)
        return CooccurrenceTable(basis=list(self.basis), counts=merged)


def window_counts(doc: CorpusDoc, basis: list[str], m: int = 3,
                  adjective_args=None, lexicon=None) -> CooccurrenceTable:
    """Windowed co-occurrence counts against the basis.

    The coordinate of a noun K for a plain basis word B is the number of
    occurrences of B within m merged tokens of an occurrence of K, never
    crossing a sentence boundary.  A basis label of the form ``arg-A`` counts
    occurrences of K within m tokens of a noun modified by the adjective A in
    the same sentence (adjective-noun adjacency for English, noun-adjective
    for Irish).  Basis words themselves map to unit coordinate vectors.
    """
    if not basis:
        raise CorpusError("empty basis")
    if m < 1:
        raise CorpusError("window radius must be >= 1")
    adjective_args = list(adjective_args or [])
    for label in basis:
        if label.startswith("arg-") and label[4:] not in adjective_args:
            adjective_args.append(label[4:])

    basis_low = [b.lower() for b in basis]
    table: dict[str, list[int]] = {}

    def bump(key, col, amount=1):
        row = table.setdefault(key, [0] * len(basis))
        row[col] += amount

    for sent in doc.sentences:
        keys = [t.key.lower() for t in sent]
        described = _described_positions(sent, adjective_args, doc.language, lexicon)
        for p, key in enumerate(keys):
            lo, hi = max(0, p - m), min(len(keys), p + m + 1)
            for col, blabel in enumerate(basis_low):
                if blabel.startswith("arg-"):
                    adj = blabel[4:]
                    hits = sum(1 for q in described.get(adj, ()) if lo <= q < hi)
                    if hits:
                        bump(key, col, hits)
                else:
                    hits = sum(1 for q in range(lo, hi) if q != p and keys[q] == blabel)
                    if hits:
                        bump(key, col, hits)

    for col, b in enumerate(basis_low):
        table[b] = [1 if c == col else 0 for c in range(len(basis))]
    return CooccurrenceTable(basis=list(basis), counts=table)


def _described_positions(sent, adjectives, language, lexicon):
    """Positions of nouns modified by each adjective, via adjacency."""
    out: dict[str, list[int]] = {}
    adjset = {a.lower() for a in adjectives}
    keys = [t.key.lower() for t in sent]

    def nounish(idx):
        if not 0 <= idx < len(sent):
            return False
        if lexicon is None:
            return True
        cats = lexicon.categories_of(sent[idx].key, language)
        return not cats or "noun" in cats

    for i, key in enumerate(keys):
        if key not in adjset:
            continue
        target = i + 1 if language == "en" else i - 1
        if nounish(target):
            out.setdefault(key, []).append(target)
    return out
