"""Bilingual lexicon: word categories, type assignment, sentence parsing.

The lexicon drives everything the grammar knows about words.  Each entry
carries a surface form, a language, a category and (implicitly through the
category, or explicitly) a pregroup type.  Word order conventions live here
too: English verbs are subject-verb-object, Irish transitive verbs are
verb-subject-object, and the Irish copula is verb-object-subject.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .corpus import Token
from .pregroup import (
    NotASentenceError,
    ReductionPlan,
    SimpleType,
    format_type,
    parse_type,
    reduce_types,
)


class LexiconError(Exception):
    pass


class LookupError_(LexiconError):
    def __init__(self, token, language):
        self.token = token
        super().__init__("no lexicon entry for %r (%s)" % (token, language))


class AmbiguityError(LexiconError):
    def __init__(self, token, candidates):
        self.token = token
        self.candidates = candidates
        cats = ", ".join(e.category for e in candidates)
        super().__init__("ambiguous token %r (candidates: %s)" % (token, cats))


#: category -> (type string, argument order) per language; None means the
#: token is absorbed during preprocessing and never reaches type assignment.
DEFAULT_TYPES = {
    "en": {
        "noun": ("n", None),
        "transitive-verb": ("nr s nl", "svo"),
        "copula": ("nr s nl", "svo"),
        "adjective": ("n nl", None),
        "adverb": ("sr s", None),
        "relative-pronoun-subject": ("nr n sl n", None),
        "relative-pronoun-object": ("nr n nll sl", None),
        "preposition-phrase-head": (None, None),
        "determiner": (None, None),
        "particle": (None, None),
    },
    "ga": {
        "noun": ("n", None),
        "transitive-verb": ("s nl nl", "vso"),
        "copula": ("s nl nl", "vos"),
        "adjective": ("nr n", None),
        "adverb": ("sr s", None),
        "relative-pronoun-subject": ("nr n nll sl", None),
        "relative-pronoun-object": ("nr n nll sl", None),
        "preposition-phrase-head": (None, None),
        "determiner": (None, None),
        "particle": (None, None),
    },
}

PP_MODIFIER_TYPE = {"en": "nr n", "ga": "nr n"}


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    language: str
    category: str
    ptype: Optional[tuple[SimpleType, ...]]
    lemma: str
    argument_order: Optional[str]


class Lexicon:
    def __init__(self, entries: Sequence[LexiconEntry] = ()):
        self._by_surface: dict[tuple[str, str], list[LexiconEntry]] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: LexiconEntry):
        self._by_surface.setdefault((entry.surface.lower(), entry.language), []).append(entry)

    def lookup(self, surface: str, language: str) -> list[LexiconEntry]:
        return self._by_surface.get((surface.lower(), language), [])

    def categories_of(self, surface: str, language: str) -> set[str]:
        return {e.category for e in self.lookup(surface, language)}

    def entries(self):
        for group in self._by_surface.values():
            yield from group


def load_lexicon(*paths) -> Lexicon:
    """Read blank-line separated key-value records.

    Recognised keys: surface, language, category, type, lemma, order.  The
    type defaults from the category and language; lemma defaults to the
    surface form.
    """
    lex = Lexicon()
    for path in paths:
        record: dict[str, str] = {}
        with open(path, encoding="utf-8") as fh:
            lines = list(fh) + ["\n"]
        for line in lines:
            line = line.rstrip("\n")
            if line.strip().startswith("#"):
                continue
            if line.strip():
                if ":" not in line:
                    raise LexiconError("bad lexicon line %r in %s" % (line, path))
                key, value = line.split(":", 1)
                record[key.strip()] = value.strip()
                continue
            if record:
                lex.add(_entry_from_record(record, path))
                record = {}
    return lex


def _entry_from_record(record, path):
    try:
        surface = record["surface"]
        language = record["language"]
        category = record["category"]
    except KeyError as missing:
        raise LexiconError("lexicon record missing %s in %s: %r" % (missing, path, record))
    if category not in DEFAULT_TYPES[language]:
        raise LexiconError("unknown category %r for %r" % (category, surface))
    type_string, default_order = DEFAULT_TYPES[language][category]
    if "type" in record:
        type_string = record["type"]
    ptype = parse_type(type_string) if type_string else None
    return LexiconEntry(
        surface=surface,
        language=language,
        category=category,
        ptype=ptype,
        lemma=record.get("lemma", surface),
        argument_order=record.get("order", default_order),
    )


@dataclass(frozen=True)
class TypedToken:
    token: Token
    category: str
    ptype: tuple[SimpleType, ...]
    lemma: str
    argument_order: Optional[str] = None
    role: str = "word"  # word | pp-modifier | pp-object

    def __str__(self):
        return "%s : %s" % (self.token.display, format_type(self.ptype))


def merge_prepositions(tokens: Sequence[Token], language: str, lexicon: Lexicon) -> list[Token]:
    """Fold preposition heads into the noun token that follows them.

    A preposition directly before a noun becomes a single token keyed by the
    noun (the grammar later decides whether it modifies a preceding noun or
    case-marks a verb argument).  In English the preposition may instead sit
    before a pre-nominal adjective; there it is a pure case marker and is
    dropped, leaving the noun phrase to fill the argument slot itself.
    """
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        cats = lexicon.categories_of(tok.key, language)
        if "preposition-phrase-head" in cats and i + 1 < len(tokens):
            nxt = tokens[i + 1]
            next_cats = lexicon.categories_of(nxt.key, language)
            if "noun" in next_cats:
                out.append(Token(key=nxt.key, display=tok.display + "-" + nxt.display,
                                 prep=tok.key))
                i += 2
                continue
            if language == "en" and "adjective" in next_cats:
                i += 1
                continue
        out.append(tok)
        i += 1
    return out


def assign_types(tokens: Sequence[Token], language: str, lexicon: Lexicon,
                 hints: Optional[dict[int, str]] = None) -> list[TypedToken]:
    """Pair each merged token with its pregroup type.

    Preposition-led tokens get their canonical noun-modifier typing n^r n.
    A token with several lexicon entries needs a category hint; without one
    this raises AmbiguityError (parse_sentence resolves such cases by search).
    """
    hints = hints or {}
    out = []
    for i, tok in enumerate(tokens):
        candidates = token_candidates(tok, language, lexicon)
        if not candidates:
            raise LookupError_(tok.display, language)
        if i in hints:
            candidates = [c for c in candidates if c.category == hints[i]]
            if not candidates:
                raise LookupError_("%s (as %s)" % (tok.display, hints[i]), language)
        if (tok.prep is None and len(candidates) > 1
                and len({c.ptype for c in candidates}) > 1):
            raise AmbiguityError(tok.display, candidates)
        # preposition-led tokens take their canonical modifier typing here;
        # parse_sentence explores the case-marker reading when needed
        out.append(candidates[0])
    return out


def token_candidates(tok: Token, language: str, lexicon: Lexicon) -> list[TypedToken]:
    """All plausible typings of one token, canonical reading first."""
    if tok.prep is not None:
        noun = lexicon.lookup(tok.key, language)
        lemma = noun[0].lemma if noun else tok.key
        return [
            TypedToken(tok, "preposition-phrase", parse_type(PP_MODIFIER_TYPE[language]),
                       lemma, role="pp-modifier"),
            TypedToken(tok, "preposition-phrase", parse_type("n"), lemma, role="pp-object"),
        ]
    cands = []
    for e in lexicon.lookup(tok.key, language):
        if e.ptype is None:
            continue
        cands.append(TypedToken(tok, e.category, e.ptype, e.lemma, e.argument_order))
    return cands


@dataclass
class ParsedSentence:
    tokens: list[TypedToken]
    plan: ReductionPlan

    def type_strings(self):
        return [format_type(t.ptype) for t in self.tokens]


def parse_sentence(tokens: Sequence[Token], language: str, lexicon: Lexicon) -> ParsedSentence:
    """Find a typing of the token sequence that reduces to the sentence type.

    Tries every combination of candidate typings (canonical readings first)
    and returns the first plan reducing to [s]; relative-pronoun copy and
    unit nodes are recorded on the winning plan.  Raises NotASentenceError
    with the shortest residual seen across all typings.
    """
    merged = merge_prepositions(tokens, language, lexicon)
    per_token = []
    for tok in merged:
        cands = token_candidates(tok, language, lexicon)
        if not cands:
            raise LookupError_(tok.display, language)
        per_token.append(cands)

    best_residual = None
    for combo in itertools.product(*per_token):
        try:
            plan = reduce_types([tt.ptype for tt in combo])
        except NotASentenceError as err:
            if best_residual is None or len(err.residual) < len(best_residual):
                best_residual = err.residual
            continue
        _record_frobenius_nodes(list(combo), plan)
        return ParsedSentence(tokens=list(combo), plan=plan)
    raise NotASentenceError(best_residual if best_residual is not None else ())


def _record_frobenius_nodes(tokens: list[TypedToken], plan: ReductionPlan):
    """Mark the head-noun copy and discarded-s wires of relative pronouns."""
    for idx, tt in enumerate(tokens):
        if not tt.category.startswith("relative-pronoun"):
            continue
        start, _ = plan.token_spans[idx]
        for offset, st in enumerate(tt.ptype):
            partner = plan.partner(start + offset)
            if partner is None:
                continue
            if st == SimpleType("n", 1):
                plan.copy_nodes.append(partner)
            if st == SimpleType("s", -1):
                plan.unit_nodes.append(partner)
