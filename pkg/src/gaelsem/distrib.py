"""Distributional model: word vectors, verb matrices, sentence evaluation.

Sentence meanings live in S = N (x) N over a five-word noun basis and are
stored sparsely as {(i, j): coefficient} with 1-based indices, mirroring how
results like 320 n2 (x) n1 + 32 n2 (x) n2 are written.  All arithmetic is
exact (integers and fractions); scores are only converted to decimal at the
printing boundary.

Evaluation follows the compositional rules validated against every worked
example in scope:

  (a) an adjective multiplies its noun pointwise;
  (b) a preposition phrase multiplies the noun it modifies pointwise by the
      prepositional object's own noun vector;
  (c) a relative clause "H who VERB O" yields H_k * (V @ o)_k with V the
      verb matrix in subject-object orientation (for Irish verb-object
      clauses this is the transpose of the stored matrix);
  (d) a main transitive or copular clause yields sum_ij subj_i obj_j V_ij
      n_i (x) n_j, subject and object resolved from the word-order
      convention (English SVO, Irish VSO, Irish copula VOS);
  (e) adverbs act as the identity on S.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from .corpus import CorpusDoc, window_counts
from .lexicon import ParsedSentence
from .pregroup import SimpleType

BASIS_SIZE = 5


class ModelError(Exception):
    pass


class EvaluationError(Exception):
    def __init__(self, word, detail="no vector in model"):
        self.word = word
        super().__init__("cannot evaluate %r: %s" % (word, detail))


Vector = list  # length-5 list of int/Fraction


@dataclass
class VerbMatrix:
    """5x5 relational matrix; rows index the first tensor slot.

    orientation 'subject-object' means rows are subject coordinates (the
    English convention and the Irish copula); 'object-subject' is the stored
    layout for Irish transitive verbs, whose matrices are built as
    sum object (x) subject.
    """
    entries: list[list]
    orientation: str = "subject-object"

    def __post_init__(self):
        if self.orientation not in ("subject-object", "object-subject"):
            raise ModelError("bad orientation %r" % self.orientation)
        if len(self.entries) != BASIS_SIZE or any(len(r) != BASIS_SIZE for r in self.entries):
            raise ModelError("verb matrix must be 5x5")

    def normalized(self) -> list[list]:
        """Entries with rows = subject, columns = object."""
        if self.orientation == "subject-object":
            return [list(r) for r in self.entries]
        return [[self.entries[j][i] for j in range(BASIS_SIZE)] for i in range(BASIS_SIZE)]


@dataclass
class SentenceMeaning:
    """Sparse element of S = N (x) N; zero coefficients are never stored."""
    coeffs: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if v != 0}

    def inner(self, other: "SentenceMeaning"):
        return sum((c * other.coeffs.get(k, 0) for k, c in self.coeffs.items()), 0)

    def length(self):
        """The self inner product <m|m> (the squared norm)."""
        return sum((c * c for c in self.coeffs.values()), 0)

    def is_zero(self):
        return not self.coeffs

    def scaled(self, factor):
        return SentenceMeaning({k: c * factor for k, c in self.coeffs.items()})

    def as_dict(self):
        return dict(sorted(self.coeffs.items()))


def similarity(m1: SentenceMeaning, m2: SentenceMeaning) -> float:
    """Inner product over the geometric mean of lengths, in [0, 1]."""
    ip = m1.inner(m2)
    if ip == 0 or m1.is_zero() or m2.is_zero():
        return 0.0
    denom = m1.length() * m2.length()
    return float(ip) / float(denom) ** 0.5


def score_string(m1: SentenceMeaning, m2: SentenceMeaning, places: int = 2) -> str:
    """Similarity rendered the way the reference tables print it.

    Round half-up to ``places`` decimals, except that a score strictly below
    one never rounds up to 1: near-translations print as 0.99 (or 0.999 at
    three places) rather than masquerading as exact matches.
    """
    ip = Fraction(m1.inner(m2))
    if ip == 0:
        return "0"
    denom = Fraction(m1.length() * m2.length())
    with localcontext() as ctx:
        ctx.prec = 60
        value = (Decimal(ip.numerator) / Decimal(ip.denominator)) / (
            Decimal(denom.numerator) / Decimal(denom.denominator)).sqrt()
        quantum = Decimal(10) ** -places
        rounded = value.quantize(quantum, rounding=ROUND_HALF_UP)
        if rounded == 1 and value < 1:
            rounded = value.quantize(quantum, rounding=ROUND_DOWN)
    if rounded == rounded.to_integral():
        return str(rounded.to_integral())
    return str(rounded)


@dataclass
class DistribModel:
    language: str
    basis: list[str]
    nouns: dict[str, Vector] = field(default_factory=dict)
    verbs: dict[str, VerbMatrix] = field(default_factory=dict)
    adjectives: dict[str, Vector] = field(default_factory=dict)
    pp_heads: dict[str, Vector] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.basis) != BASIS_SIZE:
            raise ModelError("basis must have exactly %d labels" % BASIS_SIZE)

    def noun_vector(self, key: str) -> Vector:
        vec = self.nouns.get(key) or self.nouns.get(key.lower()) or self._ci(self.nouns, key)
        if vec is None:
            raise EvaluationError(key)
        return vec

    def adjective_vector(self, key: str) -> Vector:
        vec = self.adjectives.get(key) or self._ci(self.adjectives, key)
        if vec is None:
            raise EvaluationError(key, "no adjective vector in model")
        return vec

    def verb_matrix(self, key: str) -> VerbMatrix:
        mat = self.verbs.get(key) or self._ci(self.verbs, key)
        if mat is None:
            raise EvaluationError(key, "no verb matrix in model")
        return mat

    @staticmethod
    def _ci(table, key):
        low = key.lower()
        for k, v in table.items():
            if k.lower() == low:
                return v
        return None


def _parse_number(text):
    if "/" in text:
        return Fraction(text)
    return int(text) if text.lstrip("-").isdigit() else Fraction(text)


def _parse_vector(text) -> Vector:
    vec = [_parse_number(p) for p in text.split()]
    if len(vec) != BASIS_SIZE:
        raise ModelError("expected %d coordinates, got %r" % (BASIS_SIZE, text))
    return vec


def load_model(path) -> DistribModel:
    """Read the structured-text model format.

    Lines are ``kind key: value`` with kinds noun/adj/pp/verb, plus header
    lines ``language:`` and ``basis:`` (labels separated by ``|``).  Verb
    values are ``orientation | row / row / ...`` in row-major order.
    """
    language = None
    basis = None
    nouns, verbs, adjectives, pp_heads = {}, {}, {}, {}
    for raw in open(path, encoding="utf-8"):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, value = line.partition(":")
        value = value.strip()
        if head == "language":
            language = value
            continue
        if head == "basis":
            basis = [b.strip() for b in value.split("|")]
            continue
        kind, _, key = head.partition(" ")
        key = key.strip()
        if kind == "noun":
            nouns[key] = _parse_vector(value)
        elif kind == "adj":
            adjectives[key] = _parse_vector(value)
        elif kind == "pp":
            pp_heads[key] = _parse_vector(value)
        elif kind == "verb":
            orientation, _, rows = value.partition("|")
            entries = [_parse_vector(r) for r in rows.split("/")]
            verbs[key] = VerbMatrix(entries=entries, orientation=orientation.strip())
        else:
            raise ModelError("bad model line %r in %s" % (line, path))
    if language is None or basis is None:
        raise ModelError("model file %s missing language/basis header" % path)
    return DistribModel(language, basis, nouns, verbs, adjectives, pp_heads)


def save_model(model: DistribModel, path):
    def fmt(vec):
        return " ".join(str(v) for v in vec)

    with open(path, "w", encoding="utf-8") as fh:
        fh.write("language: %s\n" % model.language)
        fh.write("basis: %s\n\n" % " | ".join(model.basis))
        for key in sorted(model.nouns):
            fh.write("noun %s: %s\n" % (key, fmt(model.nouns[key])))
        for key in sorted(model.adjectives):
            fh.write("adj %s: %s\n" % (key, fmt(model.adjectives[key])))
        for key in sorted(model.pp_heads):
            fh.write("pp %s: %s\n" % (key, fmt(model.pp_heads[key])))
        for key in sorted(model.verbs):
            mat = model.verbs[key]
            rows = " / ".join(fmt(r) for r in mat.entries)
            fh.write("verb %s: %s | %s\n" % (key, mat.orientation, rows))


# ---------------------------------------------------------------------------
# evaluation


def evaluate(parsed: ParsedSentence, model: DistribModel) -> SentenceMeaning:
    """Evaluate an accepted parse to its sentence meaning."""
    ev = _Evaluator(parsed, model)
    return ev.run()


class _Evaluator:
    def __init__(self, parsed: ParsedSentence, model: DistribModel):
        self.tokens = parsed.tokens
        self.plan = parsed.plan
        self.model = model
        self.owner = {}
        for t, (start, end) in enumerate(self.plan.token_spans):
            for idx in range(start, end):
                self.owner[idx] = t

    def run(self) -> SentenceMeaning:
        verb_idx, s_idx = self._main_verb()
        tt = self.tokens[verb_idx]
        subj_wire, obj_wire = self._argument_wires(verb_idx, exclude=None)
        subj = self._value_of(subj_wire)
        obj = self._value_of(obj_wire)
        matrix = self.model.verb_matrix(tt.lemma).normalized()
        coeffs = {}
        for i in range(BASIS_SIZE):
            if subj[i] == 0:
                continue
            for j in range(BASIS_SIZE):
                c = subj[i] * obj[j] * matrix[i][j]
                if c != 0:
                    coeffs[(i + 1, j + 1)] = c
        return SentenceMeaning(coeffs)

    # -- structure ----------------------------------------------------

    def _simples(self, token_idx):
        start, end = self.plan.token_spans[token_idx]
        return list(range(start, end))

    def _main_verb(self):
        """Token owning the surviving s wire, walking back through adverbs."""
        surviving = None
        for idx in self.owner:
            st = self._type_at(idx)
            if st == SimpleType("s", 0) and self.plan.partner(idx) is None:
                surviving = idx
                break
        if surviving is None:
            raise EvaluationError("<sentence>", "plan has no surviving s wire")
        while self.tokens[self.owner[surviving]].category == "adverb":
            tok_idx = self.owner[surviving]
            sr = next(i for i in self._simples(tok_idx)
                      if self._type_at(i) == SimpleType("s", 1))
            surviving = self.plan.partner(sr)
        return self.owner[surviving], surviving

    def _type_at(self, idx):
        t = self.owner[idx]
        start, _ = self.plan.token_spans[t]
        return self.tokens[t].ptype[idx - start]

    def _argument_wires(self, verb_idx, exclude):
        """(subject wire, object wire) partners of a verb's noun slots.

        ``exclude`` names a slot simple already consumed by a relative
        pronoun; the remaining slot is then the clause's object and the
        subject comes from the pronoun's head (handled by the caller).
        """
        tt = self.tokens[verb_idx]
        slots = [i for i in self._simples(verb_idx)
                 if self._type_at(i) in (SimpleType("n", -1), SimpleType("n", 1))]
        if exclude is not None:
            others = [s for s in slots if s != exclude]
            if len(others) != 1:
                raise EvaluationError(tt.token.display, "relative clause verb shape")
            return None, self.plan.partner(others[0])
        if len(slots) != 2:
            raise EvaluationError(tt.token.display, "verb does not take two arguments")
        order = tt.argument_order or "svo"
        if order == "svo":
            # n^r is the subject slot, n^l the object slot
            subj_slot = next(s for s in slots if self._type_at(s).order == 1)
            obj_slot = next(s for s in slots if self._type_at(s).order == -1)
        else:
            # Irish verb types are s n^l n^l: the rightmost slot binds the
            # argument adjacent to the verb (subject under VSO, object under VOS)
            adjacent, distant = max(slots), min(slots)
            if order == "vso":
                subj_slot, obj_slot = adjacent, distant
            else:
                subj_slot, obj_slot = distant, adjacent
        return self.plan.partner(subj_slot), self.plan.partner(obj_slot)

    # -- values ---------------------------------------------------------

    def _value_of(self, wire):
        """Vector flowing through a noun wire, applying modifier chains."""
        if wire is None:
            raise EvaluationError("<missing>", "unbound argument wire")
        tok_idx = self.owner[wire]
        tt = self.tokens[tok_idx]
        if tt.category == "noun" or tt.role == "pp-object":
            return self.model.noun_vector(tt.lemma)
        if tt.category == "adjective" or tt.role == "pp-modifier":
            vec = (self.model.adjective_vector(tt.lemma) if tt.category == "adjective"
                   else self.model.noun_vector(tt.lemma))
            inward = next(i for i in self._simples(tok_idx)
                          if self._type_at(i).order in (-1, 1) and i != wire)
            inner = self._value_of(self.plan.partner(inward))
            return [a * b for a, b in zip(vec, inner)]
        if tt.category.startswith("relative-pronoun"):
            return self._relative_clause_value(tok_idx)
        raise EvaluationError(tt.token.display, "not a noun-valued token")

    def _relative_clause_value(self, tok_idx):
        """Rule (c): head pointwise times the verb matrix applied to the object."""
        tt = self.tokens[tok_idx]
        simples = self._simples(tok_idx)
        head_wire = self.plan.partner(
            next(i for i in simples if self._type_at(i) == SimpleType("n", 1)))
        s_wire = self.plan.partner(
            next(i for i in simples if self._type_at(i) == SimpleType("s", -1)))
        subj_hook = next(i for i in simples
                         if self._type_at(i) in (SimpleType("n", 0), SimpleType("n", -2))
                         and self.plan.partner(i) is not None
                         and self.owner[self.plan.partner(i)] == self.owner[s_wire])
        verb_idx = self.owner[s_wire]
        verb_tt = self.tokens[verb_idx]
        _, obj_wire = self._argument_wires(verb_idx, exclude=self.plan.partner(subj_hook))
        head = self._value_of(head_wire)
        obj = self._value_of(obj_wire)
        matrix = self.model.verb_matrix(verb_tt.lemma).normalized()
        applied = [sum(matrix[k][j] * obj[j] for j in range(BASIS_SIZE))
                   for k in range(BASIS_SIZE)]
        return [h * a for h, a in zip(head, applied)]


# ---------------------------------------------------------------------------
# corpus-derived builders (diagnostic path; fixture models are authoritative)


def build_noun_vectors(doc: CorpusDoc, basis, m=3, lexicon=None) -> dict[str, Vector]:
    table = window_counts(doc, basis, m=m, lexicon=lexicon)
    return {k: list(v) for k, v in table.counts.items()}


def build_verb_matrix(doc: CorpusDoc, verb_lemma, nouns: dict[str, Vector],
                      orientation="subject-object", argument_order="svo",
                      lexicon=None) -> VerbMatrix:
    """Sum subject (x) object over heuristically extracted transitive uses.

    Occurrences without both a subject and an object noun in the sentence are
    skipped (the "transitive use" restriction).  Returns the zero matrix when
    the verb never occurs transitively.
    """
    entries = [[0] * BASIS_SIZE for _ in range(BASIS_SIZE)]
    hit = False
    for sent in doc.sentences:
        keys = [t.key.lower() for t in sent]
        for p, key in enumerate(keys):
            if key != verb_lemma.lower():
                continue
            args = _extract_arguments(sent, p, argument_order, nouns, doc.language, lexicon)
            if args is None:
                continue
            subj, obj = args
            hit = True
            sv, ov = nouns[subj], nouns[obj]
            for i in range(BASIS_SIZE):
                for j in range(BASIS_SIZE):
                    if orientation == "subject-object":
                        entries[i][j] += sv[i] * ov[j]
                    else:
                        entries[i][j] += ov[i] * sv[j]
    if not hit:
        import warnings

        warnings.warn("verb %r has no transitive occurrence; zero matrix" % verb_lemma)
    return VerbMatrix(entries=entries, orientation=orientation)


def _extract_arguments(sent, p, argument_order, nouns, language, lexicon):
    def is_known_noun(tok):
        if tok.key.lower() not in {k.lower() for k in nouns}:
            return False
        if lexicon is None:
            return True
        cats = lexicon.categories_of(tok.key, language)
        return not cats or "noun" in cats

    left = [i for i in range(p - 1, -1, -1) if is_known_noun(sent[i])]
    right = [i for i in range(p + 1, len(sent)) if is_known_noun(sent[i])]
    if argument_order == "svo":
        if not left or not right:
            return None
        return sent[left[0]].key.lower(), sent[right[0]].key.lower()
    if len(right) < 2:
        return None
    first, second = sent[right[0]].key.lower(), sent[right[1]].key.lower()
    return (first, second) if argument_order == "vso" else (second, first)


def build_adjective_vector(doc: CorpusDoc, adjective, nouns: dict[str, Vector],
                           lexicon=None) -> Vector:
    """Sum of the vectors of the nouns the adjective modifies (adjacency)."""
    total = [0] * BASIS_SIZE
    adj = adjective.lower()
    for sent in doc.sentences:
        keys = [t.key.lower() for t in sent]
        for i, key in enumerate(keys):
            if key != adj:
                continue
            target = i + 1 if doc.language == "en" else i - 1
            if 0 <= target < len(keys) and keys[target] in nouns:
                total = [a + b for a, b in zip(total, nouns[keys[target]])]
    return total


def build_pp_vector(doc: CorpusDoc, prep, target, nouns: dict[str, Vector]) -> Vector:
    """Sum of the vectors of nouns modified by ``prep target`` phrases."""
    total = [0] * BASIS_SIZE
    for sent in doc.sentences:
        keys = [t.key.lower() for t in sent]
        for i in range(len(keys) - 1):
            if keys[i] == prep.lower() and keys[i + 1] == target.lower():
                left = [q for q in range(i - 1, -1, -1) if keys[q] in nouns]
                if left:
                    total = [a + b for a, b in zip(total, nouns[keys[left[0]]])]
    return total
