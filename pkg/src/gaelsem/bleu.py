"""Sentence BLEU with brevity penalty and Chen-Cherry smoothing method 7.

The score is BP * exp(sum_{n=1..4} log(p_n)/4) over clipped n-gram
precisions.  Without smoothing any zero p_n collapses the score to 0; method
7 avoids that by first substituting 1/(i + K/ln|C|) for each zero-count p_n
(method 4, K = 5, i the 0-based order index) and then averaging each p_n
with its neighbours, seeded by p_1 + 1 below and the raw 5-gram precision
above (method 5).  Smoothed precisions can exceed one on near-identical
pairs, so the reported score is clamped into [0, 1]; the raw value is kept
on the report for conformance checks.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

SMOOTHING_K = 5
_PUNCT = re.compile(r"[\"“”‘’,.():;!?]")


class BleuError(Exception):
    pass


def tokenize(text: str, merges: Sequence[str] = ()) -> list[str]:
    """Lowercase, strip punctuation, and merge listed multiword names."""
    words = _PUNCT.sub(" ", text).split()
    merged = []
    i = 0
    spans = sorted((m.lower().split() for m in merges), key=len, reverse=True)
    lowered = [w.lower() for w in words]
    while i < len(words):
        hit = None
        for parts in spans:
            if len(parts) > 1 and lowered[i:i + len(parts)] == parts:
                hit = parts
                break
        if hit:
            merged.append("-".join(hit))
            i += len(hit)
        else:
            merged.append(lowered[i])
            i += 1
    return merged


def ngrams(tokens: Sequence[str], n: int) -> list[tuple]:
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def precision_counts(reference: Sequence[str], candidate: Sequence[str], n: int):
    """(clipped matches, total candidate n-grams), total floored at 1."""
    if not candidate:
        raise BleuError("empty candidate sentence")
    if n < 1:
        raise BleuError("n must be >= 1")
    cand_counts = Counter(ngrams(candidate, n))
    ref_counts = Counter(ngrams(reference, n))
    clipped = sum(min(c, ref_counts[g]) for g, c in cand_counts.items())
    return clipped, max(1, sum(cand_counts.values()))


def modified_precision(reference: Sequence[str], candidate: Sequence[str], n: int) -> Fraction:
    """Clipped n-gram precision; an empty n-gram bag counts as 0."""
    clipped, total = precision_counts(reference, candidate, n)
    return Fraction(clipped, total)


def brevity_penalty(reference: Sequence[str], candidate: Sequence[str]) -> float:
    """exp(1 - |R|/|C|) when the candidate is no longer than the reference."""
    r, c = len(reference), len(candidate)
    if c == 0:
        raise BleuError("empty candidate sentence")
    return math.exp(1 - r / c) if c <= r else 1.0


def smooth_method7(p_n: Sequence[Fraction], reference, candidate) -> list[float]:
    """Chen-Cherry method 7: zero-count substitution then neighbour averaging."""
    hyp_len = len(candidate)
    filled = []
    for i, p in enumerate(p_n):
        if p.numerator == 0 and hyp_len > 1:
            filled.append(1.0 / (i + SMOOTHING_K / math.log(hyp_len)))
        else:
            filled.append(float(p))
    p5 = float(modified_precision(reference, candidate, 5))
    window = filled + [p5]
    smoothed = []
    below = filled[0] + 1
    for i in range(len(filled)):
        value = (below + window[i] + window[i + 1]) / 3
        smoothed.append(value)
        below = value
    return smoothed


@dataclass
class BleuReport:
    precisions: list[Fraction]
    counts: list[tuple[int, int]]
    smoothed: list[float]
    bp: float
    score: float
    raw_score: float
    smoothing: str
    tokenization: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "p_n": ["%d/%d" % pair for pair in self.counts],
            "smoothed_p_n": [round(p, 12) for p in self.smoothed],
            "brevity_penalty": round(self.bp, 12),
            "score": round(self.score, 12),
            "raw_score": round(self.raw_score, 12),
            "smoothing": self.smoothing,
            "tokenization": self.tokenization,
        }


def bleu_report(reference: Sequence[str], candidate: Sequence[str],
                smoothing: str = "method7") -> BleuReport:
    if smoothing not in ("none", "method7"):
        raise BleuError("unknown smoothing %r" % smoothing)
    if not candidate:
        raise BleuError("empty candidate sentence")
    counts = [precision_counts(reference, candidate, n) for n in range(1, 5)]
    p_n = [Fraction(c, t) for c, t in counts]
    bp = brevity_penalty(reference, candidate)
    if smoothing == "none":
        smoothed = [float(p) for p in p_n]
    else:
        smoothed = smooth_method7(p_n, reference, candidate)
    if any(p <= 0 for p in smoothed):
        raw = 0.0
    else:
        raw = bp * math.exp(sum(math.log(p) for p in smoothed) / 4)
    return BleuReport(
        precisions=p_n,
        counts=counts,
        smoothed=smoothed,
        bp=bp,
        score=min(1.0, raw),
        raw_score=raw,
        smoothing=smoothing,
    )


def bleu(reference: Sequence[str], candidate: Sequence[str],
         smoothing: str = "method7") -> float:
    return bleu_report(reference, candidate, smoothing).score
