"""Pregroup types and the reduction search.

A word's grammatical type is a sequence of simple types.  A simple type is a
basic type together with an integer adjoint order z: z = 0 is the plain type,
z = -1 the left adjoint (written n^l), z = +1 the right adjoint (n^r),
z = -2 the double left adjoint (n^ll), and so on.  The only rewrite move is
the contraction x^z x^(z+1) -> 1 on adjacent simple types; a token string is
a sentence when its concatenated type rewrites to the single simple type s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

BASIC_TAGS = ("n", "s", "j", "sigma")

#: Adjoint orders used by the lexicon never leave this window; the deepest
#: type in scope is the n^ll wire of the object relative pronoun.
MIN_ORDER, MAX_ORDER = -2, 2


class PregroupError(Exception):
    """Base class for grammar errors."""


class OutOfScopeTypeError(PregroupError):
    """An adjoint order left the supported [-2, +2] window."""


class TypeSyntaxError(PregroupError):
    """A type string could not be parsed."""


class NotASentenceError(PregroupError):
    """No reduction of the type sequence to [s] exists."""

    def __init__(self, residual):
        self.residual = tuple(residual)
        super().__init__(
            "no reduction to [s]; best residual type: %s" % format_type(self.residual)
        )


class SimpleType(NamedTuple):
    base: str
    order: int

    def __str__(self):
        if self.order == 0:
            return self.base
        suffix = ("l" if self.order < 0 else "r") * abs(self.order)
        return "%s^%s" % (self.base, suffix)


def simple(base: str, order: int = 0) -> SimpleType:
    if base not in BASIC_TAGS:
        raise TypeSyntaxError("unknown basic type %r (expected one of %s)" % (base, ", ".join(BASIC_TAGS)))
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise OutOfScopeTypeError("adjoint order %d outside [%d, %d]" % (order, MIN_ORDER, MAX_ORDER))
    return SimpleType(base, order)


def parse_type(text: str) -> tuple[SimpleType, ...]:
    """Parse a space-separated type string such as ``"s nl nl"`` or ``"n^r n"``.

    Each token is a basic tag followed by an optional adjoint suffix made of
    ``l``s or ``r``s (mixing the two is a syntax error).
    """
    simples = []
    for tok in text.split():
        tok = tok.replace("^", "")
        tag = None
        for basic in sorted(BASIC_TAGS, key=len, reverse=True):
            if tok.startswith(basic):
                tag = basic
                break
        if tag is None:
            raise TypeSyntaxError("cannot parse simple type %r" % tok)
        suffix = tok[len(tag):]
        if suffix and set(suffix) not in ({"l"}, {"r"}):
            raise TypeSyntaxError("bad adjoint suffix %r in %r" % (suffix, tok))
        order = -len(suffix) if suffix.startswith("l") else len(suffix)
        simples.append(simple(tag, order))
    if not simples:
        raise TypeSyntaxError("empty type string")
    return tuple(simples)


def format_type(ptype: Sequence[SimpleType]) -> str:
    if not ptype:
        return "1"
    return " ".join(str(st) for st in ptype)


def adjoint(ptype: Sequence[SimpleType], side: str) -> tuple[SimpleType, ...]:
    """Left or right adjoint of a type: reverse the sequence and shift orders.

    The left adjoint shifts every order by -1 and the right adjoint by +1,
    so that (a b)^l = b^l a^l and taking left then right adjoint round-trips.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    delta = -1 if side == "left" else 1
    return tuple(simple(st.base, st.order + delta) for st in reversed(ptype))


SENTENCE = (simple("s", 0),)


@dataclass
class ReductionPlan:
    """A witness that a type sequence reduces to s.

    ``pairings`` lists contracted wire pairs as indices into the concatenated
    simple-type sequence.  ``copy_nodes`` marks head-noun wires duplicated by
    a relative pronoun (one per pronoun) and ``unit_nodes`` marks the embedded
    sentence wires it discards.  ``token_spans`` gives each token's slice of
    the concatenated sequence, which the evaluator uses to map wires back to
    words.
    """
    pairings: list[tuple[int, int]]
    result_type: tuple[SimpleType, ...]
    token_spans: list[tuple[int, int]] = field(default_factory=list)
    copy_nodes: list[int] = field(default_factory=list)
    unit_nodes: list[int] = field(default_factory=list)

    def partner(self, index: int) -> Optional[int]:
        for a, b in self.pairings:
            if a == index:
                return b
            if b == index:
                return a
        return None


def _cancels(left: SimpleType, right: SimpleType) -> bool:
    return left.base == right.base and right.order == left.order + 1


def reduce_types(types: Sequence[Sequence[SimpleType]]) -> ReductionPlan:
    """Search for a planar contraction sequence taking ``types`` to [s].

    The search is leftmost-first depth-first with backtracking and
    memoisation of failed states; ties prefer the pairing with the smaller
    left index, which makes the returned plan deterministic.  Raises
    NotASentenceError carrying the shortest residual reached when no
    reduction to [s] exists.
    """
    if not types:
        raise NotASentenceError(())
    simples: list[SimpleType] = []
    spans = []
    for t in types:
        start = len(simples)
        simples.extend(t)
        spans.append((start, len(simples)))

    pairings, residual = _search(simples, target_s=True)
    if pairings is None:
        raise NotASentenceError(residual)
    return ReductionPlan(pairings=pairings, result_type=SENTENCE, token_spans=spans)


def normal_form(types: Sequence[Sequence[SimpleType]]):
    """Fully contract ``types``; returns (pairings, residual simple types).

    Unlike reduce_types this does not require the residual to be [s]; it is
    the leftmost-first greedy normal form used for diagnostics.
    """
    simples = [st for t in types for st in t]
    alive = list(range(len(simples)))
    pairings = []
    changed = True
    while changed:
        changed = False
        for k in range(len(alive) - 1):
            a, b = alive[k], alive[k + 1]
            if _cancels(simples[a], simples[b]):
                pairings.append((a, b))
                del alive[k:k + 2]
                changed = True
                break
    return pairings, tuple(simples[i] for i in alive)


def _search(simples, target_s):
    """DFS over adjacent contractions; returns (pairings or None, best residual)."""
    n = len(simples)
    if n > 64:
        raise PregroupError("type sequence too long (%d simple types)" % n)

    def is_sentence(alive):
        return len(alive) == 1 and simples[alive[0]] == SimpleType("s", 0)

    failed = set()
    best = {"residual": None}

    def note_residual(alive):
        res = tuple(simples[i] for i in alive)
        if best["residual"] is None or len(res) < len(best["residual"]):
            best["residual"] = res

    def dfs(alive, trail):
        if target_s and is_sentence(alive):
            return True
        if alive in failed:
            return False
        moves = [
            k for k in range(len(alive) - 1)
            if _cancels(simples[alive[k]], simples[alive[k + 1]])
        ]
        if not moves:
            note_residual(alive)
            failed.add(alive)
            return False
        for k in moves:
            pair = (alive[k], alive[k + 1])
            trail.append(pair)
            if dfs(alive[:k] + alive[k + 2:], trail):
                return True
            trail.pop()
        note_residual(alive)
        failed.add(alive)
        return False

    trail: list[tuple[int, int]] = []
    ok = dfs(tuple(range(n)), trail)
    if ok:
        return trail, ()
    residual = best["residual"] if best["residual"] is not None else tuple(simples)
    return None, residual


def check_plan(types: Sequence[Sequence[SimpleType]], plan: ReductionPlan) -> bool:
    """Replay a plan's pairings as literal rewrites; True iff they are sound.

    Soundness means every pairing contracts an adjacent x^z x^(z+1) pair at
    the moment it is applied and the survivors equal the plan's result type.
    """
    simples = [st for t in types for st in t]
    alive = list(range(len(simples)))
    for a, b in plan.pairings:
        if a not in alive or b not in alive:
            return False
        ia = alive.index(a)
        if ia + 1 >= len(alive) or alive[ia + 1] != b:
            return False
        if not _cancels(simples[a], simples[b]):
            return False
        del alive[ia:ia + 2]
    return tuple(simples[i] for i in alive) == tuple(plan.result_type)


def is_planar(pairings: Sequence[tuple[int, int]]) -> bool:
    """No two pairings (i,j), (k,l) may interleave as i < k < j < l."""
    norm = [tuple(sorted(p)) for p in pairings]
    for x, (i, j) in enumerate(norm):
        for k, l in norm[x + 1:]:
            if i < k < j < l or k < i < l < j:
                return False
    return True
