"""Global alignment scores as strong partial (n-)metrics.

Scores are costs to be minimized: a column holding the same letter twice
costs ``alpha`` (a Match), two different letters cost ``beta`` (a Mismatch),
a letter against a gap costs ``gamma`` (an InDel) and a gap against a gap
costs nothing (a Relay).  With ``alpha < min(beta, gamma, 0)``,
``beta <= 2 gamma`` and ``gamma > 0`` the optimal score is a strong partial
metric on words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations
from typing import Mapping, Sequence

from .core import FiniteSpace, MetricKind, SpaceError

__all__ = [
    "GAP",
    "ScoringScheme",
    "SchemeVerdict",
    "AlignmentResult",
    "validate_scheme",
    "column_score",
    "score_columns",
    "score_pair",
    "best_alignment",
    "multi_score",
    "space_from_words",
]

GAP = "-"


def _pair_key(key: str | Sequence[str]) -> tuple[str, str]:
    a, b = tuple(key)
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class ScoringScheme:
    """Column costs for alignments over ``alphabet``.

    Parameters
    ----------
    alphabet : str
        Distinct single-character letters; ``"-"`` is reserved for gaps.
    alpha, beta, gamma : float
        Match, Mismatch and InDel costs.
    beta_table : mapping, optional
        Mismatch cost per unordered letter pair, keyed by two-letter strings
        such as ``"AC"``.  Must cover every pair of distinct letters.
    alpha_table : mapping, optional
        Match cost per letter, keyed by ``"AA"``-style strings.  Must cover
        every letter.
    """

    alphabet: str
    alpha: float
    beta: float
    gamma: float
    beta_table: Mapping[tuple[str, str], float] | None = None
    alpha_table: Mapping[str, float] | None = None
    _beta: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _alpha: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        letters = self.alphabet
        if not letters or len(set(letters)) != len(letters):
            raise ValueError("alphabet must be a non-empty string of distinct letters")
        if GAP in letters:
            raise ValueError(f"{GAP!r} is reserved for gaps")
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        alpha = {a: self.alpha for a in letters}
        if self.alpha_table is not None:
            given = {}
            for key, v in self.alpha_table.items():
                a, b = _pair_key(key)
                if a != b or a not in letters:
                    raise ValueError(f"alpha_table key {key!r} is not a doubled letter of the alphabet")
                given[a] = float(v)
            if set(given) != set(letters):
                raise ValueError("alpha_table must cover every letter")
            alpha = given
        beta = {}
        pairs = [(a, b) for a, b in combinations_with_replacement(sorted(letters), 2) if a != b]
        if self.beta_table is not None:
            for key, v in self.beta_table.items():
                k = _pair_key(key)
                if k[0] == k[1] or not set(k) <= set(letters):
                    raise ValueError(f"beta_table key {key!r} is not a pair of distinct letters")
                if k in beta and beta[k] != float(v):
                    raise ValueError(f"conflicting beta_table entries for {k}")
                beta[k] = float(v)
            if set(beta) != set(pairs):
                raise ValueError("beta_table must cover every pair of distinct letters")
        else:
            beta = {k: self.beta for k in pairs}
        object.__setattr__(self, "_alpha", alpha)
        object.__setattr__(self, "_beta", beta)

    def match(self, a: str) -> float:
        return self._alpha[a]

    def mismatch(self, a: str, b: str) -> float:
        return self._beta[_pair_key((a, b))]

    def substitution(self, a: str, b: str) -> float:
        return self._alpha[a] if a == b else self._beta[_pair_key((a, b))]

    @property
    def max_alpha(self) -> float:
        return max(self._alpha.values())

    @property
    def min_beta(self) -> float:
        return min(self._beta.values(), default=self.beta)

    @property
    def max_beta(self) -> float:
        return max(self._beta.values(), default=self.beta)

    def check_word(self, word: str) -> None:
        bad = sorted(set(word) - set(self.alphabet))
        if bad:
            raise ValueError(f"word {word!r} has letters outside the alphabet: {''.join(bad)}")

    def to_dict(self) -> dict:
        doc = {"alphabet": self.alphabet, "alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}
        if self.beta_table is not None:
            doc["beta_table"] = {a + b: v for (a, b), v in sorted(self._beta.items())}
        if self.alpha_table is not None:
            doc["alpha_table"] = {a + a: v for a, v in sorted(self._alpha.items())}
        return doc

    @classmethod
    def from_dict(cls, doc: Mapping) -> "ScoringScheme":
        try:
            return cls(
                str(doc["alphabet"]),
                doc["alpha"],
                doc["beta"],
                doc["gamma"],
                beta_table=doc.get("beta_table"),
                alpha_table=doc.get("alpha_table"),
            )
        except KeyError as exc:
            raise ValueError(f"scheme document is missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class SchemeVerdict:
    valid: bool
    violations: tuple[str, ...]


def validate_scheme(scheme: ScoringScheme) -> SchemeVerdict:
    """Check the cost conditions that make the optimal score strong partial.

    With tables the conditions use the worst case over the tables, and the
    three-letter condition ``beta(x,y) <= beta(x,z) + beta(z,y) - alpha(z)``
    is checked for every triple of distinct letters.
    """
    out = []
    a_max, g = scheme.max_alpha, scheme.gamma
    if not a_max < min(scheme.min_beta, g, 0.0):
        out.append("alpha < min(beta, gamma, 0)")
    if not scheme.max_beta <= 2 * g:
        out.append("beta <= 2*gamma")
    if not g > 0:
        out.append("gamma > 0")
    for x, y, z in permutations(scheme.alphabet, 3):
        if scheme.mismatch(x, y) > scheme.mismatch(x, z) + scheme.mismatch(z, y) - scheme.match(z):
            out.append(f"beta({x},{y}) <= beta({x},{z}) + beta({z},{y}) - alpha({z})")
            break
    return SchemeVerdict(not out, tuple(out))


def column_score(top: str, bottom: str, scheme: ScoringScheme) -> float:
    """Cost of one alignment column; ``"-"`` marks a gap."""
    if top == GAP and bottom == GAP:
        return 0.0
    if top == GAP or bottom == GAP:
        return scheme.gamma
    return scheme.substitution(top, bottom)


def score_columns(aligned_x: str, aligned_y: str, scheme: ScoringScheme) -> list[float]:
    """Per-column costs of an explicit alignment (relay columns allowed)."""
    if len(aligned_x) != len(aligned_y):
        raise ValueError("aligned strings must have equal length")
    return [column_score(a, b, scheme) for a, b in zip(aligned_x, aligned_y)]


@dataclass(frozen=True)
class AlignmentResult:
    score: float
    aligned_x: str
    aligned_y: str
    column_scores: tuple[float, ...]
    scheme_valid: bool = True


def _table(x: str, y: str, scheme: ScoringScheme) -> list[list[float]]:
    scheme.check_word(x)
    scheme.check_word(y)
    g = scheme.gamma
    rows, cols = len(x) + 1, len(y) + 1
    d = [[0.0] * cols for _ in range(rows)]
    for j in range(1, cols):
        d[0][j] = d[0][j - 1] + g
    for i in range(1, rows):
        d[i][0] = d[i - 1][0] + g
        xi, prev, cur = x[i - 1], d[i - 1], d[i]
        for j in range(1, cols):
            cur[j] = min(
                prev[j - 1] + scheme.substitution(xi, y[j - 1]),
                prev[j] + g,
                cur[j - 1] + g,
            )
    return d


def score_pair(x: str, y: str, scheme: ScoringScheme) -> float:
    """Minimal alignment cost of two words."""
    return _table(x, y, scheme)[len(x)][len(y)]


def best_alignment(x: str, y: str, scheme: ScoringScheme) -> AlignmentResult:
    """An optimal alignment of ``x`` over ``y``.

    Ties are broken towards the diagonal move, then a gap in ``y``, then a
    gap in ``x``, walking back from the end of both words.
    """
    d = _table(x, y, scheme)
    g = scheme.gamma
    i, j = len(x), len(y)
    top, bottom, costs = [], [], []
    while i or j:
        here = d[i][j]
        if i and j and here == d[i - 1][j - 1] + scheme.substitution(x[i - 1], y[j - 1]):
            top.append(x[i - 1])
            bottom.append(y[j - 1])
            costs.append(scheme.substitution(x[i - 1], y[j - 1]))
            i, j = i - 1, j - 1
        elif i and here == d[i - 1][j] + g:
            top.append(x[i - 1])
            bottom.append(GAP)
            costs.append(g)
            i -= 1
        else:
            top.append(GAP)
            bottom.append(y[j - 1])
            costs.append(g)
            j -= 1
    return AlignmentResult(
        d[len(x)][len(y)],
        "".join(reversed(top)),
        "".join(reversed(bottom)),
        tuple(reversed(costs)),
        validate_scheme(scheme).valid,
    )


def multi_score(words: Sequence[str], scheme: ScoringScheme) -> float:
    """Sum of pairwise optimal costs over all unordered index pairs."""
    words = list(words)
    if len(words) < 2:
        raise ValueError("multi_score needs at least two words")
    return sum(score_pair(words[i], words[j], scheme) for j in range(1, len(words)) for i in range(j))


def space_from_words(words: Sequence[str], scheme: ScoringScheme, n: int = 2) -> FiniteSpace:
    """Strong partial (n-)metric space on distinct ``words`` from ``multi_score``."""
    words = list(words)
    if not words or len(set(words)) != len(words):
        raise SpaceError("words must be a non-empty list of distinct strings")
    verdict = validate_scheme(scheme)
    if not verdict.valid:
        raise SpaceError(f"scoring scheme violates: {'; '.join(verdict.violations)}")
    for w in words:
        scheme.check_word(w)
    if n < 2:
        raise SpaceError(f"arity must be >= 2, got {n}")
    pair = {
        (i, j): score_pair(words[i], words[j], scheme)
        for i, j in combinations_with_replacement(range(len(words)), 2)
    }

    def value(t: tuple[int, ...]) -> float:
        return sum(pair[(t[i], t[j])] for j in range(1, n) for i in range(j))

    return FiniteSpace.from_function(words, MetricKind.of("strong", n), value)
