"""Finite generalized metric spaces, axiom checking and constructions.

A space is a finite list of labelled elements together with a symmetric
function of ``arity`` arguments.  Because the function is symmetric, values
are stored once per multiset of element indices (a sorted index tuple).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "Family",
    "MetricKind",
    "Tolerance",
    "FiniteSpace",
    "AxiomResult",
    "AxiomReport",
    "SpaceError",
    "check_axioms",
    "inequality_margin",
    "induce_metric",
    "lift_to_n",
    "shift_by_constant",
    "term_replacement_margin",
    "swap_bound_margin",
    "space_to_dict",
    "space_from_dict",
]

DEFAULT_TOL = 1e-9


class SpaceError(ValueError):
    """Raised when a space definition is incomplete or inconsistent."""


class Family(enum.Enum):
    METRIC = "metric"
    PARTIAL_METRIC = "partial_metric"
    STRONG_PARTIAL_METRIC = "strong_partial_metric"
    N_METRIC = "n_metric"
    PARTIAL_N_METRIC = "partial_n_metric"
    STRONG_PARTIAL_N_METRIC = "strong_partial_n_metric"

    @property
    def pairwise(self) -> bool:
        return self in _PAIRWISE

    @property
    def base(self) -> str:
        """One of ``"metric"``, ``"partial"`` or ``"strong"``."""
        return _BASE[self]

    @classmethod
    def parse(cls, text: "str | Family") -> "Family":
        if isinstance(text, Family):
            return text
        key = str(text).strip()
        if key in _ALIASES:
            return _ALIASES[key]
        try:
            return cls(key.lower())
        except ValueError:
            raise SpaceError(f"unknown metric family {text!r}") from None


_PAIRWISE = {Family.METRIC, Family.PARTIAL_METRIC, Family.STRONG_PARTIAL_METRIC}
_BASE = {
    Family.METRIC: "metric",
    Family.N_METRIC: "metric",
    Family.PARTIAL_METRIC: "partial",
    Family.PARTIAL_N_METRIC: "partial",
    Family.STRONG_PARTIAL_METRIC: "strong",
    Family.STRONG_PARTIAL_N_METRIC: "strong",
}
_ALIASES = {
    "Metric": Family.METRIC,
    "PartialMetric": Family.PARTIAL_METRIC,
    "StrongPartialMetric": Family.STRONG_PARTIAL_METRIC,
    "NMetric": Family.N_METRIC,
    "PartialNMetric": Family.PARTIAL_N_METRIC,
    "StrongPartialNMetric": Family.STRONG_PARTIAL_N_METRIC,
}


@dataclass(frozen=True)
class MetricKind:
    """A metric family together with its arity.

    Pairwise families have arity exactly 2 and the n-ary families have
    arity of at least 3.
    """

    family: Family
    arity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family.parse(self.family))
        if not isinstance(self.arity, int) or isinstance(self.arity, bool):
            raise SpaceError(f"arity must be an int, got {self.arity!r}")
        if self.family.pairwise and self.arity != 2:
            raise SpaceError(f"{self.family.value} requires arity 2, got {self.arity}")
        if not self.family.pairwise and self.arity < 3:
            raise SpaceError(f"{self.family.value} requires arity >= 3, got {self.arity}")

    @classmethod
    def of(cls, base: str, arity: int) -> "MetricKind":
        """Kind for a base family name (``metric``, ``partial``, ``strong``)."""
        table = {
            ("metric", True): Family.METRIC,
            ("metric", False): Family.N_METRIC,
            ("partial", True): Family.PARTIAL_METRIC,
            ("partial", False): Family.PARTIAL_N_METRIC,
            ("strong", True): Family.STRONG_PARTIAL_METRIC,
            ("strong", False): Family.STRONG_PARTIAL_N_METRIC,
        }
        try:
            return cls(table[(base, arity == 2)], arity)
        except KeyError:
            raise SpaceError(f"unknown base family {base!r}") from None

    def __str__(self) -> str:
        return f"{self.family.value}/{self.arity}"


@dataclass(frozen=True)
class Tolerance:
    """Absolute slack used by every numeric comparison."""

    abs: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not (math.isfinite(self.abs) and self.abs >= 0):
            raise ValueError(f"tolerance must be finite and >= 0, got {self.abs!r}")

    @classmethod
    def coerce(cls, tol: "float | Tolerance | None") -> "Tolerance":
        if tol is None:
            return cls()
        if isinstance(tol, Tolerance):
            return tol
        return cls(float(tol))


class FiniteSpace:
    """A finite set of labelled elements with a symmetric distance function.

    Parameters
    ----------
    elements : sequence of str
        Distinct element labels.  Their order fixes the enumeration order
        used by witnesses.
    kind : MetricKind
        Declared family and arity.
    values : mapping
        Maps sorted index tuples of length ``kind.arity`` to finite floats.
        Every multiset must be present.
    """

    __slots__ = ("elements", "kind", "_values", "_index")

    def __init__(
        self,
        elements: Sequence[str],
        kind: MetricKind,
        values: Mapping[tuple[int, ...], float],
    ) -> None:
        elements = tuple(str(e) for e in elements)
        if not elements:
            raise SpaceError("a space needs at least one element")
        if len(set(elements)) != len(elements):
            raise SpaceError("element labels must be distinct")
        self.elements = elements
        self.kind = kind
        self._index = {label: i for i, label in enumerate(elements)}
        n, m = kind.arity, len(elements)
        table: dict[tuple[int, ...], float] = {}
        for key, value in values.items():
            key = tuple(sorted(int(i) for i in key))
            if len(key) != n or not all(0 <= i < m for i in key):
                raise SpaceError(f"bad index tuple {key} for {m} elements at arity {n}")
            value = float(value)
            if not math.isfinite(value):
                raise SpaceError(f"non-finite value {value} at {key}")
            table[key] = value
        missing = [t for t in combinations_with_replacement(range(m), n) if t not in table]
        if missing:
            shown = ", ".join(str(self._labels(t)) for t in missing[:3])
            raise SpaceError(f"{len(missing)} multisets have no value, e.g. {shown}")
        self._values = table

    @classmethod
    def from_function(
        cls,
        elements: Sequence[str],
        kind: MetricKind,
        func: Callable[[tuple[int, ...]], float],
    ) -> "FiniteSpace":
        """Tabulate ``func`` (called with sorted index tuples) on every multiset."""
        m = len(elements)
        values = {t: func(t) for t in combinations_with_replacement(range(m), kind.arity)}
        return cls(elements, kind, values)

    @property
    def arity(self) -> int:
        return self.kind.arity

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteSpace(kind={self.kind}, elements={list(self.elements)!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.kind == other.kind
            and self._values == other._values
        )

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise SpaceError(f"unknown element {label!r}") from None

    def _labels(self, idx: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in idx)

    def at(self, idx: Iterable[int]) -> float:
        """Value at a tuple of indices in any order."""
        return self._values[tuple(sorted(idx))]

    def value(self, *labels: str) -> float:
        """Value at a tuple of labels in any order."""
        if len(labels) != self.arity:
            raise SpaceError(f"expected {self.arity} labels, got {len(labels)}")
        return self.at(self.index(x) for x in labels)

    def self_value(self, i: int) -> float:
        """P(<x_i>^n) by index."""
        return self._values[(i,) * self.arity]

    def pivot(self, i: int, j: int) -> float:
        """P(<x_i>^{n-1}, x_j) by index."""
        return self.at((i,) * (self.arity - 1) + (j,))

    def centered(self, i: int, j: int) -> float:
        """P(<x_i>^{n-1}, x_j) - P(<x_i>^n), the ball distance from centre i."""
        return self.pivot(i, j) - self.self_value(i)

    def items(self) -> list[tuple[tuple[str, ...], float]]:
        """All (label multiset, value) pairs in lexicographic index order."""
        return [(self._labels(k), self._values[k]) for k in sorted(self._values)]

    def with_kind(self, kind: MetricKind) -> "FiniteSpace":
        """Same table under a different declared kind of equal arity."""
        if kind.arity != self.arity:
            raise SpaceError("with_kind cannot change arity")
        return FiniteSpace(self.elements, kind, self._values)

    def with_values(self, updates: Mapping[Sequence[str], float]) -> "FiniteSpace":
        """Copy with some multisets (given by labels) overwritten."""
        values = dict(self._values)
        for labels, v in updates.items():
            values[tuple(sorted(self.index(x) for x in labels))] = float(v)
        return FiniteSpace(self.elements, self.kind, values)


@dataclass(frozen=True)
class AxiomResult:
    """Outcome of one axiom.

    ``witness`` is the first failing instance in enumeration order as element
    labels.  For triangle-type axioms it holds ``x_1 .. x_n`` followed by the
    pivot element.  ``margin`` is the measured slack of that instance
    (negative or too small on failure).
    """

    axiom: str
    holds: bool
    witness: tuple[str, ...] | None = None
    margin: float | None = None
    derived: bool = False
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
            "margin": self.margin,
            "derived": self.derived,
            "note": self.note,
        }


@dataclass(frozen=True)
class AxiomReport:
    kind: MetricKind
    tol: float
    results: tuple[AxiomResult, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> bool:
        return all(r.holds for r in self.results)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.holds]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.family.value,
            "arity": self.kind.arity,
            "tol": self.tol,
            "overall": self.overall,
            "axioms": [r.to_dict() for r in self.results],
        }


_PREFIX = {
    Family.METRIC: "m",
    Family.PARTIAL_METRIC: "p",
    Family.STRONG_PARTIAL_METRIC: "s",
    Family.N_METRIC: "n",
    Family.PARTIAL_N_METRIC: "P_n",
    Family.STRONG_PARTIAL_N_METRIC: "S_n",
}


def inequality_margin(
    space: FiniteSpace, xs: Sequence[int], pivot: int, kind: MetricKind | None = None
) -> float:
    """Slack of the triangle-type inequality at ``xs`` with pivot ``pivot``.

    Returns ``RHS - LHS`` of
    ``P(x_1..x_n) <= P(x_1..x_{n-1}, a) + P(<a>^{n-1}, x_n) - P(<a>^n)``.
    For plain metric kinds the self-value term is dropped.
    """
    xs = tuple(xs)
    lhs = space.at(xs)
    rhs = space.at(xs[:-1] + (pivot,)) + space.pivot(pivot, xs[-1])
    if (kind or space.kind).family.base != "metric":
        rhs -= space.self_value(pivot)
    return rhs - lhs


def check_axioms(
    space: FiniteSpace,
    kind: MetricKind | None = None,
    tol: "float | Tolerance | None" = None,
) -> AxiomReport:
    """Check every axiom of ``kind`` (default: the declared kind) on ``space``.

    Non-strict inequalities pass when violated by at most ``tol``.  Strict
    inequalities need a margin greater than ``tol``.  Separation is tested as
    a biconditional with equality meaning agreement within ``tol``.
    Symmetry holds by construction and is reported as such.
    """
    kind = space.kind if kind is None else kind
    if kind.arity != space.arity:
        raise SpaceError(f"cannot check {kind} axioms on an arity-{space.arity} table")
    eps = Tolerance.coerce(tol).abs
    fam = kind.family
    pre = _PREFIX[fam]
    m, n = space.size, space.arity
    lab = space._labels
    pairs = list(product(range(m), repeat=2))
    results: list[AxiomResult] = [
        AxiomResult(f"({pre}-sym)", True, note="holds by construction (symmetric storage)")
    ]

    def first(items, ok):
        for wit, margin in items:
            if not ok(margin):
                return wit, margin
        return None, None

    def pv(i, j):
        return (i,) * (n - 1) + (j,)

    if fam.base == "metric":
        # lbnd: 0 <= M(<x>^{n-1}, y)
        w, mg = first(((lab(pv(i, j)), space.pivot(i, j)) for i, j in pairs), lambda v: v >= -eps)
        results.append(AxiomResult(f"({pre}-lbnd)", w is None, w, mg))
        # sep: value is zero exactly on the diagonal
        bad = None
        for i, j in pairs:
            v = space.pivot(i, j)
            if (i == j and abs(v) > eps) or (i != j and abs(v) <= eps):
                bad = (lab(pv(i, j)), abs(v))
                break
        results.append(
            AxiomResult(f"({pre}-sep)", bad is None, bad[0] if bad else None, bad[1] if bad else None)
        )
    else:
        strict = fam.base == "strong"
        # lbnd: P(<x>^n) <= P(<x>^{n-1}, y), strict for x != y on strong kinds
        def lbnd_items():
            for i, j in pairs:
                if strict and i == j:
                    continue
                yield lab(pv(i, j)), space.centered(i, j)

        ok = (lambda v: v > eps) if strict else (lambda v: v >= -eps)
        w, mg = first(lbnd_items(), ok)
        lbnd = AxiomResult(f"({pre}-lbnd)", w is None, w, mg)
        results.append(lbnd)
        if strict:
            results.append(
                AxiomResult(
                    f"({pre}-sep)",
                    lbnd.holds,
                    lbnd.witness,
                    lbnd.margin,
                    derived=True,
                    note="follows from strict lbnd",
                )
            )
        else:
            # sep: both centred gaps vanish exactly when the points coincide
            bad = None
            for i in range(m):
                for j in range(i + 1, m):
                    gap = max(abs(space.centered(i, j)), abs(space.centered(j, i)))
                    if gap <= eps:
                        bad = (lab(pv(i, j)), gap)
                        break
                if bad:
                    break
            results.append(
                AxiomResult(f"({pre}-sep)", bad is None, bad[0] if bad else None, bad[1] if bad else None)
            )

    bad = None
    for prefix in combinations_with_replacement(range(m), n - 1):
        for last in range(m):
            xs = prefix + (last,)
            for a in range(m):
                mg = inequality_margin(space, xs, a, kind)
                if mg < -eps:
                    bad = (lab(xs) + (space.elements[a],), mg)
                    break
            if bad:
                break
        if bad:
            break
    results.append(
        AxiomResult(f"({pre}-inq)", bad is None, bad[0] if bad else None, bad[1] if bad else None)
    )
    return AxiomReport(kind, eps, tuple(results))


def induce_metric(space: FiniteSpace) -> FiniteSpace:
    """The metric d(x,y) = P(<x>^{n-1},y) - P(<x>^n) + P(<y>^{n-1},x) - P(<y>^n).

    For a partial metric this is 2p(x,y) - p(x,x) - p(y,y).
    """
    return FiniteSpace.from_function(
        space.elements,
        MetricKind(Family.METRIC, 2),
        lambda t: space.centered(t[0], t[1]) + space.centered(t[1], t[0]),
    )


def lift_to_n(space: FiniteSpace, n: int) -> FiniteSpace:
    """Lift a pairwise space to arity ``n`` by summing over index pairs.

    ``P(x_1..x_n) = sum_{t=2}^n sum_{i<t} p(x_i, x_t)``.  At ``n = 2`` the
    input is returned unchanged.
    """
    if not space.kind.family.pairwise:
        raise SpaceError("lift_to_n needs a pairwise space")
    if n < 2:
        raise SpaceError(f"lift arity must be >= 2, got {n}")
    if n == 2:
        return space
    kind = MetricKind.of(space.kind.family.base, n)

    def total(t):
        return sum(space.at((t[i], t[j])) for j in range(1, n) for i in range(j))

    return FiniteSpace.from_function(space.elements, kind, total)


def shift_by_constant(space: FiniteSpace, r: float) -> FiniteSpace:
    """Add ``r`` to every value of a metric or n-metric space.

    The result is a strong partial (n-)metric of the same arity.
    """
    if space.kind.family.base != "metric":
        raise SpaceError("shift_by_constant needs a Metric or NMetric input")
    r = float(r)
    if not math.isfinite(r):
        raise SpaceError("shift must be finite")
    kind = MetricKind.of("strong", space.arity)
    return FiniteSpace.from_function(space.elements, kind, lambda t: space.at(t) + r)


def term_replacement_margin(
    space: FiniteSpace, xs: Sequence[str], ys: Sequence[str], t: int
) -> float:
    """Slack of replacing the first ``t`` entries of ``xs`` by those of ``ys``.

    Returns ``RHS - LHS`` where ``LHS = P(xs)`` and
    ``RHS = P(y_1..y_t, x_{t+1}..x_n) + sum_{j<=t} [P(<y_j>^{n-1}, x_j) - P(<y_j>^n)]``.
    On a valid space the result is non-negative.
    """
    n = space.arity
    if len(xs) != n or len(ys) != n:
        raise SpaceError(f"xs and ys must have length {n}")
    if not 1 <= t <= n:
        raise SpaceError(f"t must lie in 1..{n}, got {t}")
    xi = [space.index(x) for x in xs]
    yi = [space.index(y) for y in ys]
    rhs = space.at(yi[:t] + xi[t:])
    rhs += sum(space.centered(yi[j], xi[j]) for j in range(t))
    return rhs - space.at(xi)


def swap_bound_margin(space: FiniteSpace, a: str, b: str) -> float:
    """Slack of ``P(<a>^{n-1},b) <= (n-1) P(<b>^{n-1},a) - (n-2) P(<b>^n)``."""
    n = space.arity
    i, j = space.index(a), space.index(b)
    rhs = (n - 1) * space.pivot(j, i) - (n - 2) * space.self_value(j)
    return rhs - space.pivot(i, j)


def space_to_dict(space: FiniteSpace) -> dict:
    """JSON-ready document: kind, arity, elements and one row per multiset."""
    return {
        "kind": space.kind.family.value,
        "arity": space.arity,
        "elements": list(space.elements),
        "values": [{"tuple": list(k), "value": v} for k, v in space.items()],
    }


def space_from_dict(doc: Mapping) -> FiniteSpace:
    """Inverse of :func:`space_to_dict`.

    Rows may list labels in any order.  Repeated rows must agree.
    """
    try:
        kind = MetricKind(Family.parse(doc["kind"]), int(doc["arity"]))
        elements = [str(e) for e in doc["elements"]]
        rows = doc["values"]
    except KeyError as exc:
        raise SpaceError(f"space document is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise SpaceError(f"malformed space document: {exc}") from None
    index = {e: i for i, e in enumerate(elements)}
    values: dict[tuple[int, ...], float] = {}
    for row in rows:
        try:
            labels, value = row["tuple"], row["value"]
            key = tuple(sorted(index[str(x)] for x in labels))
        except KeyError as exc:
            raise SpaceError(f"bad value row {row!r}: unknown key {exc.args[0]!r}") from None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SpaceError(f"value for {labels} is not a number")
        if key in values and values[key] != float(value):
            raise SpaceError(f"conflicting values for {sorted(labels)}")
        values[key] = float(value)
    return FiniteSpace(elements, kind, values)
