"""Topologies generated by open balls on finite spaces.

The ball around ``x`` of radius ``eps`` holds every ``y`` with
``P(<x>^{n-1}, y) - P(<x>^n) < eps``; the gilded ball uses ``<=``.
Subsets are handled as bitmasks over the element order of the space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import FiniteSpace, SpaceError

__all__ = [
    "MAX_ELEMENTS",
    "TopologyReport",
    "ball",
    "basis_balls",
    "minimal_neighbourhoods",
    "generate_topology",
    "closure_of",
    "topologies_coincide",
]

MAX_ELEMENTS = 20


def ball(space: FiniteSpace, center: str, eps: float, gilded: bool = False) -> frozenset[str]:
    """Open (or gilded, when ``gilded``) ball around ``center``."""
    if not eps > 0:
        raise ValueError(f"radius must be positive, got {eps}")
    c = space.index(center)
    return frozenset(
        y
        for j, y in enumerate(space.elements)
        if (space.centered(c, j) <= eps if gilded else space.centered(c, j) < eps)
    )


def _radii(values: Iterable[float]) -> list[float]:
    v = sorted(set(values))
    mids = [(a + b) / 2 for a, b in zip(v, v[1:])]
    return [r for r in mids + [v[-1] + 1.0] if r > 0]


def basis_balls(space: FiniteSpace) -> list[int]:
    """Every distinct open ball as a bitmask.

    For each centre the radii are the midpoints between consecutive distinct
    centred distances plus one radius past the largest, which reaches every
    ball that any positive radius can produce.
    """
    m = space.size
    out = set()
    for c in range(m):
        dist = [space.centered(c, j) for j in range(m)]
        for r in _radii(dist):
            out.add(sum(1 << j for j in range(m) if dist[j] < r))
    return sorted(out)


def minimal_neighbourhoods(space: FiniteSpace) -> list[int]:
    """For each element, the intersection of all balls containing it."""
    full = (1 << space.size) - 1
    nb = [full] * space.size
    for b in basis_balls(space):
        for x in range(space.size):
            if b >> x & 1:
                nb[x] &= b
    return nb


def _unions(generators: list[int]) -> list[int]:
    family = {0}
    for g in set(generators):
        family |= {s | g for s in family}
    return sorted(family, key=lambda s: (bin(s).count("1"), s))


@dataclass(frozen=True)
class TopologyReport:
    elements: tuple[str, ...]
    open_masks: tuple[int, ...]
    t0: bool
    t1: bool
    t2: bool
    witness_pairs: dict[str, tuple[tuple[str, str], ...]] = field(default_factory=dict)

    @property
    def open_sets(self) -> list[frozenset[str]]:
        return [self._decode(s) for s in self.open_masks]

    def _decode(self, mask: int) -> frozenset[str]:
        return frozenset(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def is_open(self, subset: Iterable[str]) -> bool:
        idx = {e: i for i, e in enumerate(self.elements)}
        mask = sum(1 << idx[e] for e in set(subset))
        return mask in set(self.open_masks)

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "open_sets": [[e for e in self.elements if e in s] for s in self.open_sets],
            "t0": self.t0,
            "t1": self.t1,
            "t2": self.t2,
            "witness_pairs": {k: [list(p) for p in v] for k, v in self.witness_pairs.items()},
        }


def _check_size(space: FiniteSpace) -> None:
    if space.size > MAX_ELEMENTS:
        raise SpaceError(f"topology generation is capped at {MAX_ELEMENTS} elements, got {space.size}")


def generate_topology(space: FiniteSpace) -> TopologyReport:
    """Open sets generated by the balls, with separation properties.

    Every open set is a union of minimal neighbourhoods.  ``x`` and ``y`` are
    T0-separated when one of them lies outside the other's minimal
    neighbourhood, T1-separated when both do, and T2-separated when the two
    minimal neighbourhoods are disjoint.
    """
    _check_size(space)
    nb = minimal_neighbourhoods(space)
    opens = _unions(nb)
    fails: dict[str, list[tuple[str, str]]] = {"T0": [], "T1": [], "T2": []}
    el = space.elements
    for x in range(space.size):
        for y in range(x + 1, space.size):
            y_in_x, x_in_y = nb[x] >> y & 1, nb[y] >> x & 1
            if y_in_x and x_in_y:
                fails["T0"].append((el[x], el[y]))
            if y_in_x or x_in_y:
                fails["T1"].append((el[x], el[y]))
            if nb[x] & nb[y]:
                fails["T2"].append((el[x], el[y]))
    return TopologyReport(
        el,
        tuple(opens),
        not fails["T0"],
        not fails["T1"],
        not fails["T2"],
        {k: tuple(v) for k, v in fails.items() if v},
    )


def closure_of(space: FiniteSpace, subset: Iterable[str]) -> frozenset[str]:
    """Points whose every open neighbourhood meets ``subset``."""
    _check_size(space)
    mask = sum(1 << space.index(e) for e in set(subset))
    nb = minimal_neighbourhoods(space)
    return frozenset(e for x, e in enumerate(space.elements) if nb[x] & mask)


def topologies_coincide(a: FiniteSpace, b: FiniteSpace) -> bool:
    """True when both spaces have the same elements and generate the same open sets."""
    if a.elements != b.elements:
        raise SpaceError("spaces have different element lists")
    return set(generate_topology(a).open_masks) == set(generate_topology(b).open_masks)
