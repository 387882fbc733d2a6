"""Dempster-Shafer kernel: frames, focal sets, mass functions, combination.

Focal sets are bitmasks over the frame's label indices, so intersection is a
single AND and frames are bounded to 64 hypotheses.  All values are immutable
after construction; every operation is a pure function, safe to share across
threads without coordination.

Numerical conventions:
  - masses must sum to 1 within MASS_SUM_TOL at construction,
  - entries below PRUNE_EPS are dropped and the remainder renormalized,
  - a combination whose conflict reaches 1 within TOTAL_CONFLICT_EPS raises
    TotalConflict instead of producing NaNs,
  - per-key accumulation and conflict use math.fsum, which makes combination
    exactly commutative (same multiset of products, exactly rounded sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    BpaOutOfRange,
    DuplicateLabel,
    EmptyFocalSet,
    EmptyFrame,
    FrameMismatch,
    FrameTooLarge,
    NotNormalized,
    TotalConflict,
    UnknownLabel,
)

MAX_FRAME_SIZE = 64
MASS_SUM_TOL = 1e-9
PRUNE_EPS = 1e-12
TOTAL_CONFLICT_EPS = 1e-12


@dataclass(frozen=True)
class Frame:
    """An ordered frame of discernment: the exhaustive hypothesis labels."""

    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"label {label!r} is not in the frame") from None

    @property
    def full_bits(self) -> int:
        return (1 << len(self.labels)) - 1


@dataclass(frozen=True)
class FocalSet:
    """A subset of a frame, stored as a bitmask over label indices."""

    frame: Frame
    bits: int

    def __post_init__(self) -> None:
        if self.bits & ~self.frame.full_bits:
            raise UnknownLabel("bitmask references indices outside the frame")

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def is_full(self) -> bool:
        return self.bits == self.frame.full_bits

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, label: str) -> bool:
        return bool(self.bits >> self.frame.index(label) & 1)

    def members(self) -> tuple[str, ...]:
        """Member labels in frame order."""
        return tuple(
            label for i, label in enumerate(self.frame.labels) if self.bits >> i & 1
        )

    def sorted_labels(self) -> tuple[str, ...]:
        """Member labels sorted lexicographically (canonical rendering)."""
        return tuple(sorted(self.members()))

    def intersection(self, other: FocalSet) -> FocalSet:
        _check_same_frame(self.frame, other.frame)
        return FocalSet(self.frame, self.bits & other.bits)

    def union(self, other: FocalSet) -> FocalSet:
        _check_same_frame(self.frame, other.frame)
        return FocalSet(self.frame, self.bits | other.bits)

    def complement(self) -> FocalSet:
        return FocalSet(self.frame, self.frame.full_bits & ~self.bits)

    def issubset(self, other: FocalSet) -> bool:
        _check_same_frame(self.frame, other.frame)
        return self.bits & other.bits == self.bits

    def __repr__(self) -> str:
        return f"FocalSet({{{', '.join(self.members())}}})"


@dataclass(frozen=True, eq=False)
class MassFunction:
    """A basic probability assignment: focal sets to masses summing to 1.

    Construct through mass_function(); the constructor itself performs no
    validation.  entries never contains the empty set, zero masses, or
    duplicate subsets.
    """

    frame: Frame
    entries: Mapping[FocalSet, float]

    def __iter__(self) -> Iterator[tuple[FocalSet, float]]:
        return iter(self.entries.items())

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, a: FocalSet, default: float = 0.0) -> float:
        return self.entries.get(a, default)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and dict(self.entries) == dict(other.entries)

    def __repr__(self) -> str:
        body = ", ".join(
            f"{{{','.join(a.members())}}}: {v:.5f}" for a, v in self.entries.items()
        )
        return f"MassFunction({body})"


def make_frame(labels: Iterable[str]) -> Frame:
    """Build a frame of discernment with stable label order.

    Raises EmptyFrame, DuplicateLabel or FrameTooLarge on invalid input.
    """
    labels = tuple(labels)
    if not labels:
        raise EmptyFrame("a frame needs at least one hypothesis label")
    if len(labels) > MAX_FRAME_SIZE:
        raise FrameTooLarge(
            f"{len(labels)} hypotheses exceed the {MAX_FRAME_SIZE}-element bound"
        )
    seen = set()
    for label in labels:
        if label in seen:
            raise DuplicateLabel(f"label {label!r} appears more than once")
        seen.add(label)
    return Frame(labels)


def focal_set(frame: Frame, members: Iterable[str]) -> FocalSet:
    """The subset of `frame` holding exactly `members` (may be empty)."""
    bits = 0
    for label in members:
        bits |= 1 << frame.index(label)
    return FocalSet(frame, bits)


def full_set(frame: Frame) -> FocalSet:
    """The whole frame as a focal set."""
    return FocalSet(frame, frame.full_bits)


def mass_function(
    frame: Frame,
    entries: Mapping[FocalSet, float] | Iterable[tuple[FocalSet, float]],
) -> MassFunction:
    """Validated mass function constructor.

    Identical subsets are merged by summing.  The total must be 1 within
    MASS_SUM_TOL; entries below PRUNE_EPS are then dropped and the remainder
    renormalized, so every stored mass is strictly positive.
    """
    if isinstance(entries, Mapping):
        entries = entries.items()
    merged: dict[FocalSet, float] = {}
    for a, v in entries:
        if a.frame != frame:
            raise FrameMismatch("focal set belongs to a different frame")
        if a.is_empty:
            raise EmptyFocalSet("the empty set cannot carry mass")
        if not math.isfinite(v) or v < 0.0:
            raise BpaOutOfRange(f"mass {v!r} is not a finite non-negative number")
        merged[a] = merged.get(a, 0.0) + v
    total = math.fsum(merged.values())
    if abs(total - 1.0) > MASS_SUM_TOL:
        raise NotNormalized(f"masses sum to {total!r}, expected 1")
    kept = {a: v for a, v in merged.items() if v >= PRUNE_EPS}
    if not kept:
        raise NotNormalized("all entries fell below the prune threshold")
    if len(kept) < len(merged):
        norm = math.fsum(kept.values())
        kept = {a: v / norm for a, v in kept.items()}
    return MassFunction(frame, kept)


def vacuous_mass(frame: Frame) -> MassFunction:
    """Total ignorance: all mass on the full frame. Identity of combination."""
    return MassFunction(frame, {full_set(frame): 1.0})


def simple_support_mass(frame: Frame, a: FocalSet, b: float) -> MassFunction:
    """The one-rule evidence pattern: m(a) = b, m(frame) = 1 - b.

    Collapses to a single entry when b = 1 or when a is the whole frame.
    """
    if a.frame != frame:
        raise FrameMismatch("focal set belongs to a different frame")
    if a.is_empty:
        raise EmptyFocalSet("support must point at a non-empty hypothesis set")
    if not math.isfinite(b) or not 0.0 < b <= 1.0:
        raise BpaOutOfRange(f"bpa {b!r} is outside (0, 1]")
    entries = [(a, b)]
    if b < 1.0:
        entries.append((full_set(frame), 1.0 - b))
    return mass_function(frame, entries)


def _check_same_frame(f1: Frame, f2: Frame) -> None:
    if f1 != f2:
        raise FrameMismatch("operands are defined over different frames")


def cross_products(
    m1: MassFunction, m2: MassFunction
) -> list[tuple[FocalSet, FocalSet, FocalSet, float]]:
    """All pairwise products (left, right, intersection, m1(left)*m2(right)).

    The raw material of Dempster's rule; rows with an empty intersection are
    the conflict cells.  Values sum to 1 (both operands are normalized).
    """
    _check_same_frame(m1.frame, m2.frame)
    return [
        (a, b, FocalSet(m1.frame, a.bits & b.bits), va * vb)
        for a, va in m1.entries.items()
        for b, vb in m2.entries.items()
    ]


def conflict(m1: MassFunction, m2: MassFunction) -> float:
    """Total product mass falling on empty intersections (K)."""
    _check_same_frame(m1.frame, m2.frame)
    k = math.fsum(
        va * vb
        for a, va in m1.entries.items()
        for b, vb in m2.entries.items()
        if not a.bits & b.bits
    )
    return min(max(k, 0.0), 1.0)


def combine(m1: MassFunction, m2: MassFunction) -> tuple[MassFunction, float]:
    """Dempster's rule of combination.

    Pools the two bodies of evidence conjunctively and renormalizes by 1 - K
    where K is the conflict.  Returns (combined mass, K).  Raises
    TotalConflict when K reaches 1 within TOTAL_CONFLICT_EPS, and
    FrameMismatch when the operands live on different frames.
    """
    _check_same_frame(m1.frame, m2.frame)
    buckets: dict[FocalSet, list[float]] = {}
    conflict_terms: list[float] = []
    for a, va in m1.entries.items():
        for b, vb in m2.entries.items():
            bits = a.bits & b.bits
            product = va * vb
            if bits:
                buckets.setdefault(FocalSet(m1.frame, bits), []).append(product)
            else:
                conflict_terms.append(product)
    k = math.fsum(conflict_terms)
    if k >= 1.0 - TOTAL_CONFLICT_EPS:
        raise TotalConflict(f"conflict K={k!r}; evidence is fully contradictory")
    norm = 1.0 - k
    combined = mass_function(
        m1.frame, {a: math.fsum(vs) / norm for a, vs in buckets.items()}
    )
    return combined, k


def belief(m: MassFunction, a: FocalSet) -> float:
    """Bel(a): total mass committed to subsets of `a`."""
    _check_same_frame(m.frame, a.frame)
    total = math.fsum(
        v for b, v in m.entries.items() if b.bits & a.bits == b.bits
    )
    return min(max(total, 0.0), 1.0)


def plausibility(m: MassFunction, a: FocalSet) -> float:
    """Pl(a): total mass not contradicting `a` (sets intersecting it)."""
    _check_same_frame(m.frame, a.frame)
    total = math.fsum(v for b, v in m.entries.items() if b.bits & a.bits)
    return min(max(total, 0.0), 1.0)
