"""Finite atomic measures on the real line.

These are the carriers for discretized spectral measures and for the jump
parts of infinitely divisible laws. An :class:`AtomicMeasure` is immutable,
canonically sorted, and cheap to hash, which lets downstream code memoize
expensive metric computations keyed on measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Tuple

import numpy as np

__all__ = ["AtomicMeasure"]


@dataclass(frozen=True)
class AtomicMeasure:
    """A finite nonnegative measure carried by finitely many points.

    ``atoms`` holds ``(location, mass)`` pairs sorted by location, with
    distinct locations and strictly positive masses. Build instances through
    :meth:`from_pairs` unless the input is already canonical.
    """

    atoms: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        last = None
        for loc, mass in self.atoms:
            if not (np.isfinite(loc) and np.isfinite(mass)):
                raise ValueError(f"atom ({loc!r}, {mass!r}) is not finite")
            if mass <= 0:
                raise ValueError(f"atom at {loc} has nonpositive mass {mass}")
            if last is not None and loc <= last:
                raise ValueError(
                    "atoms must be sorted by location without duplicates; "
                    "use AtomicMeasure.from_pairs"
                )
            last = loc

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, float]]) -> "AtomicMeasure":
        """Build a measure from arbitrary (location, mass) pairs.

        Input pairs are sorted, masses at duplicate locations are summed,
        and zero-mass entries are dropped. Negative masses are rejected.
        """
        merged: dict[float, float] = {}
        for loc, mass in pairs:
            if mass < 0:
                raise ValueError(f"negative mass {mass} at location {loc}")
            if mass == 0:
                continue
            key = float(loc)
            merged[key] = merged.get(key, 0.0) + float(mass)
        return cls(tuple(sorted(merged.items())))

    @classmethod
    def null(cls) -> "AtomicMeasure":
        """The zero measure (empty atom list)."""
        return cls(())

    @cached_property
    def locations(self) -> np.ndarray:
        return np.array([loc for loc, _ in self.atoms], dtype=float)

    @cached_property
    def masses(self) -> np.ndarray:
        return np.array([mass for _, mass in self.atoms], dtype=float)

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum()) if self.atoms else 0.0

    def mass_le(self, x: float) -> float:
        """Mass of the half line (-inf, x]."""
        if not self.atoms:
            return 0.0
        k = int(np.searchsorted(self.locations, x, side="right"))
        return float(self.masses[:k].sum())

    def mass_lt(self, x: float) -> float:
        """Mass of the open half line (-inf, x)."""
        if not self.atoms:
            return 0.0
        k = int(np.searchsorted(self.locations, x, side="left"))
        return float(self.masses[:k].sum())

    def mass_interval(self, lo: float, hi: float, closed: str = "right") -> float:
        """Mass of an interval between ``lo`` and ``hi``.

        ``closed`` selects the endpoint convention: "right" means (lo, hi],
        "both" means [lo, hi], "left" means [lo, hi), "neither" means (lo, hi).
        """
        if closed == "right":
            return self.mass_le(hi) - self.mass_le(lo)
        if closed == "both":
            return self.mass_le(hi) - self.mass_lt(lo)
        if closed == "left":
            return self.mass_lt(hi) - self.mass_lt(lo)
        if closed == "neither":
            return self.mass_lt(hi) - self.mass_le(lo)
        raise ValueError(f"unknown interval convention {closed!r}")

    def restrict_open_ball(self, r: float) -> "AtomicMeasure":
        """Restriction to the open interval (-r, r)."""
        kept = tuple((loc, mass) for loc, mass in self.atoms if abs(loc) < r)
        return AtomicMeasure(kept)

    def scaled(self, factor: float) -> "AtomicMeasure":
        """Same support with all masses multiplied by ``factor`` > 0."""
        if factor <= 0:
            raise ValueError("scaling factor must be positive")
        return AtomicMeasure(tuple((loc, mass * factor) for loc, mass in self.atoms))
