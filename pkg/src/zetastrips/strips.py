"""Assembly of traces and zeros into horizontal strips.

A strip m is the region between the critical-line crossings of boundary
contours 2m and 2(m+1); its primary zero is the terminus of primary
contour 2m+1. Strips share their bounding crossings exactly (the same
trace yields both the top of strip m and the bottom of strip m+1), so
the decomposition tiles the covered height range with no gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .config import EvalParams
from .errors import MissingPrimaryError, PartitionError
from .tracing import ContourTrace, ZeroHit, crossing_at_sigma
from .zeros import CriticalZero

_DEFAULT = EvalParams()

BOUNDARY_CLEARANCE = 1e-6  # zeros this close to a crossing flag a tracing fault


@dataclass(frozen=True)
class Strip:
    """One horizontal strip with its zeros and primary-zero position."""

    m: int
    bottom_t: float
    top_t: float
    zeros: tuple[CriticalZero, ...]
    primary_index: int  # 1-based, counted from the bottom
    measurement_sigma: float

    def __post_init__(self) -> None:
        if not self.bottom_t < self.top_t:
            raise PartitionError(
                f"strip {self.m}: bottom {self.bottom_t} !< top {self.top_t}"
            )
        if not self.zeros:
            raise PartitionError(f"strip {self.m} contains no zeros")
        if not 1 <= self.primary_index <= len(self.zeros):
            raise MissingPrimaryError(
                f"strip {self.m}: primary index {self.primary_index} outside "
                f"1..{len(self.zeros)}"
            )


@dataclass(frozen=True)
class RoundedStrip:
    """Integer-rounded view of a strip (the by-eye reading emulation)."""

    m: int
    bottom_rounded: int
    top_rounded: int
    width_rounded: int


@dataclass(frozen=True)
class PrimaryScore:
    """Relative position of the primary zero within its strip, in (0, 1)."""

    value: float


def round_half_up(x: float) -> int:
    """Round to nearest integer, ties away from the floor (0.5 -> 1)."""
    return int(math.floor(x + 0.5))


def build_strips(
    boundary_traces: Sequence[ContourTrace],
    primary_traces: Sequence[ContourTrace],
    zeros: Sequence[CriticalZero],
    measurement_sigma: float = 0.5,
    params: EvalParams = _DEFAULT,
) -> list[Strip]:
    """Partition the covered range into strips and locate each primary.

    Expects M+1 boundary traces and M primary traces, ordered by height
    (boundary k = 2, 4, ..., 2M+2 and primary k = 3, 5, ..., 2M+1).
    """
    n_strips = len(primary_traces)
    if len(boundary_traces) != n_strips + 1:
        raise PartitionError(
            f"{n_strips} primary traces need {n_strips + 1} boundary traces, "
            f"got {len(boundary_traces)}"
        )

    crossings = [
        crossing_at_sigma(tr, measurement_sigma, params) for tr in boundary_traces
    ]
    for i in range(len(crossings) - 1):
        if not crossings[i] < crossings[i + 1]:
            raise PartitionError(
                f"boundary crossings out of order at strip {i + 1}: "
                f"{crossings[i]} !< {crossings[i + 1]}"
            )

    ordered = sorted(zeros, key=lambda z: z.t)
    for z in ordered:
        for c in crossings:
            if abs(z.t - c) < BOUNDARY_CLEARANCE:
                raise PartitionError(
                    f"zero ordinal {z.ordinal} at t = {z.t} lies within "
                    f"{BOUNDARY_CLEARANCE} of the boundary crossing {c}"
                )

    strips: list[Strip] = []
    for m in range(1, n_strips + 1):
        bottom, top = crossings[m - 1], crossings[m]
        inside = tuple(z for z in ordered if bottom < z.t < top)
        if not inside:
            raise PartitionError(f"strip {m} ({bottom:.6g}, {top:.6g}) has no zeros")

        terminus = primary_traces[m - 1].terminus
        if not isinstance(terminus, ZeroHit):
            raise MissingPrimaryError(
                f"primary trace for strip {m} ended with {terminus!r}, not a zero"
            )
        position = next(
            (i + 1 for i, z in enumerate(inside) if z.ordinal == terminus.ordinal),
            None,
        )
        if position is None:
            raise MissingPrimaryError(
                f"strip {m} ({bottom:.6g}, {top:.6g}): its primary trace hit the "
                f"zero at t = {terminus.t}, which is outside the strip"
            )
        strips.append(
            Strip(m, bottom, top, inside, position, measurement_sigma)
        )
    return strips


def strip_width(strip: Strip) -> float:
    return strip.top_t - strip.bottom_t


def rounded_strip(strip: Strip) -> RoundedStrip:
    """Half-up integer rounding of both boundaries, then differencing."""
    bottom = round_half_up(strip.bottom_t)
    top = round_half_up(strip.top_t)
    return RoundedStrip(strip.m, bottom, top, top - bottom)


def primary_score(strip: Strip) -> PrimaryScore:
    """Relative height of the primary zero: (index - 0.5) / zero count."""
    return PrimaryScore((strip.primary_index - 0.5) / len(strip.zeros))
