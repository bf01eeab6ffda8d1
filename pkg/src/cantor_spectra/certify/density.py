"""Sup-counts of frequencies in windows, normalized by a target ``g(R)``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..targets import density_target
from ..treemap import SpectrumCandidate


@dataclass
class DensityRow:
    R: float
    count: int
    g: float
    ratio: float


def max_window_count(values: Sequence[int], R) -> int:
    """Largest number of sorted values inside an open interval of length ``2R``.

    An open interval ``(x-R, x+R)`` holds ``v_i..v_j`` iff ``v_j - v_i < 2R``,
    so a two-pointer sweep gives the supremum over ``x`` exactly.
    """
    best = 0
    i = 0
    width = 2 * R
    for j in range(len(values)):
        while values[j] - values[i] >= width:
            i += 1
        best = max(best, j - i + 1)
    return best


def beurling_density(c: SpectrumCandidate, g, R_values: Sequence, x_probes: int | None = None
                     ) -> list[DensityRow]:
    """``sup_x #(r Lambda ∩ (x-R, x+R)) / g(R)`` for each ``R``.

    ``x_probes`` is accepted for interface compatibility; the sweep is exact.
    """
    target = density_target(g)
    vals = sorted(c.scaled())
    rows = []
    for R in R_values:
        cnt = max_window_count(vals, R)
        gv = float(target(R))
        rows.append(DensityRow(R, cnt, gv, cnt / gv if gv > 0 else float("inf")))
    return rows
