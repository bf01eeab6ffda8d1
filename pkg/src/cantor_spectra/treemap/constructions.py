"""Named mappings: canonical, sparse, slowly growing and non-spectral."""
from __future__ import annotations

import math

from ..errors import ParameterError
from ..fourier import MaskConstants
from ..numtheory import MeasureParams
from ..targets import density_target
from .spec import AllZero, LogBlock, SparsePowers, TreeMappingSpec


def canonical_spec(p: MeasureParams) -> TreeMappingSpec:
    """Residues ``0..q-1`` at every node and all-zero tails.

    Examples
    --------
    >>> canonical_spec(MeasureParams(2, 4)).base_residues
    (0, 1)
    """
    p.require_r()
    return TreeMappingSpec(p, tuple(range(p.q)), AllZero())


def sparse_depths(p: MeasureParams, g="log", window_hint: int = 4) -> tuple[int, ...]:
    """Depths ``m_1 < ... < m_W`` with ``b**m_n >= 2 h^{-1}(b**(n+1))``.

    ``h`` is the minorant attached to the density target ``g``; the test is
    done in log space.  ``m_1 >= 2`` always.
    """
    if window_hint < 1:
        raise ParameterError("window_hint must be >= 1")
    target = density_target(g)
    lnb = math.log(p.b)
    out = []
    prev = 1
    for n in range(1, window_hint + 1):
        need = (math.log(2.0) + target.log_inverse(float(p.b) ** (n + 1))) / lnb
        m = max(math.ceil(need * (1 + 1e-12) + 1e-12), prev + 1, 2)
        out.append(m)
        prev = m
    return tuple(out)


def sparse_spec(p: MeasureParams, density_target=None, window_hint: int = 4,
                m_seq=None, digit: int | None = None) -> TreeMappingSpec:
    """One tail digit ``q`` at depth ``m_n`` after the stem with index ``n``.

    Parameters
    ----------
    p : MeasureParams
    density_target : str or callable, optional
        Target ``g`` for the density ratio; default ``"log"``.
    window_hint : int
        Number of leading depths derived from ``g``; later depths grow by 1
        per index, which keeps every frequency representable.
    m_seq : sequence of int, optional
        Explicit depths; overrides ``density_target``.
    digit : int, optional
        Tail digit, a nonzero multiple of ``q`` in the digit set; default ``q``.
    """
    p.require_r()
    d = p.q if digit is None else digit
    if d % p.q or not 0 < d <= p.b - 2:
        raise ParameterError(f"tail digit {d} must be a positive multiple of q up to b-2")
    if m_seq is None:
        m_seq = sparse_depths(p, density_target or "log", window_hint)
    return TreeMappingSpec(p, tuple(range(p.q)), SparsePowers(tuple(m_seq), d))


def nonspectrum_spec(p: MeasureParams, epsilon: float, mc: MaskConstants) -> TreeMappingSpec:
    """Blocks of ``ceil((1+eps) log_{1/c2} n)`` tail digits after stems of length ``n+1``.

    Uses the upper end of the certified ``c_max`` interval; every stem gets
    at least one tail digit.
    """
    p.require_r()
    if not epsilon > 0:
        raise ParameterError("epsilon must be positive")
    c2 = mc.c2
    coef = (1.0 + epsilon) / math.log(1.0 / c2)
    return TreeMappingSpec(p, tuple(range(p.q)),
                           LogBlock(p.q, coef, base="length", rounding="ceil", min_count=1))


def slow_growth_spec(p: MeasureParams, mc: MaskConstants) -> TreeMappingSpec:
    """Blocks of ``floor(log_{c1^-2} log_q n)`` tail digits after the stem of index ``n``.

    Uses the lower end of the certified ``c_min`` interval.
    """
    p.require_r()
    c1 = mc.c1
    coef = 1.0 / math.log(c1**-2)
    return TreeMappingSpec(p, tuple(range(p.q)),
                           LogBlock(p.q, coef, base="index", rounding="floor", min_count=0))
