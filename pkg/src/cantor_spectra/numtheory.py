"""Exact integer arithmetic for q-adic words and signed b-adic expansions.

Everything here works on Python integers, so values of any size are exact.
Words (nodes of the q-adic tree) are plain tuples of letters.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import CanonicalFormError, DomainError, ParameterError, UnsupportedParameters

Word = tuple  # tuple[int, ...], letters in 0..q-1; () is the root


@dataclass(frozen=True)
class MeasureParams:
    """Parameters of the equal-weight Cantor measure with consecutive digits.

    Parameters
    ----------
    q : int
        Number of digits ``0, ..., q-1``; at least 2.
    b : int
        Contraction base; must satisfy ``q < b``.

    Notes
    -----
    ``r = b // q`` is defined only when ``q`` divides ``b``.
    """

    q: int
    b: int

    def __post_init__(self):
        q, b = self.q, self.b
        if not (isinstance(q, int) and isinstance(b, int)):
            raise ParameterError("q and b must be integers")
        if q < 2:
            raise ParameterError(f"q must be >= 2, got {q}")
        if b <= q:
            raise ParameterError(f"need q < b, got q={q}, b={b}")

    @property
    def r(self) -> int | None:
        return self.b // self.q if self.b % self.q == 0 else None

    @property
    def divisible(self) -> bool:
        return self.b % self.q == 0

    @property
    def gcd(self) -> int:
        return gcd(self.q, self.b)

    def require_r(self) -> int:
        """Return ``r`` or raise :class:`UnsupportedParameters`."""
        if self.r is None:
            raise UnsupportedParameters(f"q={self.q} does not divide b={self.b}")
        return self.r

    def digit_range(self) -> tuple[int, int]:
        """Bounds of the signed digit set ``{-1, ..., b-2}``."""
        return -1, self.b - 2

    def residue_class(self, i: int) -> tuple[int, ...]:
        """Signed digits congruent to ``i`` modulo ``q``."""
        return tuple(c for c in range(-1, self.b - 1) if (c - i) % self.q == 0)


@dataclass(frozen=True)
class SignedDigits:
    """Finite expansion ``sum digits[k] * base**k`` over ``{-1, ..., base-2}``.

    The canonical form has no trailing zeros; ``()`` represents 0.
    """

    digits: tuple
    base: int

    def __post_init__(self):
        if self.base < 3:
            raise ParameterError(f"base must be >= 3, got {self.base}")
        lo, hi = -1, self.base - 2
        for k, c in enumerate(self.digits):
            if not lo <= c <= hi:
                raise DomainError(f"digit {c} at position {k} outside [{lo}, {hi}]")

    @property
    def canonical(self) -> bool:
        return not self.digits or self.digits[-1] != 0

    def __len__(self) -> int:
        return len(self.digits)

    def support(self) -> list[tuple[int, int]]:
        """Nonzero ``(position, digit)`` pairs in increasing position."""
        return [(k, c) for k, c in enumerate(self.digits) if c]


def _check_base(b: int) -> None:
    if b < 3:
        raise ParameterError(f"base must be >= 3 (digit set degenerates), got {b}")


def b_adic_expand(n: int, b: int) -> SignedDigits:
    """Signed base-``b`` expansion of an integer with digits in ``{-1, ..., b-2}``.

    Parameters
    ----------
    n : int
        Any integer.
    b : int
        Base, at least 3.

    Returns
    -------
    SignedDigits
        Canonical expansion, least significant digit first.

    Examples
    --------
    >>> b_adic_expand(3, 4).digits
    (-1, 1)
    >>> b_adic_expand(-5, 4).digits
    (-1, -1)
    """
    _check_base(b)
    out = []
    while n:
        c = (n + 1) % b - 1
        out.append(c)
        n = (n - c) // b
    return SignedDigits(tuple(out), b)


def b_adic_eval(d: SignedDigits | Sequence[int], b: int | None = None) -> int:
    """Evaluate ``sum d[k] * b**k`` exactly (Horner form)."""
    if isinstance(d, SignedDigits):
        digits, b = d.digits, d.base
    else:
        if b is None:
            raise ParameterError("base required for a raw digit sequence")
        digits = d
    v = 0
    for c in reversed(digits):
        v = v * b + c
    return v


def q_adic_expand(n: int, q: int) -> Word:
    """Word ``(s_1, ..., s_k)`` with ``n = sum s_j q**(j-1)`` and ``s_k != 0``."""
    if q < 2:
        raise ParameterError(f"q must be >= 2, got {q}")
    if n <= 0:
        raise DomainError(f"q-adic word needs n >= 1, got {n} (0 is the root)")
    out = []
    while n:
        n, s = divmod(n, q)
        out.append(s)
    return tuple(out)


def q_adic_eval(w: Sequence[int], q: int) -> int:
    """Inverse of :func:`q_adic_expand`; the word must end in a nonzero letter."""
    if not w or w[-1] == 0:
        raise CanonicalFormError(f"word {tuple(w)} is empty or ends in 0")
    v = 0
    for s in reversed(w):
        if not 0 <= s < q:
            raise DomainError(f"letter {s} outside [0, {q - 1}]")
        v = v * q + s
    return v


def check_word(w: Iterable[int], q: int) -> Word:
    """Return ``w`` as a tuple after checking its letters."""
    w = tuple(int(s) for s in w)
    for s in w:
        if not 0 <= s < q:
            raise DomainError(f"letter {s} outside [0, {q - 1}] in word {w}")
    return w


def strip_base_powers(m: int, b: int) -> tuple[int, int]:
    """Split ``m = b**n * a`` with ``b`` not dividing ``a``.

    Uses repeated squaring of the base, so the cost grows with the log of
    the valuation rather than the valuation itself.

    Examples
    --------
    >>> strip_base_powers(32, 4)
    (2, 2)
    >>> strip_base_powers(-8, 2)
    (3, -1)
    """
    if m == 0:
        raise DomainError("strip_base_powers is undefined at 0")
    if m % b:
        return 0, m
    powers = [b]
    while m % (powers[-1] * powers[-1]) == 0:
        powers.append(powers[-1] * powers[-1])
    n = 0
    for k in range(len(powers) - 1, -1, -1):
        p = powers[k]
        if m % p == 0:
            m //= p
            n += 1 << k
    return n, m


def in_scaled_zero_set(m: int, q: int, b: int) -> bool:
    """Test whether ``(b/q) * m`` is a zero of the transform.

    The zeros are ``b**n * a / q`` with ``n >= 1`` and ``q`` not dividing
    ``a``; all lie on the lattice ``(b/q) Z``, which is why an integer
    coordinate suffices. Works for every pair ``q < b``.
    """
    if m == 0:
        return False
    _, a = strip_base_powers(m, b)
    return a % q != 0


def in_zero_set(d: int, p: MeasureParams) -> bool:
    """Exact membership of the integer ``d`` in the zero set (needs ``q | b``).

    Examples
    --------
    >>> P = MeasureParams(2, 4)
    >>> in_zero_set(2, P), in_zero_set(4, P), in_zero_set(3, P)
    (True, False, False)
    """
    r = p.require_r()
    if d == 0 or d % r:
        return False
    return in_scaled_zero_set(d // r, p.q, p.b)
