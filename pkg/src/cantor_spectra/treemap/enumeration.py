"""Enumeration of the frequency set of a mapping and its digit statistics."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ..errors import DomainError, ResourceError
from ..numtheory import MeasureParams, Word, b_adic_expand, q_adic_eval, q_adic_expand
from .spec import LogBlock, TreeMappingSpec, stem_of

DEFAULT_CAP = 10**6


class _Irregular:
    """Sentinel for paths excluded from the frequency set."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Irregular"


Irregular = _Irregular()


def _value(support, b: int) -> int:
    return sum(d * b**pos for pos, d in support)


def project(spec: TreeMappingSpec, stem: Word):
    """Integer ``sum_k tau(s|_k) b**(k-1)`` for the path ``stem 0^inf``.

    Returns :data:`Irregular` for irregular stems.  ``()`` is the root path.

    Examples
    --------
    >>> from cantor_spectra.treemap import canonical_spec
    >>> from cantor_spectra.numtheory import MeasureParams
    >>> project(canonical_spec(MeasureParams(2, 4)), (1, 0, 1))
    17
    """
    stem = tuple(stem)
    if stem and stem[-1] == 0:
        raise DomainError(f"stem {stem} must end in a nonzero letter")
    if spec.is_irregular(stem):
        return Irregular
    return _value(spec.stem_support(stem), spec.b)


@dataclass
class SpectrumCandidate:
    """Ordered frequencies ``lambda_0 = 0, lambda_1, ...`` (before scaling by ``r``).

    Attributes
    ----------
    params : MeasureParams
    lambdas : list of int
    N : list of int
        Position (1-based) of the last nonzero digit; 0 for ``lambda = 0``.
    Nstar : list of int
        Number of nonzero digits past the stem.
    words : list of tuple
        Stem of each element (``()`` for the root path).
    indices : list of int
        Tree index of each stem; differs from the list position only when
        irregular stems were skipped.
    supports : list of list of (int, int)
        Nonzero signed digits of each element.
    source : object
        The generating spec, or ``"external"``.
    """

    params: MeasureParams
    lambdas: list
    N: list
    Nstar: list
    words: list
    indices: list
    supports: list
    source: object = "external"

    def __len__(self) -> int:
        return len(self.lambdas)

    @property
    def r(self) -> int:
        return self.params.require_r()

    def scaled(self) -> list[int]:
        r = self.r
        return [r * x for x in self.lambdas]

    def prefix(self, n: int) -> "SpectrumCandidate":
        if n > len(self):
            raise DomainError(f"candidate has {len(self)} elements, asked for {n}")
        return SpectrumCandidate(self.params, self.lambdas[:n], self.N[:n], self.Nstar[:n],
                                 self.words[:n], self.indices[:n], self.supports[:n], self.source)

    def without(self, i: int) -> "SpectrumCandidate":
        keep = [k for k in range(len(self)) if k != i]
        return SpectrumCandidate(self.params, [self.lambdas[k] for k in keep],
                                 [self.N[k] for k in keep], [self.Nstar[k] for k in keep],
                                 [self.words[k] for k in keep], [self.indices[k] for k in keep],
                                 [self.supports[k] for k in keep], "external")

    def jsonl(self) -> str:
        """One JSON object per line: n, word, lambda (decimal string), N, Nstar."""
        lines = []
        for i in range(len(self)):
            lines.append(json.dumps({"n": self.indices[i], "word": list(self.words[i]),
                                     "lambda": str(self.lambdas[i]), "N": self.N[i],
                                     "Nstar": self.Nstar[i]}))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_lambdas(cls, params: MeasureParams, lambdas: Iterable[int]) -> "SpectrumCandidate":
        """Wrap an external list; ``N``/``Nstar`` use the list position as index."""
        lams = [int(x) for x in lambdas]
        N, Ns, words, sups = [], [], [], []
        for n, lam in enumerate(lams):
            d = b_adic_expand(lam, params.b)
            k = len(q_adic_expand(n, params.q)) if n else 0
            N.append(len(d))
            Ns.append(sum(1 for c in d.digits[k:] if c))
            words.append(q_adic_expand(n, params.q) if n else ())
            sups.append(d.support())
        return cls(params, lams, N, Ns, words, list(range(len(lams))), sups, "external")


def _element(spec: TreeMappingSpec, stem: Word, offset: int = 0):
    """Support, N and N* of the path ``stem 0^inf`` read from position ``offset``."""
    sup = spec.stem_support(stem)
    if offset:
        sup = [(p - offset, d) for p, d in sup if p >= offset]
    k = len(stem) - offset
    N = sup[-1][0] + 1 if sup else 0
    Ns = sum(1 for p, _ in sup if p >= k)
    return sup, N, Ns


def enumerate_spec(spec: TreeMappingSpec, count: int, cap: int = DEFAULT_CAP) -> SpectrumCandidate:
    """First ``count`` elements in the q-adic order of their stems.

    Irregular stems are skipped; the tree index of every element is kept.

    Raises
    ------
    ResourceError
        If ``count`` exceeds ``cap``.
    """
    if count > cap:
        raise ResourceError(f"count {count} exceeds enumeration cap {cap}")
    q, b = spec.q, spec.b
    lams, N, Ns, words, idx, sups = [], [], [], [], [], []
    n = 0
    while len(lams) < count:
        stem = q_adic_expand(n, q) if n else ()
        if not spec.is_irregular(stem):
            sup, nn, ns = _element(spec, stem)
            lams.append(_value(sup, b))
            N.append(nn)
            Ns.append(ns)
            words.append(stem)
            idx.append(n)
            sups.append(sup)
        n += 1
    return SpectrumCandidate(spec.params, lams, N, Ns, words, idx, sups, spec)


def subtree_enumerate(spec: TreeMappingSpec, I: Word, count: int,
                      cap: int = DEFAULT_CAP) -> SpectrumCandidate:
    """Elements of the subtree set below ``I``, in the q-adic order of ``J``.

    The value for a path ``J`` is ``sum_k tau(I J|_k) b**(k-1)``.  The root
    path ``J = 0^inf`` is included iff ``I 0^inf`` is regular.
    """
    if count > cap:
        raise ResourceError(f"count {count} exceeds enumeration cap {cap}")
    I = tuple(I)
    q, b = spec.q, spec.b
    L = len(I)
    lams, N, Ns, words, idx, sups = [], [], [], [], [], []
    n = 0
    while len(lams) < count:
        J = q_adic_expand(n, q) if n else ()
        full = I + J
        stem, _ = stem_of(full)
        if not spec.is_irregular(stem):
            sup = [(p - L, d) for p, d in spec.stem_support(stem) if p >= L]
            lams.append(_value(sup, b))
            N.append(sup[-1][0] + 1 if sup else 0)
            Ns.append(sum(1 for p, _ in sup if p >= len(J)))
            words.append(J)
            idx.append(n)
            sups.append(sup)
        n += 1
    return SpectrumCandidate(spec.params, lams, N, Ns, words, idx, sups, spec)


def prefix_value(spec: TreeMappingSpec, I: Word) -> int:
    """``sum_{j <= |I|} tau(I|_j) b**(j-1)``."""
    return sum(spec.label(I[:j]) * spec.b ** (j - 1) for j in range(1, len(I) + 1))


# ---------------------------------------------------------------------------
# statistics


@dataclass
class DigitStats:
    """Window statistics of ``N`` and ``N*`` grouped by stem length.

    Level ``k`` holds the stems of length ``k``, i.e. tree indices in
    ``[q**(k-1), q**k)``.  Explicit arrays cover levels ``1..depth``; past
    that, ``level_fn`` supplies ``(min N*, max N*, max N)`` and all three are
    nondecreasing in ``k`` (``monotone_from`` is the first such level).

    Attributes
    ----------
    nstar_sup : int or None
        Certified supremum of ``N*`` over all elements when finite.
    """

    q: int
    min_nstar: list
    max_nstar: list
    max_N: list
    level_fn: Callable | None = None
    monotone_from: int | None = None
    nstar_sup: int | None = None
    lstar_exponent: Callable | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def depth(self) -> int:
        return len(self.max_N)

    def level(self, k: int) -> tuple:
        if k < 1:
            raise DomainError("levels start at 1")
        if k <= self.depth:
            return self.min_nstar[k - 1], self.max_nstar[k - 1], self.max_N[k - 1]
        if self.level_fn is None:
            raise DomainError(f"stats cover levels up to {self.depth}, asked for {k}")
        v = self._cache.get(k)
        if v is None:
            v = self.level_fn(k)
            if len(self._cache) < 100000:
                self._cache[k] = v
        return v

    def _max_over(self, lo: int, hi: int, col: int):
        """Max of column ``col`` over levels ``lo..hi``."""
        if hi < lo:
            return 0
        best = 0
        mono = self.monotone_from
        if mono is not None and hi >= mono:
            best = self.level(hi)[col]
            hi = min(hi, mono - 1)
        for k in range(lo, hi + 1):
            best = max(best, self.level(k)[col])
        return best

    def Nstar_window(self, m: int, n: int):
        """``max N*_k`` over ``q**m <= k < q**n``."""
        return self._max_over(m + 1, n, 1)

    def Lstar(self, n: int):
        """``min N*_k`` over ``q**n <= k < q**(n+1)``."""
        return self.level(n + 1)[0]

    def M(self, n: int):
        """``max N_k`` over ``1 <= k < q**n``."""
        return self._max_over(1, n, 2)

    def to_json(self, levels: int | None = None) -> dict:
        K = self.depth if levels is None else levels
        rows = []
        for k in range(1, K + 1):
            a, c, m = self.level(k)
            rows.append({"level": k, "min_nstar": a, "max_nstar": c, "max_N": m})
        return {"q": self.q, "nstar_sup": self.nstar_sup, "levels": rows}


def stats(c: SpectrumCandidate, up_to_level: int) -> DigitStats:
    """Exact statistics from an enumerated candidate.

    Needs every tree index below ``q**up_to_level`` to be enumerated (or
    skipped as irregular).
    """
    q = c.params.q
    need = q**up_to_level - 1
    if not c.indices or c.indices[-1] < need:
        raise DomainError(f"candidate does not reach tree index {need}")
    mn = [None] * up_to_level
    mx = [0] * up_to_level
    mN = [0] * up_to_level
    for i, n in enumerate(c.indices):
        if n == 0 or n > need:
            continue
        k = len(c.words[i]) if c.words[i] else len(q_adic_expand(n, q))
        j = k - 1
        s = c.Nstar[i]
        mn[j] = s if mn[j] is None else min(mn[j], s)
        mx[j] = max(mx[j], s)
        mN[j] = max(mN[j], c.N[i])
    mn = [0 if v is None else v for v in mn]
    return DigitStats(q, mn, mx, mN)


def spec_stats(spec: TreeMappingSpec, exact_levels: int | None = None) -> DigitStats:
    """Statistics read off the tail rule, exact for every level.

    Levels containing a stem with a nonstandard tail (override, table entry,
    zeroed or irregular stem) are enumerated explicitly; all later levels
    follow the rule's closed form, which is nondecreasing.
    """
    q = spec.q
    exc = spec.exception_stems()
    E = max((len(s) for s in exc), default=0)
    if exact_levels is not None:
        E = max(E, exact_levels)
    rule = spec.tail_rule
    mn, mx, mN = [], [], []
    for k in range(1, E + 1):
        lo = hi = top = None
        for n in range(q ** (k - 1), q**k):
            stem = q_adic_expand(n, q)
            if spec.is_irregular(stem):
                continue
            t = spec.tail(stem)
            s = len(t)
            Nn = k + (t[-1][0] if t else 0)
            lo = s if lo is None else min(lo, s)
            hi = s if hi is None else max(hi, s)
            top = Nn if top is None else max(top, Nn)
        mn.append(lo or 0)
        mx.append(hi or 0)
        mN.append(top or k)
    sup = rule.nstar_sup()
    if sup is not None:
        sup = max([sup] + mx)

    def level_fn(k, _rule=rule, _q=q):
        return _rule.level(k, _q)

    expo = None
    if isinstance(rule, LogBlock) and rule.lstar_exponent(0.5) is not None:
        expo = rule.lstar_exponent
    return DigitStats(q, mn, mx, mN, level_fn, E + 1, sup, expo)
