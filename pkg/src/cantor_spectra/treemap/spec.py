"""Finitely described labelings of the q-adic tree.

A mapping assigns a signed digit to every node (word) of the tree.  Nodes
ending in a nonzero letter ``i`` get ``base_residues[i]`` unless overridden.
A node ``s 0^l`` with ``s`` ending in a nonzero letter is the ``l``-th tail
node of the stem ``s``; its digit comes from the tail rule (or from the
generator of an irregular stem).  All-zero words are labeled 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Union

from ..errors import CanonicalFormError, DomainError, ParameterError, SchemaError
from ..numtheory import MeasureParams, Word, check_word, q_adic_eval


def stem_of(w: Word) -> tuple[Word, int]:
    """Split ``w = s 0^l`` with ``s`` empty or ending in a nonzero letter."""
    k = len(w)
    while k and w[k - 1] == 0:
        k -= 1
    return w[:k], len(w) - k


# ---------------------------------------------------------------------------
# tail rules: each returns the nonzero tail digits (l, digit) of a stem


@dataclass(frozen=True)
class AllZero:
    """Every tail digit is 0."""

    kind = "all_zero"

    def tail(self, stem: Word, n: int, q: int) -> tuple:
        return ()

    def level(self, k: int, q: int) -> tuple[int, int, int]:
        """(min N*, max N*, max N) over stems of length ``k``."""
        return 0, 0, k

    def nstar_sup(self):
        return 0

    def to_json(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class SparsePowers:
    """A single tail digit at depth ``m_n`` after the stem with index ``n``.

    ``m_seq`` lists ``m_1, m_2, ...``; past its end the depth grows by one
    per index, which keeps the sequence strictly increasing.
    """

    m_seq: tuple
    digit: int
    kind = "sparse_powers"

    def __post_init__(self):
        if not self.m_seq:
            raise ParameterError("m_seq must be nonempty")
        if any(m < 1 for m in self.m_seq):
            raise ParameterError("m_seq entries must be positive")
        if any(b <= a for a, b in zip(self.m_seq, self.m_seq[1:])):
            raise ParameterError("m_seq must be strictly increasing")
        if self.digit == 0:
            raise ParameterError("sparse digit must be nonzero")

    def m(self, n: int) -> int:
        if n < 1:
            raise DomainError("sparse depth defined for n >= 1")
        W = len(self.m_seq)
        return self.m_seq[n - 1] if n <= W else self.m_seq[-1] + (n - W)

    def tail(self, stem: Word, n: int, q: int) -> tuple:
        return ((self.m(n), self.digit),)

    def level(self, k: int, q: int) -> tuple[int, int, int]:
        return 1, 1, k + self.m(q**k - 1)

    def nstar_sup(self):
        return 1

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": list(self.m_seq), "digit": self.digit}


@dataclass(frozen=True)
class LogBlock:
    """A block of ``K`` equal tail digits right after each stem.

    ``K = max(min_count, round(coef * ln x))`` where ``x = k - 1`` for a stem
    of length ``k`` (``base="length"``) or ``x = log_q n`` for the stem with
    index ``n`` (``base="index"``); ``round`` is ``ceil`` or ``floor``, and
    ``ln x`` for ``x <= 1`` counts as 0 when positive rounding would apply.
    """

    digit: int
    coef: float
    base: str = "length"
    rounding: str = "ceil"
    min_count: int = 0
    kind = "log_block"

    def __post_init__(self):
        if self.base not in ("length", "index"):
            raise ParameterError(f"base must be 'length' or 'index', got {self.base!r}")
        if self.rounding not in ("ceil", "floor"):
            raise ParameterError(f"rounding must be 'ceil' or 'floor', got {self.rounding!r}")
        if not self.coef > 0 or self.min_count < 0 or self.digit == 0:
            raise ParameterError("need coef > 0, min_count >= 0 and a nonzero digit")

    def count_at(self, x: float) -> int:
        if x <= 1.0:
            return self.min_count
        v = self.coef * math.log(x)
        c = math.ceil(v) if self.rounding == "ceil" else math.floor(v)
        return max(self.min_count, int(c))

    def count(self, n: int, k: int, q: int) -> int:
        if self.base == "length":
            return self.count_at(k - 1)
        return self.count_at(math.log(n, q))

    def tail(self, stem: Word, n: int, q: int) -> tuple:
        return tuple((ell, self.digit) for ell in range(1, self.count(n, len(stem), q) + 1))

    def level(self, k: int, q: int) -> tuple[int, int, int]:
        if self.base == "length":
            c = self.count_at(k - 1)
            return c, c, k + c
        lo = self.count_at(k - 1)
        # log_q(q^k - 1) < k; past 60 levels use k itself (an upper bound)
        hi = self.count_at(math.log(q**k - 1, q) if k <= 60 else float(k))
        return lo, hi, k + hi

    def nstar_sup(self):
        return None

    def lstar_exponent(self, c2: float) -> float | None:
        """Exponent ``p`` with ``c2**L*_n <= n**-p`` for all ``n >= 2``."""
        if self.base != "length" or self.rounding != "ceil":
            return None
        return self.coef * math.log(1.0 / c2)

    def to_json(self) -> dict:
        return {"kind": self.kind, "digit": self.digit, "coef": self.coef, "base": self.base,
                "rounding": self.rounding, "min_count": self.min_count}


@dataclass(frozen=True)
class Custom:
    """Explicit table of tail digits ``(stem, l) -> digit``; zero elsewhere."""

    entries: tuple  # ((stem, ell, digit), ...)
    kind = "custom"

    def __post_init__(self):
        object.__setattr__(self, "_by_stem", _group_entries(self.entries))

    def tail(self, stem: Word, n: int, q: int) -> tuple:
        return self._by_stem.get(stem, ())

    def level(self, k: int, q: int) -> tuple[int, int, int]:
        return 0, 0, k

    def stems(self):
        return self._by_stem.keys()

    def nstar_sup(self):
        return max((len(v) for v in self._by_stem.values()), default=0)

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "entries": [{"stem": list(s), "ell": l, "digit": d} for s, l, d in self.entries]}


def _group_entries(entries) -> dict:
    out: dict = {}
    for s, ell, d in entries:
        if d:
            out.setdefault(tuple(s), []).append((ell, d))
    return {k: tuple(sorted(v)) for k, v in out.items()}


TailRule = Union[AllZero, SparsePowers, LogBlock, Custom]

# ---------------------------------------------------------------------------
# irregular stems


GENERATORS = {
    "q_every_level": lambda ell, q: q,
    "q_even_levels": lambda ell, q: q if ell % 2 == 0 else 0,
}


@dataclass(frozen=True, order=True)
class IrregularPath:
    """A stem whose tail digits never become zero, with a named generator."""

    stem: tuple
    generator: str = "q_every_level"

    def __post_init__(self):
        if not self.stem or self.stem[-1] == 0:
            raise CanonicalFormError(f"irregular stem {self.stem} must end in a nonzero letter")
        if self.generator not in GENERATORS:
            raise ParameterError(f"unknown tail generator {self.generator!r}")

    def digit(self, ell: int, q: int) -> int:
        return GENERATORS[self.generator](ell, q)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeMappingSpec:
    """A finitely described maximal mapping on the q-adic tree.

    Parameters
    ----------
    params : MeasureParams
        Must satisfy ``q | b``.
    base_residues : tuple of int
        Digit for nodes ending in letter ``i``; entry 0 must be 0.
    tail_rule : TailRule
    overrides : tuple of (Word, int)
        Explicit node labels.  All-zero words cannot be overridden.
    irregular_paths : tuple of IrregularPath
    zeroed_stems : tuple of Word
        Stems whose tail digits are forced to 0 (used by regularization).
    """

    params: MeasureParams
    base_residues: tuple
    tail_rule: TailRule = field(default_factory=AllZero)
    overrides: tuple = ()
    irregular_paths: tuple = ()
    zeroed_stems: tuple = ()

    def __post_init__(self):
        p = self.params
        p.require_r()
        q = p.q
        br = tuple(int(c) for c in self.base_residues)
        if len(br) != q:
            raise ParameterError(f"base_residues needs {q} entries, got {len(br)}")
        if br[0] != 0:
            raise ParameterError("base_residues[0] must be 0")
        ov = tuple(sorted((check_word(w, q), int(d)) for w, d in self.overrides))
        seen = set()
        for w, _ in ov:
            if not any(w):
                raise DomainError(f"override on all-zero word {w} is not allowed")
            if w in seen:
                raise DomainError(f"duplicate override for node {w}")
            seen.add(w)
        irr = tuple(sorted(self.irregular_paths))
        if len({x.stem for x in irr}) != len(irr):
            raise DomainError("duplicate irregular stem")
        for x in irr:
            check_word(x.stem, q)
        zs = tuple(sorted({check_word(w, q) for w in self.zeroed_stems}))
        for w in zs:
            if not w or w[-1] == 0:
                raise CanonicalFormError(f"zeroed stem {w} must end in a nonzero letter")
        object.__setattr__(self, "base_residues", br)
        object.__setattr__(self, "overrides", ov)
        object.__setattr__(self, "irregular_paths", irr)
        object.__setattr__(self, "zeroed_stems", zs)
        # lookup caches (not part of equality)
        tail_ov: dict = {}
        for w, d in ov:
            s, ell = stem_of(w)
            if ell:
                tail_ov.setdefault(s, {})[ell] = d
        object.__setattr__(self, "_ov", dict(ov))
        object.__setattr__(self, "_tail_ov", tail_ov)
        object.__setattr__(self, "_irr", {x.stem: x for x in irr})
        object.__setattr__(self, "_zero", frozenset(zs))

    # -- structure ---------------------------------------------------------

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def b(self) -> int:
        return self.params.b

    def is_irregular(self, stem: Word) -> bool:
        return stem in self._irr

    def exception_stems(self) -> set:
        """Stems whose tails differ from the plain tail rule."""
        out = set(self._tail_ov) | set(self._irr) | set(self._zero)
        if isinstance(self.tail_rule, Custom):
            out |= set(self.tail_rule.stems())
        return out

    def tail(self, stem: Word) -> tuple:
        """Nonzero tail digits ``(l, digit)`` of a regular stem, sorted by ``l``."""
        if stem in self._irr:
            raise DomainError(f"stem {stem} is irregular")
        if not stem:
            return ()
        if stem in self._zero:
            base: dict = {}
        else:
            base = dict(self.tail_rule.tail(stem, q_adic_eval(stem, self.q), self.q))
        for ell, d in self._tail_ov.get(stem, {}).items():
            base[ell] = d
        return tuple(sorted((l, d) for l, d in base.items() if d))

    def label(self, w: Word) -> int:
        """The digit assigned to node ``w``."""
        w = tuple(w)
        d = self._ov.get(w)
        if d is not None:
            return d
        s, ell = stem_of(w)
        if not s:
            return 0
        if ell == 0:
            return self.base_residues[w[-1]]
        if s in self._zero:
            return 0
        irr = self._irr.get(s)
        if irr is not None:
            return irr.digit(ell, self.q)
        return dict(self.tail_rule.tail(s, q_adic_eval(s, self.q), self.q)).get(ell, 0)

    def stem_support(self, stem: Word) -> list[tuple[int, int]]:
        """Nonzero ``(position, digit)`` pairs of the path ``stem 0^inf``."""
        out = []
        for j in range(1, len(stem) + 1):
            d = self.label(stem[:j])
            if d:
                out.append((j - 1, d))
        k = len(stem)
        out.extend((k - 1 + ell, d) for ell, d in self.tail(stem))
        return out


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    node: tuple
    clause: str
    message: str

    def to_json(self) -> dict:
        return {"node": list(self.node), "clause": self.clause, "message": self.message}


@dataclass
class ValidationReport:
    depth: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"depth": self.depth, "ok": self.ok,
                "violations": [v.to_json() for v in self.violations]}


def _all_words(q: int, depth: int):
    level = [()]
    for _ in range(depth):
        level = [w + (s,) for w in level for s in range(q)]
        yield from level


def validate(spec: TreeMappingSpec, depth: int = 6) -> ValidationReport:
    """Check the three defining clauses of a maximal mapping on all nodes to ``depth``.

    Clause (i): all-zero words carry 0.  Clause (ii): the label of a node
    ending in letter ``i`` is a signed digit congruent to ``i`` mod ``q``.
    Clause (iii): some regular path passes through the node.  Tail digits
    of regular stems beyond ``depth`` are checked too, since they are finite.
    """
    if depth < 1:
        raise DomainError("depth must be >= 1")
    q, b = spec.q, spec.b
    out = []
    budget = len(spec.irregular_paths) + 1

    def check_digit(node, d, letter):
        if not -1 <= d <= b - 2:
            out.append(Violation(node, "ii", f"digit {d} outside [-1, {b - 2}]"))
        elif (d - letter) % q:
            out.append(Violation(node, "ii", f"digit {d} not congruent to {letter} mod {q}"))

    for w in _all_words(q, depth):
        d = spec.label(w)
        if not any(w):
            if d != 0:
                out.append(Violation(w, "i", f"all-zero node labeled {d}"))
            continue
        check_digit(w, d, w[-1])
        s, _ = stem_of(w)
        if spec.is_irregular(s):
            ok = any(not spec.is_irregular(w + (0,) * a + (1,)) for a in range(budget + 1))
            if not ok:
                out.append(Violation(w, "iii", "no regular continuation found"))
    # tail digits of stems inside the depth, at any depth
    for w in _all_words(q, depth):
        if w and w[-1] != 0 and not spec.is_irregular(w):
            for ell, d in spec.tail(w):
                node = w + (0,) * ell
                if len(node) > depth:
                    check_digit(node, d, 0)
    # override sanity beyond the checked depth
    for w, d in spec.overrides:
        if len(w) > depth:
            check_digit(w, d, w[-1])
    return ValidationReport(depth, out)


def regularize(spec: TreeMappingSpec, paths: Iterable) -> TreeMappingSpec:
    """Zero the tails of the listed stems and drop them from the irregular set.

    Parameters
    ----------
    spec : TreeMappingSpec
    paths : iterable of Word or IrregularPath
        Stems (last letter nonzero).

    Returns
    -------
    TreeMappingSpec
        Labels ``s 0^k`` (``k >= 1``) are 0 for every listed stem ``s``.
    """
    stems = set()
    for x in paths:
        s = x.stem if isinstance(x, IrregularPath) else check_word(x, spec.q)
        if not s or s[-1] == 0:
            raise CanonicalFormError(f"stem {s} must end in a nonzero letter")
        stems.add(s)
    if not stems:
        return spec
    irr = tuple(x for x in spec.irregular_paths if x.stem not in stems)
    ov = tuple((w, d) for w, d in spec.overrides if not (stem_of(w)[1] and stem_of(w)[0] in stems))
    zeroed = tuple(set(spec.zeroed_stems) | stems)
    return TreeMappingSpec(spec.params, spec.base_residues, spec.tail_rule, ov, irr, zeroed)


def with_irregular(spec: TreeMappingSpec, stem, generator: str = "q_every_level") -> TreeMappingSpec:
    """Copy of ``spec`` whose path ``stem 0^inf`` carries a never-ending tail."""
    stem = check_word(stem, spec.q)
    irr = tuple(x for x in spec.irregular_paths if x.stem != stem) + (IrregularPath(stem, generator),)
    zeroed = tuple(s for s in spec.zeroed_stems if s != stem)
    return TreeMappingSpec(spec.params, spec.base_residues, spec.tail_rule, spec.overrides, irr, zeroed)


# ---------------------------------------------------------------------------
# JSON


def _rule_from_json(d, q: int) -> TailRule:
    if not isinstance(d, dict) or "kind" not in d:
        raise SchemaError("tail_rule must be an object with a 'kind'", "tail_rule")
    kind = d["kind"]
    try:
        if kind == "all_zero":
            return AllZero()
        if kind == "sparse_powers":
            return SparsePowers(tuple(int(m) for m in d["m"]), int(d.get("digit", q)))
        if kind == "log_block":
            return LogBlock(int(d.get("digit", q)), float(d["coef"]), d.get("base", "length"),
                            d.get("rounding", "ceil"), int(d.get("min_count", 0)))
        if kind == "custom":
            ents = []
            for i, e in enumerate(d.get("entries", [])):
                try:
                    ents.append((tuple(int(s) for s in e["stem"]), int(e["ell"]), int(e["digit"])))
                except (KeyError, TypeError, ValueError) as exc:
                    raise SchemaError(f"bad entry ({exc})", f"tail_rule.entries[{i}]") from exc
            return Custom(tuple(ents))
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}", "tail_rule") from exc
    except (ParameterError, DomainError) as exc:
        raise SchemaError(str(exc), "tail_rule") from exc
    raise SchemaError(f"unknown kind {kind!r}", "tail_rule.kind")


def spec_to_json(spec: TreeMappingSpec) -> dict:
    """Mapping-spec document (plain JSON types)."""
    return {
        "q": spec.q,
        "b": spec.b,
        "base_residues": list(spec.base_residues),
        "tail_rule": spec.tail_rule.to_json(),
        "overrides": [{"word": list(w), "digit": d} for w, d in spec.overrides],
        "irregular_paths": [{"stem": list(x.stem), "tail_digits": x.generator}
                            for x in spec.irregular_paths],
        "zeroed_stems": [list(w) for w in spec.zeroed_stems],
    }


def spec_from_json(doc: dict) -> TreeMappingSpec:
    """Parse a mapping-spec document; extra keys (e.g. ``validation``) are ignored.

    Raises
    ------
    SchemaError
        With a path to the offending field.
    """
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object")
    for key in ("q", "b"):
        if not isinstance(doc.get(key), int):
            raise SchemaError("missing or non-integer", key)
    try:
        p = MeasureParams(doc["q"], doc["b"])
        p.require_r()
    except (ParameterError, ValueError) as exc:
        raise SchemaError(str(exc), "q,b") from exc
    q = p.q
    br = doc.get("base_residues", list(range(q)))
    if not isinstance(br, list) or not all(isinstance(c, int) for c in br):
        raise SchemaError("must be a list of integers", "base_residues")
    rule = _rule_from_json(doc.get("tail_rule", {"kind": "all_zero"}), q)
    ov = []
    for i, o in enumerate(doc.get("overrides", [])):
        try:
            w = check_word(o["word"], q)
            ov.append((w, int(o["digit"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad override ({exc})", f"overrides[{i}]") from exc
    irr = []
    for i, o in enumerate(doc.get("irregular_paths", [])):
        try:
            irr.append(IrregularPath(check_word(o["stem"], q), o.get("tail_digits", "q_every_level")))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad irregular path ({exc})", f"irregular_paths[{i}]") from exc
    zs = []
    for i, w in enumerate(doc.get("zeroed_stems", [])):
        try:
            zs.append(check_word(w, q))
        except (TypeError, ValueError) as exc:
            raise SchemaError(str(exc), f"zeroed_stems[{i}]") from exc
    try:
        return TreeMappingSpec(p, tuple(br), rule, tuple(ov), tuple(irr), tuple(zs))
    except (ParameterError, DomainError) as exc:
        raise SchemaError(str(exc), "spec") from exc
