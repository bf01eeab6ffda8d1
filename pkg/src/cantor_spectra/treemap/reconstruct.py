"""Recover node labels from a finite orthogonal set."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..errors import DomainError
from ..numtheory import MeasureParams, b_adic_expand, in_zero_set


@dataclass
class PartialMapping:
    """Labels recovered from a finite sample.

    Attributes
    ----------
    labels : dict
        Word -> digit, or ``None`` when the sample does not determine it.
    flags : list of str
        Digit sets with two entries in one residue class, or more than
        ``q`` entries.
    bizero_violation : tuple or None
        First pair (scaled values) whose difference is not a zero.
    """

    params: MeasureParams
    depth: int
    labels: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    bizero_violation: tuple | None = None

    def determined(self) -> dict:
        return {w: d for w, d in self.labels.items() if d is not None}

    def undetermined(self) -> list:
        return [w for w, d in self.labels.items() if d is None]


def mapping_from_set(lams, p: MeasureParams, depth: int) -> PartialMapping:
    """Rebuild labels up to ``depth`` from scaled frequencies ``r * lambda``.

    For a prefix ``c_1..c_n`` of signed digits, the digit set ``D(c_1..c_n)``
    collects the next digit of every sample element starting with it.  The
    label of ``w s`` is the element of ``D(tau(w|_1), ..., tau(w))`` that is
    congruent to ``s`` mod ``q``.

    Raises
    ------
    DomainError
        If 0 is missing or an element is not a multiple of ``r``.
    """
    r = p.require_r()
    q, b = p.q, p.b
    vals = sorted({int(x) for x in lams})
    if 0 not in vals:
        raise DomainError("set must contain 0 (normalize by translation first)")
    bad = [x for x in vals if x % r]
    if bad:
        raise DomainError(f"element {bad[0]} is not a multiple of r={r}")
    out = PartialMapping(p, depth)
    for x, y in combinations(vals, 2):
        if not in_zero_set(y - x, p):
            out.bizero_violation = (y, x)
            break
    exps = []
    for x in vals:
        d = b_adic_expand(x // r, b).digits
        exps.append(tuple(d[:depth]) + (0,) * max(0, depth - len(d)))
    dsets: dict = {}
    for e in exps:
        for n in range(depth):
            dsets.setdefault(e[:n], set()).add(e[n])
    for pre, ds in sorted(dsets.items(), key=lambda kv: (len(kv[0]), kv[0])):
        classes: dict = {}
        for c in ds:
            classes.setdefault(c % q, []).append(c)
        dup = [sorted(v) for v in classes.values() if len(v) > 1]
        if dup:
            out.flags.append(f"D{list(pre)} has digits {dup[0]} in one residue class")
        if len(ds) > q:
            out.flags.append(f"D{list(pre)} has {len(ds)} > q elements")
    # walk the tree; labels of a node need the labels of its prefixes
    labels: dict = {}
    frontier = [((), ())]
    for _ in range(depth):
        nxt = []
        for w, digs in frontier:
            ds = dsets.get(digs)
            for s in range(q):
                node = w + (s,)
                if digs is None or ds is None:
                    labels[node] = None
                    nxt.append((node, None))
                    continue
                cand = sorted(c for c in ds if (c - s) % q == 0)
                if len(cand) == 1:
                    labels[node] = cand[0]
                    nxt.append((node, digs + (cand[0],)))
                else:
                    labels[node] = None
                    nxt.append((node, None))
        frontier = nxt
    out.labels = labels
    return out
