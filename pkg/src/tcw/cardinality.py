"""Cardinalities in N ∪ {Inf}, Dickson-minimal antichains, finitely
described cardinality sets and spectra.

Cardinality tuples are plain tuples aligned with an ordered tuple of sort
names; ``INF`` (``math.inf``) is the single infinite cardinal.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import OracleExhausted, TheoryError
from .partitions import FREE, IDENTITY, ShapeTag, parse_tag

INF = math.inf

# How many members past the first candidate a feasibility filter may skip.
SCAN_LIMIT = 64


def is_inf(x):
    return x == INF


def fmt_ext(x):
    return "Inf" if x == INF else str(int(x))


def parse_ext(text):
    t = str(text).strip()
    if t.lower() in ("inf", "aleph0", "ℵ₀", "omega"):
        return INF
    n = int(t)
    if n < 1:
        raise ValueError(f"cardinalities start at 1, got {n}")
    return n


def fmt_tuple(t):
    return "(" + ",".join(fmt_ext(x) for x in t) + ")"


def fmt_tuples(ts):
    return "{" + ", ".join(fmt_tuple(t) for t in sorted(ts)) + "}"


def leq(a, b):
    """Componentwise order on tuples."""
    return all(x <= y for x, y in zip(a, b))


def dickson_minimal(tuples: Iterable[Tuple]):
    """The ≤-minimal elements, sorted. Duplicates collapse."""
    pts = sorted(set(tuple(t) for t in tuples))
    out: List[Tuple] = []
    # in lexicographic order a dominating point never precedes a point it dominates
    for p in pts:
        if not any(leq(q, p) for q in out):
            out.append(p)
    return out


def project(t: Tuple, idx: Sequence[int]):
    return tuple(t[i] for i in idx)


# ---------------------------------------------------------------- oracles


@dataclass(frozen=True)
class SequenceOracle:
    """A strictly increasing integer sequence known on a finite prefix.

    ``table[i]`` is the value at index ``start + i``.  When ``rule`` is
    given the sequence is computable and values past the table come from
    it; otherwise a query past the table raises OracleExhausted.
    """

    name: str
    table: Tuple[int, ...]
    start: int = 0
    rule: Optional[Callable[[int], int]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if any(b <= a for a, b in zip(self.table, self.table[1:])):
            raise TheoryError(f"oracle {self.name} is not strictly increasing on its prefix")

    @property
    def monotone_tail(self):
        """True when values beyond the table are available."""
        return self.rule is not None

    tail_unbounded = monotone_tail

    @property
    def last_index(self):
        return self.start + len(self.table) - 1

    def __call__(self, n: int) -> int:
        if n < self.start:
            raise OracleExhausted(self.name, n, f"oracle {self.name!r} starts at index {self.start}")
        i = n - self.start
        if i < len(self.table):
            return self.table[i]
        if self.rule is None:
            raise OracleExhausted(self.name, n)
        return int(self.rule(n))

    def known(self, n: int):
        return n >= self.start and (self.rule is not None or n - self.start < len(self.table))


def computable_oracle(name, fn, start=0, prefix=8):
    return SequenceOracle(name, tuple(fn(n) for n in range(start, start + prefix)), start, fn)


# ---------------------------------------------------------------- card sets


@dataclass(frozen=True)
class CardSet:
    """A set of finite cardinalities, plus Inf when ``include_inf``.

    kind 'finite' lists ``values``; 'from' is every n ≥ ``min``; 'seq' is
    ``scale * oracle(n)`` for n ≥ ``start``.
    """

    kind: str
    values: Tuple[int, ...] = ()
    min: int = 1
    oracle: Optional[SequenceOracle] = None
    start: int = 1
    scale: int = 1
    include_inf: bool = False

    def __post_init__(self):
        if self.kind not in ("finite", "from", "seq"):
            raise TheoryError(f"unknown cardset kind {self.kind!r}")
        object.__setattr__(self, "values", tuple(sorted(set(int(v) for v in self.values))))
        if self.kind == "finite":
            if any(v < 1 for v in self.values):
                raise TheoryError("cardinalities start at 1")
            if not self.values and not self.include_inf:
                raise TheoryError("a finite cardset must be non-empty or include Inf")
        if self.kind == "from" and self.min < 1:
            raise TheoryError("'from' needs min ≥ 1")
        if self.kind == "seq":
            if self.oracle is None:
                raise TheoryError("'seq' cardset needs an oracle")
            if self.scale < 1:
                raise TheoryError("scale must be positive")

    @property
    def finite_unbounded(self):
        return self.kind in ("from", "seq")

    @property
    def sup_finite(self):
        """Largest finite member, INF when unbounded, None when there is none."""
        if self.kind == "finite":
            return self.values[-1] if self.values else None
        return INF

    @property
    def inf_only(self):
        return self.kind == "finite" and not self.values and self.include_inf

    @property
    def upward_closed(self):
        return self.include_inf and (self.inf_only or self.kind == "from")

    def seq_member(self, n):
        return self.scale * self.oracle(n)

    def finite_members(self) -> Iterator[int]:
        """Finite members in increasing order (may raise OracleExhausted)."""
        if self.kind == "finite":
            yield from self.values
        elif self.kind == "from":
            yield from itertools.count(self.min)
        else:
            for n in itertools.count(self.start):
                v = self.seq_member(n)
                if v >= 1:
                    yield v

    def members_upto(self, bound):
        """Finite members ≤ bound. Raises OracleExhausted if undecidable."""
        out = []
        for v in self.finite_members():
            if v > bound:
                break
            out.append(v)
            if v == bound:  # members strictly increase
                break
        return out

    def describe(self):
        if self.kind == "finite":
            core = "{" + ",".join(map(str, self.values)) + "}" if self.values else ""
        elif self.kind == "from":
            core = f"From({self.min})"
        else:
            sc = f"{self.scale}*" if self.scale != 1 else ""
            core = f"{sc}{self.oracle.name}(n≥{self.start})"
        if self.include_inf:
            return f"{core}+Inf" if core else "Inf"
        return core

    __str__ = describe


def finite(values, inf=False):
    return CardSet("finite", tuple(values), include_inf=inf)


def from_(n, inf=True):
    return CardSet("from", min=n, include_inf=inf)


def inf_only():
    return CardSet("finite", (), include_inf=True)


def seq(oracle, start=1, scale=1, inf=True):
    return CardSet("seq", oracle=oracle, start=start, scale=scale, include_inf=inf)


def cardset_contains(cs: CardSet, n):
    if n == INF:
        return cs.include_inf
    if cs.kind == "finite":
        return n in cs.values
    if cs.kind == "from":
        return n >= cs.min
    for v in cs.finite_members():
        if v >= n:
            return v == n
    return False


def cardset_least(cs: CardSet, lower, ok: Optional[Callable[[object], bool]] = None):
    """Least member ≥ lower accepted by ``ok`` (Inf is a member iff
    ``include_inf``); None if there is none."""
    lower = max(lower, 1)
    if lower != INF:
        skipped = 0
        if cs.kind == "from":
            it: Iterable[int] = itertools.count(max(cs.min, lower))
        else:
            it = (v for v in cs.finite_members() if v >= lower)
        for v in it:
            if ok is None or ok(v):
                return v
            skipped += 1
            if skipped > SCAN_LIMIT:
                break
    if cs.include_inf and (ok is None or ok(INF)):
        return INF
    return None


def cardset_min_geq(cs: CardSet, lower):
    """Least member of ``cs`` that is ≥ ``lower``."""
    return cardset_least(cs, lower)


# ---------------------------------------------------------------- spectra


@dataclass(frozen=True)
class Piece:
    """One product (or diagonal) block of a spectrum.

    ``cards[i]`` constrains sort i.  Sorts listed in ``tie`` must have
    equal cardinality drawn from ``cards[tie[0]]``.  ``trivial`` admits in
    addition the one-element identity model on the first sort.
    """

    cards: Tuple[CardSet, ...]
    tie: Tuple[int, ...] = ()
    tag: ShapeTag = FREE
    trivial: bool = False

    def __post_init__(self):
        object.__setattr__(self, "cards", tuple(self.cards))
        object.__setattr__(self, "tie", tuple(sorted(self.tie)))
        object.__setattr__(self, "tag", parse_tag(self.tag))
        if self.tie and len(self.tie) < 2:
            raise TheoryError("a diagonal needs at least two sorts")

    def card(self, i):
        return self.cards[self.tie[0]] if i in self.tie else self.cards[i]

    def expanded(self):
        """This piece plus, when ``trivial``, the one-element identity piece."""
        if not self.trivial:
            return [self]
        base = replace(self, trivial=False)
        one = list(self.cards)
        one[0] = finite([1])
        tie = tuple(i for i in self.tie if i != 0)
        if len(tie) < 2:
            tie = ()
        return [base, Piece(tuple(one), tie, IDENTITY, False)]

    def least_point(self, demand: Sequence, ok: Optional[Callable[[int, object], bool]] = None):
        """Least point of the piece dominating ``demand`` (componentwise) whose
        coordinates pass ``ok(sort_index, value)``; None if impossible."""
        out = list(demand)
        done = set()
        if self.tie:
            lo = max(demand[i] for i in self.tie)
            cs = self.cards[self.tie[0]]
            v = cardset_least(cs, lo, (lambda c: all(ok(i, c) for i in self.tie)) if ok else None)
            if v is None:
                return None
            for i in self.tie:
                out[i] = v
            done = set(self.tie)
        for i, cs in enumerate(self.cards):
            if i in done:
                continue
            v = cardset_least(cs, demand[i], (lambda c, i=i: ok(i, c)) if ok else None)
            if v is None:
                return None
            out[i] = v
        return tuple(out)

    def points(self, bound, with_inf=True):
        """Points with finite coordinates ≤ bound (plus Inf when allowed);
        ignores the tag.  May raise OracleExhausted."""
        per = []
        for i, cs in enumerate(self.cards):
            vals = list(cs.members_upto(bound))
            if with_inf and cs.include_inf:
                vals.append(INF)
            per.append(vals)
        out = set()
        if self.tie:
            tied = per[self.tie[0]]
            others = [per[i] if i not in self.tie else [None] for i in range(len(per))]
            for combo in itertools.product(*others):
                for v in tied:
                    p = list(combo)
                    for i in self.tie:
                        p[i] = v
                    out.add(tuple(p))
        else:
            out.update(itertools.product(*per))
        return sorted(out)

    def describe(self, sorts):
        parts = []
        for i, s in enumerate(sorts):
            if self.tie and i == self.tie[0]:
                parts.append("=".join(sorts[j] for j in self.tie) + ":" + self.cards[i].describe())
            elif i in self.tie:
                continue
            else:
                parts.append(f"{s}:{self.cards[i].describe()}")
        txt = " × ".join(parts)
        if not self.tag.free:
            txt += f" [{self.tag}]"
        if self.trivial:
            txt += " (+trivial)"
        return txt


@dataclass(frozen=True)
class Spectrum:
    sorts: Tuple[str, ...]
    pieces: Tuple[Piece, ...]

    def __post_init__(self):
        object.__setattr__(self, "sorts", tuple(self.sorts))
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not self.pieces:
            raise TheoryError("a spectrum needs at least one piece")
        for p in self.pieces:
            if len(p.cards) != len(self.sorts):
                raise TheoryError("every piece must constrain every sort")
            if any(i >= len(self.sorts) for i in p.tie):
                raise TheoryError("diagonal refers to an unknown sort")

    def expanded(self):
        return [q for p in self.pieces for q in p.expanded()]

    def index(self, S):
        return tuple(self.sorts.index(s) for s in S)


def spectrum_cover(spec: Spectrum, demand: Sequence, S: Optional[Sequence[str]] = None, ok=None):
    """Dickson-minimal spectrum points above ``demand``, projected to ``S``.

    ``ok(piece, sort_index, value)`` filters candidate coordinates (used
    for shape-tag feasibility)."""
    S = tuple(spec.sorts) if S is None else tuple(S)
    idx = spec.index(S)
    pts = []
    for piece in spec.expanded():
        f = (lambda i, c, piece=piece: ok(piece, i, c)) if ok else None
        p = piece.least_point(demand, f)
        if p is not None:
            pts.append(project(p, idx))
    return dickson_minimal(pts)
