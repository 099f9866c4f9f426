"""Brute-force reference: enumerate small interpretations directly.

Nothing here uses the partition search or the cover computation; the
only shared pieces are formula evaluation, spectrum membership and the
check of a shape tag on a concrete function table.

Infinite coordinates are handled by a padding argument: a model of a
quantifier-free formula with a finite domain ``d`` for some sort (closed
under s and meeting the tag) extends to one where that sort is countably
infinite, because fresh elements can always be added without touching
the valued ones (as fixed points, or pairwise swapped, or in a chain).
So an Inf coordinate is realized iff some proxy size ``1..bound`` is.
"""
from __future__ import annotations

import itertools
import os
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .cardinality import INF, CardSet, Piece, dickson_minimal, fmt_tuple, project
from .errors import BudgetExceeded, OracleExhausted
from .logic import (
    FALSE,
    Formula,
    Interpretation,
    Not,
    Or,
    Term,
    conj,
    disj,
    evaluate,
    max_depths,
    variables,
)
from .partitions import ShapeTag, tag_holds
from .verdict import proved, refuted, unknown

DEFAULT_BUDGET = 20_000_000


def default_bound(T):
    return 4 if T.signature.has_unary_fn else 6


class Budget:
    """Counts formula evaluations; TCW_BUDGET overrides the cap."""

    def __init__(self, limit=None):
        if limit is None:
            limit = int(os.environ.get("TCW_BUDGET", DEFAULT_BUDGET))
        self.limit = limit
        self.used = 0

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"oracle budget of {self.limit} evaluations exceeded")


# ------------------------------------------------------------ function tables


def _relabel(table, perm):
    n = len(table)
    out = [0] * n
    for a in range(n):
        out[perm[a]] = perm[table[a]]
    return tuple(out)


@lru_cache(maxsize=None)
def function_classes(n: int) -> Tuple[Tuple[int, ...], ...]:
    """One canonical table per isomorphism class of functions on n points."""
    if n > 6:
        raise BudgetExceeded("function tables beyond 6 elements are not enumerated")
    perms = list(itertools.permutations(range(n)))
    seen = set()
    out = []
    for t in itertools.product(range(n), repeat=n):
        if t in seen:
            continue
        orbit = {_relabel(t, p) for p in perms}
        seen |= orbit
        out.append(min(orbit))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def automorphisms(table: Tuple[int, ...]):
    n = len(table)
    return tuple(
        p for p in itertools.permutations(range(n)) if all(p[table[a]] == table[p[a]] for a in range(n))
    )


@lru_cache(maxsize=None)
def tagged_tables(n: int, tag: ShapeTag):
    return tuple(t for t in function_classes(n) if tag_holds(tag, t))


# ------------------------------------------------------------ valuations


def _rgs_valuations(k, n):
    """Maps of k variables into n elements up to renaming of elements."""
    val = [0] * k

    def rec(i, used):
        if i == k:
            yield tuple(val)
            return
        for b in range(min(used + 1, n)):
            val[i] = b
            yield from rec(i + 1, max(used, b + 1))

    yield from rec(0, 0)


def _fn_valuations(k, table):
    """Maps of k variables into the table's domain up to its automorphisms."""
    n = len(table)
    auts = automorphisms(table)
    for v in itertools.product(range(n), repeat=k):
        if all(v <= tuple(p[e] for e in v) for p in auts):
            yield v


# ------------------------------------------------------------ model search


class _Searcher:
    def __init__(self, T, phi, budget=None):
        self.T = T
        self.phi = phi
        self.sig = T.signature
        self.vars = variables(phi)
        self.by_sort = {s: [v for v in self.vars if v.sort == s] for s in self.sig.sorts}
        self.budget = budget or Budget()
        self.cache: Dict[Tuple, Optional[Interpretation]] = {}

    def models(self, sizes: Sequence[int], tag: ShapeTag, first_only=False) -> Iterator[Interpretation]:
        sig = self.sig
        sorts = sig.sorts
        tables = [None]
        if sig.has_unary_fn:
            tables = tagged_tables(sizes[0], tag)
        plain = [i for i, s in enumerate(sorts) if not (sig.has_unary_fn and i == 0)]
        plain_vals = [list(_rgs_valuations(len(self.by_sort[sorts[i]]), sizes[i])) for i in plain]
        doms = dict(zip(sorts, sizes))
        for t in tables:
            if t is not None:
                fvals = _fn_valuations(len(self.by_sort[sorts[0]]), t)
            else:
                fvals = [()]
            for fv in fvals:
                for combo in itertools.product(*plain_vals):
                    val = {}
                    if t is not None:
                        val.update(zip(self.by_sort[sorts[0]], fv))
                    for i, pv in zip(plain, combo):
                        val.update(zip(self.by_sort[sorts[i]], pv))
                    self.budget.tick()
                    m = Interpretation(sig, doms, t, val)
                    if evaluate(self.phi, m):
                        yield m
                        if first_only:
                            return

    def realize(self, sizes, tag):
        key = (tuple(sizes), tag)
        if key not in self.cache:
            self.cache[key] = next(self.models(sizes, tag, True), None)
        return self.cache[key]


def _coordinate_values(cs: CardSet, bound):
    """Finite members ≤ bound (stopping early if the oracle runs out)
    plus Inf when allowed; second value says whether the list is exact."""
    exact = True
    try:
        vals = cs.members_upto(bound)
    except OracleExhausted:
        exact = False
        vals = []
        try:
            for v in cs.finite_members():
                if v > bound:
                    break
                vals.append(v)
        except OracleExhausted:
            pass
    if cs.include_inf:
        vals = vals + [INF]
    return vals, exact


def _piece_points(piece: Piece, bound):
    per = []
    exact = True
    for i, cs in enumerate(piece.cards):
        vals, ok = _coordinate_values(piece.card(i), bound)
        exact = exact and ok
        per.append(vals)
    if piece.tie:
        t0 = piece.tie[0]
        others = [per[i] if i not in piece.tie else [None] for i in range(len(per))]
        pts = set()
        for combo in itertools.product(*others):
            for v in per[t0]:
                p = list(combo)
                for i in piece.tie:
                    p[i] = v
                pts.add(tuple(p))
        return sorted(pts), exact
    return sorted(itertools.product(*per)), exact


def _realize_point(srch: _Searcher, point, tag, bound):
    """Find a model for a spectrum point, using proxies for Inf coordinates."""
    inf_idx = [i for i, v in enumerate(point) if v == INF]
    if not inf_idx:
        return srch.realize(point, tag), point
    ranges = [range(1, bound + 1)] * len(inf_idx)
    for proxy in itertools.product(*ranges):
        sizes = list(point)
        for i, d in zip(inf_idx, proxy):
            sizes[i] = d
        m = srch.realize(tuple(sizes), tag)
        if m is not None:
            return m, tuple(sizes)
    return None, None


def _fn_demand(phi, sig, tag):
    """Size of a closed substructure that suffices for the s-sort."""
    depths = {v: d for v, d in max_depths(phi).items() if v.sort == sig.sorts[0]}
    if not depths:
        return 2 if tag.nofix else 1
    if tag.kind == "identity":
        return len(depths)
    slack = 2 if (tag.kind == "cycle_or" and tag.k == 2) else 1
    return sum(d + 1 + slack for d in depths.values())


def _complete_for(piece: Piece, phi, sig, bound):
    """Heuristic completeness: every minimal point of this piece lies in
    the enumerated box.  See module docs."""
    demand = []
    for i, s in enumerate(sig.sorts):
        if sig.has_unary_fn and i == 0:
            demand.append(_fn_demand(phi, sig, piece.tag))
        else:
            demand.append(max(1, sum(1 for v in variables(phi) if v.sort == s)))
    groups = [[i] for i in range(len(sig.sorts)) if i not in piece.tie]
    if piece.tie:
        groups.append(list(piece.tie))
    for g in groups:
        d = max(demand[i] for i in g)
        # parity-style tag conditions may skip a member or two
        need = 3 if (sig.has_unary_fn and 0 in g and piece.tag.nofix and piece.tag.kind) else 1
        cs = piece.card(g[0])
        if cs.include_inf and d > bound:
            return False
        try:
            above = []
            for v in cs.finite_members():
                if v >= d:
                    above.append(v)
                    if len(above) == need:
                        break
                if v > bound:
                    break
        except OracleExhausted:
            return False
        if any(v > bound for v in above):
            return False
    return True


def enumerate_models(T, phi: Formula, bound: int, budget=None) -> Iterator[Interpretation]:
    """Every finite T-model of phi with all domains ≤ bound, up to isomorphism."""
    srch = _Searcher(T, phi, budget)
    seen = set()
    for piece in T.spectrum.expanded():
        pts, _ = _piece_points(piece, bound)
        for p in pts:
            if INF in p:
                continue
            for m in srch.models(p, piece.tag):
                key = (p, m.fn, tuple(sorted((v.name, v.sort, e) for v, e in m.valuation.items())))
                if key not in seen:
                    seen.add(key)
                    yield m


def oracle_minmod(T, phi: Formula, S: Optional[Sequence[str]] = None, bound: Optional[int] = None, budget=None):
    """Dickson-minimal realized cardinality tuples at the bound, and
    whether the bound is known to be large enough."""
    bound = bound or default_bound(T)
    S = tuple(T.sorts) if S is None else tuple(S)
    idx = T.spectrum.index(S)
    srch = _Searcher(T, phi, budget)
    realized = []
    complete = True
    for piece in T.spectrum.expanded():
        pts, exact = _piece_points(piece, bound)
        # over an empty signature a missing tail value only matters when no
        # known member covers the demand, which _complete_for already rejects
        complete = complete and (exact or not T.signature.has_unary_fn) and _complete_for(piece, phi, T.signature, bound)
        for p in pts:
            if any(all(a <= b for a, b in zip(q, p)) for q in realized):
                continue
            m, _ = _realize_point(srch, p, piece.tag, bound)
            if m is not None:
                realized.append(p)
    return dickson_minimal(project(p, idx) for p in realized), complete


def oracle_model(T, phi: Formula, bound: Optional[int] = None, budget=None):
    """Some model of phi (with the realized spectrum point), or None."""
    bound = bound or default_bound(T)
    srch = _Searcher(T, phi, budget)
    for piece in T.spectrum.expanded():
        pts, _ = _piece_points(piece, bound)
        for p in pts:
            m, sizes = _realize_point(srch, p, piece.tag, bound)
            if m is not None:
                return m, p
    return None, None


def oracle_sat(T, phi: Formula, bound: Optional[int] = None, budget=None):
    """True / False when decided at the bound, None when incomplete."""
    mins, complete = oracle_minmod(T, phi, None, bound, budget)
    if mins:
        return True
    return False if complete else None


def describe_model(m: Interpretation, point=None):
    parts = []
    if point is not None:
        parts.append("sizes " + fmt_tuple(point))
    if m.fn is not None:
        parts.append("s=" + "".join(str(b) for b in m.fn))
    parts.append(", ".join(f"{v.name}:{v.sort}↦{e}" for v, e in sorted(m.valuation.items())))
    return "; ".join(parts)


def oracle_entails(T, cube: Formula, disjuncts: Sequence[Formula], bound: Optional[int] = None, budget=None):
    """Does ``cube`` T-entail the disjunction? Searches for countermodels."""
    bound = bound or default_bound(T)
    goal = disj(disjuncts) if disjuncts else FALSE
    counter = conj([cube, Not(goal)])
    m, p = oracle_model(T, counter, bound, budget)
    if m is not None:
        return refuted(f"countermodel {describe_model(m, p)}", (m, p), bounded=False)
    _, complete = oracle_minmod(T, counter, None, bound, budget)
    if complete:
        return proved(f"no countermodel up to bound {bound}")
    return unknown(f"no countermodel up to bound {bound}, bound not known to be sufficient")
