"""Finite witnesses: construction and bounded validation.

A witness is ``phi`` conjoined with a formula over fresh variables
``__w_<sort>_<i>``.  Three recipes are provided:

* ``generic``  - self-equalities ``w = w``, as many per sort as the
  lexicographically least all-finite minimal model of ``phi``;
* ``distinct`` - the same fresh variables, forced pairwise distinct;
* ``pow2_g``   - self-equalities, ``g(2^k)`` of them for the least k with
  ``g(2^k) >= |vars(phi)|``, using the closed form g(2^k) = 3*2^(k-1).
"""
from __future__ import annotations

from itertools import product
from typing import Dict, List, Optional, Sequence

from .cardinality import INF, cardset_contains, cardset_least, fmt_tuple
from .errors import OracleExhausted, WitnessError
from .logic import (
    And,
    Eq,
    Formula,
    Interpretation,
    evaluate,
    Neq,
    Var,
    conj,
    distinct,
    eq,
    variables,
    vars_of_sort,
)
from .minmod import is_sat, minmod
from .oracle import Budget, _piece_points, _realize_point, _Searcher, describe_model, oracle_sat
from .partitions import Partition, arrangement_formula, enumerate_partitions, footprints
from .verdict import Verdict, proved, refuted, unknown

RECIPES = ("generic", "distinct", "pow2_g")


def fresh_witness_var(sort, i):
    return Var(f"__w_{sort}_{i}", sort)


def g_at_power_of_two(k):
    """g(2^k): 2 for k = 0, else 3 * 2^(k-1)."""
    return 2 if k == 0 else 3 * 2 ** (k - 1)


def least_pow2_g(n):
    k = 0
    while g_at_power_of_two(k) < n:
        k += 1
    return g_at_power_of_two(k)


def _sat_safe(T, phi):
    """Satisfiability, falling back to 'sat' when a piece with an all-Inf
    point accepts every equality-consistent formula."""
    try:
        return is_sat(T, phi)
    except OracleExhausted:
        if not T.signature.has_unary_fn and any(
            all(c.include_inf for c in p.cards) for p in T.spectrum.pieces
        ):
            return bool(footprints(phi))
        raise


def build_witness(T, phi: Formula, recipe: str = "generic", S: Optional[Sequence[str]] = None):
    if recipe not in RECIPES:
        raise WitnessError(f"unknown witness recipe {recipe!r}; choose from {', '.join(RECIPES)}")
    S = tuple(T.sorts) if S is None else tuple(S)
    if recipe == "pow2_g":
        if not _sat_safe(T, phi):
            return phi
        counts = {s: least_pow2_g(len(vars_of_sort(phi, s))) for s in S}
    else:
        mins = minmod(T, S, phi)
        if not mins:
            return phi
        finite = [t for t in mins if all(v != INF for v in t)]
        if not finite:
            raise WitnessError(
                f"no all-finite minimal model for {phi} (minimal models {', '.join(map(fmt_tuple, mins))}); "
                "the theory lacks the finite model property here"
            )
        counts = dict(zip(S, min(finite)))
    extra = []
    for s in S:
        ws = [fresh_witness_var(s, i) for i in range(1, int(counts[s]) + 1)]
        if recipe == "distinct" and len(ws) > 1:
            extra.append(distinct(ws))
        else:
            extra.extend(eq(w, w) for w in ws)
    return conj([phi] + extra) if extra else phi


# ---------------------------------------------------------------- validation


def _fresh_shape(wit: Formula, phi: Formula):
    """Recognize ``phi & <constraint on fresh vars>``: returns (fresh vars
    per sort, mode per sort: 'free' | 'distinct') or None for anything else."""
    if wit == phi:
        return {}, {}
    if not isinstance(wit, And) or not wit.args or wit.args[0] != phi:
        return None
    rest = list(wit.args[1:])
    phi_vars = set(variables(phi))
    fresh = variables(conj(rest))
    if not fresh or any(v in phi_vars for v in fresh):
        return None
    by_sort: Dict[str, List[Var]] = {}
    for v in fresh:
        by_sort.setdefault(v.sort, []).append(v)
    modes = {}
    for s, ws in by_sort.items():
        mine = [a for a in rest if variables(a) and variables(a)[0].sort == s]
        if all(isinstance(a, Eq) and a.left == a.right and a.left.depth == 0 for a in mine):
            modes[s] = "free"
        elif conj(mine) == distinct(ws) or (len(mine) == 1 and mine[0] == distinct(ws)):
            modes[s] = "distinct"
        else:
            return None
    return by_sort, modes


def _new_var(sort, i):
    return Var(f"__v_{sort}_{i}", sort)


def _arrangement(E: Partition, new: Dict[str, int]):
    """δ for E plus ``new[sort]`` extra classes, one fresh variable each."""
    parts = []
    for s, k in sorted(new.items()):
        parts.extend([[_new_var(s, i)] for i in range(1, k + 1)])
    full = Partition.from_blocks(list(E.blocks) + parts)
    return full, arrangement_formula(full)


def _exact_model(T, psi, target: Dict[str, int], S, bound, budget):
    """A T-model of psi whose S-domains have exactly ``target`` sizes."""
    srch = _Searcher(T, psi, budget)
    for piece in T.spectrum.expanded():
        pts, _ = _piece_points(piece, bound)
        for p in pts:
            if any(p[T.sorts.index(s)] != target[s] for s in S):
                continue
            m, sizes = _realize_point(srch, p, piece.tag, bound)
            if m is not None:
                return m, p
    return None, None


def _exact_empty(T, psi, full: Partition, target: Dict[str, int]):
    """Empty signatures: the arrangement fixes every atom, so a model with
    exactly ``target`` S-elements exists iff psi holds on the classes and
    some piece has a point with those S-sizes that covers the other sorts."""
    counts = full.counts()
    sorts = T.sorts
    index = {}
    seen: Dict[str, int] = {}
    for block in full.blocks:
        s = block[0].sort
        for v in block:
            index[v] = seen.get(s, 0)
        seen[s] = seen.get(s, 0) + 1
    for piece in T.spectrum.expanded():
        point = [None] * len(sorts)
        groups = [[i] for i in range(len(sorts)) if i not in piece.tie]
        if piece.tie:
            groups.append(list(piece.tie))
        for g in groups:
            cs = piece.card(g[0])
            fixed = {target[sorts[i]] for i in g if sorts[i] in target}
            lower = max(max(1, counts.get(sorts[i], 0)) for i in g)
            if len(fixed) > 1:
                break
            if fixed:
                v = fixed.pop()
                if v < lower or not cardset_contains(cs, v):
                    break
            else:
                v = cardset_least(cs, lower)
                if v is None:
                    break
            for i in g:
                point[i] = v
        else:
            doms = {s: (max(1, counts.get(s, 0)) if point[i] == INF else point[i]) for i, s in enumerate(sorts)}
            m = Interpretation(T.signature, doms, None, index)
            if evaluate(psi, m):
                return m, tuple(point)
            return None, None
    return None, None


def _class_count_cases(phi, fresh, modes, S, strong, bound):
    """(E1, new-class counts) cases that stand for every arrangement of the
    witness variables (and, when strong, extra variables) up to symmetry."""
    for E in enumerate_partitions(variables(phi)):
        base = E.counts()
        ranges = []
        for s in S:
            nw = len(fresh.get(s, []))
            lo = max(0, nw - base.get(s, 0)) if modes.get(s) == "distinct" else 0
            if nw and not base.get(s, 0):
                lo = max(lo, 1)  # the witness variables need some class
            hi = nw
            if strong:
                hi = max(hi, bound - base.get(s, 0))
            ranges.append(range(lo, max(lo, hi) + 1))
        for js in product(*ranges):
            yield E, dict(zip(S, js))


def validate_witness(
    T,
    wit: Formula,
    phi: Formula,
    bound: int,
    strong: bool = False,
    S: Optional[Sequence[str]] = None,
    budget=None,
) -> Verdict:
    """Bounded check of the witness contract; three-valued."""
    S = tuple(T.sorts) if S is None else tuple(S)
    budget = budget or Budget()
    if not set(variables(phi)) <= set(variables(wit)):
        return refuted("witness drops variables of the formula", wit, bounded=True)

    def sat(f):
        try:
            return _sat_safe(T, f)
        except OracleExhausted:
            return oracle_sat(T, f, bound, budget)

    # (i) same satisfiable arrangements of phi's variables
    for E in enumerate_partitions(variables(phi)):
        d = arrangement_formula(E)
        a, b = sat(conj([phi, d])), sat(conj([wit, d]))
        if a is None or b is None:
            return unknown(f"satisfiability of {E} undecided at bound {bound}")
        if a != b:
            return refuted(f"witness not equivalent to the formula on arrangement {E}", E, bounded=True)

    shape = _fresh_shape(wit, phi)
    if shape is None:
        return unknown("witness is not of the form phi & constraint-on-fresh-variables")
    fresh, modes = shape
    if sat(phi) is False:
        return proved("formula unsatisfiable; witness conditions hold vacuously", bounded=True)

    found_any = False
    undecided = None
    for E, js in _class_count_cases(phi, fresh, modes, S, strong, bound):
        full, delta = _arrangement(E, js)
        psi = conj([phi, delta])
        target = {s: full.count(s) for s in S}
        fits = all(v <= bound for v in target.values())
        # with s the direct search is cheaper than the engine's chains
        if fits and T.signature.has_unary_fn:
            m, p = _exact_model(T, psi, target, S, bound, budget)
            if m is not None:
                found_any = True
                if not strong:
                    return proved(f"model {describe_model(m, p)} is covered by the witness variables", bounded=True)
                continue
        s_ok = sat(psi)
        if s_ok is None:
            undecided = undecided or f"satisfiability of {full} undecided"
            continue
        if not s_ok:
            continue
        if not fits:
            undecided = undecided or f"arrangement with {fmt_tuple(tuple(target.values()))} classes exceeds bound {bound}"
            continue
        if not T.signature.has_unary_fn:
            m, p = _exact_empty(T, psi, full, target)
            if m is not None:
                found_any = True
                if not strong:
                    return proved(f"model {describe_model(m, p)} is covered by the witness variables", bounded=True)
                continue
        if strong:
            return refuted(
                f"arrangement {full} is satisfiable with the witness but no model has exactly "
                f"{fmt_tuple(tuple(target.values()))} elements",
                {"arrangement": full, "formula": conj([wit, delta]), "sizes": target},
                bounded=True,
            )
    if strong:
        if undecided:
            return unknown(undecided)
        return proved(f"every arrangement with at most {bound} classes is witnessed", bounded=True)
    if found_any:
        return proved("witnessed", bounded=True)
    if undecided:
        return unknown(undecided)
    total = {s: len(vars_of_sort(wit, s)) for s in S}
    if all(v <= bound for v in total.values()):
        return refuted(
            f"no model of the witness has its domains covered by the witness variables (checked all sizes ≤ {bound})",
            {"formula": wit},
            bounded=True,
        )
    return unknown(f"witness has more variables than the bound {bound}")
