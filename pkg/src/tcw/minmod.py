"""Minimal model functions.

The generic engine works on any spectrum theory: flatten the s-terms,
search admitted partitions per piece, turn each into a demand tuple, cover
the demand by the least feasible spectrum point, and keep the ≤-minimal
results.  The transfer rules compute the same answer for operator-built
theories from the base theory alone.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Optional, Sequence

from .cardinality import dickson_minimal, project
from .errors import TheoryError
from .logic import (
    FALSE,
    TRUE,
    Eq,
    Formula,
    Neq,
    Signature,
    check_signature,
    conj,
    erase_unary,
    flatten_unary,
    map_atoms,
    simplify,
    terms,
    vars_of_sort,
)
from .partitions import (
    FREE,
    ShapeTag,
    arrangement_formula,
    enumerate_partitions,
    footprints,
    satisfying_partitions,
)
from .theories import TheoryDef, feasible_extension


def _sorts(T: TheoryDef, S):
    S = tuple(T.sorts) if S is None else tuple(S)
    for s in S:
        if s not in T.sorts:
            raise TheoryError(f"sort {s!r} is not a sort of {T.name}")
    return S


def _piece_footprints(T, phi, tag, cache):
    sig = T.signature
    key = tag if sig.has_unary_fn else None
    if key not in cache:
        if sig.has_unary_fn:
            fl = flatten_unary(phi, sig, tag.extra_depth)
            cache[key] = footprints(fl.flat, tag, fl)
        else:
            cache[key] = footprints(phi, FREE, None)
    return cache[key]


def _drop_trivial(phi):
    """Fold t = t and t != t; variables seen only there constrain nothing."""

    def f(a):
        if a.left == a.right:
            return TRUE if isinstance(a, Eq) else FALSE
        return a

    return simplify(map_atoms(phi, f))


def minmod(T: TheoryDef, S: Optional[Sequence[str]], phi: Formula):
    """≤-minimal cardinality tuples (over S) of T-models of phi; [] if unsatisfiable."""
    S = _sorts(T, S)
    check_signature(phi, T.signature)
    return list(_minmod(T, S, _drop_trivial(phi)))


@lru_cache(maxsize=4096)
def _minmod(T: TheoryDef, S, phi: Formula):
    sig = T.signature
    idx = T.spectrum.index(S)
    fn_sort = sig.fn_sort
    cache: Dict = {}
    pts = set()
    for piece in T.spectrum.expanded():
        tag = piece.tag
        for fp in _piece_footprints(T, phi, tag, cache):
            demand = tuple(max(1, fp.count(s)) for s in sig.sorts)
            if fn_sort is not None:
                used = fp.count(fn_sort)

                def ok(i, c, used=used, fp=fp, tag=tag):
                    return i != 0 or feasible_extension(tag, used, c, fp.two_cycle)

            else:
                ok = None
            p = piece.least_point(demand, ok)
            if p is not None:
                pts.add(project(p, idx))
    return tuple(dickson_minimal(pts))


def is_sat(T: TheoryDef, phi: Formula):
    return bool(minmod(T, None, phi))


# ---------------------------------------------------------------- transfer


def _decide_sort_atoms(phi, sort, E):
    m = E.block_map()

    def sub(a):
        if a.left.sort != sort:
            return a
        same = m[a.left.var] == m[a.right.var]
        return TRUE if same == isinstance(a, Eq) else FALSE

    return simplify(map_atoms(phi, sub))


def minmod_via_transfer(kind: str, base: TheoryDef, phi: Formula, S: Optional[Sequence[str]] = None):
    """minmod of ``apply_operator(kind, base)`` computed from ``base`` only."""
    if kind == "add_sort":
        if len(base.sorts) != 1:
            raise TheoryError("add_sort needs a one-sorted base theory")
        s1 = base.sorts[0]
        others = sorted({t.sort for t in terms(phi)} - {s1})
        if len(others) > 1:
            raise TheoryError("formula mentions more than one added sort")
        s2 = others[0] if others else "s2"
        full = (s1, s2)
        S = full if S is None else tuple(S)
        pts = set()
        for E in enumerate_partitions(vars_of_sort(phi, s2)):
            phi_E = _decide_sort_atoms(phi, s2, E)
            for (m,) in minmod(base, None, phi_E):
                pts.add((m, max(1, len(E))))
        full_min = dickson_minimal(pts)
        idx = tuple(full.index(s) for s in S)
        return dickson_minimal(project(p, idx) for p in full_min)
    if base.signature.has_unary_fn:
        raise TheoryError(f"{kind} needs a base theory over an empty signature")
    S = tuple(base.sorts) if S is None else tuple(S)
    if kind == "add_fn_id":
        return minmod(base, S, erase_unary(phi))
    if kind == "add_fn_or":
        sig = Signature(base.sorts, True)
        tag = ShapeTag("cycle_or", 1)
        fl = flatten_unary(phi, sig, tag.extra_depth)
        U = fl.fresh_vars
        pts = set()
        # arrangements of U that respect the tag; those falsifying the
        # flattened formula contribute nothing, so only admitted ones are kept
        deltas = {arrangement_formula(E.restrict(U)) if U else TRUE for E in satisfying_partitions(fl.flat, tag, fl)}
        for delta in deltas:
            pts.update(minmod(base, S, conj([fl.flat, delta])))
        return dickson_minimal(pts)
    raise TheoryError(f"unknown operator {kind!r}")


def minmod_transfer_for(T: TheoryDef, phi: Formula, S=None):
    """Transfer computation for an operator-built theory."""
    if T.derived_from is None:
        raise TheoryError(f"{T.name} is not built by an operator")
    kind, base = T.derived_from
    return minmod_via_transfer(kind, base, phi, S)
