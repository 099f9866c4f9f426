"""Deterministic formula corpora used by the property checkers and tests.

Cubes are enumerated exhaustively and deduplicated up to sort-preserving
renaming of variables; disjunctions are sampled with a fixed seed.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import List, Sequence, Tuple

from .logic import (
    Eq,
    Formula,
    Neq,
    Not,
    Signature,
    Term,
    Var,
    conj,
    disj,
    distinct,
    eq,
    to_text,
    variables,
)


def _pool(sig: Signature, per_sort):
    one = len(sig.sorts) == 1
    return {s: [Var("xyzw"[i] if one else f"{'xyzw'[i]}{s[-1]}", s) for i in range(per_sort)] for s in sig.sorts}


def _canon(lits: Sequence[Tuple[bool, Term, Term]]):
    """Canonical key of a literal set up to renaming variables within sorts."""
    vs = sorted({t.var for _, a, b in lits for t in (a, b)}, key=lambda v: (v.sort, v.name))
    by_sort = {}
    for v in vs:
        by_sort.setdefault(v.sort, []).append(v)
    best = None
    sorts = sorted(by_sort)
    for perms in itertools.product(*(itertools.permutations(by_sort[s]) for s in sorts)):
        ren = {}
        for s, p in zip(sorts, perms):
            for i, v in enumerate(p):
                ren[v] = (s, i)
        key = []
        for pos, a, b in lits:
            x, y = (ren[a.var], a.depth), (ren[b.var], b.depth)
            if y < x:
                x, y = y, x
            key.append((pos, x, y))
        key = tuple(sorted(key))
        if best is None or key < best:
            best = key
    return best


def _atoms_for(sig: Signature, per_sort, max_depth):
    pool = _pool(sig, per_sort)
    pairs = []
    for s, vs in pool.items():
        ts = [Term(v, 0) for v in vs]
        if sig.has_unary_fn and s == sig.fn_sort:
            ts = [Term(v, d) for v in vs for d in range(max_depth + 1)]
        for i in range(len(ts)):
            for j in range(i + 1, len(ts)):
                pairs.append((ts[i], ts[j]))
    return pairs


def _lit(pos, a, b):
    return Eq(a, b) if pos else Neq(a, b)


@lru_cache(maxsize=None)
def cube_corpus(sig: Signature, per_sort=3, max_atoms=4, max_depth=None):
    """All cubes (conjunctions of literals, each pair used once) up to renaming."""
    if max_depth is None:
        max_depth = 1 if sig.has_unary_fn else 0
    pairs = _atoms_for(sig, per_sort, max_depth)
    seen = set()
    out: List[Formula] = []
    for k in range(1, max_atoms + 1):
        for combo in itertools.combinations(pairs, k):
            for signs in itertools.product((True, False), repeat=k):
                lits = [(p, a, b) for p, (a, b) in zip(signs, combo)]
                key = _canon(lits)
                if key in seen:
                    continue
                seen.add(key)
                out.append(conj([_lit(*l) for l in lits]))
    return tuple(out)


def _sampled_disjunctions(sig, per_sort, max_atoms, max_depth, samples, seed):
    rng = random.Random(seed)
    pairs = _atoms_for(sig, per_sort, max_depth)
    out = []
    seen = set()
    tries = 0
    while len(out) < samples and tries < samples * 20:
        tries += 1
        n = rng.randint(2, max_atoms)
        chosen = rng.sample(pairs, min(n, len(pairs)))
        lits = [_lit(rng.random() < 0.5, a, b) for a, b in chosen]
        cut = rng.randint(1, len(lits) - 1)
        f = disj([conj(lits[:cut]), conj(lits[cut:])])
        if rng.random() < 0.3:
            f = conj([f, lits[0]])
        t = to_text(f)
        if t not in seen:
            seen.add(t)
            out.append(f)
    return out


@lru_cache(maxsize=None)
def formula_corpus(sig: Signature, per_sort=None, max_atoms=None, samples=24, seed=0):
    """Cubes plus seeded disjunctions; small enough for the oracle.

    Empty signatures: up to 3 variables per sort and 4 atoms.  With s: 2
    variables, depth ≤ 1 and 3 atoms, plus a few fixed depth-2 shapes.
    """
    unary = sig.has_unary_fn
    if per_sort is None:
        per_sort = 2 if unary else (3 if len(sig.sorts) == 1 else 2)
    if max_atoms is None:
        max_atoms = 3 if unary else (4 if len(sig.sorts) == 1 else 3)
    depth = 1 if unary else 0
    out = list(cube_corpus(sig, per_sort, max_atoms, depth))
    out.extend(_sampled_disjunctions(sig, per_sort, max_atoms, depth, samples, seed))
    if unary:
        s = sig.fn_sort
        x, y = Var("x", s), Var("y", s)
        tx, ty = Term(x), Term(y)
        out.extend(
            [
                Eq(Term(x, 2), tx),
                Neq(Term(x, 2), tx),
                Eq(Term(x, 2), Term(x, 1)),
                conj([Eq(Term(x, 2), tx), Neq(Term(x, 1), tx)]),
                conj([Eq(Term(x, 1), ty), Eq(Term(y, 1), tx), Neq(tx, ty)]),
                conj([Neq(Term(x, 2), tx), Neq(Term(x, 2), Term(x, 1))]),
            ]
        )
    # the trivially true and false formulas of each sort
    for s in sig.sorts:
        v = Var("x" if len(sig.sorts) == 1 else f"x{s[-1]}", s)
        out.append(eq(v, v))
        out.append(Neq(Term(v), Term(v)))
    return tuple(out)


def distinct_probe(sig: Signature, counts):
    """Pairwise distinct variables, ``counts[i]`` of them in sort i."""
    parts = []
    for s, k in zip(sig.sorts, counts):
        vs = [Var(f"p_{s}_{i}", s) for i in range(1, k + 1)]
        parts.append(distinct(vs) if k > 1 else eq(vs[0], vs[0]))
    return conj(parts)


def cv_cubes(sig: Signature, bound_hint=None):
    """Cubes for convexity: the corpus cubes over ≤ 4 variables, plus
    pigeonhole cubes (N+1 unconstrained variables) for bounded sorts."""
    unary = sig.has_unary_fn
    out = list(cube_corpus(sig, 2 if unary else (4 if len(sig.sorts) == 1 else 2), 3 if unary else 4, 1 if unary else 0))
    return out


def pigeonhole_cube(sig: Signature, sort, n):
    vs = [Var(f"h{i}", sort) for i in range(1, n + 1)]
    return conj([eq(v, v) for v in vs])
