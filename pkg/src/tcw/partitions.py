"""Set partitions of variable sets, arrangements, and the partition search
that decides which arrangements satisfy a flattened formula under a shape tag.
"""
from __future__ import annotations

import re
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, SortError, TheoryError
from .logic import (
    FALSE,
    TRUE,
    And,
    Eq,
    FlattenResult,
    Formula,
    Neq,
    Not,
    Or,
    Term,
    Var,
    conj,
    terms,
    variables,
)


def _var_key(v: Var):
    return (v.sort, v.name)


@dataclass(frozen=True)
class Partition:
    """A sort-respecting partition. Blocks are stored in canonical order."""

    blocks: Tuple[Tuple[Var, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[Var]]):
        bs = []
        seen = set()
        for b in blocks:
            b = tuple(sorted(set(b), key=_var_key))
            if not b:
                raise ValueError("empty block")
            if len({v.sort for v in b}) != 1:
                raise SortError(f"block mixes sorts: {', '.join(map(str, b))}")
            for v in b:
                if v in seen:
                    raise ValueError(f"{v} occurs in two blocks")
                seen.add(v)
            bs.append(b)
        bs.sort(key=lambda b: _var_key(b[0]))
        return cls(tuple(bs))

    @property
    def universe(self):
        return tuple(sorted((v for b in self.blocks for v in b), key=_var_key))

    def block_map(self):
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def same(self, x: Var, y: Var):
        m = self.block_map()
        return m[x] == m[y]

    def count(self, sort):
        return sum(1 for b in self.blocks if b[0].sort == sort)

    def counts(self):
        out: Dict[str, int] = {}
        for b in self.blocks:
            out[b[0].sort] = out.get(b[0].sort, 0) + 1
        return out

    def restrict(self, vs: Iterable[Var]):
        keep = set(vs)
        return Partition.from_blocks(
            [tuple(v for v in b if v in keep) for b in self.blocks if any(v in keep for v in b)]
        )

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(v.name for v in b) + "}" for b in self.blocks) + "}"

    def __len__(self):
        return len(self.blocks)


def _rgs(items: Sequence[Var]):
    """Restricted growth strings over ``items`` that never mix sorts."""
    n = len(items)
    block = [0] * n
    block_sort: List[str] = []

    def rec(i):
        if i == n:
            yield tuple(block)
            return
        s = items[i].sort
        for b, bs in enumerate(block_sort):
            if bs == s:
                block[i] = b
                yield from rec(i + 1)
        block[i] = len(block_sort)
        block_sort.append(s)
        yield from rec(i + 1)
        block_sort.pop()

    yield from rec(0)


def _from_assignment(items, assign):
    groups: Dict[int, list] = {}
    for v, b in zip(items, assign):
        groups.setdefault(b, []).append(v)
    return Partition.from_blocks(groups.values())


def enumerate_partitions(vs: Iterable[Var]) -> Iterator[Partition]:
    """Every sort-respecting partition of ``vs`` once, in RGS order."""
    items = sorted(set(vs), key=_var_key)
    for a in _rgs(items):
        yield _from_assignment(items, a)


def arrangement_formula(E: Partition):
    """``δ_V^E``: equalities inside blocks, disequalities across same-sort blocks."""
    items = E.universe
    m = E.block_map()
    lits = []
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            x, y = items[i], items[j]
            if x.sort != y.sort:
                continue
            a = Eq(Term(x), Term(y))
            lits.append(a if m[x] == m[y] else Not(a))
    return conj(lits) if lits else TRUE


# ------------------------------------------------------------------ shape tags

_TAG_RE = re.compile(r"^(nofix&)?(cycle_eq|cycle_or)\((\d+)\)$")


@dataclass(frozen=True)
class ShapeTag:
    """Constraint on the cycle structure of ``s``.

    ``kind`` is None (unconstrained), 'identity', 'cycle_eq' (s^k(x)=x)
    or 'cycle_or' (s^2k(x)=s^k(x) or s^2k(x)=x).  ``nofix`` adds s(x)!=x.
    """

    kind: Optional[str] = None
    k: int = 0
    nofix: bool = False

    def __post_init__(self):
        if self.kind not in (None, "identity", "cycle_eq", "cycle_or"):
            raise TheoryError(f"unknown tag kind {self.kind!r}")
        if self.kind in ("cycle_eq", "cycle_or") and self.k not in (1, 2):
            raise TheoryError("cycle tags need k in {1, 2}")
        if self.kind in (None, "identity") and self.k:
            raise TheoryError(f"tag {self.kind} takes no k")
        if self.nofix and self.kind == "identity":
            raise TheoryError("identity and nofix are incompatible")
        if self.nofix and self.kind is not None and self.k != 2:
            raise TheoryError("nofix combines only with k = 2 cycle tags")

    @property
    def free(self):
        return self.kind is None and not self.nofix

    @property
    def extra_depth(self):
        """How far chains must run past the deepest term."""
        if self.kind == "cycle_eq":
            return self.k
        if self.kind == "cycle_or":
            return 2 * self.k
        return 1

    def __str__(self):
        if self.kind is None:
            return "nofix" if self.nofix else "none"
        if self.kind == "identity":
            return "identity"
        core = f"{self.kind}({self.k})"
        return f"nofix&{core}" if self.nofix else core


FREE = ShapeTag()
IDENTITY = ShapeTag("identity")
NOFIX = ShapeTag(None, 0, True)


def parse_tag(text):
    if text is None:
        return FREE
    if isinstance(text, ShapeTag):
        return text
    t = str(text).replace(" ", "")
    if t in ("", "none", "None", "free"):
        return FREE
    if t == "identity":
        return IDENTITY
    if t == "nofix":
        return NOFIX
    m = _TAG_RE.match(t)
    if not m:
        raise TheoryError(f"unknown shape tag {text!r}")
    return ShapeTag(m.group(2), int(m.group(3)), bool(m.group(1)))


def tag_holds(tag: ShapeTag, fn: Sequence[int]):
    """Check the tag directly on a total function table."""

    def it(e, k):
        for _ in range(k):
            e = fn[e]
        return e

    for a in range(len(fn)):
        if tag.nofix and fn[a] == a:
            return False
        if tag.kind == "identity" and fn[a] != a:
            return False
        if tag.kind == "cycle_eq" and it(a, tag.k) != a:
            return False
        if tag.kind == "cycle_or":
            top = it(a, 2 * tag.k)
            if top != it(a, tag.k) and top != a:
                return False
    return True


# --------------------------------------------------------------- partition search


def _compile(phi, index):
    """Turn ``phi`` into nested tuples over variable indices."""
    if isinstance(phi, (Eq, Neq)):
        if phi.left.depth or phi.right.depth:
            raise SortError("partition search expects a flattened formula (no s-terms)")
        return ("a", index[phi.left.var], index[phi.right.var], isinstance(phi, Eq))
    if isinstance(phi, Not):
        return ("n", _compile(phi.arg, index))
    if isinstance(phi, And):
        return ("&", tuple(_compile(a, index) for a in phi.args))
    if isinstance(phi, Or):
        return ("|", tuple(_compile(a, index) for a in phi.args))
    raise TypeError(f"not a formula: {phi!r}")


def _eval3(node, block):
    """Three-valued truth: None while some atom is still unplaced."""
    op = node[0]
    if op == "a":
        a, b = block[node[1]], block[node[2]]
        if a < 0 or b < 0:
            return None
        return (a == b) == node[3]
    if op == "n":
        v = _eval3(node[1], block)
        return None if v is None else not v
    if op == "&":
        res = True
        for c in node[1]:
            v = _eval3(c, block)
            if v is False:
                return False
            if v is None:
                res = None
        return res
    res = False
    for c in node[1]:
        v = _eval3(c, block)
        if v is True:
            return True
        if v is None:
            res = None
    return res


@dataclass(frozen=True)
class Footprint:
    """What the cardinality stage needs to know about one admitted partition."""

    counts: Tuple[Tuple[str, int], ...]
    two_cycle: bool

    def count(self, sort):
        return dict(self.counts).get(sort, 0)


# optional cap on search nodes per run (None: unlimited)
_NODE_LIMIT: ContextVar[Optional[int]] = ContextVar("node_limit", default=None)


@contextmanager
def node_limit(n: Optional[int]):
    """Bound every partition search inside the block to ``n`` nodes."""
    tok = _NODE_LIMIT.set(n)
    try:
        yield
    finally:
        _NODE_LIMIT.reset(tok)


class _Search:
    def __init__(self, flat, tag: ShapeTag, origin: Optional[FlattenResult], extra_vars=()):
        tag = parse_tag(tag)
        if not tag.free and origin is None:
            raise TheoryError(f"tag {tag} needs the flattening chains")
        self.tag = tag
        chains = [] if origin is None else [tuple(ch) for ch in origin.chains.values()]
        order: List[Var] = []
        seen = set()
        for ch in chains:
            for y in ch:
                if y not in seen:
                    order.append(y)
                    seen.add(y)
        rest = sorted((v for v in set(variables(flat)) | set(extra_vars) if v not in seen), key=_var_key)
        order.extend(rest)
        self.order = order
        self.index = {v: i for i, v in enumerate(order)}
        self.node = _compile(flat, self.index)
        n = len(order)
        self.pred = [-1] * n
        self.chain = [None] * n
        for ch in chains:
            idx = tuple(self.index[y] for y in ch)
            for j, i in enumerate(idx):
                self.chain[i] = (idx, j)
                if j:
                    self.pred[i] = idx[j - 1]
        # functionality is only meaningful when chains exist
        self.functional = origin is not None and bool(chains)

    def _allowed(self, i, cand, block):
        ch = self.chain[i]
        if ch is None or self.tag.free:
            return True
        idx, j = ch
        tag = self.tag
        if j == 0:
            return True
        prev = block[idx[j - 1]]
        if tag.kind == "identity" and cand != prev:
            return False
        if tag.nofix and cand == prev:
            return False
        if tag.kind == "cycle_eq" and j >= tag.k and cand != block[idx[j - tag.k]]:
            return False
        if tag.kind == "cycle_or" and j >= 2 * tag.k:
            if cand != block[idx[j - tag.k]] and cand != block[idx[j - 2 * tag.k]]:
                return False
        return True

    def run(self):
        """Yield ``(block assignment, successor map)`` for every admitted partition."""
        n = len(self.order)
        order = self.order
        block = [-1] * n
        block_sort: List[str] = []
        succ: Dict[int, int] = {}
        node = self.node
        limit = _NODE_LIMIT.get()
        visited = [0]

        def rec(i):
            if limit is not None:
                visited[0] += 1
                if visited[0] > limit:
                    raise BudgetExceeded(f"partition search exceeded {limit} nodes")
            if i == n:
                if _eval3(node, block) is True:
                    yield tuple(block), dict(succ)
                return
            s = order[i].sort
            p = self.pred[i] if self.functional else -1
            forced = succ.get(block[p]) if p >= 0 else None
            if forced is not None:
                cands = [forced]
            else:
                cands = [b for b, bs in enumerate(block_sort) if bs == s] + [len(block_sort)]
            for c in cands:
                if not self._allowed(i, c, block):
                    continue
                new_block = c == len(block_sort)
                if new_block:
                    block_sort.append(s)
                block[i] = c
                set_succ = p >= 0 and forced is None
                if set_succ:
                    succ[block[p]] = c
                if _eval3(node, block) is not False:
                    yield from rec(i + 1)
                if set_succ:
                    del succ[block[p]]
                block[i] = -1
                if new_block:
                    block_sort.pop()

        yield from rec(0)


def satisfying_partitions(flat: Formula, tag=None, origin: Optional[FlattenResult] = None, extra_vars=()):
    """All partitions of the variables (plus chain variables) admitted by
    ``flat``, functionality along chains, and the tag's chain condition."""
    srch = _Search(flat, tag, origin, extra_vars)
    out = {_from_assignment(srch.order, a) for a, _ in srch.run()}
    return sorted(out, key=_partition_key)


def _partition_key(p: Partition):
    return tuple((_var_key(b[0]), tuple(_var_key(v) for v in b)) for b in p.blocks)


def footprints(flat: Formula, tag=None, origin: Optional[FlattenResult] = None, extra_vars=()):
    """Distinct per-sort block counts (and 2-cycle presence) over admitted partitions."""
    srch = _Search(flat, tag, origin, extra_vars)
    sorts = [v.sort for v in srch.order]
    out = set()
    for a, succ in srch.run():
        counts: Dict[str, int] = {}
        seen = set()
        for s, b in zip(sorts, a):
            if b not in seen:
                seen.add(b)
                counts[s] = counts.get(s, 0) + 1
        two = any(c != b and succ.get(c) == b for b, c in succ.items())
        out.add(Footprint(tuple(sorted(counts.items())), two))
    return sorted(out, key=lambda f: (f.counts, f.two_cycle))


def is_satisfiable_flat(flat: Formula, tag=None, origin=None):
    srch = _Search(flat, tag, origin)
    return next(srch.run(), None) is not None
