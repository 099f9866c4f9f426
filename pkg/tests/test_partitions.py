import itertools

import pytest

from tcw.corpus import cube_corpus
from tcw.errors import BudgetExceeded, SortError, TheoryError
from tcw.logic import Interpretation, Var, evaluate, flatten_unary, parse_formula, sigma_n, sigma_s, variables
from tcw.partitions import (
    FREE,
    IDENTITY,
    NOFIX,
    Partition,
    ShapeTag,
    arrangement_formula,
    enumerate_partitions,
    footprints,
    is_satisfiable_flat,
    node_limit,
    parse_tag,
    satisfying_partitions,
    tag_holds,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877]
S1, S2, SS = sigma_n(1), sigma_n(2), sigma_s(1)


def vs(n, sort="s1"):
    return [Var(f"v{i}", sort) for i in range(n)]


@pytest.mark.parametrize("n", range(1, 8))
def test_partition_count_is_bell(n):
    parts = list(enumerate_partitions(vs(n)))
    assert len(parts) == BELL[n]
    assert len({p.blocks for p in parts}) == BELL[n]


def test_sorts_never_mix():
    items = vs(3, "s1") + vs(2, "s2")
    parts = list(enumerate_partitions(items))
    # partitions of each sort independently
    assert len(parts) == BELL[3] * BELL[2]
    for p in parts:
        for b in p.blocks:
            assert len({v.sort for v in b}) == 1


def test_from_blocks_validates():
    a, b = Var("a", "s1"), Var("b", "s2")
    with pytest.raises(SortError):
        Partition.from_blocks([[a, b]])
    with pytest.raises(ValueError):
        Partition.from_blocks([[a], [a]])


def test_arrangement_formula_characterizes_partition():
    items = vs(4)
    parts = list(enumerate_partitions(items))
    for E in parts:
        d = arrangement_formula(E)
        m = E.block_map()
        interp = Interpretation(S1, {"s1": len(E)}, None, {v: m[v] for v in items})
        assert evaluate(d, interp)
        for F in parts:
            if F != E:
                mf = F.block_map()
                other = Interpretation(S1, {"s1": len(F)}, None, {v: mf[v] for v in items})
                assert not evaluate(d, other)


def _brute_arrangements(phi, sig, n_max):
    """Arrangements of phi's variables realized by some model of size ≤ n_max."""
    xs = variables(phi)
    out = set()
    for n in range(1, n_max + 1):
        for vals in itertools.product(range(n), repeat=len(xs)):
            m = Interpretation(sig, {"s1": n}, None, dict(zip(xs, vals)))
            if evaluate(phi, m):
                groups = {}
                for v, e in zip(xs, vals):
                    groups.setdefault(e, []).append(v)
                out.add(Partition.from_blocks(groups.values()))
    return out


@pytest.mark.parametrize("phi", cube_corpus(S1, 3, 3, 0), ids=str)
def test_satisfying_partitions_match_brute_force(phi):
    got = set(satisfying_partitions(phi))
    assert got == _brute_arrangements(phi, S1, len(variables(phi)))


def _brute_tagged(phi, tag, n_max):
    """Is phi satisfiable in a structure of size ≤ n_max whose s obeys tag?"""
    xs = variables(phi)
    for n in range(1, n_max + 1):
        for fn in itertools.product(range(n), repeat=n):
            if not tag_holds(tag, fn):
                continue
            for vals in itertools.product(range(n), repeat=len(xs)):
                if evaluate(phi, Interpretation(SS, {"s1": n}, fn, dict(zip(xs, vals)))):
                    return True
    return False


@pytest.mark.parametrize("tag", [FREE, IDENTITY, ShapeTag("cycle_eq", 2), ShapeTag("cycle_or", 1)], ids=str)
def test_tagged_satisfiability_matches_brute_force(tag):
    for phi in cube_corpus(SS, 2, 2, 1):
        fl = flatten_unary(phi, SS, tag.extra_depth)
        assert is_satisfiable_flat(fl.flat, tag, fl) == _brute_tagged(phi, tag, 4), str(phi)


def test_footprints_count_blocks():
    phi = parse_formula("x:s1 != y:s1 & a:s2 = b:s2", S2)
    fps = footprints(phi)
    assert [(f.count("s1"), f.count("s2")) for f in fps] == [(2, 1)]


def test_footprints_see_two_cycles():
    phi = parse_formula("s(x:s1) != x:s1 & s(s(x:s1)) = x:s1", SS)
    fl = flatten_unary(phi, SS, IDENTITY.extra_depth)
    assert not is_satisfiable_flat(fl.flat, IDENTITY, fl)
    tag = parse_tag("cycle_eq(2)")
    fl = flatten_unary(phi, SS, tag.extra_depth)
    fps = footprints(fl.flat, tag, fl)
    assert fps and all(f.two_cycle for f in fps)


class TestTags:
    @pytest.mark.parametrize("text", ["none", "identity", "nofix", "cycle_eq(1)", "cycle_or(2)", "nofix&cycle_eq(2)"])
    def test_round_trip(self, text):
        tag = parse_tag(text)
        assert parse_tag(str(tag)) == tag

    @pytest.mark.parametrize("text", ["cycle_eq(3)", "nofix&identity", "nofix&cycle_eq(1)", "wobble"])
    def test_rejected(self, text):
        with pytest.raises(TheoryError):
            parse_tag(text)

    def test_tag_holds(self):
        assert tag_holds(IDENTITY, (0, 1, 2))
        assert not tag_holds(IDENTITY, (1, 0))
        assert tag_holds(parse_tag("nofix&cycle_eq(2)"), (1, 0, 3, 2))
        assert not tag_holds(NOFIX, (0, 0))
        # s(s(x)) = s(x): idempotent maps
        assert tag_holds(parse_tag("cycle_or(1)"), (0, 0, 2))
        assert not tag_holds(parse_tag("cycle_or(1)"), (1, 2, 0))

    def test_tag_needs_chains(self):
        with pytest.raises(TheoryError):
            satisfying_partitions(parse_formula("x:s1 = y:s1", S1), IDENTITY)


def test_node_limit():
    phi = parse_formula(" & ".join(f"v{i}:s1 = v{i}:s1" for i in range(9)), S1)
    with node_limit(50):
        with pytest.raises(BudgetExceeded):
            satisfying_partitions(phi)
    assert len(satisfying_partitions(phi)) == 21147
