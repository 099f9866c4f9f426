import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcw.cardinality import (
    INF,
    Piece,
    SequenceOracle,
    Spectrum,
    cardset_contains,
    cardset_least,
    dickson_minimal,
    finite,
    fmt_tuple,
    fmt_tuples,
    from_,
    inf_only,
    leq,
    parse_ext,
    seq,
    spectrum_cover,
)
from tcw.errors import OracleExhausted, TheoryError
from tcw.theories import even_oracle


class TestExtNat:
    def test_parse(self):
        assert parse_ext("Inf") == INF
        assert parse_ext("ℵ₀") == INF
        assert parse_ext(" 7 ") == 7
        with pytest.raises(ValueError):
            parse_ext("0")

    def test_format(self):
        assert fmt_tuple((3, INF)) == "(3,Inf)"
        assert fmt_tuples([(2, 1), (1, 2)]) == "{(1,2), (2,1)}"
        assert fmt_tuples([]) == "{}"

    def test_inf_is_top(self):
        assert leq((5, 3), (INF, 3))
        assert not leq((INF,), (10**9,))


class TestCardSet:
    def test_finite(self):
        cs = finite([4, 2, 2])
        assert cs.values == (2, 4)
        assert cardset_contains(cs, 2) and not cardset_contains(cs, 3)
        assert not cardset_contains(cs, INF)
        assert cardset_least(cs, 3) == 4
        assert cardset_least(cs, 5) is None

    def test_from(self):
        cs = from_(3)
        assert cardset_contains(cs, 100) and cardset_contains(cs, INF)
        assert not cardset_contains(cs, 2)
        assert cardset_least(cs, 1) == 3
        assert cs.upward_closed

    def test_inf_only(self):
        cs = inf_only()
        assert cardset_least(cs, 1) == INF
        assert cs.sup_finite is None

    def test_seq(self):
        cs = seq(even_oracle(), start=1)
        assert cs.members_upto(9) == [2, 4, 6, 8]
        assert cardset_contains(cs, 6) and not cardset_contains(cs, 7)
        assert cardset_least(cs, 5) == 6
        assert cardset_least(cs, 5, ok=lambda v: v % 4 == 0) == 8

    def test_seq_exhausts(self):
        o = SequenceOracle("h", (1, 3, 5), start=1)
        cs = seq(o, inf=False)
        assert cs.members_upto(5) == [1, 3, 5]
        with pytest.raises(OracleExhausted):
            cs.members_upto(6)

    def test_oracle_must_increase(self):
        with pytest.raises(TheoryError):
            SequenceOracle("bad", (1, 1, 2))

    @pytest.mark.parametrize("kw", [dict(kind="finite"), dict(kind="from", min=0), dict(kind="seq")])
    def test_malformed(self, kw):
        from tcw.cardinality import CardSet

        with pytest.raises(TheoryError):
            CardSet(**kw)


class TestSpectrum:
    def test_cover_product(self):
        sp = Spectrum(("a", "b"), (Piece((from_(2), finite([1, 5]))),))
        assert spectrum_cover(sp, (1, 2)) == [(2, 5)]
        assert spectrum_cover(sp, (1, 6)) == []
        assert spectrum_cover(sp, (3, 1), ("a",)) == [(3,)]

    def test_cover_diagonal(self):
        sp = Spectrum(("a", "b"), (Piece((from_(1), from_(1)), tie=(0, 1)),))
        assert spectrum_cover(sp, (2, 4)) == [(4, 4)]

    def test_cover_unions_pieces(self):
        sp = Spectrum(("a", "b"), (Piece((finite([1]), inf_only())), Piece((finite([2]), finite([2])))))
        assert spectrum_cover(sp, (1, 1)) == [(1, INF), (2, 2)]
        assert spectrum_cover(sp, (1, 2), ("a",)) == [(1,)]

    def test_piece_must_cover_sorts(self):
        with pytest.raises(TheoryError):
            Spectrum(("a", "b"), (Piece((from_(1),)),))

    def test_points(self):
        p = Piece((finite([1, 3]), from_(2, inf=True)))
        assert p.points(3) == [(1, 2), (1, 3), (1, INF), (3, 2), (3, 3), (3, INF)]

    def test_trivial_piece_expands(self):
        from tcw.partitions import parse_tag

        p = Piece((from_(4),), tag=parse_tag("nofix"), trivial=True)
        base, one = p.expanded()
        assert one.cards[0].values == (1,) and str(one.tag) == "identity"


# ------------------------------------------------------------- Dickson laws

values = st.sampled_from(list(range(1, 11)) + [INF])


@st.composite
def tuple_sets(draw):
    k = draw(st.integers(1, 4))
    return draw(st.lists(st.tuples(*[values] * k), max_size=12))


def naive_minimal(ts):
    ts = set(ts)
    return sorted(t for t in ts if not any(u != t and leq(u, t) for u in ts))


@settings(max_examples=500, deadline=None, derandomize=True)
@given(tuple_sets())
def test_dickson_matches_naive(ts):
    assert dickson_minimal(ts) == naive_minimal(ts)


def test_dickson_small_exhaustive():
    pts = list(itertools.product([1, 2, INF], repeat=2))
    for r in range(len(pts) + 1):
        for ts in itertools.combinations(pts, r):
            assert dickson_minimal(ts) == naive_minimal(ts)
