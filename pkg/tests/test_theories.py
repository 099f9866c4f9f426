import itertools
import json

import pytest

from tcw.cardinality import INF
from tcw.errors import OracleExhausted, TheoryError
from tcw.partitions import parse_tag, tag_holds
from tcw.theories import (
    OPERATORS,
    apply_operator,
    catalog_index,
    catalog_lookup,
    catalog_names,
    check_f_prefix,
    feasible_extension,
    realizable_size,
    resolve_theory,
    sequence_oracle_bb,
    sequence_oracle_g,
    theory_from_dict,
)


@pytest.mark.parametrize("name", catalog_names())
def test_every_catalog_file_loads(name):
    T = resolve_theory(name)
    assert T.spectrum.pieces
    assert T.describe().startswith(T.name)


@pytest.mark.parametrize("name", catalog_index())
def test_verify_list_resolves(name):
    resolve_theory(name)


def test_reference_forms_agree():
    a = resolve_theory("catalog/T_geq_3")
    b = resolve_theory("T_geq_3")
    c = catalog_lookup("T_geq", [3])
    assert a.spectrum == b.spectrum == c.spectrum


def test_theory_file(tmp_path):
    doc = {"name": "T_two", "sorts": ["s1"], "pieces": [{"cards": {"s1": {"kind": "finite", "values": [2]}}}]}
    p = tmp_path / "two.json"
    p.write_text(json.dumps(doc))
    T = resolve_theory(str(p))
    assert T.name == "T_two"
    assert T.spectrum.pieces[0].cards[0].values == (2,)


def test_parameter_constraints():
    with pytest.raises(TheoryError):
        catalog_lookup("T_interval", [4, 2])
    with pytest.raises(TheoryError):
        catalog_lookup("T_geq", [])
    with pytest.raises(TheoryError):
        resolve_theory("T_nope")


def test_malformed_documents():
    base = {"name": "X", "sorts": ["s1"]}
    with pytest.raises(TheoryError):
        theory_from_dict(dict(base, pieces=[{"cards": {}}]))
    with pytest.raises(TheoryError):
        theory_from_dict(dict(base, pieces=[{"cards": {"s1": {"kind": "seq", "oracle": "g"}}}]))
    with pytest.raises(TheoryError):
        theory_from_dict(dict(base, pieces=[{"cards": {"s1": {"kind": "from", "min": 1}}, "tag": "identity"}]))


class TestOracles:
    def test_g_prefix(self):
        g = sequence_oracle_g()
        assert [g(n) for n in range(1, 9)] == [2, 3, 4, 6, 8, 9, 10, 12]
        with pytest.raises(OracleExhausted):
            g(9)

    def test_g_shorter_prefix(self):
        g = sequence_oracle_g(4)
        assert g.last_index == 4
        assert not g.known(5)

    def test_f_balance(self):
        check_f_prefix((1, 0, 0, 1))
        with pytest.raises(TheoryError):
            check_f_prefix((1, 1, 0, 1))
        with pytest.raises(TheoryError):
            check_f_prefix((0, 1))

    def test_bb(self):
        bb = sequence_oracle_bb()
        assert [bb(n) for n in range(3)] == [0, 1, 4]
        with pytest.raises(OracleExhausted):
            bb(3)
        assert sequence_oracle_bb([6, 13])(4) == 13
        with pytest.raises(TheoryError):
            sequence_oracle_bb([3])


class TestFeasibility:
    @pytest.mark.parametrize("tag", ["none", "identity", "nofix", "cycle_eq(2)", "cycle_or(2)", "nofix&cycle_eq(2)", "nofix&cycle_or(2)"])
    def test_realizable_sizes_match_brute_force(self, tag):
        t = parse_tag(tag)
        for c in range(1, 6):
            brute = any(tag_holds(t, fn) for fn in itertools.product(range(c), repeat=c))
            assert realizable_size(t, c) == brute, c
        assert realizable_size(t, INF)

    def test_extension(self):
        tag = parse_tag("nofix&cycle_eq(2)")
        assert feasible_extension(tag, 2, 4)
        assert not feasible_extension(tag, 2, 3)
        assert not feasible_extension("none", 3, 2)


class TestOperators:
    def test_add_sort(self):
        T = apply_operator("add_sort", resolve_theory("T_geq_2"))
        assert T.sorts == ("s1", "s2")
        assert T.derived_from[0] == "add_sort"
        assert str(T.spectrum.pieces[0].cards[1]) == "From(1)+Inf"

    @pytest.mark.parametrize("kind,tag", [("add_fn_id", "identity"), ("add_fn_or", "cycle_or(1)")])
    def test_add_fn(self, kind, tag):
        T = apply_operator(kind, resolve_theory("T_leq_3"))
        assert T.signature.has_unary_fn
        assert all(str(p.tag) == tag for p in T.spectrum.pieces)

    def test_add_fn_needs_empty_signature(self):
        T = apply_operator("add_fn_id", resolve_theory("T_inf"))
        with pytest.raises(TheoryError):
            apply_operator("add_fn_or", T)

    def test_unknown_operator(self):
        with pytest.raises(TheoryError):
            apply_operator("add_everything", resolve_theory("T_inf"))

    def test_names_compose(self):
        for kind in OPERATORS:
            T = resolve_theory(f"{kind}_T_geq_2")
            assert T.name == f"{kind}(T_geq_2)"
