import pytest

from tcw.cardinality import INF
from tcw.corpus import formula_corpus
from tcw.errors import SortError, TheoryError
from tcw.logic import parse_formula
from tcw.minmod import is_sat, minmod, minmod_transfer_for, minmod_via_transfer
from tcw.oracle import oracle_minmod
from tcw.theories import resolve_theory

K3 = "x:s1 != y:s1 & y:s1 != z:s1 & x:s1 != z:s1"
K4 = K3 + " & w:s1 != x:s1 & w:s1 != y:s1 & w:s1 != z:s1"
K5 = K4 + " & v:s1 != x:s1 & v:s1 != y:s1 & v:s1 != z:s1 & v:s1 != w:s1"

# values cross-checked against the brute-force oracle, then frozen
FROZEN = [
    ("T_geq_3", None, "x:s1 != y:s1", [(3,)]),
    ("T_geq_3", None, "x:s1 = y:s1", [(3,)]),
    ("T_leq_3", None, K3, [(3,)]),
    ("T_leq_3", None, K4, []),
    ("T_even_inf", None, K3, [(4,)]),
    ("T_inf", None, "x:s1 = y:s1", [(INF,)]),
    ("T_mn_inf_3_1", None, "x:s1 != y:s1", [(3, 1)]),
    ("T_mn_inf_3_1", ("s2",), "a:s2 != b:s2", [(2,)]),
    ("T_mn_inf_3_1", None, "a:s2 != b:s2", [(1, INF), (3, 2)]),
    ("T_n_inf_2", None, "x:s1 = x:s1", [(2,)]),
    ("T_interval_2_4", None, "x:s1 = y:s1", [(2,)]),
    ("add_fn_id_T_leq_2", None, "s(x:s1) != x:s1", []),
    ("add_fn_or_T_geq_1", None, "s(x:s1) != x:s1", [(2,)]),
    ("add_fn_or_T_geq_1", None, "s(x:s1) != x:s1 & s(s(x:s1)) != x:s1", [(2,)]),
    ("T_XII", None, "s(x:s1) != x:s1", [(4,)]),
    ("T_XII", None, "x:s1 = x:s1", [(1,)]),
    ("T_I", None, K5, [(6,)]),
    ("add_sort_T_geq_2", None, "a:s2 != b:s2", [(2, 2)]),
    ("add_sort_T_geq_2", ("s1",), "a:s2 != b:s2", [(2,)]),
    ("T_upinf", None, "x:s1 != y:s1", [(2, 2)]),
]


@pytest.mark.parametrize("name,S,text,expected", FROZEN, ids=lambda v: str(v))
def test_frozen_values(name, S, text, expected):
    T = resolve_theory(name)
    assert minmod(T, S, parse_formula(text, T.signature)) == expected


def test_unsat_gives_empty_set():
    T = resolve_theory("T_inf")
    phi = parse_formula("x:s1 != x:s1", T.signature)
    assert minmod(T, None, phi) == []
    assert not is_sat(T, phi)


def test_result_is_antichain():
    T = resolve_theory("T_mn_inf_3_1")
    for phi in formula_corpus(T.signature):
        out = minmod(T, None, phi)
        for a in out:
            for b in out:
                assert a == b or not all(x <= y for x, y in zip(a, b))


def test_bad_sorts():
    T = resolve_theory("T_geq_3")
    phi = parse_formula("x:s1 = x:s1", T.signature)
    with pytest.raises((SortError, TheoryError)):
        minmod(T, ("s9",), phi)


def test_formula_outside_signature():
    T = resolve_theory("T_geq_3")
    phi = parse_formula("s(x:s1) = x:s1", resolve_theory("add_fn_id_T_geq_3").signature)
    with pytest.raises(SortError):
        minmod(T, None, phi)


@pytest.mark.parametrize("name", ["T_geq_2", "T_leq_3", "T_even_inf", "T_mn_inf_3_1", "add_fn_or_T_leq_2", "add_fn_id_T_inf"])
def test_generic_agrees_with_oracle_on_default_corpus(name):
    T = resolve_theory(name)
    for phi in formula_corpus(T.signature):
        got, _ = oracle_minmod(T, phi)
        assert minmod(T, None, phi) == got, str(phi)


class TestTransfer:
    @pytest.mark.parametrize("kind,base", [("add_sort", "T_geq_2"), ("add_fn_id", "T_leq_2"), ("add_fn_or", "T_geq_1")])
    def test_matches_direct(self, kind, base):
        T = resolve_theory(f"{kind}_{base}")
        for phi in formula_corpus(T.signature)[:60]:
            assert minmod_transfer_for(T, phi) == minmod(T, None, phi), str(phi)

    def test_needs_operator_theory(self):
        T = resolve_theory("T_geq_2")
        with pytest.raises(TheoryError):
            minmod_transfer_for(T, parse_formula("x:s1 = x:s1", T.signature))

    def test_add_sort_needs_one_sort(self):
        B = resolve_theory("T_mn_inf_3_1")
        with pytest.raises(TheoryError):
            minmod_via_transfer("add_sort", B, parse_formula("x:s1 = x:s1", B.signature))
