import pytest

from tcw.logic import sigma_n, sigma_s
from tcw.partitions import parse_tag
from tcw.properties import (
    IMPOSSIBLE,
    PROPERTIES,
    check_property,
    property_profile,
    restrict,
    rule_applies,
    tag_implies,
    violations,
)
from tcw.theories import resolve_theory

ALL_PLUS = {p: "+" for p in PROPERTIES}


class TestRules:
    def test_scopes(self):
        by_label = {r.label: r for r in IMPOSSIBLE}
        sm_cf = by_label["SM => CF"]
        assert rule_applies(sm_cf, sigma_n(2))
        assert not rule_applies(sm_cf, sigma_s(1))
        one = by_label["FM => SF"]
        assert rule_applies(one, sigma_s(1)) and not rule_applies(one, sigma_n(2))

    def test_all_positive_is_consistent(self):
        for sig in (sigma_n(1), sigma_n(2), sigma_s(1), sigma_s(2)):
            assert violations(ALL_PLUS, sig) == []

    def test_unknowns_never_violate(self):
        signs = {p: "?" for p in PROPERTIES}
        assert violations(signs, sigma_n(1)) == []

    @pytest.mark.parametrize(
        "signs,sig,label",
        [
            (dict(ALL_PLUS, CF="-"), sigma_n(1), "SM => CF"),
            (dict(ALL_PLUS, SI="-"), sigma_s(1), "SM => SI"),
            (dict(ALL_PLUS, FW="-"), sigma_s(2), "CF and FM => FW"),
            (dict(ALL_PLUS, SW="-", SM="-", SI="-"), sigma_n(2), None),
        ],
    )
    def test_detects(self, signs, sig, label):
        got = violations(signs, sig)
        if label is None:
            assert "SM and SF => SW" not in got
        else:
            assert label in got


class TestTags:
    def test_implication(self):
        assert tag_implies(parse_tag("identity"), parse_tag("cycle_eq(1)"))
        assert tag_implies(parse_tag("cycle_eq(1)"), parse_tag("none"))
        assert tag_implies(parse_tag("nofix&cycle_eq(2)"), parse_tag("cycle_eq(2)"))
        assert not tag_implies(parse_tag("none"), parse_tag("identity"))


def test_restrict_to_infinite():
    T = resolve_theory("T_geq_3")
    R = restrict(T, {0: lambda cs: cs if cs.include_inf else None}, "inf")
    assert R is not None
    T = resolve_theory("T_leq_3")
    assert restrict(T, {0: lambda cs: None}, "none") is None


@pytest.mark.parametrize(
    "name,prop,sign",
    [
        ("T_geq_3", "SI", "+"),
        ("T_geq_3", "SM", "+"),
        ("T_leq_3", "SI", "-"),
        ("T_leq_3", "CV", "-"),
        ("T_inf", "FM", "-"),
        ("T_inf", "CV", "+"),
        ("T_even_inf", "SM", "-"),
        ("T_even_inf", "FW", "+"),
        ("T_even_inf", "SW", "-"),
        ("T_n_inf_2", "SF", "-"),
        ("T_mn_inf_3_1", "SF", "-"),
        ("T_mn_inf_3_1", "FM", "+"),
        ("T_II", "SF", "-"),
        ("T_bb", "CF", "?"),
        ("T_V", "CV", "-"),
        ("add_fn_id_T_inf", "SM", "+"),
        ("add_fn_id_T_leq_2", "CV", "-"),
    ],
)
def test_single_verdicts(name, prop, sign):
    assert check_property(resolve_theory(name), prop).sign == sign


def test_refutations_carry_evidence():
    v = check_property(resolve_theory("T_leq_3"), "CV")
    assert v.refuted and v.counterexample["disjuncts"]
    v = check_property(resolve_theory("T_even_inf"), "SM")
    assert v.refuted and "size" in v.detail


def test_property_over_chosen_sorts():
    T = resolve_theory("T_mn_inf_3_1")
    # the second sort is unconstrained above 1, so S = {s2} behaves better
    assert check_property(T, "SI", ("s2",)).sign == "+"
    assert check_property(T, "SI").sign == "-"


def test_unknown_property():
    with pytest.raises(ValueError):
        check_property(resolve_theory("T_inf"), "XX")


def test_profile_row_and_mismatches():
    P = property_profile(resolve_theory("T_inf"))
    assert P.row() == "SI+ SM+ CV+ FM- SF- FW- SW- CF+"
    assert P.mismatches() == {}
    assert P.violations == []
