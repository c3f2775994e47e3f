from fractions import Fraction

import pytest

from orthoforms import vgs


@pytest.mark.parametrize("rank", range(13, 19))
def test_table_entries_have_the_right_weight(rank):
    for key, poly in vgs.build_table(rank).items():
        assert vgs.weighted_degree(poly) == int(key[1:])


@pytest.mark.parametrize("rank", range(13, 18))
def test_corrected_tables_restrict_to_the_next_rank(rank):
    low, high = vgs.build_table(rank, corrected=True), vgs.build_table(rank + 1, corrected=True)
    n = vgs.lattice_of(rank)
    for key, poly in low.items():
        image = vgs.restrict_table_entry(poly, n)
        if key in high:
            assert image == high[key].extend(vgs.SYMBOLS), key
        else:
            assert image.is_zero(), key


def test_printed_a6_at_rank14_is_not_restriction_consistent():
    assert (14, "a6") in vgs.ERRATA
    image = vgs.restrict_table_entry(vgs.build_table(13)["a6"], 5)
    assert image != vgs.build_table(14)["a6"].extend(vgs.SYMBOLS)
    assert image == vgs.build_table(14, corrected=True)["a6"].extend(vgs.SYMBOLS)


def test_unknown_rank():
    with pytest.raises(ValueError):
        vgs.build_table(12)


def test_rank_and_lattice_are_inverse():
    for n in range(6):
        assert vgs.lattice_of(vgs.rank_of(n)) == n
    assert vgs.chi_weights(5) == [2, 4, 6, 8, 10, 12]
    assert vgs.chi_weights(1) == [10, 12]


def test_restriction_kills_the_lowest_chi():
    img = vgs.restriction_images(3)
    assert img["chi6"].is_zero()
    assert img["chi8"] == 12 * vgs._syms()["chi8"]


def test_visibility_counts_chi_factors():
    b12 = vgs.build_table(13)["b12"]
    seen, hidden = vgs.visibility(b12, 3, 6)
    assert "-1523059200*chi2^6" in hidden
    assert "12*chi12" in seen
    assert len(seen) + len(hidden) == len(b12.terms())
    assert not vgs.visibility(b12, 6, 6)[1]


def test_weight6_ambiguity_pin():
    # fixed by one rank-13 identity, the rest are checked independently
    assert vgs.e6_pin() == Fraction(-1, 12 ** 5)


def test_level_two_displays():
    assert vgs.verify_level_two_displays(5).passed


def test_rank18_bivariate_identity_constant():
    rep = vgs.verify_rank18_bivariate(3)
    assert rep.passed
    assert rep.constant("constant") == "34828517376"
