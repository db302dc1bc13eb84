import pytest

from obstruction_lab import chains
from obstruction_lab.chains import (
    apply_coefficients,
    dualize_degree2,
    standard_resolution,
)
from obstruction_lab.groupring import RingElement, norm_element
from obstruction_lab.groups import parse_group_spec, quotient_surjection


def one_minus(g, i):
    return RingElement.one(g) - RingElement.monomial(g, g.generator(i))


def test_cyclic_boundaries_alternate():
    g = parse_group_spec("Z/6")
    res = standard_resolution(g, 4)
    assert res.ranks == (1, 1, 1, 1, 1)
    assert res.boundaries[1][0, 0] == one_minus(g, 0)
    assert res.boundaries[2][0, 0] == norm_element(g, 0)
    assert res.boundaries[3][0, 0] == one_minus(g, 0)
    assert res.boundaries[4][0, 0] == norm_element(g, 0)


def test_quaternion_resolution_matches_presentation():
    g = parse_group_spec("Q8")
    res = standard_resolution(g, 7)
    assert res.ranks == (1, 2, 2, 1, 1, 2, 2, 1)
    x = RingElement.monomial(g, (1, 0))
    xy = RingElement.monomial(g, (1, 1))
    one = RingElement.one(g)
    d3 = res.boundaries[3]
    assert d3.rows == 1 and d3.cols == 2
    assert d3[0, 0] == x - one
    assert d3[0, 1] == one - xy
    # 4-periodicity
    for i in range(1, 4):
        assert res.boundaries[i + 4] == res.boundaries[i]


def test_z_factor_two_term():
    g = parse_group_spec("Z x Z/2")
    res = standard_resolution(g, 6)
    # multidegrees with Z-coordinate <= 1
    assert res.ranks == (1, 2, 2, 2, 2, 2, 2)
    assert res.labels[1] == ((0, 1), (1, 0))


def test_tensor_rank_convolution():
    g = parse_group_spec("Z/2 x Z/2 x Z/4")
    res = standard_resolution(g, 6)
    # three unbounded cyclic factors: rank_n = # multidegrees = C(n+2, 2)
    assert res.ranks == (1, 3, 6, 10, 15, 21, 28)


def test_integer_complex_z8z2_entry_pattern():
    g = parse_group_spec("Z/8 x Z/2")
    res = standard_resolution(g, 6)
    zc = apply_coefficients(res, 0)
    lab5, lab4, lab6 = res.labels[5], res.labels[4], res.labels[6]

    def entry(mats, labs_from, labs_to, frm, to):
        return mats[labs_from.index(frm)][labs_to.index(to)]

    # d5 staircase, including the signs
    assert entry(zc.mats[5], lab5, lab4, (4, 1), (3, 1)) == -8
    assert entry(zc.mats[5], lab5, lab4, (2, 3), (1, 3)) == -8
    assert entry(zc.mats[5], lab5, lab4, (3, 2), (3, 1)) == 2
    assert entry(zc.mats[5], lab5, lab4, (1, 4), (1, 3)) == 2
    assert all(v == 0 for v in zc.mats[5][lab5.index((0, 5))])
    assert all(v == 0 for v in zc.mats[5][lab5.index((5, 0))])
    # d6 staircase
    assert entry(zc.mats[6], lab6, lab5, (6, 0), (5, 0)) == 8
    assert entry(zc.mats[6], lab6, lab5, (2, 4), (1, 4)) == 8
    assert entry(zc.mats[6], lab6, lab5, (2, 4), (2, 3)) == 2
    assert entry(zc.mats[6], lab6, lab5, (4, 2), (3, 2)) == 8
    assert entry(zc.mats[6], lab6, lab5, (4, 2), (4, 1)) == 2
    assert entry(zc.mats[6], lab6, lab5, (0, 6), (0, 5)) == 2


def test_mod2_complex_is_zero_for_two_groups():
    g = parse_group_spec("Z/2 x Z/2")
    zc = apply_coefficients(standard_resolution(g, 5), 2)
    for i in range(1, 6):
        assert all(v == 0 for row in zc.mats[i] for v in row)


def test_cyclic_z4_integer_maps_alternate():
    g = parse_group_spec("Z/4")
    zc = apply_coefficients(standard_resolution(g, 4), 0)
    assert [zc.mats[i][0][0] for i in range(1, 5)] == [0, 4, 0, 4]


def test_quaternion_d4_is_norm():
    g = parse_group_spec("Q8")
    zc = apply_coefficients(standard_resolution(g, 4), 0)
    assert zc.mats[4] == [[8]]


def test_dualize_cyclic():
    g = parse_group_spec("Z/6")
    relations, gens = dualize_degree2(standard_resolution(g, 3))
    assert gens == 1
    assert relations.rows == 1
    assert relations[0, 0] == norm_element(g, 0)


def test_dualize_quaternion_matches_known_presentation():
    g = parse_group_spec("Q8")
    n = 1
    relations, gens = dualize_degree2(standard_resolution(g, 3))
    assert gens == 2 and relations.rows == 2
    sum_x_neg = RingElement(g, {(-i % 4, 0): 1 for i in range(2 * n)})
    one = RingElement.one(g)
    inv_xy = RingElement.monomial(g, g.inverse((1, 1)))
    neg_inv_y = -RingElement.monomial(g, g.inverse((0, 1)))
    inv_x = RingElement.monomial(g, g.inverse((1, 0)))
    assert relations.row(0) == [sum_x_neg, inv_xy + one]
    assert relations.row(1) == [neg_inv_y - one, inv_x - one]


def test_dualize_two_generator_matches_known_presentation():
    g = parse_group_spec("Z/8 x Z/2")
    res = standard_resolution(g, 3)
    relations, gens = dualize_degree2(res)
    assert gens == 3 and relations.rows == 2
    lab2 = res.labels[2]
    a_inv = RingElement.monomial(g, g.inverse(g.generator(0)))
    b_inv = RingElement.monomial(g, g.inverse(g.generator(1)))
    one = RingElement.one(g)
    # relation from the first-factor 1-cell: (N_a, 1 - b^-1, 0)
    row_a = relations.row(1)
    assert row_a[lab2.index((2, 0))] == norm_element(g, 0)
    assert row_a[lab2.index((1, 1))] == one - b_inv
    assert row_a[lab2.index((0, 2))].is_zero()
    # relation from the second-factor 1-cell: (0, a^-1 - 1, N_b)
    row_b = relations.row(0)
    assert row_b[lab2.index((2, 0))].is_zero()
    assert row_b[lab2.index((1, 1))] == a_inv - one
    assert row_b[lab2.index((0, 2))] == norm_element(g, 1)


@pytest.mark.parametrize(
    "label", ["Z/4", "Z/8 x Z/2", "Q8", "Z x Z/2", "Z/2 x Z/2 x Z/4"]
)
def test_d_o_d_zero(label):
    res = standard_resolution(parse_group_spec(label), 6)
    for i in range(2, res.top + 1):
        assert (res.boundaries[i] @ res.boundaries[i - 1]).is_zero()


@pytest.mark.parametrize("label", ["Z/4", "Z/4 x Z/2", "Q8"])
def test_exactness_over_z(label):
    res = standard_resolution(parse_group_spec(label), 5)
    assert res.verify_exactness()


def test_induced_chain_multiplier():
    g = parse_group_spec("Z/8 x Z/2")
    hom = quotient_surjection(g, (4, 2))
    # multiplier (8/4)^floor(p/2) on the first factor
    assert chains.induced_chain_multiplier(hom, (5, 0)) == 4
    assert chains.induced_chain_multiplier(hom, (4, 1)) == 4
    assert chains.induced_chain_multiplier(hom, (3, 2)) == 2
    assert chains.induced_chain_multiplier(hom, (1, 4)) == 1

    gz = parse_group_spec("Z x Z/2")
    homz = quotient_surjection(gz, (4, 2))
    assert chains.induced_chain_multiplier(homz, (1, 2)) == 1


def test_resolution_debug_dump_golden():
    g = parse_group_spec("Z/4")
    dump = standard_resolution(g, 3).debug_dump()
    assert dump == {
        "group": "Z/4",
        "top": 3,
        "ranks": [1, 1, 1, 1],
        "labels": [[[0]], [[1]], [[2]], [[3]]],
        "boundaries": {
            "1": [["1 - T"]],
            "2": [["1 + T + T^2 + T^3"]],
            "3": [["1 - T"]],
        },
    }
