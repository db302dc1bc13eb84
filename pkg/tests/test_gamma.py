import random

import pytest

from obstruction_lab import intlinalg
from obstruction_lab.chains import standard_resolution
from obstruction_lab.gamma import (
    GAMMA_TORSION_FREE,
    PAPER_THEOREM,
    TRIVIAL_TARGET,
    ZGLattice,
    gamma_action_matrix,
    gamma_coinvariants,
    gamma_of_vector,
    gamma_rank,
    kernel_d2_lattice,
    verify_tertiary,
)
from obstruction_lab.groups import parse_group_spec


def lattice_of(label):
    g = parse_group_spec(label)
    return kernel_d2_lattice(standard_resolution(g, 3))


def test_z2_kernel_lattice():
    lat = lattice_of("Z/2")
    assert lat.rank == 1
    assert lat.action == [[[-1]]]
    dec = gamma_coinvariants(lat)
    assert dec == {"free_rank": 1, "torsion": []}


def test_z4_kernel_lattice():
    lat = lattice_of("Z/4")
    assert lat.rank == 3
    # the kernel of the norm is the augmentation ideal:
    # the lattice spanned by 1 - T, 1 - T^2, 1 - T^3
    want = intlinalg.RowLattice(4)
    for i in (1, 2, 3):
        row = [0] * 4
        row[0], row[i] = 1, -1
        want.add(row)
    for row in lat.basis_rows:
        assert want.contains(row)
    for row in want.basis():
        assert intlinalg.solve_left(lat.basis_rows, row) is not None
    # T has order 4 on the kernel
    T = lat.action[0]

    def matpow(M, k):
        acc = [[1 if i == j else 0 for j in range(len(M))] for i in range(len(M))]
        for _ in range(k):
            acc = intlinalg.matmul(acc, M)
        return acc

    assert matpow(T, 4) == matpow(T, 0)
    assert matpow(T, 2) != matpow(T, 0)


def test_q8_kernel_rank_via_snf_oracle():
    g = parse_group_spec("Q8")
    res = standard_resolution(g, 3)
    zmat = res.boundaries[2].integer_matrix()
    lat = kernel_d2_lattice(res)
    assert lat.rank == 16 - intlinalg.rank(zmat)


def test_gamma_rank_formula():
    rng = random.Random(5)
    for r in range(0, 7):
        rho = [[0] * r for _ in range(r)]
        for i in range(r):
            rho[i][i] = 1
        lat = ZGLattice(parse_group_spec("Z/2"), r, [rho] if r else [[]], None)
        if r == 0:
            assert gamma_coinvariants(lat) == {"free_rank": 0, "torsion": []}
        else:
            assert len(gamma_action_matrix(rho)) == gamma_rank(r)


def test_gamma_quadratic_v_of_minus_u():
    rng = random.Random(17)
    for _ in range(100):
        u = [rng.randrange(-5, 6) for _ in range(4)]
        assert gamma_of_vector(u) == gamma_of_vector([-x for x in u])


def test_gamma_functoriality_on_random_maps():
    # gamma(f o g) = compatible with matrix composition (row convention)
    rng = random.Random(23)
    for _ in range(20):
        r = 3
        A = [[rng.randrange(-2, 3) for _ in range(r)] for _ in range(r)]
        B = [[rng.randrange(-2, 3) for _ in range(r)] for _ in range(r)]
        AB = intlinalg.matmul(A, B)
        GA, GB = gamma_action_matrix(A), gamma_action_matrix(B)
        assert gamma_action_matrix(AB) == intlinalg.matmul(GA, GB)


def test_gamma_embedding_symmetric_tensors():
    # the images v(b_j) -> E_jj and w_jk -> E_jk + E_kj are independent
    for r in (2, 3, 4):
        rows = []
        for j in range(r):
            mat = [0] * (r * r)
            mat[j * r + j] = 1
            rows.append(mat)
        for j in range(r):
            for k in range(j + 1, r):
                mat = [0] * (r * r)
                mat[j * r + k] = 1
                mat[k * r + j] = 1
                rows.append(mat)
        assert intlinalg.rank(rows) == gamma_rank(r)


@pytest.mark.parametrize(
    "label", ["Z/2", "Z/4", "Z/2 x Z/2", "Z/2 x Z/4"]
)
def test_gamma_coinvariants_torsion_free(label):
    lat = lattice_of(label)
    assert gamma_rank(lat.rank) == lat.rank * (lat.rank + 1) // 2
    dec = gamma_coinvariants(lat)
    assert dec["torsion"] == []


def test_torsion_orders_divide_group_order():
    # no torsion occurs for these groups, so the division check is vacuous
    # but asserted per run; exercise it on a group with torsion if any shows
    for label in ("Z/2 x Z/2", "Z/2 x Z/4", "Z/8 x Z/2"):
        g = parse_group_spec(label)
        lat = lattice_of(label)
        dec = gamma_coinvariants(lat)
        for t in dec["torsion"]:
            assert g.order() % t == 0


def test_rank_zero_lattice():
    lat = ZGLattice(parse_group_spec("Z/2"), 0, [[]], None)
    assert gamma_coinvariants(lat) == {"free_rank": 0, "torsion": []}


def test_verify_tertiary_cyclic():
    rep = verify_tertiary(parse_group_spec("Z/8"))
    assert rep.criterion == TRIVIAL_TARGET


def test_verify_tertiary_z2_x_z4():
    rep = verify_tertiary(parse_group_spec("Z/2 x Z/4"))
    assert rep.criterion == GAMMA_TORSION_FREE


def test_verify_tertiary_z_x_z2():
    rep = verify_tertiary(parse_group_spec("Z x Z/2"))
    assert rep.criterion == PAPER_THEOREM


def test_verify_tertiary_quaternion_paper_fact():
    rep = verify_tertiary(parse_group_spec("Q8"))
    assert rep.criterion == TRIVIAL_TARGET
    assert any(t["tag"] == "PAPER_FACT" for t in rep.tags)


def test_verify_tertiary_strips_odd():
    rep = verify_tertiary(parse_group_spec("Z/12"))
    assert rep.reduced_group.factors == (4,)
    assert rep.criterion == TRIVIAL_TARGET
