"""Smith normal form results and homology of integer complexes.

Homology groups come with explicit cycle representatives for every
summand and an expression map that writes an arbitrary cycle in the
computed basis.  Chain coordinates always refer to the ascending-lex
multidegree basis fixed by the chains module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intlinalg
from .errors import ConsistencyError


@dataclass(frozen=True)
class SNFResult:
    """Exact Smith normal form ``U @ M @ V = diag``."""

    diagonal: tuple
    U: tuple
    V: tuple

    def verify(self, M):
        """Recheck the reconstruction identity and the divisibility chain."""
        UM = intlinalg.matmul([list(r) for r in self.U], M)
        UMV = intlinalg.matmul(UM, [list(r) for r in self.V])
        for i, row in enumerate(UMV):
            for j, v in enumerate(row):
                want = self.diagonal[i] if i == j and i < len(self.diagonal) else 0
                if v != want:
                    return False
        for a, b in zip(self.diagonal, self.diagonal[1:]):
            if a == 0 and b != 0:
                return False
            if a and b % a:
                return False
        return True


def smith_normal_form(M):
    """SNF with unimodular transforms; deterministic for fixed input."""
    diag, U, V = intlinalg.smith_normal_form(M)
    return SNFResult(
        diagonal=tuple(diag),
        U=tuple(tuple(r) for r in U),
        V=tuple(tuple(r) for r in V),
    )


@dataclass
class HomologyResult:
    """H_n of an integer complex, with basis lifts and an expression map.

    ``orders[i]`` is the order of the i-th summand (0 means an infinite
    cyclic summand); ``basis_lifts[i]`` is an integer cycle vector in chain
    coordinates representing a generator.
    """

    group: object
    degree: int
    modulus: int
    orders: list
    basis_lifts: list
    labels: tuple | None
    _cycle_basis: list = field(repr=False, default_factory=list)
    _coord_basis: list = field(repr=False, default_factory=list)
    _full_orders: list = field(repr=False, default_factory=list)
    _public_index: list = field(repr=False, default_factory=list)
    _boundary_in: list = field(repr=False, default_factory=list)

    @property
    def free_rank(self):
        return sum(1 for d in self.orders if d == 0)

    @property
    def torsion(self):
        return [d for d in self.orders if d > 1]

    def num_elements(self):
        if self.free_rank:
            return None
        n = 1
        for d in self.orders:
            n *= d
        return n

    def is_cycle(self, chain_vec):
        return intlinalg.solve_left(self._cycle_basis, list(chain_vec)) is not None

    def express(self, chain_vec):
        """Coordinates of a cycle in the computed basis (reduced mod orders)."""
        u = intlinalg.solve_left(self._cycle_basis, list(chain_vec))
        if u is None:
            raise ValueError("vector is not a cycle for this complex")
        c = intlinalg.solve_left(self._coord_basis, u)
        if c is None:
            raise ConsistencyError("cycle basis change failed")
        out = []
        for i in self._public_index:
            d = self._full_orders[i]
            out.append(c[i] % d if d else c[i])
        return out

    def lift_of_class(self, coords):
        """An integer cycle representing the class with these coordinates."""
        if len(coords) != len(self.orders):
            raise ValueError("coordinate length mismatch")
        n = len(self.basis_lifts[0]) if self.basis_lifts else 0
        out = [0] * n
        for c, lift in zip(coords, self.basis_lifts):
            for j in range(n):
                out[j] += c * lift[j]
        return out

    def reduce_coords(self, coords):
        return tuple(
            c % d if d else c for c, d in zip(coords, self.orders)
        )

    def all_classes(self):
        """All classes as coordinate tuples (finite homology only)."""
        if self.free_rank:
            raise ValueError("homology group is infinite")
        from itertools import product

        return [tuple(c) for c in product(*(range(d) for d in self.orders))]

    def class_of_multidegree(self, multidegree):
        """Coordinates of the class of one labelled chain basis element."""
        if self.labels is None:
            raise ValueError("complex carries no multidegree labels")
        idx = self.labels.index(tuple(multidegree))
        vec = [0] * len(self.labels)
        vec[idx] = 1
        return self.express(vec)


def _mod_m_cycle_lattice(M_n, rank_n, rank_out, m):
    """Basis of {x in Z^rank_n : x M_n = 0 mod m} as a RowLattice."""
    lat = intlinalg.RowLattice(rank_n)
    if rank_out == 0:
        for i in range(rank_n):
            row = [0] * rank_n
            row[i] = 1
            lat.add(row)
        return lat
    stacked = [list(r) for r in M_n] + [
        [m if i == j else 0 for j in range(rank_out)] for i in range(rank_out)
    ]
    for krow in intlinalg.left_kernel(stacked):
        lat.add(krow[:rank_n])
    return lat


def homology_at(complex_, n):
    """H_n of an IntegerComplex, with basis lifts.

    Needs the boundary d_{n+1}, so ``n + 1 <= top``.
    """
    if not (0 <= n and n + 1 <= complex_.top):
        raise ValueError(f"degree {n} out of range for top {complex_.top}")
    rank_n = complex_.ranks[n]
    rank_out = complex_.ranks[n - 1] if n >= 1 else 0
    m = complex_.modulus
    labels = complex_.labels[n] if complex_.labels is not None else None

    empty = HomologyResult(
        group=complex_.group,
        degree=n,
        modulus=m,
        orders=[],
        basis_lifts=[],
        labels=labels,
        _cycle_basis=[],
        _coord_basis=[],
        _full_orders=[],
        _public_index=[],
        _boundary_in=[],
    )
    if rank_n == 0:
        return empty

    M_n = complex_.mats[n] if n >= 1 else [[] for _ in range(rank_n)]
    M_in = complex_.mats[n + 1]

    if m == 0:
        if n == 0 or rank_out == 0:
            K = [[1 if i == j else 0 for j in range(rank_n)] for i in range(rank_n)]
        else:
            K = intlinalg.left_kernel(M_n)
    else:
        K = _mod_m_cycle_lattice(M_n if n >= 1 else [], rank_n, rank_out, m).basis()

    s = len(K)
    if s == 0:
        return empty

    relation_rows = [list(r) for r in M_in]
    if m:
        relation_rows += [
            [m if i == j else 0 for j in range(rank_n)] for i in range(rank_n)
        ]
    Y = []
    for row in relation_rows:
        u = intlinalg.solve_left(K, row)
        if u is None:
            raise ConsistencyError("boundary row is not a cycle (d o d != 0?)")
        Y.append(u)

    # Smith of Y^T: U' Y^T V' = D, so rowspace(Y) = rowspace(D^T U'^T) and
    # the rows of P := U'^T are a basis of the cycle coordinate lattice in
    # which the quotient splits as  (+) Z/d_i.
    if Y:
        diag, Uprime, _ = intlinalg.smith_normal_form(intlinalg.transpose(Y))
        P = intlinalg.transpose(Uprime)
        full_orders = [diag[i] if i < len(diag) else 0 for i in range(s)]
    else:
        P = [[1 if i == j else 0 for j in range(s)] for i in range(s)]
        full_orders = [0] * s
    public = [i for i, d in enumerate(full_orders) if d != 1]

    lifts = [intlinalg.vecmat(P[i], K) for i in public]
    orders = [full_orders[i] for i in public]
    return HomologyResult(
        group=complex_.group,
        degree=n,
        modulus=m,
        orders=orders,
        basis_lifts=lifts,
        labels=labels,
        _cycle_basis=K,
        _coord_basis=P,
        _full_orders=full_orders,
        _public_index=public,
        _boundary_in=relation_rows,
    )


def reduction_map(hz, hz2):
    """Matrix of red_2 : H_n(-;Z) -> H_n(-;Z/2) in the computed bases.

    Row i is the coordinate vector of the reduction of the i-th integral
    basis lift.
    """
    if hz.modulus != 0 or hz2.modulus != 2:
        raise ValueError("expected integral and mod-2 homology")
    if hz.degree != hz2.degree:
        raise ValueError("degree mismatch")
    rows = []
    for lift in hz.basis_lifts:
        rows.append([c % 2 for c in hz2.express(lift)])
    return rows
