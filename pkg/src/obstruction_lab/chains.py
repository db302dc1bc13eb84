"""Standard free resolutions of Z over Z[G] and coefficient complexes.

Abelian groups get the tensor product of the standard per-factor
resolutions: a finite cyclic factor of order n contributes the 2-periodic
complex with boundaries alternating ``1 - a`` (odd degrees) and the norm
``N_a`` (even degrees); a Z factor contributes the two-term complex with
boundary ``1 - a``.  The tensor boundary carries the Koszul sign
``(-1)^(degree of the right part)`` on the left factor's differential, so
for multidegrees the differential of factor i is signed by the parity of
the total degree to its right.

Basis elements of a tensor complex are labelled by multidegrees (one
degree per factor) and ordered ascending lexicographically; all homology
coordinates in this package refer to that order.

Generalised quaternion groups use the 4-periodic resolution with rank
pattern 1, 2, 2, 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, UnsupportedGroupError
from .groupring import RingElement, RingMatrix, generator_element, norm_element
from .groups import INFINITE


@dataclass(frozen=True)
class Resolution:
    """A free resolution of Z over Z[G] up to degree ``top``.

    ``boundaries[i]`` is d_i as a RingMatrix with rows indexed by the
    degree-i basis (row r is the image of basis element r in degree i-1);
    index 0 is unused.  ``labels[i]`` holds per-basis multidegree tuples
    for abelian groups and is None for quaternion groups.
    """

    group: object
    top: int
    ranks: tuple
    boundaries: tuple
    labels: tuple | None

    def __post_init__(self):
        for i in range(2, self.top + 1):
            prod = self.boundaries[i] @ self.boundaries[i - 1]
            if not prod.is_zero():
                raise ConsistencyError(f"d_{i-1} o d_{i} != 0")

    def rank(self, n):
        return self.ranks[n] if 0 <= n <= self.top else 0

    def label_index(self, n, multidegree):
        """Position of a multidegree in the degree-n basis."""
        if self.labels is None:
            raise UnsupportedGroupError("no multidegree labels for this group")
        return self.labels[n].index(tuple(multidegree))

    def boundary_of_chain(self, n, coeffs):
        """d_n applied to an integer coefficient vector over the basis."""
        d = self.boundaries[n]
        out = [RingElement.zero(self.group) for _ in range(self.ranks[n - 1])]
        for i, c in enumerate(coeffs):
            if not c:
                continue
            for j in range(d.cols):
                e = d[i, j]
                if e:
                    out[j] = out[j] + e * c
        return out

    def debug_dump(self):
        """JSON-ready dump (ranks, labels, rendered entries) for golden tests."""
        out = {
            "group": self.group.label(),
            "top": self.top,
            "ranks": list(self.ranks),
            "labels": [
                [list(l) for l in labs] for labs in self.labels
            ] if self.labels is not None else None,
            "boundaries": {},
        }
        for i in range(1, self.top + 1):
            d = self.boundaries[i]
            out["boundaries"][str(i)] = [
                [d[r, c].render() for c in range(d.cols)] for r in range(d.rows)
            ]
        return out

    def verify_exactness(self):
        """Check H_i = 0 for 0 < i < top over Z, and H_0 = Z (finite G)."""
        from . import intlinalg

        if not self.group.is_finite:
            raise UnsupportedGroupError("exactness check needs a finite group")
        zmats = [None] + [
            self.boundaries[i].integer_matrix() for i in range(1, self.top + 1)
        ]
        nG = self.group.order()
        for i in range(1, self.top):
            dim = self.ranks[i] * nG
            r_in = intlinalg.rank(zmats[i + 1]) if self.ranks[i + 1] else 0
            r_out = intlinalg.rank(zmats[i]) if dim else 0
            if r_in + r_out != dim:
                return False
            # ranks match; rule out torsion in ker/im
            kernel = intlinalg.left_kernel(zmats[i])
            rows = [
                intlinalg.solve_left(kernel, row) for row in zmats[i + 1]
            ]
            if any(r is None for r in rows):
                return False
            diag = intlinalg.snf_diagonal(rows)
            if any(d not in (0, 1) for d in diag):
                return False
        # H_0 = Z: cokernel of d_1 has free rank 1 and no torsion
        diag = intlinalg.snf_diagonal(zmats[1]) if self.ranks[1] else []
        nonzero = [d for d in diag if d]
        return all(d == 1 for d in nonzero) and nG - len(nonzero) == 1


@dataclass(frozen=True)
class IntegerComplex:
    """A chain complex of finitely generated free Z or Z/m modules."""

    group: object
    top: int
    ranks: tuple
    mats: tuple  # mats[i]: integer matrix of d_i, rows = rank_i, cols = rank_{i-1}
    modulus: int
    labels: tuple | None

    def label_index(self, n, multidegree):
        if self.labels is None:
            raise UnsupportedGroupError("no multidegree labels for this group")
        return self.labels[n].index(tuple(multidegree))


def _factor_boundary(group, factor_index, degree):
    """d_degree of the standard complex of cyclic factor ``factor_index``."""
    n = group.factors[factor_index]
    a = generator_element(group, factor_index)
    one = RingElement.one(group)
    if n == INFINITE:
        if degree == 1:
            return one - a
        raise IndexError(degree)
    if degree % 2 == 1:
        return one - a
    return norm_element(group, factor_index)


def _factor_top(group, factor_index):
    return 1 if group.factors[factor_index] == INFINITE else None  # None = unbounded


def _abelian_resolution(group, top):
    """Tensor the per-factor complexes; see the module docstring for signs."""
    # state: labels per degree (sorted asc lex), boundary as sparse dict
    labels = [[()]] + [[] for _ in range(top)]
    bnd = [dict() for _ in range(top + 1)]  # bnd[n][(lab_from, lab_to)] = RingElement
    for f in range(len(group.factors)):
        fac_top = _factor_top(group, f)
        new_labels = [[] for _ in range(top + 1)]
        new_bnd = [dict() for _ in range(top + 1)]
        for n in range(top + 1):
            for q in range(n + 1):
                if fac_top is not None and q > fac_top:
                    continue
                for lam in labels[n - q]:
                    new_labels[n].append(lam + (q,))
        for n in range(1, top + 1):
            for q in range(n + 1):
                if fac_top is not None and q > fac_top:
                    continue
                for lam in labels[n - q]:
                    src = lam + (q,)
                    # right-factor part: no sign
                    if q >= 1:
                        new_bnd[n][(src, lam + (q - 1,))] = _factor_boundary(
                            group, f, q
                        )
                    # previous-factors part: sign (-1)^q
                    sign = -1 if q % 2 else 1
                    for (l_from, l_to), elt in bnd[n - q].items():
                        if l_from != lam:
                            continue
                        val = elt * sign
                        new_bnd[n][(src, l_to + (q,))] = val
        labels = [sorted(ls) for ls in new_labels]
        bnd = new_bnd
    ranks = tuple(len(ls) for ls in labels)
    zero = RingElement.zero(group)
    boundaries = [None]
    for n in range(1, top + 1):
        idx_to = {lab: i for i, lab in enumerate(labels[n - 1])}
        rows = []
        for lab in labels[n]:
            row = [zero] * ranks[n - 1]
            for (l_from, l_to), elt in bnd[n].items():
                if l_from == lab:
                    row[idx_to[l_to]] = elt
            rows.append(row)
        boundaries.append(RingMatrix(group, rows, cols=ranks[n - 1]))
    return Resolution(
        group=group,
        top=top,
        ranks=ranks,
        boundaries=tuple(boundaries),
        labels=tuple(tuple(ls) for ls in labels),
    )


def _quaternion_resolution(group, top):
    n = group.quaternion_n
    G = group
    one = RingElement.one(G)
    x = RingElement.monomial(G, (1, 0))
    y = RingElement.monomial(G, (0, 1))
    xy = RingElement.monomial(G, (1, 1))
    sum_xi = RingElement(G, {(i, 0): 1 for i in range(2 * n)})
    norm = norm_element(G)

    d1 = RingMatrix(G, [[x - one], [y - one]])
    d2 = RingMatrix(G, [[sum_xi, -y - one], [xy + one, x - one]])
    d3 = RingMatrix(G, [[x - one, one - xy]])
    d4 = RingMatrix(G, [[norm]])
    period = [d1, d2, d3, d4]

    ranks = [1]
    boundaries = [None]
    for i in range(1, top + 1):
        boundaries.append(period[(i - 1) % 4])
        ranks.append([2, 2, 1, 1][(i - 1) % 4])
    return Resolution(
        group=group,
        top=top,
        ranks=tuple(ranks),
        boundaries=tuple(boundaries),
        labels=None,
    )


def standard_resolution(group, top):
    """The standard free resolution of Z over Z[G], degrees 0..top."""
    if top < 2:
        raise ValueError("top degree must be at least 2")
    if group.is_quaternion:
        return _quaternion_resolution(group, top)
    if group.is_abelian:
        return _abelian_resolution(group, top)
    raise UnsupportedGroupError(group.label())


def apply_coefficients(resolution, modulus=0):
    """Tensor down to Z (modulus 0) or Z/m coefficients."""
    mats = [None]
    for i in range(1, resolution.top + 1):
        d = resolution.boundaries[i]
        mats.append(
            [
                [d[r, c].augment(modulus) for c in range(d.cols)]
                for r in range(d.rows)
            ]
        )
    return IntegerComplex(
        group=resolution.group,
        top=resolution.top,
        ranks=resolution.ranks,
        mats=tuple(mats),
        modulus=modulus,
        labels=resolution.labels,
    )


def induced_chain_multiplier(hom, multidegree):
    """Coefficient of the induced map between standard resolutions.

    For a coordinatewise reduction of abelian groups, the chain map over
    the coefficient reduction sends the basis element of a multidegree to
    the same multidegree downstairs, scaled per factor by
    ``(old_order/new_order)^floor(degree/2)`` (a Z factor contributes only
    in degrees 0 and 1, with multiplier 1).
    """
    mult = 1
    for p, old, new in zip(multidegree, hom.source.factors, hom.target.factors):
        if old == new:
            continue
        if old == INFINITE:
            if p > 1:
                raise ValueError("Z factor has no cells above degree 1")
            continue
        mult *= (old // new) ** (p // 2)
    return mult


def induced_chain_vector(hom, res_src, res_dst, degree, coeffs):
    """Push a chain coordinate vector forward along the induced chain map."""
    out = [0] * res_dst.ranks[degree]
    for i, c in enumerate(coeffs):
        if not c:
            continue
        lab = res_src.labels[degree][i]
        j = res_dst.label_index(degree, lab)
        out[j] += c * induced_chain_multiplier(hom, lab)
    return out


def dualize_degree2(resolution):
    """Presentation of coker d^2 = H^2(K; Z[G]).

    Returns ``(relations, generators)``: ``generators = rank(C_2)`` and the
    relation matrix is the involuted transpose of d_2 (one relation row per
    degree-1 basis element), per the identification of the dual module of a
    free module with itself via f -> involute(f(1)).
    """
    if resolution.top < 3:
        raise ValueError("need the resolution at least to degree 3")
    return resolution.boundaries[2].dagger(), resolution.ranks[2]
