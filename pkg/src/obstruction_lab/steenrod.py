"""Mod-2 cohomology ring model and Steenrod squares for supported groups.

For a product of cyclic 2-groups and at most one Z factor, the mod-2
cohomology is a tensor product of one ring per factor:

* order 2:        Z/2[alpha],                     |alpha| = 1,
* order >= 4:     Z/2[alpha, beta]/(alpha^2),     |beta| = 2,
* infinite (Z):   Z/2[alpha]/(alpha^2).

Each factor is one-dimensional in every admissible degree, so a monomial
is identified with its multidegree tuple, matching the chain basis labels
of the standard resolution degree for degree.  Squares are computed by
the Cartan formula from generator rules: Sq1(alpha) = alpha^2 for order-2
factors and 0 otherwise; Sq1(beta) = 0; Sq2(beta) = beta^2; Sq2 of any
degree-1 generator is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import chains, homology
from .errors import UnsupportedGroupError
from .groups import INFINITE


def _check_two_group(g):
    if not g.is_abelian:
        raise UnsupportedGroupError("cohomology ring model needs an abelian group")
    for n in g.factors:
        if n != INFINITE and (n < 2 or n & (n - 1)):
            raise UnsupportedGroupError(
                "cohomology ring model needs 2-power factors; strip odd parts first"
            )


def cohomology_basis(g, d):
    """All degree-d monomials as multidegree tuples, ascending lex."""
    _check_two_group(g)
    if d < 0:
        return []
    out = []
    maxima = [1 if n == INFINITE else d for n in g.factors]
    if not g.factors:
        return [()] if d == 0 else []
    for degs in product(*(range(min(mx, d) + 1) for mx in maxima)):
        if sum(degs) == d:
            out.append(degs)
    out.sort()
    return out


def monomial_render(g, degs):
    """Human-readable monomial, e.g. ``a1^2*b3`` style per factor."""
    syms = g.generator_symbols()
    parts = []
    for i, (d, n) in enumerate(zip(degs, g.factors)):
        if d == 0:
            continue
        if n == 2 or n == INFINITE:
            parts.append(f"{syms[i]}" + (f"^{d}" if d > 1 else ""))
        else:
            eps, m = d % 2, d // 2
            if eps:
                parts.append(f"{syms[i]}")
            if m:
                parts.append(f"B{syms[i]}" + (f"^{m}" if m > 1 else ""))
    return "*".join(parts) if parts else "1"


def _sq1_factor(order, d):
    """Coefficient of the degree-(d+1) class in Sq1 of the degree-d class."""
    if order == 2:
        return d % 2
    return 0  # order >= 4 (Bockstein vanishes) and Z factor alike


def _sq2_factor(order, d):
    """Coefficient of the degree-(d+2) class in Sq2 of the degree-d class."""
    if order == 2:
        return (d * (d - 1) // 2) % 2
    if order == INFINITE:
        return 0
    return (d // 2) % 2  # Sq2(a^e b^m) = m * a^e b^(m+1)


def _admissible(g, degs):
    return all(
        d <= 1 or n != INFINITE for d, n in zip(degs, g.factors)
    )


def sq2_of_monomial(g, degs):
    """Sq^2 of a monomial as a set of multidegrees (Z/2 coefficients)."""
    _check_two_group(g)
    out = set()
    k = len(degs)
    for i in range(k):
        if _sq2_factor(g.factors[i], degs[i]):
            cand = tuple(d + 2 if j == i else d for j, d in enumerate(degs))
            if _admissible(g, cand):
                out ^= {cand}
    for i in range(k):
        si = _sq1_factor(g.factors[i], degs[i])
        if not si:
            continue
        for j in range(i + 1, k):
            sj = _sq1_factor(g.factors[j], degs[j])
            if not sj:
                continue
            cand = tuple(
                d + 1 if l in (i, j) else d for l, d in enumerate(degs)
            )
            if _admissible(g, cand):
                out ^= {cand}
    return out


def sq1_of_monomial(g, degs):
    """Sq^1 of a monomial as a set of multidegrees (Z/2 coefficients)."""
    _check_two_group(g)
    out = set()
    for i in range(len(degs)):
        if _sq1_factor(g.factors[i], degs[i]):
            cand = tuple(d + 1 if j == i else d for j, d in enumerate(degs))
            if _admissible(g, cand):
                out ^= {cand}
    return out


def multiply_monomials(g, a, b):
    """Cup product of two monomials; None encodes zero (a relation hit).

    The relations are alpha^2 = 0 for Z factors and for every factor of
    order >= 4 (where odd degree means an alpha component is present).
    """
    cand = tuple(x + y for x, y in zip(a, b))
    for x, y, d, n in zip(a, b, cand, g.factors):
        if n == INFINITE and d > 1:
            return None
        if n != INFINITE and n >= 4 and x % 2 == 1 and y % 2 == 1:
            return None
    return cand


def sq2_matrix(g, d):
    """Matrix of Sq^2 : H^d -> H^(d+2) over the monomial bases.

    ``S[i][j] = 1`` iff the j-th degree-(d+2) monomial occurs in Sq^2 of
    the i-th degree-d monomial (both bases ascending lex).
    """
    src = cohomology_basis(g, d)
    dst = cohomology_basis(g, d + 2)
    dst_idx = {m: j for j, m in enumerate(dst)}
    S = [[0] * len(dst) for _ in range(len(src))]
    for i, mono in enumerate(src):
        for m in sq2_of_monomial(g, mono):
            S[i][dst_idx[m]] = 1
    return S


def sq2_dual_rows(g, upper_degree):
    """Sq_2 : H_upper(Z/2) -> H_(upper-2)(Z/2) on chain coordinates.

    Returns the list of images (as 0/1 vectors over the lower basis) of
    the upper chain basis vectors; both bases are the ascending-lex
    multidegree bases, which coincide with the dual monomial bases.
    """
    S = sq2_matrix(g, upper_degree - 2)
    lower = cohomology_basis(g, upper_degree - 2)
    upper = cohomology_basis(g, upper_degree)
    rows = []
    for j in range(len(upper)):
        rows.append([S[i][j] % 2 for i in range(len(lower))])
    return rows


class GF2Subspace:
    """A subspace of (Z/2)^n via echelonized bitmask rows."""

    def __init__(self, n, vectors=()):
        self.n = n
        self.rows = []  # bitmask per pivot, decreasing pivot bit
        for v in vectors:
            self.add(v)

    @staticmethod
    def mask_of(vec):
        m = 0
        for i, v in enumerate(vec):
            if v % 2:
                m |= 1 << i
        return m

    def add(self, vec):
        m = vec if isinstance(vec, int) else self.mask_of(vec)
        for r in self.rows:
            m = min(m, m ^ r)
        if m:
            self.rows.append(m)
            self.rows.sort(reverse=True)
            return True
        return False

    def contains(self, vec):
        m = vec if isinstance(vec, int) else self.mask_of(vec)
        for r in self.rows:
            m = min(m, m ^ r)
        return m == 0

    @property
    def dim(self):
        return len(self.rows)

    def elements(self):
        """All 2^dim member bitmasks."""
        out = [0]
        for r in self.rows:
            out += [x ^ r for x in out]
        return sorted(out)


@dataclass
class D2Map:
    """The composite Sq_2 o red_2 : H_p(-;Z) -> H_(p-2)(-;Z/2).

    ``rows[i]`` is the image (0/1 chain-coordinate vector over the target
    mod-2 basis) of the i-th integral homology basis class; ``tag`` records
    whether the map was machine-computed or imported from the literature.
    """

    group: object
    p: int
    hz: object
    target_dim: int
    rows: list
    tag: str

    def apply(self, coords):
        out = [0] * self.target_dim
        for c, row in zip(coords, self.rows):
            if c % 2 == 0:
                continue
            for j in range(self.target_dim):
                out[j] ^= row[j] & 1
        return out

    def image(self):
        return GF2Subspace(self.target_dim, self.rows)

    def kernel_classes(self):
        """All integral classes mapping to zero (finite homology only)."""
        return [
            coords
            for coords in self.hz.all_classes()
            if all(v == 0 for v in self.apply(coords))
        ]


def d2_differential(g, p):
    """The AHSS bottom-row differential d^2 out of H_p(-;Z) for p in {4,5}.

    Computed as Sq_2 o red_2 from the standard resolution.  For quaternion
    groups the map vanishes (4-periodic cohomology makes the next
    differential an isomorphism); that fact is imported, tagged PAPER_FACT.
    """
    if p not in (4, 5):
        raise ValueError("d2 is computed only out of degrees 4 and 5")
    res = chains.standard_resolution(g, p + 1)
    hz = homology.homology_at(chains.apply_coefficients(res, 0), p)
    if g.is_quaternion:
        target_dim = res.ranks[p - 2]  # mod-2 homology = chain basis
        rows = [[0] * target_dim for _ in hz.orders]
        # vanishing on an empty source needs no citation
        tag = "PAPER_FACT" if hz.orders else "MACHINE_CHECKED"
        return D2Map(g, p, hz, target_dim, rows, tag=tag)
    hz2 = homology.homology_at(chains.apply_coefficients(res, 2), p)
    red = homology.reduction_map(hz, hz2)
    # mod-2 homology of these groups is the chain basis itself
    sq_rows = sq2_dual_rows(g, p)
    target_dim = len(cohomology_basis(g, p - 2))
    rows = []
    for red_row in red:
        acc = [0] * target_dim
        for j, c in enumerate(red_row):
            if c % 2:
                for t in range(target_dim):
                    acc[t] ^= sq_rows[j][t]
        rows.append(acc)
    return D2Map(g, p, hz, target_dim, rows, tag="MACHINE_CHECKED")
