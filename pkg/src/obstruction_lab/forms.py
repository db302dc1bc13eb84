"""Sesquilinear and hermitian forms on finitely presented Z[G]-modules,
and the exact evenness decision.

A module is presented as Z[G]^g modulo the left submodule spanned by the
rows of a relation matrix R.  A form matrix L defines
``lambda(x, y) = x L y^dagger`` (dagger = involuted transpose), so L is
well defined on the quotient iff ``R L = 0`` and ``L R^dagger = 0``, and
hermitian iff ``L = L^dagger``.

A hermitian form is even iff it can be written ``Q + Q^dagger`` for a
sesquilinear Q on the module.  Over a finite group this is an exact
integer linear feasibility problem: it suffices to impose
``Q + Q^dagger = L`` together with the second-slot relation condition
``Q R^dagger = 0`` (the first-slot condition then follows from
``R Q = R L - (Q R^dagger)^dagger``), and the resulting system is solved
by Smith reduction.  Over a group with one Z factor the same system is
solved for witnesses supported in a bounded coordinate window, and
oddness certificates are sought by pushing the whole presentation
forward to finite quotients (a ring homomorphism preserves both
constraints, so evenness pushes forward; an odd image certifies an odd
form).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intlinalg
from .errors import ConsistencyError
from .groupring import RingElement, RingMatrix
from .groups import INFINITE, quotient_surjection

EVEN = "even"
ODD = "odd"
UNDECIDED = "undecided"

DEFAULT_MAX_SUPPORT = 8


@dataclass(frozen=True)
class FPModule:
    """Z[G]^generators modulo the left span of the relation rows."""

    group: object
    generators: int
    relations: RingMatrix

    def __post_init__(self):
        if self.relations.rows and self.relations.cols != self.generators:
            raise ValueError("relation width must equal the generator count")
        if self.relations.group != self.group:
            raise ValueError("relations over the wrong group")

    def pushforward(self, hom):
        return FPModule(
            hom.target, self.generators, self.relations.pushforward(hom)
        )


@dataclass(frozen=True)
class FormMatrix:
    """A sesquilinear form on an FPModule, as a generator-pairing matrix."""

    module: FPModule
    entries: RingMatrix

    def __post_init__(self):
        g = self.module.generators
        if (self.entries.rows, self.entries.cols) != (g, g):
            raise ValueError("form matrix must be generators x generators")

    @classmethod
    def rank_one(cls, module, w):
        """The form ``(x, y) -> x (w^dagger w) y^dagger`` for a row vector w."""
        if len(w) != module.generators:
            raise ValueError("vector length must equal the generator count")
        entries = [
            [w[i].involute() * w[j] for j in range(len(w))] for i in range(len(w))
        ]
        return cls(module, RingMatrix(module.group, entries))

    def dagger(self):
        return FormMatrix(self.module, self.entries.dagger())

    def __add__(self, other):
        if other.module != self.module:
            raise ValueError("module mismatch")
        return FormMatrix(self.module, self.entries + other.entries)

    def __sub__(self, other):
        if other.module != self.module:
            raise ValueError("module mismatch")
        return FormMatrix(self.module, self.entries - other.entries)

    def is_hermitian(self):
        return self.entries == self.entries.dagger()

    def is_well_defined(self):
        R = self.module.relations
        if R.rows == 0:
            return True
        return (R @ self.entries).is_zero() and (
            self.entries @ R.dagger()
        ).is_zero()

    def pushforward(self, hom):
        return FormMatrix(
            self.module.pushforward(hom), self.entries.pushforward(hom)
        )

    def is_zero(self):
        return self.entries.is_zero()


def is_hermitian(L):
    return L.is_hermitian()


def is_weakly_even(w, module):
    """Diagonal-parity test for the rank-one form built from w.

    True iff the mod-2 augmentation of every component of w vanishes and
    the relation pairings augment to zero mod 2.
    """
    if any(x.augment(2) for x in w):
        return False
    R = module.relations
    for k in range(R.rows):
        acc = RingElement.zero(module.group)
        for j in range(module.generators):
            acc = acc + R[k, j] * w[j].involute()
        if acc.augment(2):
            return False
    return True


@dataclass(frozen=True)
class TateVerdict:
    """Outcome of the evenness decision for a hermitian form."""

    status: str
    witness: RingMatrix | None = None
    certificate: dict | None = None
    max_support: int | None = None
    max_quotient_exponent: int | None = None

    @property
    def is_even(self):
        return self.status == EVEN

    @property
    def is_odd(self):
        return self.status == ODD

    @property
    def is_undecided(self):
        return self.status == UNDECIDED

    def summary(self):
        if self.is_even:
            return "Even"
        if self.is_odd:
            return f"Odd ({self.certificate['kind']})"
        return f"Undecided (support bound {self.max_support})"


def _window_elements(group, bound):
    """Elements of an abelian group with the Z coordinate in [-bound, bound]."""
    from itertools import product

    ranges = [
        range(-bound, bound + 1) if n == INFINITE else range(n)
        for n in group.factors
    ]
    return [key for key in product(*ranges)]


def _z_coordinate_index(group):
    for i, n in enumerate(group.factors):
        if n == INFINITE:
            return i
    return None


def _max_z_support(group, ring_elements):
    zi = _z_coordinate_index(group)
    best = 0
    for e in ring_elements:
        for key in e.coeffs:
            best = max(best, abs(key[zi]))
    return best


def _solve_plus_dagger(L, unknown_elems, target_elems, in_support):
    """Find Q supported on ``unknown_elems`` with Q + Q^dagger = L and
    Q R^dagger = 0, by exact integer linear algebra.  Returns a RingMatrix
    or None.

    ``target_elems`` must cover every group element where a product
    equation could be nonzero; ``in_support(h)`` says whether h is an
    admissible support element for Q.
    """
    module = L.module
    G = module.group
    g = module.generators
    Rd = module.relations.dagger()  # g x r
    r = module.relations.rows

    # The support of L must be admissible: outside it the hermitian pairing
    # forces 0 = L[h].
    for i in range(g):
        for j in range(g):
            for h, c in L.entries[i, j].coeffs.items():
                if c and not in_support(h):
                    return None

    inv = {h: G.inverse(h) for h in unknown_elems}

    orbits = []
    rep_map = {}
    for i in range(g):
        for j in range(g):
            for h in unknown_elems:
                key = (i, j, h)
                if key in rep_map:
                    continue
                partner = (j, i, inv[h])
                lc = L.entries[i, j].coefficient(h)
                if partner == key:
                    if lc % 2:
                        return None  # 2x = odd coefficient
                    rep_map[key] = (None, 0, lc // 2)
                else:
                    o = len(orbits)
                    orbits.append(key)
                    rep_map[key] = (o, 1, 0)
                    rep_map[partner] = (o, -1, lc)

    rows = []
    rhs = []
    n_unknowns = len(orbits)
    for i in range(g):
        for k in range(r):
            for h in target_elems:
                row = [0] * n_unknowns
                const = 0
                nonzero = False
                for j in range(g):
                    entry = Rd[j, k]
                    if not entry:
                        continue
                    for v, cv in entry.coeffs.items():
                        u = G.multiply(h, G.inverse(v))
                        rm = rep_map.get((i, j, u))
                        if rm is None:
                            continue  # outside the support window: Q term is 0
                        o, s, c = rm
                        if c:
                            const += cv * c
                        if o is not None:
                            row[o] += s * cv
                            nonzero = True
                if not nonzero:
                    if const:
                        return None
                    continue
                rows.append(row)
                rhs.append(-const)

    if n_unknowns == 0:
        x = []
    else:
        x = intlinalg.solve(rows, rhs) if rows else [0] * n_unknowns
        if x is None:
            return None

    entries = []
    for i in range(g):
        row = []
        for j in range(g):
            coeffs = {}
            for h in unknown_elems:
                o, s, c = rep_map[(i, j, h)]
                val = c + (s * x[o] if o is not None else 0)
                if val:
                    coeffs[h] = val
            row.append(RingElement(G, coeffs))
        entries.append(row)
    return RingMatrix(G, entries)


def _verify_witness(L, Q):
    R = L.module.relations
    if not (Q + Q.dagger() == L.entries):
        raise ConsistencyError("witness fails Q + Q^dagger = L")
    if R.rows:
        if not (Q @ R.dagger()).is_zero():
            raise ConsistencyError("witness fails Q R^dagger = 0")
        if not (R @ Q).is_zero():
            raise ConsistencyError("derived first-slot condition failed")


def _default_quotient_exponent(group):
    best = 0
    for n in group.factors:
        if n != INFINITE:
            e = 0
            while n % 2 == 0:
                n //= 2
                e += 1
            best = max(best, e)
    return max(best + 2, 3)


def decide_even(L, max_support=DEFAULT_MAX_SUPPORT, max_quotient_exponent=None,
                try_quotients=True):
    """Decide whether the hermitian form L is even on its module.

    Finite groups: exact decision (Even with a verified witness, or Odd
    with an integer-infeasibility certificate).  Groups with a Z factor:
    witness search in the coordinate window [-max_support, max_support],
    then oddness certificates through finite quotients reducing the Z
    factor to Z/2^m for m = 1..max_quotient_exponent, else Undecided.
    """
    if not L.is_hermitian():
        raise ValueError("decide_even requires a hermitian form")
    if not L.is_well_defined():
        raise ValueError("form is not well defined on its module")
    G = L.module.group

    if G.is_finite:
        elems = G.elements()
        Q = _solve_plus_dagger(L, elems, elems, lambda h: True)
        if Q is not None:
            _verify_witness(L, Q)
            return TateVerdict(EVEN, witness=Q)
        return TateVerdict(ODD, certificate={"kind": "integer-infeasible"})

    zi = _z_coordinate_index(G)
    support_needed = _max_z_support(
        G, [e for row in L.entries.entries for e in row]
    )
    bound = max(max_support, support_needed)
    window = _window_elements(G, bound)
    slack = _max_z_support(
        G,
        [e for row in L.module.relations.entries for e in row],
    )
    targets = _window_elements(G, bound + slack)
    Q = _solve_plus_dagger(
        L, window, targets, lambda h: abs(h[zi]) <= bound
    )
    if Q is not None:
        _verify_witness(L, Q)
        return TateVerdict(EVEN, witness=Q, max_support=bound)

    max_exp = (
        _default_quotient_exponent(G)
        if max_quotient_exponent is None
        else max_quotient_exponent
    )
    if try_quotients:
        for m in range(1, max_exp + 1):
            new_orders = tuple(
                2**m if n == INFINITE else n for n in G.factors
            )
            hom = quotient_surjection(G, new_orders)
            sub = decide_even(L.pushforward(hom))
            if sub.is_odd:
                return TateVerdict(
                    ODD,
                    certificate={
                        "kind": "quotient-odd",
                        "modulus_exponent": m,
                        "quotient_group": hom.target.label(),
                        "quotient_certificate": sub.certificate,
                    },
                    max_support=bound,
                    max_quotient_exponent=max_exp,
                )
    return TateVerdict(
        UNDECIDED, max_support=bound, max_quotient_exponent=max_exp
    )


def tate_equal(L1, L2, **kwargs):
    """Decide whether two hermitian forms agree in the Tate group."""
    if L1.module != L2.module:
        raise ValueError("module mismatch")
    if not (L1.is_hermitian() and L2.is_hermitian()):
        raise ValueError("tate_equal requires hermitian forms")
    return decide_even(L1 - L2, **kwargs)
