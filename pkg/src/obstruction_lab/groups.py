"""Supported groups and homomorphisms between them.

Two families are supported: finitely generated abelian groups with at most
one infinite cyclic factor, and generalised quaternion groups Q_{8n} with
n a power of two.

Group elements are plain tuples:

* abelian: one residue per factor, reduced mod the factor order; the
  coordinate of a Z factor is an arbitrary integer,
* quaternion: ``(i, j)`` meaning ``x^i y^j`` with ``0 <= i < 4n`` and
  ``j in {0, 1}``; the normal form is unique and multiplication uses the
  rewriting rules ``y x^i = x^-i y`` and ``y^2 = x^(2n)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .errors import GroupParseError, UnsupportedGroupError

# Factor order 0 encodes an infinite cyclic (Z) factor.
INFINITE = 0

ABELIAN = "abelian"
QUATERNION = "quaternion"

_FACTOR_RE = re.compile(r"^(Z(/\d+)?|Q\d+)$")


@dataclass(frozen=True)
class GroupSpec:
    """A supported group, kept in the normal form described above."""

    kind: str
    factors: tuple[int, ...] = ()
    quaternion_n: int = 0

    def __post_init__(self):
        if self.kind == ABELIAN:
            if self.quaternion_n:
                raise UnsupportedGroupError("abelian spec with quaternion data")
            if sum(1 for n in self.factors if n == INFINITE) > 1:
                raise UnsupportedGroupError("at most one Z factor is supported")
            if any(n < 0 or n == 1 for n in self.factors):
                raise UnsupportedGroupError("finite factor orders must be >= 2")
        elif self.kind == QUATERNION:
            if self.factors:
                raise UnsupportedGroupError("quaternion spec with abelian factors")
            n = self.quaternion_n
            if n < 1 or n & (n - 1):
                raise UnsupportedGroupError("Q_{8n} requires n a power of two")
        else:
            raise UnsupportedGroupError(f"unknown group kind {self.kind!r}")

    # -- basic structure -------------------------------------------------

    @property
    def is_abelian(self):
        return self.kind == ABELIAN

    @property
    def is_quaternion(self):
        return self.kind == QUATERNION

    @property
    def is_finite(self):
        return self.is_quaternion or INFINITE not in self.factors

    def order(self):
        """Group order; None for infinite groups."""
        if not self.is_finite:
            return None
        if self.is_quaternion:
            return 8 * self.quaternion_n
        n = 1
        for f in self.factors:
            n *= f
        return n

    @property
    def num_generators(self):
        return 2 if self.is_quaternion else len(self.factors)

    def label(self):
        if self.is_quaternion:
            return f"Q{8 * self.quaternion_n}"
        if not self.factors:
            return "1"
        return " x ".join("Z" if n == INFINITE else f"Z/{n}" for n in self.factors)

    def generator_symbols(self):
        """Rendering tokens, one per generator (see the cli module docs)."""
        if self.is_quaternion:
            return ("x", "y")
        if len(self.factors) == 1:
            return ("t",) if self.factors[0] == INFINITE else ("T",)
        letters = "abcdefgh"
        return tuple(letters[i] for i in range(len(self.factors)))

    # -- elements ---------------------------------------------------------

    def identity(self):
        if self.is_quaternion:
            return (0, 0)
        return (0,) * len(self.factors)

    def generator(self, i):
        if self.is_quaternion:
            if i not in (0, 1):
                raise IndexError(i)
            return (1, 0) if i == 0 else (0, 1)
        key = [0] * len(self.factors)
        key[i] = 1 % self.factors[i] if self.factors[i] != INFINITE else 1
        return tuple(key)

    def elements(self):
        """All elements in a fixed deterministic order (finite groups only)."""
        if not self.is_finite:
            raise UnsupportedGroupError("cannot enumerate an infinite group")
        if self.is_quaternion:
            return [(i, j) for i in range(4 * self.quaternion_n) for j in (0, 1)]
        return [key for key in product(*(range(n) for n in self.factors))]

    def multiply(self, g, h):
        if self.is_quaternion:
            m = 4 * self.quaternion_n
            i1, j1 = g
            i2, j2 = h
            if j1 == 0:
                i, j = i1 + i2, j2
            else:
                # y x^i = x^-i y
                i, j = i1 - i2, 1 + j2
            if j == 2:
                i, j = i + 2 * self.quaternion_n, 0
            return (i % m, j)
        return tuple(
            a + b if n == INFINITE else (a + b) % n
            for a, b, n in zip(g, h, self.factors)
        )

    def inverse(self, g):
        if self.is_quaternion:
            m = 4 * self.quaternion_n
            i, j = g
            if j == 0:
                return (-i % m, 0)
            # (x^i y)^-1 = x^(2n + i) y
            return ((2 * self.quaternion_n + i) % m, 1)
        return tuple(
            -a if n == INFINITE else -a % n for a, n in zip(g, self.factors)
        )

    def power(self, g, k):
        if k < 0:
            return self.power(self.inverse(g), -k)
        acc = self.identity()
        for _ in range(k):
            acc = self.multiply(acc, g)
        return acc

    def contains_key(self, g):
        """Structural validity of an element key."""
        if self.is_quaternion:
            return (
                isinstance(g, tuple)
                and len(g) == 2
                and 0 <= g[0] < 4 * self.quaternion_n
                and g[1] in (0, 1)
            )
        if not isinstance(g, tuple) or len(g) != len(self.factors):
            return False
        return all(
            isinstance(a, int) and (n == INFINITE or 0 <= a < n)
            for a, n in zip(g, self.factors)
        )


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by the images of the source generators.

    The source relations are checked at construction time.
    """

    source: GroupSpec
    target: GroupSpec
    images: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.images) != self.source.num_generators:
            raise ValueError("one image per source generator required")
        for img in self.images:
            if not self.target.contains_key(img):
                raise ValueError(f"image {img!r} is not a target element")
        t = self.target
        if self.source.is_abelian:
            for img, n in zip(self.images, self.source.factors):
                if n != INFINITE and t.power(img, n) != t.identity():
                    raise ValueError("generator image violates factor order")
            for a in self.images:
                for b in self.images:
                    if t.multiply(a, b) != t.multiply(b, a):
                        raise ValueError("images of commuting generators must commute")
        else:
            x, y = self.images
            n = self.source.quaternion_n
            if t.multiply(t.power(x, 2 * n), t.inverse(t.power(y, 2))) != t.identity():
                raise ValueError("image violates x^2n = y^2")
            lhs = t.multiply(t.multiply(x, y), t.multiply(x, t.inverse(y)))
            if lhs != t.identity():
                raise ValueError("image violates xyx = y")

    def apply(self, g):
        t = self.target
        if self.source.is_abelian:
            acc = t.identity()
            for a, img in zip(g, self.images):
                acc = t.multiply(acc, t.power(img, a))
            return acc
        i, j = g
        acc = t.power(self.images[0], i)
        if j:
            acc = t.multiply(acc, self.images[1])
        return acc

    def compose(self, other):
        """self o other (apply other first)."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return GroupHom(
            other.source,
            self.target,
            tuple(self.apply(img) for img in other.images),
        )


def parse_group_spec(text):
    """Parse a group spec string.

    Grammar: ``group := factor (" x " factor)*`` with
    ``factor := "Z" | "Z/" int | "Q" int``; whitespace around ``x`` is
    optional.  ``Q k`` requires ``k = 8n`` with ``n`` a power of two, and a
    quaternion factor cannot be combined with others.
    """
    if not isinstance(text, str) or not text.strip():
        raise GroupParseError("empty group spec")
    parts = [p.strip() for p in re.split(r"\s*x\s*", text.strip())]
    if any(not _FACTOR_RE.match(p) for p in parts):
        bad = next(p for p in parts if not _FACTOR_RE.match(p))
        raise GroupParseError(f"cannot parse factor {bad!r}")
    if any(p.startswith("Q") for p in parts):
        if len(parts) > 1:
            raise UnsupportedGroupError("quaternion groups cannot appear in products")
        k = int(parts[0][1:])
        if k % 8 != 0:
            raise UnsupportedGroupError(f"Q{k}: order must be a multiple of 8")
        n = k // 8
        if n < 1 or n & (n - 1):
            raise UnsupportedGroupError(f"Q{k}: requires 8n with n a power of two")
        return GroupSpec(QUATERNION, quaternion_n=n)
    factors = []
    for p in parts:
        if p == "Z":
            factors.append(INFINITE)
        else:
            n = int(p[2:])
            if n < 2:
                raise UnsupportedGroupError(f"cyclic factor order {n} must be >= 2")
            factors.append(n)
    return GroupSpec(ABELIAN, factors=tuple(factors))


def strip_odd_part(g):
    """Drop the odd part of every finite cyclic factor.

    Each finite factor of order ``n = 2^a * m`` (m odd) is replaced by one of
    order ``2^a``; factors that become trivial are deleted.  Z factors are
    kept.  Quaternion groups are already 2-groups and are returned unchanged.
    """
    if g.is_quaternion:
        return g
    factors = []
    for n in g.factors:
        if n == INFINITE:
            factors.append(n)
            continue
        two_part = 1
        while n % 2 == 0:
            two_part *= 2
            n //= 2
        if two_part >= 2:
            factors.append(two_part)
    return GroupSpec(ABELIAN, factors=tuple(factors))


def quotient_surjection(g, new_orders):
    """The coordinatewise reduction hom onto the group with ``new_orders``.

    Each new order must divide the corresponding old order (every integer
    divides the order of a Z factor; a Z factor may also be kept with
    new order 0).
    """
    if not g.is_abelian:
        raise UnsupportedGroupError("quotient_surjection expects an abelian group")
    new_orders = tuple(new_orders)
    if len(new_orders) != len(g.factors):
        raise ValueError("new_orders must match the number of factors")
    for old, new in zip(g.factors, new_orders):
        if new == INFINITE:
            if old != INFINITE:
                raise ValueError("cannot inflate a finite factor to Z")
        elif new < 2:
            raise ValueError("quotient factor orders must be >= 2 (or 0 for Z)")
        elif old != INFINITE and old % new != 0:
            raise ValueError(f"{new} does not divide {old}")
    target = GroupSpec(ABELIAN, factors=new_orders)
    images = tuple(target.generator(i) for i in range(len(new_orders)))
    return GroupHom(g, target, images)
