"""Exact arithmetic in the integral group ring Z[G].

Ring elements are finitely supported integer combinations of group
elements, stored canonically (no zero coefficients).  The involution is
the linear extension of g -> g^-1.  Matrices over the ring are dense in
the matrix dimensions but sparse per entry; rows index the domain basis,
so a module map sends basis vector ``i`` to ``sum_j A[i][j] e_j``.
"""

from __future__ import annotations


class RingElement:
    """An element of Z[G]; immutable in use, hash not provided."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group, coeffs=None):
        self.group = group
        clean = {}
        if coeffs:
            for key, c in coeffs.items():
                if c:
                    clean[key] = c
        self.coeffs = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, group):
        return cls(group)

    @classmethod
    def one(cls, group, c=1):
        return cls(group, {group.identity(): c})

    @classmethod
    def monomial(cls, group, key, c=1):
        if not group.contains_key(key):
            raise ValueError(f"{key!r} is not an element of {group.label()}")
        return cls(group, {key: c})

    # -- ring structure ----------------------------------------------------

    def _check(self, other):
        if self.group != other.group:
            raise ValueError("group mismatch")

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for key, c in other.coeffs.items():
            coeffs[key] = coeffs.get(key, 0) + c
        return RingElement(self.group, coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RingElement(self.group, {k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(
                self.group, {k: c * other for k, c in self.coeffs.items()}
            )
        self._check(other)
        G = self.group
        coeffs = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                key = G.multiply(g, h)
                coeffs[key] = coeffs.get(key, 0) + a * b
        return RingElement(G, coeffs)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.group == other.group
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.coeffs.items()))))

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    # -- structure maps ----------------------------------------------------

    def involute(self):
        """Coefficientwise g -> g^-1; an anti-automorphism of the ring."""
        G = self.group
        return RingElement(G, {G.inverse(k): c for k, c in self.coeffs.items()})

    def augment(self, modulus=0):
        """Sum of coefficients, reduced mod ``modulus`` when nonzero."""
        s = sum(self.coeffs.values())
        return s % modulus if modulus else s

    def pushforward(self, hom):
        """Apply a group hom to each support element and recombine."""
        if hom.source != self.group:
            raise ValueError("hom source mismatch")
        coeffs = {}
        for key, c in self.coeffs.items():
            img = hom.apply(key)
            coeffs[img] = coeffs.get(img, 0) + c
        return RingElement(hom.target, coeffs)

    def coefficient(self, key):
        return self.coeffs.get(key, 0)

    def support(self):
        return sorted(self.coeffs)

    # -- rendering -----------------------------------------------------------

    def render(self):
        """Deterministic human-readable form, e.g. ``1 - 2*a*b^3``."""
        if not self.coeffs:
            return "0"
        syms = self.group.generator_symbols()
        parts = []
        for key in sorted(self.coeffs):
            c = self.coeffs[key]
            word = _render_key(self.group, key, syms)
            if word == "1":
                term = str(abs(c))
            elif abs(c) == 1:
                term = word
            else:
                term = f"{abs(c)}*{word}"
            parts.append(("-" if c < 0 else "+", term))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def __repr__(self):
        return f"<{self.render()} in Z[{self.group.label()}]>"


def _render_key(group, key, syms):
    if group.is_quaternion:
        i, j = key
        factors = [(syms[0], i), (syms[1], j)]
    else:
        factors = list(zip(syms, key))
    words = []
    for sym, e in factors:
        if e == 0:
            continue
        words.append(sym if e == 1 else f"{sym}^{e}")
    return "*".join(words) if words else "1"


# Module-level aliases matching the operation names used elsewhere.


def multiply(a, b):
    return a * b


def involute(a):
    return a.involute()


def augment(a, modulus=0):
    return a.augment(modulus)


def pushforward(a, hom):
    return a.pushforward(hom)


def generator_element(group, i):
    return RingElement.monomial(group, group.generator(i))


def norm_element(group, i=None):
    """Sum over the group (finite), or over the cyclic factor ``i``."""
    if i is None:
        return RingElement(group, {k: 1 for k in group.elements()})
    n = group.factors[i]
    if n == 0:
        raise ValueError("no norm element for a Z factor")
    gen = group.generator(i)
    coeffs = {}
    acc = group.identity()
    for _ in range(n):
        coeffs[acc] = 1
        acc = group.multiply(acc, gen)
    return RingElement(group, coeffs)


class RingMatrix:
    """A dense matrix over Z[G]."""

    __slots__ = ("group", "rows", "cols", "entries")

    def __init__(self, group, entries, cols=None):
        self.group = group
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        if self.entries:
            self.cols = len(self.entries[0])
            if cols is not None and cols != self.cols:
                raise ValueError("explicit column count mismatch")
        else:
            self.cols = cols if cols is not None else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.group != group:
                    raise ValueError("entry over the wrong group")

    @classmethod
    def zero(cls, group, rows, cols):
        z = RingElement.zero(group)
        return cls(group, [[z] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, RingMatrix)
            and self.group == other.group
            and self.entries == other.entries
        )

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RingMatrix(
            self.group,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            cols=self.cols,
        )

    def __sub__(self, other):
        return self + other.map_entries(lambda e: -e)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        z = RingElement.zero(self.group)
        out = []
        for i in range(self.rows):
            row = []
            for k in range(other.cols):
                acc = z
                for j in range(self.cols):
                    a = self.entries[i][j]
                    b = other.entries[j][k]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RingMatrix(self.group, out, cols=other.cols)

    def dagger(self):
        """Involuted transpose; the adjoint for sesquilinear pairings."""
        return RingMatrix(
            self.group,
            [
                [self.entries[j][i].involute() for j in range(self.rows)]
                for i in range(self.cols)
            ],
            cols=self.rows,
        )

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def map_entries(self, f):
        return RingMatrix(
            self.group,
            [[f(e) for e in row] for row in self.entries],
            cols=self.cols,
        )

    def pushforward(self, hom):
        return RingMatrix(
            hom.target,
            [[e.pushforward(hom) for e in row] for row in self.entries],
            cols=self.cols,
        )

    def row(self, i):
        return list(self.entries[i])

    def integer_matrix(self):
        """Matrix of the underlying Z-linear map (finite groups).

        Z-basis of a free module Z[G]^r: pairs ``(i, h)`` meaning ``h * e_i``
        in basis-major, element-ascending order.  Row convention matches the
        ring matrix: row ``(i, h)`` holds the image of ``h * e_i``.
        """
        G = self.group
        elems = G.elements()
        idx = {h: a for a, h in enumerate(elems)}
        nG = len(elems)
        out = [
            [0] * (self.cols * nG) for _ in range(self.rows * nG)
        ]
        for i in range(self.rows):
            for j in range(self.cols):
                entry = self.entries[i][j]
                if not entry:
                    continue
                for h_a, h in enumerate(elems):
                    # h * entry lands in column block j
                    base = j * nG
                    rowidx = i * nG + h_a
                    for k, c in entry.coeffs.items():
                        out[rowidx][base + idx[G.multiply(h, k)]] += c
        return out

    def render(self):
        return (
            "["
            + ",\n ".join(
                "[" + ", ".join(e.render() for e in row) + "]"
                for row in self.entries
            )
            + "]"
        )

    def __repr__(self):
        return f"<{self.rows}x{self.cols} matrix over Z[{self.group.label()}]>"
