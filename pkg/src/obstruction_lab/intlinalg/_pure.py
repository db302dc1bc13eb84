"""Pure-Python Smith reduction kernel (arbitrary precision).

The compiled twin in ``_speedups.pyx`` implements the same algorithm with
the same pivot rule; both produce bit-identical results on inputs the
compiled kernel accepts.  Matrices are lists of lists of ints; the solver
convention is column form, M x = b.
"""

from __future__ import annotations


def _xgcd(a, b):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def snf_core(M, V, B):
    """Diagonalize M in place by unimodular row/column operations.

    Column operations are mirrored on the columns of V (if not None); row
    operations are mirrored on the rows of B (if not None).  On return M is
    diagonal with nonnegative entries satisfying the divisibility chain.
    Pivot rule: smallest nonzero absolute value in the remaining submatrix,
    ties broken by smallest (row, col).
    """
    m = len(M)
    n = len(M[0]) if m else 0

    def swap_rows(i1, i2):
        if i1 != i2:
            M[i1], M[i2] = M[i2], M[i1]
            if B is not None:
                B[i1], B[i2] = B[i2], B[i1]

    def swap_cols(j1, j2):
        if j1 != j2:
            for row in M:
                row[j1], row[j2] = row[j2], row[j1]
            if V is not None:
                for row in V:
                    row[j1], row[j2] = row[j2], row[j1]

    def negate_col(j):
        for row in M:
            row[j] = -row[j]
        if V is not None:
            for row in V:
                row[j] = -row[j]

    def combine_rows(k, i, x, y, u, v):
        # (row_k, row_i) <- (x*row_k + y*row_i, u*row_k + v*row_i)
        rk, ri = M[k], M[i]
        for j in range(n):
            a, b = rk[j], ri[j]
            rk[j] = x * a + y * b
            ri[j] = u * a + v * b
        if B is not None:
            rk, ri = B[k], B[i]
            for j in range(len(rk)):
                a, b = rk[j], ri[j]
                rk[j] = x * a + y * b
                ri[j] = u * a + v * b

    def combine_cols(k, j, x, y, u, v):
        for row in M:
            a, b = row[k], row[j]
            row[k] = x * a + y * b
            row[j] = u * a + v * b
        if V is not None:
            for row in V:
                a, b = row[k], row[j]
                row[k] = x * a + y * b
                row[j] = u * a + v * b

    def clear_row_col(k):
        # Repeated row/column elimination until only M[k][k] survives.
        while True:
            for i in range(k + 1, m):
                b = M[i][k]
                if b == 0:
                    continue
                a = M[k][k]
                if b % a == 0:
                    q = b // a
                    ri, rk = M[i], M[k]
                    for j in range(k, n):
                        ri[j] -= q * rk[j]
                    if B is not None:
                        ri, rk = B[i], B[k]
                        for j in range(len(ri)):
                            ri[j] -= q * rk[j]
                else:
                    x, y, g = _xgcd(a, b)
                    combine_rows(k, i, x, y, -(b // g), a // g)
            if all(M[k][j] == 0 for j in range(k + 1, n)):
                return
            for j in range(k + 1, n):
                b = M[k][j]
                if b == 0:
                    continue
                a = M[k][k]
                if b % a == 0:
                    q = b // a
                    for row in M:
                        row[j] -= q * row[k]
                    if V is not None:
                        for row in V:
                            row[j] -= q * row[k]
                else:
                    x, y, g = _xgcd(a, b)
                    combine_cols(k, j, x, y, -(b // g), a // g)
            if all(M[i][k] == 0 for i in range(k + 1, m)):
                return

    r = 0
    for k in range(min(m, n)):
        # smallest-|value| pivot in the trailing submatrix
        best = None
        for i in range(k, m):
            row = M[i]
            for j in range(k, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(k, best[1])
        swap_cols(k, best[2])
        clear_row_col(k)
        r += 1

    for k in range(r):
        if M[k][k] < 0:
            negate_col(k)

    # Divisibility chain d_1 | d_2 | ... by pairwise gcd/lcm fixes.
    changed = True
    while changed:
        changed = False
        for k in range(r - 1):
            a, b = M[k][k], M[k + 1][k + 1]
            if b % a == 0:
                continue
            changed = True
            # fold row k+1 into row k, then rediagonalize the 2x2 block
            rk, rn = M[k], M[k + 1]
            for j in range(n):
                rk[j] += rn[j]
            if B is not None:
                rk2, rn2 = B[k], B[k + 1]
                for j in range(len(rk2)):
                    rk2[j] += rn2[j]
            x, y, g = _xgcd(a, b)
            combine_cols(k, k + 1, x, y, -(b // g), a // g)
            # clear the leftover below-diagonal entry
            q = M[k + 1][k] // M[k][k]
            rk, rn = M[k], M[k + 1]
            for j in range(n):
                rn[j] -= q * rk[j]
            if B is not None:
                rk2, rn2 = B[k], B[k + 1]
                for j in range(len(rk2)):
                    rn2[j] -= q * rk2[j]
            if M[k][k] < 0:
                negate_col(k)
            if M[k + 1][k + 1] < 0:
                negate_col(k + 1)

    return [M[i][i] for i in range(min(m, n))]
