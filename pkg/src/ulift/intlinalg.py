"""Exact linear algebra over Z and Q used by the lattice layer.

Matrices are lists of lists (row major).  Nothing here is performance
critical: test lattices have rank at most a dozen.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity_int(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def transpose(A):
    return [list(col) for col in zip(*A)]


def smith_normal_form(A):
    """Return (diag, U, V) with U*A*V diagonal, U and V unimodular.

    diag is the full min(m,n) diagonal, each entry nonnegative, with the
    divisibility chain d1 | d2 | ...
    """
    m = len(A)
    n = len(A[0]) if m else 0
    A = [[int(x) for x in row] for row in A]
    U = identity_int(m)
    V = identity_int(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row_i += q * row_j
        A[i] = [x + q * y for x, y in zip(A[i], A[j])]
        U[i] = [x + q * y for x, y in zip(U[i], U[j])]

    def add_col(i, j, q):  # col_i += q * col_j
        for row in A:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        # locate a pivot of minimal absolute value in the trailing block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = False
        for i in range(t + 1, m):
            if A[i][t] != 0:
                q = A[i][t] // A[t][t]
                add_row(i, t, -q)
                if A[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if A[t][j] != 0:
                q = A[t][j] // A[t][t]
                add_col(j, t, -q)
                if A[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the rest of the block
        p = A[t][t]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V


def integer_kernel(A):
    """Basis of {x in Z^n : A x = 0} for a matrix with rational entries."""
    if not A:
        return []
    n = len(A[0])
    scaled = []
    for row in A:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        scaled.append([int(x * den) for x in row])
    diag, _U, V = smith_normal_form(scaled)
    cols = []
    for j in range(n):
        if j >= len(diag) or diag[j] == 0:
            cols.append([V[i][j] for i in range(n)])
    return cols


def frac_solve(A, b):
    """Solve A x = b exactly; A need not be square but must determine x uniquely.

    Returns a list of Fractions; raises ValueError if the system is
    inconsistent or underdetermined.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(m)]
    row = 0
    pivots = []
    for col in range(n):
        p = None
        for i in range(row, m):
            if M[i][col] != 0:
                p = i
                break
        if p is None:
            continue
        M[row], M[p] = M[p], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for i in range(m):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if M[i][n] != 0:
            raise ValueError("inconsistent linear system")
    if len(pivots) < n:
        raise ValueError("underdetermined linear system")
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = M[r][n]
    return x


def frac_inv(A):
    """Exact inverse of a square matrix with rational entries."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        p = None
        for i in range(col, n):
            if M[i][col] != 0:
                p = i
                break
        if p is None:
            raise ValueError("singular matrix")
        M[col], M[p] = M[p], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return [row[n:] for row in M]


def frac_det(A):
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        p = None
        for i in range(col, n):
            if M[i][col] != 0:
                p = i
                break
        if p is None:
            return Fraction(0)
        if p != col:
            M[col], M[p] = M[p], M[col]
            det = -det
        det *= M[col][col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(col + 1, n):
            if M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return det


def extended_gcd_combo(values):
    """(g, coeffs) with g = gcd(values) >= 0 and sum(c*v) = g."""
    g = 0
    coeffs = [0] * len(values)
    for idx, v in enumerate(values):
        if v == 0:
            continue
        if g == 0:
            g = abs(v)
            coeffs = [0] * len(values)
            coeffs[idx] = 1 if v > 0 else -1
            continue
        a, b = g, v
        # extended euclid on (a, b)
        x0, x1, y0, y1 = 1, 0, 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        # a = x0 * g + y0 * v
        coeffs = [c * x0 for c in coeffs]
        coeffs[idx] += y0
        g = a
    if g < 0:
        g = -g
        coeffs = [-c for c in coeffs]
    return g, coeffs


def fraction_content(vec):
    """Positive generator t of {s in Q : s * vec in Z^n}, or None if vec = 0."""
    vec = [Fraction(x) for x in vec]
    if all(x == 0 for x in vec):
        return None
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    nums = [int(x * den) for x in vec]
    g = 0
    for x in nums:
        g = gcd(g, x)
    # s * vec integral  <=>  s * g / den in Z  <=>  s in (den/g) Z
    return Fraction(den, g)


def fraction_lcm(fracs):
    """lcm of positive rationals: smallest positive t lying in f*Z for all f."""
    fracs = [Fraction(f) for f in fracs]
    if not fracs:
        raise ValueError("lcm of empty list")
    num = 1
    den = 0
    for f in fracs:
        num = num * f.numerator // gcd(num, f.numerator)
        den = gcd(den, f.denominator)
    return Fraction(num, den)
