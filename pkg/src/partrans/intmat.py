"""Small exact linear algebra kit for integer matrices.

Everything works on plain lists of lists of ints (row major). Vectors are
sequences of Fractions or ints. No floats anywhere.
"""

from fractions import Fraction

from .errors import NotInvertible, ShapeMismatch


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(n):
    return [[0] * n for _ in range(n)]


def mat_copy(a):
    return [list(row) for row in a]


def mat_eq(a, b):
    return [list(r) for r in a] == [list(r) for r in b]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n = len(b)
    cols = len(b[0]) if n else 0
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def is_square(a, n):
    return len(a) == n and all(len(row) == n for row in a)


def det_int(a):
    """Determinant of an integer matrix, fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # division is exact for Bareiss
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_unimodular(a):
    """Inverse of an integer matrix with determinant +-1, as an integer matrix."""
    n = len(a)
    d = det_int(a)
    if d not in (1, -1):
        raise NotInvertible(d)
    m = [[Fraction(x) for x in row] for row in a]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise NotInvertible(0)
        m[col], m[piv] = m[piv], m[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        inv[col] = [x / p for x in inv[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
    out = []
    for row in inv:
        int_row = []
        for x in row:
            if x.denominator != 1:
                raise NotInvertible(d)
            int_row.append(int(x))
        out.append(int_row)
    return out


def solve_integer_system(a, c):
    """One integer solution z of a*z = c, or None when unsolvable.

    Diagonalizes via unimodular row and column operations (Smith style,
    without the divisibility chain, which solving does not need).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise ShapeMismatch("ragged coefficient matrix")
    if m == 0:
        return [0] * n
    d = [list(map(int, row)) for row in a]
    u = identity_matrix(m)
    v = identity_matrix(n)
    t = 0
    while t < m and t < n:
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            d[t], d[pi] = d[pi], d[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in d:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, m):
                while d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    if q:
                        for k in range(n):
                            d[i][k] -= q * d[t][k]
                        for k in range(m):
                            u[i][k] -= q * u[t][k]
                    if d[i][t] != 0:
                        d[t], d[i] = d[i], d[t]
                        u[t], u[i] = u[i], u[t]
            for j in range(t + 1, n):
                while d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    if q:
                        for row in d:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    if d[t][j] != 0:
                        for row in d:
                            row[t], row[j] = row[j], row[t]
                        for row in v:
                            row[t], row[j] = row[j], row[t]
            if all(d[i][t] == 0 for i in range(t + 1, m)) and all(
                d[t][j] == 0 for j in range(t + 1, n)
            ):
                break
        t += 1
    rhs = mat_vec(u, list(map(int, c)))
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di:
            if rhs[i] % di != 0:
                return None
            y[i] = rhs[i] // di
        elif rhs[i] != 0:
            return None
    return mat_vec(v, y)
