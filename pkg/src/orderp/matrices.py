"""Division-free determinants and characteristic polynomials, plus a small
rational linear solver.  Entries may be ints, Fractions or ring elements."""

from fractions import Fraction


def charpoly(M, zero=0, one=1):
    """Coefficients [1, c_1, ..., c_n] of det(T*I - M), highest degree first.

    Berkowitz's algorithm: only ring operations, no division, so it works over
    any commutative ring."""
    n = len(M)
    if n == 0:
        return [one]
    # characteristic polynomial of the trailing 1x1 block, then grow upward
    vec = [one, -M[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        a = M[k][k]
        R = [M[k][j] for j in range(k + 1, n)]
        C = [M[i][k] for i in range(k + 1, n)]
        A = [[M[i][j] for j in range(k + 1, n)] for i in range(k + 1, n)]
        m = n - k - 1
        # first column of the Toeplitz matrix: 1, -a, -R C, -R A C, ...
        col = [one, -a]
        v = C
        for _ in range(m):
            s = zero
            for r, x in zip(R, v):
                s = s + r * x
            col.append(-s)
            v = [_dot(A[i], v, zero) for i in range(m)]
        col = col[: m + 2]
        new = []
        for i in range(m + 2):
            s = zero
            for j in range(min(i + 1, m + 1)):
                s = s + col[i - j] * vec[j]
            new.append(s)
        vec = new
    return vec


def _dot(row, v, zero):
    s = zero
    for a, b in zip(row, v):
        s = s + a * b
    return s


def det(M, zero=0, one=1):
    n = len(M)
    c = charpoly(M, zero, one)[n]
    return c if n % 2 == 0 else -c


def solve_rational(M, b):
    """Unique solution of M x = b over Q, or None if M is singular."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(M, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def matmul(A, B, zero=0):
    return [[_dot(row, [B[k][j] for k in range(len(B))], zero) for j in range(len(B[0]))] for row in A]
