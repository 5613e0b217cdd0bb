"""Dense exact linear algebra over F_p (small matrices only)."""

from __future__ import annotations


def mat_mul(A, B, p):
    n, m, k = len(A), len(B[0]), len(B)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] = (row[j] + a * Bt[j]) % p
    return out


def rref(A, p):
    """Reduced row echelon form; returns (rref, pivot_columns)."""
    M = [row[:] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] % p), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] % p:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def mat_rank(A, p):
    return len(rref(A, p)[1])


def mat_inv(A, p):
    n = len(A)
    aug = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    M, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in M]


def transpose(A):
    return [list(col) for col in zip(*A)]
