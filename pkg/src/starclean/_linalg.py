"""Exact linear algebra over the coefficient rings (unit tests, solves, dets).

Matrices are represented two ways: numpy int64 arrays of element codes for
the modular fast paths, and lists of payload lists for the generic field
paths.  Over Z/n invertibility is checked per prime-power factor: a column
with no unit entry forces the determinant into the prime, otherwise a unit
pivot always exists.
"""

from __future__ import annotations

import numpy as np

from . import numtheory
from .coeff import CoefficientRing, FiniteField, ModRing


# --------------------------------------------------------------------------
# modular elimination on int64 code matrices
# --------------------------------------------------------------------------

def _elim_unit_mod(M: np.ndarray, p: int, q: int) -> bool:
    """True iff det(M) is a unit mod the prime power q = p^e."""
    M = M % q
    n = M.shape[0]
    for c in range(n):
        col = M[c:, c] % p
        pivots = np.nonzero(col)[0]
        if pivots.size == 0:
            return False
        r = c + int(pivots[0])
        if r != c:
            M[[c, r]] = M[[r, c]]
        inv_piv = pow(int(M[c, c]), -1, q)
        below = M[c + 1 :, c]
        if below.size:
            factors = (below * inv_piv) % q
            M[c + 1 :] = (M[c + 1 :] - factors[:, None] * M[c]) % q
    return True


def _elim_solve_mod(M: np.ndarray, rhs: np.ndarray, p: int, q: int) -> np.ndarray | None:
    """Solve M x = rhs mod the prime power q; None if det is not a unit."""
    n = M.shape[0]
    A = np.concatenate([M % q, rhs.reshape(n, 1) % q], axis=1)
    for c in range(n):
        col = A[c:, c] % p
        pivots = np.nonzero(col)[0]
        if pivots.size == 0:
            return None
        r = c + int(pivots[0])
        if r != c:
            A[[c, r]] = A[[r, c]]
        inv_piv = pow(int(A[c, c]), -1, q)
        A[c] = (A[c] * inv_piv) % q
        others = [i for i in range(n) if i != c]
        factors = A[others, c]
        A[others] = (A[others] - factors[:, None] * A[c]) % q
    return A[:, n]


def _bareiss_det_int(M: list[list[int]]) -> int:
    """Exact integer determinant (fraction-free Gaussian elimination)."""
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if M[c][c] == 0:
            for r in range(c + 1, n):
                if M[r][c] != 0:
                    M[c], M[r] = M[r], M[c]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                M[r][j] = (M[r][j] * M[c][c] - M[r][c] * M[c][j]) // prev
            M[r][c] = 0
        prev = M[c][c]
    return sign * M[n - 1][n - 1]


# --------------------------------------------------------------------------
# generic field elimination on payload matrices
# --------------------------------------------------------------------------

def _field_elim(ring: CoefficientRing, rows: list[list], rhs: list | None):
    """Gaussian elimination over a field.

    Returns (det, solution) where solution solves M x = rhs (or None when
    rhs is None); det is None when the matrix is singular.
    """
    n = len(rows)
    A = [row[:] for row in rows]
    b = rhs[:] if rhs is not None else None
    det = ring.one
    perm_sign = 1
    for c in range(n):
        piv = None
        for r in range(c, n):
            if not ring.is_zero(A[r][c]):
                piv = r
                break
        if piv is None:
            return None, None
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            if b is not None:
                b[c], b[piv] = b[piv], b[c]
            perm_sign = -perm_sign
        pv = A[c][c]
        det = ring.mul(det, pv)
        pv_inv = ring.inv(pv)
        A[c] = [ring.mul(pv_inv, v) for v in A[c]]
        if b is not None:
            b[c] = ring.mul(pv_inv, b[c])
        for r in range(n):
            if r == c or ring.is_zero(A[r][c]):
                continue
            f = A[r][c]
            A[r] = [ring.sub(v, ring.mul(f, w)) for v, w in zip(A[r], A[c])]
            if b is not None:
                b[r] = ring.sub(b[r], ring.mul(f, b[c]))
    if perm_sign < 0:
        det = ring.neg(det)
    return det, b


# --------------------------------------------------------------------------
# public interface
# --------------------------------------------------------------------------

def _is_code_matrix_ring(ring: CoefficientRing) -> bool:
    return isinstance(ring, ModRing) or (isinstance(ring, FiniteField) and ring.k == 1)


def is_invertible(ring: CoefficientRing, rows: list[list]) -> bool:
    if _is_code_matrix_ring(ring):
        M = np.asarray(rows, dtype=np.int64)
        if isinstance(ring, FiniteField):
            return _elim_unit_mod(M, ring.p, ring.p)
        return all(_elim_unit_mod(M, p, p**e) for p, e in ring.factorization)
    if ring.is_field:
        det, _ = _field_elim(ring, rows, None)
        return det is not None
    raise TypeError(f"unsupported ring {ring!r}")


def is_invertible_codes(ring: CoefficientRing, M: np.ndarray) -> bool:
    """Fast path: M is already an int64 code matrix (ModRing / prime field)."""
    if isinstance(ring, FiniteField) and ring.k == 1:
        return _elim_unit_mod(M, ring.p, ring.p)
    if isinstance(ring, ModRing):
        return all(_elim_unit_mod(M, p, p**e) for p, e in ring.factorization)
    raise TypeError(f"ring {ring!r} has no code-matrix fast path")


def solve_column(ring: CoefficientRing, rows: list[list], rhs: list):
    """Solve M x = rhs exactly; None when M is not invertible."""
    if _is_code_matrix_ring(ring):
        M = np.asarray(rows, dtype=np.int64)
        b = np.asarray(rhs, dtype=np.int64)
        if isinstance(ring, FiniteField):
            sol = _elim_solve_mod(M, b, ring.p, ring.p)
            return None if sol is None else [int(v) for v in sol]
        parts = []
        moduli = []
        for p, e in ring.factorization:
            q = p**e
            sol = _elim_solve_mod(M, b, p, q)
            if sol is None:
                return None
            parts.append(sol)
            moduli.append(q)
        n = len(rhs)
        out = []
        for i in range(n):
            out.append(numtheory.crt([int(s[i]) for s in parts], moduli))
        return out
    if ring.is_field:
        det, sol = _field_elim(ring, rows, list(rhs))
        return sol if det is not None else None
    raise TypeError(f"unsupported ring {ring!r}")


def det(ring: CoefficientRing, rows: list[list]):
    """Exact determinant as a ring element."""
    if isinstance(ring, ModRing):
        d = _bareiss_det_int([[int(v) for v in row] for row in rows])
        return ring.from_int(d)
    if ring.is_field:
        d, _ = _field_elim(ring, rows, None)
        return ring.zero if d is None else d
    raise TypeError(f"unsupported ring {ring!r}")
