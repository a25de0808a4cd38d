"""Exact linear algebra over F_p, Q and Z.

Modular routines work on ``numpy.int64`` arrays (entries stay below ``p``, so
products of two entries fit comfortably for primes below 2**31).  Rational and
integer routines work on lists of Python ints / Fractions.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

DEFAULT_PRIME = 1000003

Ring = Union[str, int]  # "ZZ", "QQ" or a prime p


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _check_ring(ring: Ring) -> Ring:
    if ring in ("ZZ", "QQ"):
        return ring
    if isinstance(ring, (int, np.integer)) and is_prime(int(ring)) and int(ring) < 2**31:
        return int(ring)
    raise ValueError(f"unsupported ring {ring!r}")


def ring_name(ring: Ring) -> str:
    return ring if isinstance(ring, str) else f"GF({ring})"


@dataclass
class ExactMatrix:
    """Dense matrix over one of ZZ, QQ or GF(p).

    ``data`` is an int64 ndarray for GF(p) and a list of lists otherwise.
    """

    data: object
    ring: Ring

    def __post_init__(self):
        self.ring = _check_ring(self.ring)
        if isinstance(self.ring, int):
            if isinstance(self.data, np.ndarray) and self.data.dtype != object:
                arr = self.data.astype(np.int64) % self.ring
            else:
                arr = np.array(
                    [[int(v) % self.ring for v in row] for row in self.data], dtype=np.int64
                )
            self.data = arr.reshape(len(arr), -1) if arr.ndim != 2 else arr
        elif self.ring == "QQ":
            self.data = [[Fraction(v) for v in row] for row in _rows(self.data)]
        else:
            self.data = [[_as_int(v) for v in row] for row in _rows(self.data)]

    @property
    def shape(self) -> tuple[int, int]:
        if isinstance(self.ring, int):
            return self.data.shape
        rows = len(self.data)
        return rows, (len(self.data[0]) if rows else 0)

    def tolist(self) -> list[list]:
        if isinstance(self.ring, int):
            return self.data.tolist()
        return [list(r) for r in self.data]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.ring == other.ring
            and self.shape == other.shape
            and self.tolist() == other.tolist()
        )

    def to_text(self) -> str:
        """``rows cols ring`` header, then one whitespace-separated row per line."""
        r, c = self.shape
        out = io.StringIO()
        out.write(f"{r} {c} {ring_name(self.ring)}\n")
        for row in self.tolist():
            out.write(" ".join(str(v) for v in row) + "\n")
        return out.getvalue()

    def to_csv(self) -> str:
        return "".join(",".join(str(v) for v in row) + "\n" for row in self.tolist())

    @classmethod
    def from_text(cls, text: str) -> "ExactMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        r, c, name = lines[0].split()
        ring: Ring = int(name[3:-1]) if name.startswith("GF(") else name
        rows = [[Fraction(tok) if ring == "QQ" else int(tok) for tok in ln.split()] for ln in lines[1:]]
        if len(rows) != int(r) or any(len(row) != int(c) for row in rows):
            raise ValueError("matrix text does not match its header")
        if int(r) == 0:
            rows = np.zeros((0, int(c)), dtype=np.int64) if isinstance(ring, int) else []
        return cls(rows, ring)


def _rows(data):
    if isinstance(data, np.ndarray):
        return data.tolist()
    if len({len(row) for row in data}) > 1:
        raise ValueError("rows have different lengths")
    return data


def _as_int(v) -> int:
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ValueError(f"non-integer entry {v}")
        return int(v.numerator)
    return int(v)


def _unwrap(A, ring: Ring | None):
    if isinstance(A, ExactMatrix):
        return A.data, A.ring
    if ring is None:
        raise ValueError("ring required for raw matrix input")
    m = ExactMatrix(A, ring)
    return m.data, m.ring


# -- modular elimination ---------------------------------------------------


def rcf_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row canonical form over GF(p).  Returns (nonzero rows of RCF, pivot columns)."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r, c:] = M[r, c:] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            M[hit, c:] = (M[hit, c:] - col[hit, None] * M[r, c:]) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_mod(A: np.ndarray, p: int) -> int:
    """Rank over GF(p), eliminating only below the pivots."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    if cols > rows:
        M = M.T.copy()
        rows, cols = cols, rows
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r, c:] = M[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(M[r + 1:, c])
        if below.size:
            M[below, c:] = (M[below, c:] - M[below, c, None] * M[r, c:]) % p
        r += 1
    return r


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (in RCF) of ``{v : A v = 0}`` over GF(p)."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    R, pivots = rcf_mod(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        for i, pc in enumerate(pivots):
            N[k, pc] = (-R[i, f]) % p
    if len(free) == 0:
        return N
    return rcf_mod(N, p)[0]


# -- rational / integer elimination ----------------------------------------


def _content(row: list[int]) -> int:
    g = 0
    for v in row:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return 1
    return g


def _echelon_int(rows: list[list[int]], cols: int, full: bool):
    """Fraction-free echelon form of integer rows; each row kept primitive."""
    M = [list(r) for r in rows]
    r = 0
    pivots = []
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        a = pr[c]
        targets = range(len(M)) if full else range(r + 1, len(M))
        for i in targets:
            if i == r:
                continue
            row = M[i]
            b = row[c]
            if not b:
                continue
            g = math.gcd(a, b)
            fa, fb = a // g, b // g
            new = [fa * x - fb * y for x, y in zip(row, pr)]
            g2 = _content(new)
            if g2 > 1:
                new = [x // g2 for x in new]
            M[i] = new
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _to_int_rows(data) -> list[list[int]]:
    out = []
    for row in data:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def rcf(A, ring: Ring | None = None) -> tuple[ExactMatrix, int]:
    """Row canonical (reduced row echelon) form and rank, over GF(p) or Q."""
    data, ring = _unwrap(A, ring)
    if isinstance(ring, int):
        R, piv = rcf_mod(data, ring)
        return ExactMatrix(R, ring), len(piv)
    cols = len(data[0]) if data else 0
    E, piv = _echelon_int(_to_int_rows(data), cols, full=True)
    R = [[Fraction(x, row[c]) for x in row] for row, c in zip(E, piv)]
    return ExactMatrix(R, "QQ"), len(piv)


def rank(A, ring: Ring | None = None) -> int:
    data, ring = _unwrap(A, ring)
    if isinstance(ring, int):
        return rank_mod(data, ring)
    rows = _to_int_rows(data)
    cols = len(rows[0]) if rows else 0
    if cols < len(rows):
        rows = [list(c) for c in zip(*rows)]
        cols = len(rows[0]) if rows else 0
    return len(_echelon_int(rows, cols, full=False)[1])


def nullspace_rcf(A, ring: Ring | None = None) -> ExactMatrix:
    """The unique RCF matrix whose row space is ``{v : A v = 0}``."""
    data, ring = _unwrap(A, ring)
    if isinstance(ring, int):
        return ExactMatrix(nullspace_mod(data, ring).reshape(-1, np.shape(data)[1]), ring)
    R, rk = rcf(ExactMatrix(data, "QQ"))
    cols = R.shape[1]
    pivots = [next(j for j, v in enumerate(row) if v) for row in R.data]
    free = [c for c in range(cols) if c not in set(pivots)]
    N = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, pc in zip(R.data, pivots):
            v[pc] = -row[f]
        N.append(v)
    if not N:
        return ExactMatrix([], "QQ") if cols == 0 else _empty(cols, "QQ")
    return rcf(ExactMatrix(N, "QQ"))[0]


def _empty(cols: int, ring: Ring) -> ExactMatrix:
    m = ExactMatrix([[0] * cols], ring)
    if isinstance(ring, int):
        m.data = m.data[:0]
    else:
        m.data = []
    return m


def lex_first_row_basis(A, ring: Ring | None = None) -> list[int]:
    """Indices (0-based) of the lexicographically first rows spanning the row space.

    Greedy: row i is kept iff it is independent of the rows kept before it.
    """
    data, ring = _unwrap(A, ring)
    if isinstance(ring, int):
        return _lex_first_mod(np.asarray(data, dtype=np.int64), ring)
    rows = _to_int_rows(data)
    cols = len(rows[0]) if rows else 0
    basis: dict[int, list[int]] = {}  # pivot column -> primitive echelon row
    keep = []
    for i, row in enumerate(rows):
        v = list(row)
        for c in sorted(basis):
            if v[c]:
                b = basis[c]
                g = math.gcd(v[c], b[c])
                fa, fb = b[c] // g, v[c] // g
                v = [fa * x - fb * y for x, y in zip(v, b)]
        lead = next((c for c, x in enumerate(v) if x), None)
        if lead is None:
            continue
        g = _content(v)
        basis[lead] = [x // g for x in v]
        keep.append(i)
        if len(keep) == cols:
            break
    return keep


def _lex_first_mod(A: np.ndarray, p: int) -> list[int]:
    rows, cols = A.shape
    B = np.zeros((cols, cols), dtype=np.int64)  # row c holds the basis vector with pivot c
    have = np.zeros(cols, dtype=bool)
    keep = []
    for i in range(rows):
        v = A[i] % p
        for c in np.flatnonzero(have):
            if v[c]:
                v = (v - v[c] * B[c]) % p
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        c = nz[0]
        B[c] = v * pow(int(v[c]), p - 2, p) % p
        have[c] = True
        keep.append(i)
        if len(keep) == cols:
            break
    return keep


# -- reconstruction --------------------------------------------------------


def symmetric_representative(v: int, p: int) -> int:
    v %= p
    return v - p if v > p // 2 else v


def rational_reconstruct(row: Sequence[int], scale: int, p: int) -> list[int]:
    """Scale a GF(p) row, lift to symmetric representatives, remove the content."""
    if scale < 1 or p % 2 == 0:
        raise ValueError("scale must be >= 1 and p odd")
    out = [symmetric_representative(int(v) * scale, p) for v in row]
    g = _content(out)
    if g == 0:
        return out
    return [v // g for v in out]


def reconstruct_rows(N: np.ndarray, p: int, scales=None, threshold: int | None = None):
    """Reconstruct every row of a GF(p) matrix with the first acceptable scale.

    A scale is acceptable when every symmetric representative of the scaled
    row is below ``threshold`` in absolute value.  Returns (rows, scales).
    """
    threshold = threshold or max(2, p // 10**4)
    scales = scales or [2**k for k in range(11)]
    out, used = [], []
    for row in np.asarray(N):
        for s in scales:
            lifted = [symmetric_representative(int(v) * s, p) for v in row]
            if max(abs(v) for v in lifted) < threshold:
                out.append(rational_reconstruct(row, s, p))
                used.append(s)
                break
        else:
            raise ValueError("no scale gives small symmetric representatives")
    return out, used


# -- Hermite normal form ----------------------------------------------------


@dataclass
class HnfResult:
    H: list[list[int]]
    U: list[list[int]]
    rank: int

    def nullspace_rows(self) -> list[list[int]]:
        """Rows of U spanning the left integer nullspace of the input."""
        return self.U[self.rank:]


def hnf_with_transform(A) -> HnfResult:
    """Row-style Hermite normal form: ``U A = H`` with U unimodular.

    H is in row echelon form with positive pivots and the entries above each
    pivot reduced into ``[0, pivot)``.
    """
    A = [[_as_int(v) for v in row] for row in _rows(A.data if isinstance(A, ExactMatrix) else A)]
    m = len(A)
    n = len(A[0]) if m else 0
    M = [row + [int(i == j) for j in range(m)] for i, row in enumerate(A)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if M[i][c]]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(M[k][c]))
            M[r], M[i] = M[i], M[r]
            done = True
            for k in range(r + 1, m):
                if M[k][c]:
                    q = M[k][c] // M[r][c]
                    M[k] = [x - q * y for x, y in zip(M[k], M[r])]
                    if M[k][c]:
                        done = False
            if done:
                break
        if not M[r][c]:
            continue
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
        for k in range(r):
            q = M[k][c] // M[r][c]
            if q:
                M[k] = [x - q * y for x, y in zip(M[k], M[r])]
        r += 1
    H = [row[:n] for row in M]
    U = [row[n:] for row in M]
    return HnfResult(H, U, r)


def hnf(A) -> list[list[int]]:
    """Nonzero rows of the Hermite normal form (a canonical lattice basis)."""
    res = hnf_with_transform(A)
    return res.H[: res.rank]


def det_bareiss(A) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    M = [[_as_int(v) for v in row] for row in _rows(A)]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# -- LLL --------------------------------------------------------------------


def lll_reduce(B, delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL reduction of the lattice spanned by the rows of ``B`` (exact arithmetic)."""
    b = [[_as_int(v) for v in row] for row in _rows(B)]
    k_max = len(b)
    if k_max == 0:
        return []

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar, mu = [], [[Fraction(0)] * k_max for _ in range(k_max)]
        norms = []
        for i in range(k_max):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / norms[j] if norms[j] else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            n2 = dot(v, v)
            if n2 == 0:
                raise ValueError("rows are linearly dependent")
            bstar.append(v)
            norms.append(n2)
        return bstar, mu, norms

    bstar, mu, norms = gram_schmidt()
    k = 1
    while k < k_max:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return b


def gram_determinant(B) -> int:
    """det(B B^T), the squared covolume of the lattice spanned by the rows of B."""
    b = [[_as_int(v) for v in row] for row in _rows(B)]
    G = [[sum(x * y for x, y in zip(u, v)) for v in b] for u in b]
    return det_bareiss(G)


def same_lattice(B1, B2) -> bool:
    return hnf(B1) == hnf(B2)


def in_lattice(v, B) -> bool:
    """Whether the integer vector v lies in the lattice spanned by the rows of B."""
    basis = hnf(B)
    return hnf(basis + [list(v)]) == basis
