"""Symmetric group combinatorics and Young's seminormal representations.

Permutations are tuples in one-line notation on ``0..n-1``; the product
``sigma * tau`` is composition ``j -> sigma[tau[j]]``.  Representation matrices
are computed over GF(p) (numpy int64) or over Q (numpy object arrays of
Fractions) and satisfy ``rho(sigma * tau) = rho(sigma) @ rho(tau)``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import numpy as np

Partition = tuple


def partitions(n: int) -> list[Partition]:
    """Partitions of n in reverse lexicographic order: (n), (n-1,1), ..., (1^n)."""

    def gen(rest, most):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, most), 0, -1):
            for tail in gen(rest - k, k):
                yield (k,) + tail

    return list(gen(n, n))


def class_partitions(n: int) -> list[Partition]:
    """Cycle types in the order used for character vectors: (1^n) first, (n) last."""
    return partitions(n)[::-1]


def partition_label(lam: Partition) -> str:
    """``321^2`` style label, as used in the tables."""
    out = []
    for part, run in itertools.groupby(lam):
        k = len(list(run))
        out.append(f"{part}" if k == 1 else f"{part}^{k}")
    return "".join(out)


def cycle_type(perm) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def class_representatives(n: int) -> list[tuple[int, ...]]:
    """One permutation per cycle type, cycles on consecutive points: (123)(45) etc."""
    reps = []
    for mu in class_partitions(n):
        perm = list(range(n))
        start = 0
        for part in mu:
            for i in range(part):
                perm[start + i] = start + (i + 1) % part
            start += part
        reps.append(tuple(perm))
    return reps


def class_size(mu: Partition) -> int:
    n = sum(mu)
    z = 1
    for part, k in Counter(mu).items():
        z *= part**k * math.factorial(k)
    return math.factorial(n) // z


def compose(sigma, tau) -> tuple[int, ...]:
    return tuple(sigma[t] for t in tau)


def inverse(sigma) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


# -- tableaux ----------------------------------------------------------------


def hook_length_dim(lam: Partition) -> int:
    n = sum(lam)
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, part in enumerate(lam):
        for j in range(part):
            prod *= (part - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(n) // prod


irrep_dim = hook_length_dim


@lru_cache(maxsize=None)
def standard_tableaux(lam: Partition) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Standard tableaux as tuples ``pos[k] = (row, col)`` of entry k (0-based).

    Generated by placing 0, 1, 2, ... in turn; ordered lexicographically by the
    row sequence of the entries.
    """
    n = sum(lam)
    out = []

    def place(k, filled, pos):
        if k == n:
            out.append(tuple(pos))
            return
        for r in range(len(lam)):
            c = filled[r]
            if c < lam[r] and (r == 0 or filled[r - 1] > c):
                filled[r] += 1
                pos.append((r, c))
                place(k + 1, filled, pos)
                pos.pop()
                filled[r] -= 1

    place(0, [0] * len(lam), [])
    return tuple(out)


# -- characters (Murnaghan-Nakayama) -----------------------------------------


@lru_cache(maxsize=None)
def mn_character(lam: Partition, mu: Partition) -> int:
    """chi^lam on the class of cycle type mu, by removing rim hooks (beta-sets)."""
    if sum(lam) != sum(mu):
        raise ValueError("partition sizes differ")
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    k = len(lam)
    beta = [lam[i] + k - 1 - i for i in range(k)]
    beads = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in beads:
            sign = (-1) ** sum(1 for x in beads if b - r < x < b)
            new = sorted((beads - {b}) | {b - r}, reverse=True)
            shape = tuple(x - (k - 1 - i) for i, x in enumerate(new))
            shape = tuple(p for p in shape if p > 0)
            total += sign * mn_character(shape, rest)
    return total


def character_table(n: int) -> np.ndarray:
    """Rows: partitions(n); columns: class_partitions(n)."""
    return np.array(
        [[mn_character(lam, mu) for mu in class_partitions(n)] for lam in partitions(n)],
        dtype=np.int64,
    )


def decompose(char, n: int | None = None) -> list[tuple[Partition, int]]:
    """Multiplicities of irreducibles in a character given on class_partitions(n)."""
    char = [int(v) for v in char]
    if n is None:
        n = next(k for k in range(1, 12) if len(class_partitions(k)) == len(char))
    classes = class_partitions(n)
    if len(classes) != len(char):
        raise ValueError("character length does not match the number of classes")
    out = []
    for lam in partitions(n):
        s = sum(class_size(mu) * chi * mn_character(lam, mu) for mu, chi in zip(classes, char))
        m, rem = divmod(s, math.factorial(n))
        if rem or m < 0:
            raise ValueError(f"not a character: multiplicity of {lam} is {Fraction(s, math.factorial(n))}")
        if m:
            out.append((lam, m))
    return out


def format_decomposition(dec) -> str:
    """``3[6] + [51]``"""
    if not dec:
        return "0"
    return " + ".join(f"{'' if m == 1 else m}[{partition_label(lam)}]" for lam, m in dec)


def module_character(action_matrices) -> list:
    """Traces of the action matrices (one per class representative)."""
    return [sum(M[i][i] for i in range(len(M))) for M in action_matrices]


# -- seminormal representation ----------------------------------------------


def _one(ring):
    return Fraction(1) if ring == "QQ" else 1


def _frac(num: int, den: int, ring):
    if ring == "QQ":
        return Fraction(num, den)
    return num * pow(den, ring - 2, ring) % ring


def _zeros(d, ring):
    if ring == "QQ":
        return np.full((d, d), Fraction(0), dtype=object)
    return np.zeros((d, d), dtype=np.int64)


def generator_matrices(lam: Partition, ring="QQ") -> list[np.ndarray]:
    """Seminormal matrices of the adjacent transpositions (k, k+1), k = 0..n-2.

    Column T holds the image of the basis vector of tableau T.
    """
    tabs = standard_tableaux(lam)
    index = {t: i for i, t in enumerate(tabs)}
    n, d = sum(lam), len(tabs)
    gens = []
    for k in range(n - 1):
        S = _zeros(d, ring)
        for i, t in enumerate(tabs):
            (r1, c1), (r2, c2) = t[k], t[k + 1]
            a = (c2 - r2) - (c1 - r1)
            if r1 == r2:
                S[i, i] = _one(ring)
            elif c1 == c2:
                S[i, i] = -_one(ring) if ring == "QQ" else ring - 1  # -1 mod p
            else:
                swapped = list(t)
                swapped[k], swapped[k + 1] = t[k + 1], t[k]
                j = index[tuple(swapped)]
                S[i, i] = _frac(1, a, ring)
                S[j, i] = _one(ring) if a > 0 else _frac(a * a - 1, a * a, ring)
        gens.append(S)
    return gens


def _matmul(A, B, ring):
    if ring == "QQ":
        return A.dot(B)
    return (A @ B) % ring


@lru_cache(maxsize=None)
def perm_index(n: int) -> dict:
    return {p: i for i, p in enumerate(itertools.permutations(range(n)))}


class IrrepMatrices:
    """All matrices of the irreducible representation ``lam`` over a ring.

    ``table[perm_index(n)[sigma]]`` is ``rho(sigma)``; the table is filled by
    a breadth-first walk over products of adjacent transpositions.
    """

    def __init__(self, lam: Partition, ring="QQ"):
        self.lam = tuple(lam)
        self.ring = ring
        self.n = sum(lam)
        self.dim = hook_length_dim(self.lam)
        gens = generator_matrices(self.lam, ring)
        index = perm_index(self.n)
        dtype = object if ring == "QQ" else np.int64
        table = np.empty((len(index), self.dim, self.dim), dtype=dtype)
        ident = tuple(range(self.n))
        eye = _zeros(self.dim, ring)
        for i in range(self.dim):
            eye[i, i] = _one(ring)
        done = np.zeros(len(index), dtype=bool)
        table[index[ident]] = eye
        done[index[ident]] = True
        frontier = [ident]
        while frontier:
            nxt = []
            for sigma in frontier:
                rho = table[index[sigma]]
                for k, g in enumerate(gens):
                    # s_k * sigma swaps the values k, k+1 in sigma
                    tau = tuple(k + 1 if v == k else k if v == k + 1 else v for v in sigma)
                    j = index[tau]
                    if not done[j]:
                        table[j] = _matmul(g, rho, ring)
                        done[j] = True
                        nxt.append(tau)
            frontier = nxt
        self.table = table
        self.index = index

    def __call__(self, sigma) -> np.ndarray:
        return self.table[self.index[tuple(sigma)]]

    def element(self, terms) -> np.ndarray:
        """rho of a group algebra element given as ``(coefficient, permutation)`` pairs."""
        out = _zeros(self.dim, self.ring)
        for c, sigma in terms:
            if self.ring == "QQ":
                out = out + Fraction(c) * self(sigma)
            else:
                out = (out + (int(c) % self.ring) * self(sigma)) % self.ring
        return out


@lru_cache(maxsize=64)
def irrep(lam: Partition, ring="QQ") -> IrrepMatrices:
    return IrrepMatrices(tuple(lam), ring)


def irrep_matrix(lam: Partition, sigma, ring="QQ") -> np.ndarray:
    if len(sigma) != sum(lam):
        raise ValueError("permutation degree does not match the partition")
    return irrep(tuple(lam), ring)(sigma)


def group_algebra_block(lam: Partition, element, ring="QQ") -> np.ndarray:
    """rho_lam of ``sum(c * sigma)`` for ``element = [(c, sigma), ...]``."""
    for _, sigma in element:
        if len(sigma) != sum(lam):
            raise ValueError("permutation degree does not match the partition")
    return irrep(tuple(lam), ring).element(element)
