"""Identity searches in degrees 3 to 7.

Degrees 3-6 are handled directly: the nullspace of the expansion matrix is the
space of multilinear identities.  In degree 7 the computation is split by
irreducible representation: a multilinear polynomial of association type t is
a group algebra element ``sum c_sigma sigma`` (the leaf word of each monomial
read as a permutation), and each identity contributes the block row
``[rho(a_1) ... rho(a_T)]``.
"""

from __future__ import annotations

import itertools
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from . import exactlinalg as xl
from .expansion import PATTERN_ALPHABET, PATTERNS, collapsed_basis, collapsed_matrix, expand, expansion_matrix, type_expansion
from .magma import (
    CommMonomial,
    enum_association_types,
    enum_multilinear,
    fill,
    leaves,
    multilinear_index,
    parse,
    relabel,
    straighten,
    to_string,
    type_index,
    type_symmetries,
)
from .symrep import (
    IrrepMatrices,
    Partition,
    class_representatives,
    decompose,
    module_character,
    partitions,
)


@dataclass(frozen=True)
class IdentityVector:
    """Integer coefficient vector over an ordered monomial basis.

    ``basis`` is ``"x6"``, ``"x5y"`` or ``"ml<n>"`` (multilinear degree n).
    """

    basis: str
    coeffs: tuple

    def monomials(self):
        if self.basis.startswith("ml"):
            return [m.tree() for m in enum_multilinear(int(self.basis[2:]))]
        return list(collapsed_basis(self.basis)[0])

    def terms(self):
        return [(c, m) for c, m in zip(self.coeffs, self.monomials()) if c]

    def normalized(self) -> "IdentityVector":
        return IdentityVector(self.basis, tuple(normalize(self.coeffs)))

    def format(self) -> str:
        alphabet = PATTERN_ALPHABET if not self.basis.startswith("ml") else None
        parts = []
        for c, m in self.terms():
            s = to_string(m, alphabet) if alphabet else to_string(m)
            if alphabet:
                s = s.replace("(xx)", "x^2")
                if s == "xx":
                    s = "x^2"
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)} "
            parts.append(f"{sign} {mag}{s}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def parse_identity(text: str, pattern: str) -> IdentityVector:
    """Read ``2((x^2x)x)y - (x^2x^2)(xy) + ...`` as a vector over the pattern's basis."""
    cols = collapsed_basis(pattern)[0]
    index = {t: i for i, t in enumerate(cols)}
    coeffs = [0] * len(cols)
    for sign, num, body in re.findall(r"([+-]?)\s*(\d*)\s*([^+-]+)", text):
        tree = straighten(parse(body.strip(), PATTERN_ALPHABET))
        if tree not in index:
            raise ValueError(f"{body.strip()!r} is not a monomial of pattern {pattern}")
        c = int(num) if num else 1
        coeffs[index[tree]] += -c if sign == "-" else c
    return IdentityVector(pattern, tuple(coeffs))


def normalize(v) -> list[int]:
    """Divide by the content and make the first nonzero entry positive."""
    v = [int(x) for x in v]
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        return v
    first = next(x for x in v if x)
    if first < 0:
        g = -g
    return [x // g for x in v]


# -- degrees 3..6, multilinear ----------------------------------------------


@dataclass
class SearchResult:
    degree: int
    shape: tuple
    rank: int
    nullity: int
    nullspace: np.ndarray  # RCF over GF(prime)
    prime: int


def multilinear_search(n: int, prime: int = xl.DEFAULT_PRIME) -> SearchResult:
    if not 3 <= n <= 6:
        raise ValueError("multilinear search supports degrees 3..6")
    E = expansion_matrix(n)
    N = xl.nullspace_mod(E, prime)
    rank = E.shape[1] - N.shape[0]
    return SearchResult(n, E.shape, rank, N.shape[0], N, prime)


def degree6_integer_identities(prime: int = xl.DEFAULT_PRIME, scale: int | None = 4):
    """Nullspace of the degree-6 expansion matrix reconstructed over Z.

    With ``scale=None`` the scale is searched per row (1, 2, 4, ...).
    Returns (search result, integer rows).
    """
    res = multilinear_search(6, prime)
    if scale is None:
        rows, _ = xl.reconstruct_rows(res.nullspace, prime)
    else:
        rows = [xl.rational_reconstruct(r, scale, prime) for r in res.nullspace]
    return res, rows


def act_multilinear(sigma, v, n: int) -> list:
    """Permute the variables of a multilinear vector: x_i -> x_sigma(i)."""
    index = multilinear_index(n)
    out = [0] * len(index)
    for m, c in zip(enum_multilinear(n), v):
        if c:
            out[index[CommMonomial.from_tree(relabel(m.tree(), sigma))]] += c
    return out


def action_matrices(rows, n: int = 6, perms=None) -> list[list[list[Fraction]]]:
    """Matrices of the class representatives on the row space of ``rows``.

    Column i of the matrix for sigma holds the coordinates of sigma applied
    to basis row i (the usual matrix of a linear map).  Coordinates are solved
    exactly over Q.
    """
    perms = perms if perms is not None else class_representatives(n)
    B = xl.ExactMatrix([list(r) for r in rows], "QQ")
    R, rk = xl.rcf(B)
    pivots = [next(j for j, v in enumerate(row) if v) for row in R.data]
    # coordinates w.r.t. rows: solve x B = w using the pivot columns
    sub = [[Fraction(r[c]) for c in pivots] for r in rows]
    inv = _inverse([list(x) for x in sub])
    mats = []
    for sigma in perms:
        M = []
        for r in rows:
            w = act_multilinear(sigma, r, n)
            wp = [Fraction(w[c]) for c in pivots]
            M.append([sum(wp[k] * inv[k][j] for k in range(len(wp))) for j in range(len(wp))])
        mats.append([list(col) for col in zip(*M)])
    return mats


def _inverse(A):
    n = len(A)
    M = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next(i for i in range(c, n) if M[i][c])
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def degree6_module(prime: int = xl.DEFAULT_PRIME, rows=None):
    """Character, decomposition and class action matrices of the degree-6 identity module."""
    if rows is None:
        _, rows = degree6_integer_identities(prime)
    mats = action_matrices(rows, 6)
    char = [int(t) for t in module_character(mats)]
    return char, decompose(char, 6), mats


# -- degree 6, nonlinear -----------------------------------------------------


def degree6_nonlinear(pattern: str) -> list[IdentityVector]:
    """LLL-reduced basis of the integer nullspace of the collapsed matrix."""
    E = collapsed_matrix(pattern)
    res = xl.hnf_with_transform(E.T.tolist())
    basis = xl.lll_reduce(res.nullspace_rows()) if res.nullspace_rows() else []
    return [IdentityVector(pattern, tuple(normalize(v))) for v in basis]


def collapsed_rank(pattern: str) -> int:
    return xl.hnf_with_transform(collapsed_matrix(pattern).T.tolist()).rank


def linearize(f: IdentityVector) -> list[int]:
    """Full linearization of an ``x6`` or ``x5y`` identity, as a degree-6 vector."""
    if f.basis not in PATTERNS:
        raise ValueError(f"cannot linearize basis {f.basis!r}")
    n = 6
    nx = PATTERNS[f.basis].count(0)
    index = multilinear_index(n)
    out = [0] * len(index)
    for c, t in f.terms():
        word = leaves(t)
        shape_t = relabel(t, {0: 0, 1: 0})
        for order in itertools.permutations(range(nx)):
            it = iter(order)
            labels = [next(it) if a == 0 else nx for a in word]
            m = CommMonomial.from_tree(fill(shape_t, labels))
            out[index[m]] += c
    return out


def collapse(v, pattern: str) -> list[int]:
    """Substitute the pattern variables into a degree-6 multilinear vector."""
    word = PATTERNS[pattern]
    cols = collapsed_basis(pattern)[0]
    cidx = {t: i for i, t in enumerate(cols)}
    out = [0] * len(cols)
    for m, c in zip(enum_multilinear(6), v):
        if c:
            out[cidx[straighten(relabel(m.tree(), word))]] += c
    return out


Poly7 = dict  # {(type index, leaf word): coefficient}


def _as_poly(terms) -> Poly7:
    out: Poly7 = {}
    for c, t in terms:
        t = straighten(t)
        key = (type_index(t), leaves(t))
        out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


def consequences(f) -> list[Poly7]:
    """The seven degree-7 liftings of a multilinear degree-6 identity.

    ``f(x1, .., xi x7, .., x6)`` for i = 1..6, then ``f(x1, .., x6) x7``.
    """
    mons = enum_multilinear(6)
    terms = [(c, m.tree()) for c, m in zip(f, mons) if c]
    out = []
    for i in range(6):
        sub = {k: k for k in range(6)}
        sub[i] = (i, 6)
        out.append(_as_poly((c, relabel(t, sub)) for c, t in terms))
    out.append(_as_poly((c, (t, 6)) for c, t in terms))
    return out


def poly_expansion(poly: Poly7, n: int = 7, prime: int | None = None):
    """Expansion of a polynomial given by (type, word) keys; independent of the block route."""
    types = enum_association_types(n)
    return _expand_terms(((c, fill(types[k], w)) for (k, w), c in poly.items()), prime)


def _expand_terms(terms, prime):
    from .dias import poly_add

    out = {}
    for c, t in terms:
        out = poly_add(out, expand(t), scale=c, prime=prime)
    return out


def symmetry_polys(n: int = 7) -> list[Poly7]:
    ident = tuple(range(n))
    return [{(s.type_index, ident): 1, (s.type_index, s.sigma): -1} for s in type_symmetries(n)]


def degree7_generators() -> list[list[int]]:
    """The seven linearized degree-6 identities (three from x6, four from x5y)."""
    gens = []
    for pattern in ("x6", "x5y"):
        gens.extend(linearize(f) for f in degree6_nonlinear(pattern))
    return gens


def degree7_consequences() -> list[Poly7]:
    out = []
    for g in degree7_generators():
        out.extend(consequences(g))
    return out


# -- degree 7, per partition -------------------------------------------------


@dataclass
class PartitionReport:
    partition: Partition
    dim: int
    rank_S: int
    rank_SC: int
    rank_N: int
    contained: bool = True  # old identities lie in the nullspace of the expansion

    @property
    def new(self) -> int:
        return self.rank_N - self.rank_SC


def _block_rows(polys, rep: IrrepMatrices, ntypes: int, p: int) -> np.ndarray:
    """Stack ``[rho(a_1) ... rho(a_T)]`` for each polynomial."""
    index = rep.index
    d = rep.dim
    data, ri, ci = [], [], []
    for i, poly in enumerate(polys):
        for (k, w), c in poly.items():
            ri.append(i * ntypes + k)
            ci.append(index[w])
            data.append(c % p)
    A = sp.csr_matrix(
        (np.array(data, dtype=np.int64), (np.array(ri), np.array(ci))),
        shape=(len(polys) * ntypes, len(index)),
        dtype=np.int64,
    )
    A.sum_duplicates()
    A.data %= p
    table = rep.table.reshape(len(index), d * d)
    X = np.asarray(A @ table) % p
    X = X.reshape(len(polys), ntypes, d, d)
    return X.transpose(0, 2, 1, 3).reshape(len(polys) * d, ntypes * d)


@dataclass
class Degree7Data:
    """Polynomials shared by all partitions: symmetries, consequences, expansion."""

    symmetries: list
    consequences: list
    expansion: list  # per type: {(center, word): coefficient}
    prime: int


def degree7_data(prime: int = xl.DEFAULT_PRIME) -> Degree7Data:
    ntypes = len(enum_association_types(7))
    exp = []
    for k in range(ntypes):
        exp.append({(m.center, m.word): c for m, c in type_expansion(7, k).items()})
    return Degree7Data(symmetry_polys(7), degree7_consequences(), exp, prime)


def degree7_partition_report(lam: Partition, data: Degree7Data | None = None,
                             prime: int = xl.DEFAULT_PRIME) -> PartitionReport:
    data = data or degree7_data(prime)
    p = data.prime
    ntypes = len(data.expansion)
    rep = IrrepMatrices(tuple(lam), p)
    d = rep.dim
    S = _block_rows(data.symmetries, rep, ntypes, p)
    C = _block_rows(data.consequences, rep, ntypes, p)
    SC = np.vstack([S, C])
    # block (t, center) = rho(E_{t,center}); identities form its left nullspace
    per_type = [{(i - 1, w): c for (i, w), c in e.items()} for e in data.expansion]
    Y = _block_rows(per_type, rep, 7, p)  # (ntypes*d, 7*d)
    rank_S = xl.rank_mod(S, p)
    rank_SC = xl.rank_mod(SC, p)
    rank_X = xl.rank_mod(Y, p)
    contained = not ((SC @ Y) % p).any()
    return PartitionReport(tuple(lam), d, rank_S, rank_SC, ntypes * d - rank_X, contained)


def _report_job(args):
    lam, prime = args
    return degree7_partition_report(lam, _shared_data(prime))


_DATA_CACHE: dict = {}


def _shared_data(prime):
    if prime not in _DATA_CACHE:
        _DATA_CACHE[prime] = degree7_data(prime)
    return _DATA_CACHE[prime]


@dataclass
class Degree7Table:
    reports: list
    prime: int

    @property
    def total_new(self) -> int:
        return sum(r.new * r.dim for r in self.reports)

    def decomposition(self) -> list[tuple[Partition, int]]:
        return [(r.partition, r.new) for r in self.reports if r.new]

    def rows(self) -> dict[str, list[int]]:
        return {
            "rank(S)": [r.rank_S for r in self.reports],
            "rank(SC)": [r.rank_SC for r in self.reports],
            "rank(N)": [r.rank_N for r in self.reports],
            "new": [r.new for r in self.reports],
        }


def degree7_table(prime: int = xl.DEFAULT_PRIME, workers: int = 1) -> Degree7Table:
    lams = partitions(7)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_report_job, [(lam, prime) for lam in lams]))
    else:
        data = _shared_data(prime)
        reports = [degree7_partition_report(lam, data) for lam in lams]
    return Degree7Table(reports, prime)
