"""The expansion map from commutative monomials to diassociative polynomials.

The commutative product ``u v`` is sent to the symmetrized Jordan diproduct

    u -| v  +  u |- v  +  v -| u  +  v |- u

and the map is extended to trees by structural recursion.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .dias import (
    LEFT,
    RIGHT,
    DiasMonomial,
    DiasPoly,
    dias_index,
    dias_sort_key,
    enum_dias,
    leaf,
    poly_add,
    poly_mul,
)
from .magma import (
    CommMonomial,
    Tree,
    enum_association_types,
    enum_collapsed,
    enum_multilinear,
    fill,
    is_leaf,
    relabel,
)

PATTERNS = {
    "x6": (0, 0, 0, 0, 0, 0),
    "x5y": (0, 0, 0, 0, 0, 1),
}
PATTERN_ALPHABET = "xy"


def symmetrized_product(p: DiasPoly, q: DiasPoly) -> DiasPoly:
    out = poly_mul(p, q, LEFT)
    out = poly_add(out, poly_mul(p, q, RIGHT))
    out = poly_add(out, poly_mul(q, p, LEFT))
    return poly_add(out, poly_mul(q, p, RIGHT))


def jordan_diproduct(p: DiasPoly, q: DiasPoly) -> DiasPoly:
    """``a . b = a -| b + b |- a`` (the unsymmetrized Jordan diproduct)."""
    return poly_add(poly_mul(p, q, LEFT), poly_mul(q, p, RIGHT))


@lru_cache(maxsize=200_000)
def _expand_tree(t: Tree) -> DiasPoly:
    if is_leaf(t):
        return {leaf(t): 1}
    return symmetrized_product(_expand_tree(t[0]), _expand_tree(t[1]))


def expand(m) -> DiasPoly:
    """Expansion of a monomial given as a :class:`CommMonomial` or a tree.

    Trees may repeat labels; equal diassociative monomials then merge.
    The returned dict is shared with a cache, copy before mutating.
    """
    if isinstance(m, CommMonomial):
        m = m.tree()
    return _expand_tree(m)


def expand_poly(terms, prime: int | None = None) -> DiasPoly:
    """Expansion of ``sum(c * m)`` for an iterable of ``(coefficient, tree)``."""
    out: DiasPoly = {}
    for c, t in terms:
        out = poly_add(out, expand(t), scale=c, prime=prime)
    return out


def expansion_matrix(n: int) -> np.ndarray:
    """Integer matrix with rows ``enum_dias(n)`` and columns ``enum_multilinear(n)``."""
    if not 1 <= n <= 7:
        raise ValueError(f"degree {n} outside supported range")
    rows = dias_index(n)
    cols = enum_multilinear(n)
    E = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, m in enumerate(cols):
        for d, c in expand(m).items():
            E[rows[d], j] = c
    return E


def type_expansion(n: int, k: int) -> DiasPoly:
    """Expansion of association type ``k`` with the identity labelling."""
    return expand(fill(enum_association_types(n)[k], range(n)))


@lru_cache(maxsize=None)
def collapsed_basis(pattern: str) -> tuple[tuple[Tree, ...], tuple[DiasMonomial, ...]]:
    """Column monomials and row monomials of the collapsed matrix for ``pattern``."""
    word = PATTERNS[pattern]
    n = len(word)
    cols = enum_collapsed(n, word)
    rows = sorted(
        {DiasMonomial(w, c) for w in set(itertools.permutations(word)) for c in range(1, n + 1)},
        key=dias_sort_key,
    )
    return cols, tuple(rows)


def collapsed_matrix(pattern: str) -> np.ndarray:
    """Expansion matrix in the nonlinear variables ``x^6`` or ``x^5 y``.

    Rows are ordered by center and then by the word (so by the position of
    ``y``, rightmost first); columns are the nonlinear monomials by type.
    """
    cols, rows = collapsed_basis(pattern)
    index = {m: i for i, m in enumerate(rows)}
    E = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, t in enumerate(cols):
        for d, c in expand(t).items():
            E[index[d], j] += c
    return E


def collapse_multilinear(E: np.ndarray, pattern: str) -> np.ndarray:
    """Collapse the degree-6 multilinear matrix by substituting the pattern.

    Independent route to :func:`collapsed_matrix`: every multilinear column is
    summed into the collapsed column it lands on, and likewise for rows, then
    each collapsed column is divided by the number of multilinear monomials
    that collapse onto it.
    """
    from .magma import straighten

    word = PATTERNS[pattern]
    n = len(word)
    cols, rows = collapsed_basis(pattern)
    cidx = {t: i for i, t in enumerate(cols)}
    ridx = {m: i for i, m in enumerate(rows)}
    out = np.zeros((len(rows), len(cols)), dtype=np.int64)
    hits = np.zeros(len(cols), dtype=np.int64)
    dmons = enum_dias(n)
    for j, m in enumerate(enum_multilinear(n)):
        cj = cidx[straighten(relabel(m.tree(), word))]
        hits[cj] += 1
        for i in np.flatnonzero(E[:, j]):
            d = dmons[i]
            out[ridx[DiasMonomial(tuple(word[a] for a in d.word), d.center)], cj] += E[i, j]
    return out // hits


# -- Jordan dialgebra identities -------------------------------------------


def _expand_plane(expr, env) -> DiasPoly:
    """Expand a plane expression tree using the Jordan diproduct."""
    if isinstance(expr, str):
        return env[expr]
    a, b = expr
    return jordan_diproduct(_expand_plane(a, env), _expand_plane(b, env))


def _linearize_terms(terms, variable: str, count: int):
    """Replace the ``count`` occurrences of ``variable`` by fresh names, summed over orders."""
    fresh = [f"{variable}{i}" for i in range(count)]
    out = []
    for coeff, expr in terms:
        for order in itertools.permutations(fresh):
            it = iter(order)

            def sub(e):
                if isinstance(e, str):
                    return next(it) if e == variable else e
                return (sub(e[0]), sub(e[1]))

            out.append((coeff, sub(expr)))
    return out


def _assoc(a, b, c):
    return [(1, ((a, b), c)), (-1, (a, (b, c)))]


def jordan_dialgebra_identities():
    """The three defining identities as lists of ``(coefficient, plane tree)``."""
    x2 = ("x", "x")
    first = [(1, ("x", ("y", "z"))), (-1, ("x", ("z", "y")))]
    second = [(1, (("y", "x"), x2)), (-1, (("y", x2), "x"))]
    third = _assoc("y", x2, "z") + [
        (-2 * c, (t, "x")) for c, t in _assoc("y", "x", "z")
    ]
    return {
        "x(yz) = x(zy)": first,
        "(yx)x^2 = (yx^2)x": second,
        "(y,x^2,z) = 2(y,x,z)x": third,
    }


def _multiplicities(expr, counts):
    if isinstance(expr, str):
        counts[expr] = counts.get(expr, 0) + 1
        return counts
    _multiplicities(expr[0], counts)
    return _multiplicities(expr[1], counts)


def check_jordan_dialgebra_identities(identities=None) -> dict[str, int]:
    """Fully linearize each identity and expand it in the free diassociative algebra.

    Returns ``{identity: number of nonzero terms in the expansion}``; zero
    means the identity holds.
    """
    identities = identities or jordan_dialgebra_identities()
    report = {}
    for name, terms in identities.items():
        counts = _multiplicities(terms[0][1], {})
        for var, k in counts.items():
            if k > 1:
                terms = _linearize_terms(terms, var, k)
        names = sorted(_multiplicities(terms[0][1], {}))
        env = {v: {leaf(i): 1} for i, v in enumerate(names)}
        total: DiasPoly = {}
        for c, t in terms:
            total = poly_add(total, _expand_plane(t, env), scale=c)
        report[name] = len(total)
    return report
