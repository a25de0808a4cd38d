"""Diassociative monomials in normal form and the two products.

A normal-form monomial is its argument word together with the position of the
center (1-based).  ``u |- v`` keeps the center of ``v``; ``u -| v`` keeps the
center of ``u``.  Polynomials are plain dicts ``{DiasMonomial: coefficient}``
with no zero values; coefficients may be ints, Fractions or residues mod p
(pass ``prime`` to the arithmetic helpers for the latter).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

from .magma import LETTERS

RIGHT = "|-"  # the product x |- y, center taken from y
LEFT = "-|"  # the product x -| y, center taken from x


class DiasMonomial(NamedTuple):
    word: tuple
    center: int  # 1-based position of the hatted argument

    @property
    def degree(self) -> int:
        return len(self.word)

    def format(self, alphabet: str = LETTERS) -> str:
        return "".join(
            f"[{alphabet[a]}]" if i + 1 == self.center else alphabet[a]
            for i, a in enumerate(self.word)
        )

    def __str__(self) -> str:
        return self.format()


DiasPoly = dict


def leaf(label) -> DiasMonomial:
    return DiasMonomial((label,), 1)


def dias_mul(u: DiasMonomial, v: DiasMonomial, op: str, check: bool = True) -> DiasMonomial:
    if check and not set(u.word).isdisjoint(v.word):
        raise ValueError(f"overlapping labels in {u} and {v}")
    if op == RIGHT:
        return DiasMonomial(u.word + v.word, len(u.word) + v.center)
    if op == LEFT:
        return DiasMonomial(u.word + v.word, u.center)
    raise ValueError(f"unknown operation {op!r}")


def poly_add(p: DiasPoly, q: DiasPoly, scale=1, prime: int | None = None) -> DiasPoly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if prime is not None:
            v %= prime
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_scale(p: DiasPoly, scale, prime: int | None = None) -> DiasPoly:
    out = {}
    for m, c in p.items():
        v = c * scale
        if prime is not None:
            v %= prime
        if v:
            out[m] = v
    return out


def poly_mul(p: DiasPoly, q: DiasPoly, op: str, prime: int | None = None) -> DiasPoly:
    """Bilinear extension of :func:`dias_mul`.  Labels may repeat."""
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            m = dias_mul(u, v, op, check=False)
            out[m] = out.get(m, 0) + a * b
    if prime is not None:
        return {m: c % prime for m, c in out.items() if c % prime}
    return {m: c for m, c in out.items() if c}


def dias_sort_key(m: DiasMonomial):
    return (m.center, m.word)


@lru_cache(maxsize=None)
def enum_dias(n: int) -> tuple[DiasMonomial, ...]:
    """Multilinear monomials ordered by center, then argument permutation."""
    if not 1 <= n <= 8:
        raise ValueError(f"degree {n} outside supported range")
    words = list(itertools.permutations(range(n)))
    return tuple(DiasMonomial(w, c) for c in range(1, n + 1) for w in words)


@lru_cache(maxsize=None)
def dias_index(n: int) -> dict:
    return {m: i for i, m in enumerate(enum_dias(n))}


def format_poly(p: DiasPoly, alphabet: str = LETTERS) -> str:
    terms = []
    for m in sorted(p, key=dias_sort_key):
        c = p[m]
        body = m.format(alphabet)
        if c == 1:
            terms.append(f"+ {body}")
        elif c == -1:
            terms.append(f"- {body}")
        elif c < 0:
            terms.append(f"- {-c} {body}")
        else:
            terms.append(f"+ {c} {body}")
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[1:]


# -- Loday's axioms --------------------------------------------------------

# each axiom: (name, lhs, rhs) with sides as nested (op, left, right) over x, y, z
AXIOMS = [
    ("right associativity", (RIGHT, (RIGHT, "x", "y"), "z"), (RIGHT, "x", (RIGHT, "y", "z"))),
    ("left associativity", (LEFT, (LEFT, "x", "y"), "z"), (LEFT, "x", (LEFT, "y", "z"))),
    ("inner associativity", (LEFT, (RIGHT, "x", "y"), "z"), (RIGHT, "x", (LEFT, "y", "z"))),
    ("left bar identity", (RIGHT, (LEFT, "x", "y"), "z"), (RIGHT, (RIGHT, "x", "y"), "z")),
    ("right bar identity", (LEFT, "x", (LEFT, "y", "z")), (LEFT, "x", (RIGHT, "y", "z"))),
]


def _evaluate(expr, env):
    if isinstance(expr, str):
        return env[expr]
    op, a, b = expr
    return dias_mul(_evaluate(a, env), _evaluate(b, env), op)


def _split_monomials(total: int):
    """All ways of choosing monomials x, y, z with disjoint labels, degree sum ``total``."""
    labels = range(total)
    for dx in range(1, total - 1):
        for dy in range(1, total - dx):
            dz = total - dx - dy
            for word in itertools.permutations(labels):
                wx, wy, wz = word[:dx], word[dx:dx + dy], word[dx + dy:]
                for cx in range(1, dx + 1):
                    for cy in range(1, dy + 1):
                        for cz in range(1, dz + 1):
                            yield (DiasMonomial(wx, cx), DiasMonomial(wy, cy), DiasMonomial(wz, cz))


def check_loday_axioms(max_degree: int = 3) -> dict[str, tuple[int, int]]:
    """Check the five axioms on all normal-form triples of total degree <= max_degree.

    Returns ``{axiom name: (cases checked, failures)}``.
    """
    report = {name: [0, 0] for name, _, _ in AXIOMS}
    for total in range(3, max_degree + 1):
        for x, y, z in _split_monomials(total):
            env = {"x": x, "y": y, "z": z}
            for name, lhs, rhs in AXIOMS:
                report[name][0] += 1
                if _evaluate(lhs, env) != _evaluate(rhs, env):
                    report[name][1] += 1
    return {k: (v[0], v[1]) for k, v in report.items()}
