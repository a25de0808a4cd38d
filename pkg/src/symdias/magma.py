"""Monomials of the free commutative nonassociative magma.

A monomial is a binary tree: a leaf is an ``int`` label, an internal node is a
pair ``(left, right)``.  Labels ``0, 1, 2, ...`` print as ``a, b, c, ...``.

Commutativity is handled by a canonical form: at every node the two children
are ordered by shape (reverse degree-lexicographic, bigger subtree first) and,
for children of equal shape, by their leaf words.  For a fixed canonical shape
this picks the lexicographically first leaf word in the equivalence class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

Tree = Union[int, tuple]

MAX_DEGREE = 8
LETTERS = "abcdefghijklmnopqrstuvwxyz"


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def is_leaf(t: Tree) -> bool:
    return isinstance(t, int)


def degree(t: Tree) -> int:
    if is_leaf(t):
        return 1
    return degree(t[0]) + degree(t[1])


def leaves(t: Tree) -> tuple[int, ...]:
    if is_leaf(t):
        return (t,)
    return leaves(t[0]) + leaves(t[1])


def shape(t: Tree) -> Tree:
    """The unlabeled tree (every leaf relabeled 0)."""
    if is_leaf(t):
        return 0
    return (shape(t[0]), shape(t[1]))


@lru_cache(maxsize=None)
def shape_key(s: Tree) -> tuple:
    """Sort key realising the reverse degree-lexicographic order on shapes."""
    if is_leaf(s):
        return (-1,)
    return (-degree(s), shape_key(s[0]), shape_key(s[1]))


def straighten(t: Tree) -> Tree:
    """Canonical representative of ``t`` under commutativity."""
    return _straighten(t)[0]


def _straighten(t):
    # returns (canonical tree, its shape key, its leaf word) in one pass
    if isinstance(t, int):
        return t, (-1,), (t,)
    left, right = _straighten(t[0]), _straighten(t[1])
    if (right[1], right[2]) < (left[1], left[2]):
        left, right = right, left
    key = (-(len(left[2]) + len(right[2])), left[1], right[1])
    return (left[0], right[0]), key, left[2] + right[2]


def relabel(t: Tree, mapping) -> Tree:
    """Replace each leaf label ``i`` by ``mapping[i]`` (which may be a subtree)."""
    if is_leaf(t):
        return mapping[t]
    return (relabel(t[0], mapping), relabel(t[1], mapping))


def fill(s: Tree, word) -> Tree:
    """Put the labels of ``word`` on the leaves of shape ``s``, left to right."""
    it = iter(word)

    def go(node):
        if is_leaf(node):
            return next(it)
        left = go(node[0])
        return (left, go(node[1]))

    return go(s)


def flips(t: Tree):
    """Yield every tree obtained from ``t`` by flipping any subset of nodes."""
    if is_leaf(t):
        yield t
        return
    for left in flips(t[0]):
        for right in flips(t[1]):
            yield (left, right)
            yield (right, left)


@lru_cache(maxsize=None)
def enum_association_types(n: int) -> tuple[Tree, ...]:
    """Canonical commutative shapes of degree ``n`` in reverse degree-lex order."""
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"degree {n} outside supported range 1..{MAX_DEGREE}")
    if n == 1:
        return (0,)
    out = []
    for i in range(n - 1, (n - 1) // 2, -1):
        j = n - i
        for left in enum_association_types(i):
            for right in enum_association_types(j):
                if i == j and shape_key(right) < shape_key(left):
                    continue
                out.append((left, right))
    return tuple(sorted(out, key=shape_key))


@lru_cache(maxsize=None)
def type_index_map(n: int) -> dict:
    return {s: k for k, s in enumerate(enum_association_types(n))}


def type_index(t: Tree) -> int:
    """Ordinal (0-based) of the association type of a canonical monomial."""
    return type_index_map(degree(t))[shape(t)]


@dataclass(frozen=True, order=True)
class CommMonomial:
    """Canonical multilinear monomial: association type and leaf word."""

    type_index: int
    perm: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.perm)

    def tree(self) -> Tree:
        return fill(enum_association_types(self.degree)[self.type_index], self.perm)

    @classmethod
    def from_tree(cls, t: Tree) -> "CommMonomial":
        t = straighten(t)
        return cls(type_index(t), leaves(t))

    def __str__(self) -> str:
        return to_string(self.tree())


@lru_cache(maxsize=None)
def enum_multilinear(n: int) -> tuple[CommMonomial, ...]:
    """All canonical multilinear monomials of degree ``n``, by type then word."""
    types = enum_association_types(n)
    out = []
    for k, s in enumerate(types):
        ties = _tie_segments(s)
        for word in itertools.permutations(range(n)):
            if all(word[a:b] < word[b:c] for a, b, c in ties):
                out.append(CommMonomial(k, word))
    return tuple(out)


def _tie_segments(s: Tree) -> list[tuple[int, int, int]]:
    """Leaf ranges ``(start, mid, end)`` of the nodes whose two children have equal shape.

    A filling of a canonical shape is canonical exactly when the left word is
    smaller than the right word at every such node.
    """
    out = []

    def go(node, start):
        if is_leaf(node):
            return start + 1
        mid = go(node[0], start)
        end = go(node[1], mid)
        if node[0] == node[1]:
            out.append((start, mid, end))
        return end

    go(s, 0)
    return out


@lru_cache(maxsize=None)
def multilinear_index(n: int) -> dict:
    return {m: i for i, m in enumerate(enum_multilinear(n))}


def enum_collapsed(n: int, word: tuple[int, ...]) -> tuple[Tree, ...]:
    """Distinct canonical monomials whose leaf multiset is that of ``word``.

    Used for the nonlinear bases ``x^n`` (``word = (0,)*n``) and ``x^(n-1) y``
    (``word = (0,)*(n-1) + (1,)``).  Ordered by type then leaf word.
    """
    seen = set()
    for s in enum_association_types(n):
        for w in set(itertools.permutations(word)):
            seen.add(straighten(fill(s, w)))
    return tuple(sorted(seen, key=lambda t: (type_index(t), leaves(t))))


@dataclass(frozen=True)
class TypeSymmetry:
    """A commutativity symmetry ``t(id) = t(sigma)`` of an association type."""

    type_index: int
    sigma: tuple[int, ...]

    def cycles(self) -> str:
        return cycle_string(self.sigma)


def type_symmetries(n: int) -> list[TypeSymmetry]:
    """One involution per node whose two children have the same shape.

    The involution swaps the two leaf blocks below that node.
    """
    out = []
    for k, s in enumerate(enum_association_types(n)):
        found = []

        def walk(node, start):
            if is_leaf(node):
                return 1
            dl = walk(node[0], start)
            dr = walk(node[1], start + dl)
            if node[0] == node[1]:
                sigma = list(range(n))
                for i in range(dl):
                    sigma[start + i], sigma[start + dl + i] = start + dl + i, start + i
                found.append((start, dl, tuple(sigma)))
            return dl + dr

        walk(s, 0)
        # post-order, so (12), (34), (13)(24), (56) for ((--)(--))((--)-)
        out.extend(TypeSymmetry(k, sigma) for _, _, sigma in found)
    return out


def cycle_string(perm) -> str:
    """Disjoint-cycle notation with 1-based points, ``e`` for the identity."""
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + "".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) or "e"


# -- string syntax ---------------------------------------------------------


def to_string(t: Tree, alphabet: str = LETTERS) -> str:
    """``((ab)c)d`` style: every product but the outermost is parenthesised."""

    def go(node, top):
        if is_leaf(node):
            return alphabet[node]
        body = go(node[0], False) + go(node[1], False)
        return body if top else "(" + body + ")"

    return go(t, True)


def shape_string(s: Tree) -> str:
    """``((--)-)-`` style rendering of a shape."""
    return _shape(s, True)


def _shape(s, top):
    if is_leaf(s):
        return "-"
    body = _shape(s[0], False) + _shape(s[1], False)
    return body if top else "(" + body + ")"


def parse(text: str, alphabet: str = LETTERS, multilinear: bool = False) -> Tree:
    """Parse ``((ab)c)d``; ``v^2`` abbreviates ``(vv)``; ``-`` is an anonymous leaf.

    Products must be parenthesised except the outermost one.  With
    ``multilinear=True`` repeated variables are rejected.
    """
    src = text.replace(" ", "")
    pos = 0

    def factor():
        nonlocal pos
        if pos >= len(src):
            raise ParseError(text, pos, "unexpected end of input")
        ch = src[pos]
        if ch == "(":
            pos += 1
            node = product()
            if pos >= len(src) or src[pos] != ")":
                raise ParseError(text, pos, "expected ')'")
            pos += 1
            if not isinstance(node, tuple):
                raise ParseError(text, pos - 1, "parentheses around a single variable")
            return node
        if ch == "-":
            pos += 1
            return 0
        if ch in alphabet:
            pos += 1
            leaf = alphabet.index(ch)
            if src.startswith("^2", pos):
                pos += 2
                return (leaf, leaf)
            return leaf
        raise ParseError(text, pos, f"unexpected character {ch!r}")

    def product():
        left = factor()
        if pos < len(src) and src[pos] != ")":
            right = factor()
            if pos < len(src) and src[pos] != ")":
                raise ParseError(text, pos, "missing parentheses around a product")
            return (left, right)
        return left

    tree = product()
    if pos != len(src):
        raise ParseError(text, pos, "unbalanced ')'")
    if multilinear:
        labels = leaves(tree)
        if len(set(labels)) != len(labels):
            dup = next(l for l in labels if labels.count(l) > 1)
            raise ParseError(text, src.index(alphabet[dup], src.index(alphabet[dup]) + 1),
                             f"duplicate variable {alphabet[dup]!r}")
    return tree
