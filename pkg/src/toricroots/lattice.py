"""Exact integer arithmetic on lattice vectors.

Everything here works on tuples of Python ints, so gcd, determinant and
change-of-basis computations are exact for arbitrarily large entries.  All
functions are pure; there is no floating point anywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError

IntVector = tuple[int, ...]


def as_vector(v: Iterable[int]) -> IntVector:
    return tuple(int(x) for x in v)


def primitive_normalize(v: Iterable[int]) -> IntVector:
    """Divide ``v`` by the gcd of its entries, keeping the direction.

    The zero vector has no direction and is rejected ("zero ray").
    """
    vec = as_vector(v)
    if not vec or all(x == 0 for x in vec):
        raise InputError("zero ray", ["zero-ray"])
    g = math.gcd(*(abs(x) for x in vec))
    return tuple(x // g for x in vec)


def is_primitive(v: Sequence[int]) -> bool:
    vec = as_vector(v)
    return any(vec) and math.gcd(*(abs(x) for x in vec)) == 1


def det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(map(int, row)) for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise InputError("determinant needs a square matrix", ["bad-shape"])
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by fraction-free row elimination."""
    mat = [list(map(int, v)) for v in vectors]
    if not mat:
        return 0
    width = len(mat[0])
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        p = mat[r][col]
        for i in range(r + 1, len(mat)):
            if mat[i][col] != 0:
                q = mat[i][col]
                mat[i] = [x * p - y * q for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def is_unimodular_basis(vs: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors form a lattice basis (integer determinant +-1)."""
    vecs = [as_vector(v) for v in vs]
    n = len(vecs)
    if any(len(v) != n for v in vecs):
        raise InputError("vector length mismatch", ["bad-shape"])
    return abs(det(vecs)) == 1


def coords_in_basis(v: Sequence[int], basis: "Basis | Sequence[Sequence[int]]") -> IntVector:
    """Integer coordinates of ``v`` in a unimodular basis (Cramer's rule).

    Unimodularity makes every coordinate an exact integer.
    """
    vecs = basis.vectors if isinstance(basis, Basis) else tuple(as_vector(b) for b in basis)
    vec = as_vector(v)
    n = len(vecs)
    if len(vec) != n or any(len(b) != n for b in vecs):
        raise InputError("vector length mismatch", ["bad-shape"])
    # columns of the change-of-basis matrix are the basis vectors
    d = det([[vecs[j][i] for j in range(n)] for i in range(n)])
    if abs(d) != 1:
        raise InputError("basis is not unimodular", ["not-unimodular"])
    coords = []
    for j in range(n):
        rows = [[vec[i] if jj == j else vecs[jj][i] for jj in range(n)] for i in range(n)]
        coords.append(det(rows) * d)  # d in {+1,-1}, so division by d is multiplication
    return tuple(coords)


@dataclass(frozen=True)
class Basis:
    """A unimodular basis of the ambient lattice; validated on construction."""

    vectors: tuple[IntVector, ...]

    def __init__(self, vectors: Iterable[Iterable[int]]):
        vecs = tuple(as_vector(v) for v in vectors)
        if not is_unimodular_basis(vecs):
            raise InputError("basis is not unimodular", ["not-unimodular"])
        object.__setattr__(self, "vectors", vecs)

    @property
    def n(self) -> int:
        return len(self.vectors)
