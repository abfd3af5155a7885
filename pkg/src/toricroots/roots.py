"""Demazure roots of a bilateral fan, from its ray matrix.

A Demazure root of a fan with primitive ray generators ``p_1,...,p_m`` is a
character ``e`` with ``<e, p_l> = -1`` for exactly one ray ``l`` and
``<e, p_s> >= 0`` for every other ray.  For a bilateral fan all roots are
determined by the ray matrix ``A`` alone:

* every root attached to a basis ray ``i`` has the form
  ``e = -q_i + sum_j b_j q_j`` with ``b_j >= 0`` in the dual basis, and is a
  root iff ``-A e >= 0`` entrywise;
* a root attached to a non-basis ray exists iff some column of ``A`` is a
  standard unit vector, and then equals the corresponding ``q_i``.

Roots are classified as *basic* (``-q_i``), *elementary* (``-q_i + q_j``),
*special* (all other roots on basis rays; always unipotent) or *detached*
(on non-basis rays; always semisimple).  A root is *semisimple* when its
negative is also a root.

The entrywise order on columns of ``A`` drives everything downstream:
``i >= j`` iff column ``v_i >= v_j``, and equal columns form equivalence
classes.  After permuting columns so the classes are consecutive segments in
non-increasing order (the *canonical* order), the positive roots are exactly
the roots supported above their own index; they are the roots of a chosen
maximal unipotent subgroup of the automorphism group.

Coordinates, ray indices and column indices are 0-based throughout the
library; the CLI serializers shift them to 1-based for reports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import InvariantViolation, NotCanonicalError
from .fan import RayMatrix
from .lattice import IntVector

KIND_BASIC = "basic"
KIND_ELEMENTARY = "elementary"
KIND_SPECIAL = "special"
KIND_DETACHED = "detached"


@dataclass(frozen=True, order=True)
class DemazureRoot:
    """A single Demazure root: dual-basis coordinates plus classification."""

    ray: int
    coords: IntVector
    kind: str
    semisimple: bool

    @property
    def parity(self) -> str:
        return "semisimple" if self.semisimple else "unipotent"

    def display(self) -> str:
        """Human notation like ``-q1+2q3`` (1-based subscripts)."""
        parts = []
        for j, c in enumerate(self.coords):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(("-" if c < 0 else "+") + mag + f"q{j + 1}")
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


def _classify(coords: IntVector, ray: int, n: int) -> str:
    if ray >= n:
        return KIND_DETACHED
    nonzero = [(j, c) for j, c in enumerate(coords) if c != 0]
    if nonzero == [(ray, -1)]:
        return KIND_BASIC
    if len(nonzero) == 2 and (ray, -1) in nonzero and any(c == 1 for _, c in nonzero):
        return KIND_ELEMENTARY
    return KIND_SPECIAL


@dataclass(frozen=True)
class RootSystem:
    """All Demazure roots of a ray matrix, grouped by ray."""

    matrix: RayMatrix
    roots: tuple[DemazureRoot, ...]
    by_ray: tuple[tuple[DemazureRoot, ...], ...]

    def find(self, coords: IntVector) -> Optional[DemazureRoot]:
        return self._index.get(tuple(coords))

    @property
    def _index(self) -> dict[IntVector, DemazureRoot]:
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {r.coords: r for r in self.roots}
            self.__dict__["_index_cache"] = cached
        return cached

    @property
    def semisimple_roots(self) -> tuple[DemazureRoot, ...]:
        return tuple(r for r in self.roots if r.semisimple)

    @property
    def unipotent_roots(self) -> tuple[DemazureRoot, ...]:
        return tuple(r for r in self.roots if not r.semisimple)


def root_ray(A: RayMatrix, coords: IntVector) -> Optional[int]:
    """Ray index when ``coords`` is a Demazure root of ``A``, else ``None``.

    This is the literal definition (one pairing equal to -1, the rest
    non-negative) checked against all m rays, so it is independent of the
    box enumeration below and doubles as its soundness oracle.
    """
    ray = None
    for l, value in enumerate(A.pairings(tuple(coords))):
        if value == -1:
            if ray is not None:
                return None
            ray = l
        elif value < 0:
            return None
    return ray


@lru_cache(maxsize=256)
def demazure_roots(A: RayMatrix) -> RootSystem:
    """Enumerate every Demazure root of ``A``.

    Roots on basis ray ``i`` are found by scanning the box
    ``0 <= b_j <= max_k a_{ki}``: the bound is valid because ``-A e >= 0``
    forces ``b_j * a_{kj} <= a_{ki}`` for every row ``k``, and each column has
    a positive entry.  Detached roots come from the unit-column test.
    """
    n, m = A.n, A.m
    cols = A.columns
    found: list[tuple[int, IntVector]] = []
    for i in range(n):
        bound = max(cols[i])
        others = [j for j in range(n) if j != i]
        for bs in itertools.product(range(bound + 1), repeat=n - 1):
            e = [0] * n
            e[i] = -1
            for j, b in zip(others, bs):
                e[j] = b
            residual_ok = True
            for row in A.rows:
                if -sum(a * x for a, x in zip(row, e)) < 0:
                    residual_ok = False
                    break
            if residual_ok:
                found.append((i, tuple(e)))
    for i in range(n):
        col = cols[i]
        if sum(col) == 1 and max(col) == 1:
            k = col.index(1)
            e = tuple(1 if j == i else 0 for j in range(n))
            found.append((n + k, e))

    coords_set = {e for _, e in found}
    roots = []
    for ray, e in found:
        neg = tuple(-x for x in e)
        roots.append(
            DemazureRoot(
                ray=ray,
                coords=e,
                kind=_classify(e, ray, n),
                semisimple=neg in coords_set,
            )
        )
    roots.sort()
    by_ray = tuple(tuple(r for r in roots if r.ray == l) for l in range(m))
    system = RootSystem(matrix=A, roots=tuple(roots), by_ray=by_ray)
    for i in range(n):
        if not any(r.kind == KIND_BASIC for r in by_ray[i]):
            raise InvariantViolation(f"basic root missing on ray {i}")
    return system


@dataclass(frozen=True)
class ColumnPreorder:
    """Entrywise preorder on the columns of a ray matrix.

    ``geq[i][j]`` is ``v_i >= v_j``; ``classes`` partitions the column
    indices into groups of equal columns, listed by smallest member.
    """

    n: int
    geq: tuple[tuple[bool, ...], ...]
    classes: tuple[tuple[int, ...], ...]

    def dominates(self, i: int, j: int) -> bool:
        return self.geq[i][j]

    def equivalent(self, i: int, j: int) -> bool:
        return self.geq[i][j] and self.geq[j][i]

    def strictly_dominates(self, i: int, j: int) -> bool:
        return self.geq[i][j] and not self.geq[j][i]

    def comparable(self, i: int, j: int) -> bool:
        return self.geq[i][j] or self.geq[j][i]

    def class_of(self, i: int) -> tuple[int, ...]:
        for cls in self.classes:
            if i in cls:
                return cls
        raise IndexError(i)

    @property
    def segments_ok(self) -> bool:
        """True when each class is a consecutive run of indices."""
        return all(cls[-1] - cls[0] + 1 == len(cls) for cls in self.classes)

    @property
    def cuts(self) -> Optional[tuple[int, ...]]:
        """Cumulative class boundaries ``0 = c_0 < ... < c_r = n`` when the
        classes are consecutive segments in stored order, else ``None``."""
        if not self.segments_ok:
            return None
        out = [0]
        for cls in self.classes:
            if cls[0] != out[-1]:
                return None
            out.append(cls[-1] + 1)
        return tuple(out) if out[-1] == self.n else None

    def maximal_classes(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for cls in self.classes:
            rep = cls[0]
            if not any(
                self.strictly_dominates(other[0], rep)
                for other in self.classes
                if other is not cls
            ):
                out.append(cls)
        return tuple(out)


def column_preorder(A: RayMatrix) -> ColumnPreorder:
    cols = A.columns
    n = A.n
    geq = tuple(
        tuple(all(x >= y for x, y in zip(cols[i], cols[j])) for j in range(n))
        for i in range(n)
    )
    seen: dict[IntVector, list[int]] = {}
    for i, col in enumerate(cols):
        seen.setdefault(col, []).append(i)
    classes = tuple(sorted((tuple(v) for v in seen.values()), key=lambda c: c[0]))
    return ColumnPreorder(n=n, geq=geq, classes=classes)


def satisfies_canonical_condition(A: RayMatrix) -> bool:
    """True when equal columns form consecutive segments and no later class
    strictly dominates an earlier one."""
    pre = column_preorder(A)
    if not pre.segments_ok:
        return False
    reps = [cls[0] for cls in pre.classes]
    for s, rs in enumerate(reps):
        for rt in reps[s + 1:]:
            if pre.strictly_dominates(rt, rs):
                return False
    return True


def canonical_reorder(A: RayMatrix) -> tuple[tuple[int, ...], RayMatrix]:
    """Column permutation realizing the canonical order, and the new matrix.

    A matrix that already satisfies the canonical condition is returned
    unchanged with the identity permutation.  Otherwise classes are ordered
    topologically (dominating classes first); incomparable ties are broken by
    class size descending, then by lexicographically smallest column.  The
    permutation maps new column position to old column index.
    """
    if satisfies_canonical_condition(A):
        return tuple(range(A.n)), A
    pre = column_preorder(A)
    cols = A.columns
    remaining = list(pre.classes)
    ordered: list[tuple[int, ...]] = []
    while remaining:
        maximal = [
            cls
            for cls in remaining
            if not any(
                pre.strictly_dominates(other[0], cls[0])
                for other in remaining
                if other is not cls
            )
        ]
        best = min(maximal, key=lambda c: (-len(c), cols[c[0]]))
        ordered.append(best)
        remaining.remove(best)
    perm = tuple(i for cls in ordered for i in cls)
    rows = tuple(tuple(row[old] for old in perm) for row in A.rows)
    return perm, RayMatrix.validate(rows, A.n)


def is_positive_form(coords: IntVector, ray: int) -> bool:
    """Support-above-the-ray shape characterizing roots of U_max."""
    return (
        coords[ray] == -1
        and all(c == 0 for c in coords[:ray])
        and all(c >= 0 for c in coords[ray + 1:])
    )


def positive_root_ray(A: RayMatrix, coords: IntVector) -> Optional[int]:
    """Ray index when ``coords`` is a positive root of canonical ``A``."""
    ray = root_ray(A, coords)
    if ray is None or ray >= A.n or not is_positive_form(coords, ray):
        return None
    return ray


@lru_cache(maxsize=256)
def positive_roots(A: RayMatrix) -> tuple[tuple[DemazureRoot, ...], ...]:
    """The positive roots of ``A``, partitioned by basis ray.

    Requires canonical column order: positivity is read off as support
    strictly above the root's own index.  The last level is always the
    single basic root.
    """
    if not satisfies_canonical_condition(A):
        raise NotCanonicalError(
            "ray matrix is not in canonical column order; apply canonical_reorder first"
        )
    system = demazure_roots(A)
    levels = tuple(
        tuple(r for r in system.by_ray[i] if is_positive_form(r.coords, i))
        for i in range(A.n)
    )
    last = levels[A.n - 1]
    if len(last) != 1 or last[0].kind != KIND_BASIC:
        raise InvariantViolation("last positive level must be exactly the basic root")
    return levels


def basic_root(A: RayMatrix, i: int) -> DemazureRoot:
    for r in demazure_roots(A).by_ray[i]:
        if r.kind == KIND_BASIC:
            return r
    raise InvariantViolation(f"basic root missing on ray {i}")
