"""Regular unipotent subgroups acting with an open orbit, and their structure.

A regular unipotent subgroup of the automorphism group is determined by its
set of roots, a subset ``M`` of the positive roots whose level ``M_i`` is
*saturated* with respect to the higher levels: whenever ``a`` in ``M_i`` and
``b`` in some ``M_j`` with ``j > i`` have a root sum, that sum (which lands
back on level ``i``) must already lie in ``M``.  The subgroup has an open
orbit exactly when ``M`` contains every basic root, and its dimension is the
number of roots in ``M``.

This module enumerates all such subgroups, computes the abstract shape of
the maximal unipotent subgroup as an iterated semidirect product of
triangular blocks, and derives centers, central series, derived series,
nilpotency class and derived length from a directed graph on the roots:
there is an arrow ``a -> a+e`` whenever ``a``, ``e`` and ``a+e`` all lie in
``M``.  The graph is acyclic; the k-th lower central term is spanned by the
roots reached by paths of length ``k``, the k-th upper central term by the
roots from which every path is shorter than ``k``, and passing from a root
set to the arrow targets computes derived subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    InputError,
    InvariantViolation,
    NoOpenOrbitError,
    NotTypeIError,
    ResultCapError,
)
from .fan import RayMatrix
from .lattice import IntVector
from .roots import (
    DemazureRoot,
    KIND_BASIC,
    column_preorder,
    demazure_roots,
    positive_roots,
    root_ray,
)

#: Default cap on the number of subgroups emitted by the enumeration.
MAX_ENUMERATION_RESULTS = 200_000

RootsLike = Union["RootSet", Iterable[DemazureRoot]]


@dataclass(frozen=True)
class RootSet:
    """A set of positive roots, partitioned by ray level."""

    n: int
    roots: tuple[DemazureRoot, ...]

    @classmethod
    def of(cls, n: int, roots: Iterable[DemazureRoot]) -> "RootSet":
        return cls(n=n, roots=tuple(sorted(set(roots))))

    @property
    def coords(self) -> frozenset[IntVector]:
        cached = self.__dict__.get("_coords")
        if cached is None:
            cached = frozenset(r.coords for r in self.roots)
            self.__dict__["_coords"] = cached
        return cached

    @property
    def levels(self) -> tuple[tuple[DemazureRoot, ...], ...]:
        return tuple(
            tuple(r for r in self.roots if r.ray == i) for i in range(self.n)
        )

    @property
    def dimension(self) -> int:
        return len(self.roots)

    def __contains__(self, item) -> bool:
        coords = item.coords if isinstance(item, DemazureRoot) else tuple(item)
        return coords in self.coords

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def sort_key(self) -> tuple:
        return (self.dimension, tuple(r.coords for r in self.roots))


def _as_rootset(A: RayMatrix, M: RootsLike) -> RootSet:
    if isinstance(M, RootSet):
        rs = M
    else:
        rs = RootSet.of(A.n, M)
    pos = positive_roots(A)
    allowed = {r.coords for level in pos for r in level}
    for r in rs.roots:
        if r.coords not in allowed:
            raise InputError(f"element not in the positive roots: {r.coords}")
    return rs


def is_saturated(
    A: RayMatrix, M: RootsLike
) -> tuple[bool, Optional[tuple[IntVector, IntVector, IntVector]]]:
    """Saturation test; on failure returns the violating triple (a, b, a+b)."""
    rs = _as_rootset(A, M)
    members = rs.coords
    levels = rs.levels
    for i in range(A.n):
        higher = [b for j in range(i + 1, A.n) for b in levels[j]]
        for a in levels[i]:
            for b in higher:
                s = tuple(x + y for x, y in zip(a.coords, b.coords))
                if root_ray(A, s) is not None and s not in members:
                    return False, (a.coords, b.coords, s)
    return True, None


def saturation_closure(A: RayMatrix, M: RootsLike) -> RootSet:
    """Smallest saturated superset: repeatedly add root sums ``a + b`` with
    ``b`` on a strictly higher level.  Well-defined because the saturation
    condition is closure under such sums, so saturated supersets intersect
    to a saturated set; terminates inside the finite positive root set."""
    rs = _as_rootset(A, M)
    system = demazure_roots(A)
    current = set(rs.roots)
    changed = True
    while changed:
        changed = False
        snapshot = sorted(current)
        for a in snapshot:
            for b in snapshot:
                if b.ray <= a.ray:
                    continue
                s = tuple(x + y for x, y in zip(a.coords, b.coords))
                root = system.find(s)
                if root is not None and root not in current:
                    current.add(root)
                    changed = True
    return RootSet.of(A.n, current)


def has_open_orbit(M: RootSet) -> bool:
    """True iff every basic root belongs to ``M``."""
    basics = [tuple(-1 if j == i else 0 for j in range(M.n)) for i in range(M.n)]
    return all(b in M.coords for b in basics)


@dataclass(frozen=True)
class EnumerationResult:
    subgroups: tuple[RootSet, ...]
    histogram: tuple[tuple[int, int], ...]  # (dimension, count), ascending
    complete: bool = True

    @property
    def count(self) -> int:
        return len(self.subgroups)


def enumerate_open_orbit_subgroups(
    A: RayMatrix, max_results: int = MAX_ENUMERATION_RESULTS
) -> EnumerationResult:
    """All saturated subsets of the positive roots containing every basic root.

    Levels are fixed from the top down: level ``n-1`` is forced, and at level
    ``i`` every subset of the positive roots containing the basic root and
    saturated with respect to the already-chosen higher levels is tried.
    Output is sorted by (dimension, root list).  Exceeding ``max_results``
    raises ``ResultCapError`` carrying the partial output.
    """
    pos = positive_roots(A)
    n = A.n
    system = demazure_roots(A)

    def level_ok(candidate: Sequence[DemazureRoot], higher: Sequence[DemazureRoot]) -> bool:
        chosen = {r.coords for r in candidate}
        for a in candidate:
            for b in higher:
                s = tuple(x + y for x, y in zip(a.coords, b.coords))
                if system.find(s) is not None and s not in chosen:
                    return False
        return True

    results: list[RootSet] = []

    def descend(i: int, picked: list[tuple[DemazureRoot, ...]], higher: list[DemazureRoot]):
        if i < 0:
            if len(results) >= max_results:
                raise ResultCapError(
                    f"enumeration cap of {max_results} subgroups exceeded",
                    partial=_finish_enumeration(results, complete=False),
                )
            results.append(RootSet.of(n, [r for lev in picked for r in lev]))
            return
        basic = next(r for r in pos[i] if r.kind == KIND_BASIC)
        optional = [r for r in pos[i] if r is not basic]
        for mask in range(1 << len(optional)):
            candidate = (basic,) + tuple(
                r for bit, r in enumerate(optional) if mask >> bit & 1
            )
            if level_ok(candidate, higher):
                descend(i - 1, picked + [candidate], higher + list(candidate))

    descend(n - 1, [], [])
    return _finish_enumeration(results, complete=True)


def _finish_enumeration(results: list[RootSet], complete: bool) -> EnumerationResult:
    ordered = tuple(sorted(results, key=RootSet.sort_key))
    hist: dict[int, int] = {}
    for rs in ordered:
        hist[rs.dimension] = hist.get(rs.dimension, 0) + 1
    return EnumerationResult(
        subgroups=ordered,
        histogram=tuple(sorted(hist.items())),
        complete=complete,
    )


# ---------------------------------------------------------------------------
# abstract group shapes


@dataclass(frozen=True)
class AbelianPower:
    """The vector group G_a^d (trivial when d = 0)."""

    power: int

    def display(self) -> str:
        if self.power == 0:
            return "1"
        if self.power == 1:
            return "G_a"
        return f"G_a^{self.power}"


@dataclass(frozen=True)
class TriangularBlock:
    """Unitriangular k x k matrices vanishing above the diagonal outside the
    first l rows; the full unitriangular group when l = k - 1."""

    k: int
    l: int

    def display(self) -> str:
        if self.l == self.k - 1:
            return f"U_{self.k}"
        return f"U_{{{self.k},{self.l}}}"


@dataclass(frozen=True)
class Semidirect:
    """Left-nested chain (((f0 |x f1) |x f2) ... ); each prefix acts on the
    next factor, so the innermost factor acts on everything after it."""

    factors: tuple["GroupShape", ...]

    def display(self) -> str:
        out = self.factors[0].display()
        for nxt in self.factors[1:]:
            left = f"({out})" if " " in out else out
            out = f"{left} ⋉ {nxt.display()}"
        return out


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple["GroupShape", ...]

    def display(self) -> str:
        return " × ".join(f.display() for f in self.factors)


GroupShape = Union[AbelianPower, TriangularBlock, Semidirect, DirectProduct]


def block(k: int, l: int) -> GroupShape:
    """U_{k,l} in normal form: U_{k,1} is the vector group G_a^{k-1}."""
    if not k > l >= 1:
        raise InputError(f"triangular block needs k > l >= 1, got k={k}, l={l}")
    if l == 1:
        return AbelianPower(k - 1)
    return TriangularBlock(k, l)


def full_unitriangular(k: int) -> GroupShape:
    """U_k: trivial for k <= 1, G_a for k = 2, a block otherwise."""
    if k <= 1:
        return AbelianPower(0)
    return block(k, k - 1)


def _chain(factors: Sequence[GroupShape]) -> GroupShape:
    return factors[0] if len(factors) == 1 else Semidirect(tuple(factors))


@dataclass(frozen=True)
class UmaxReport:
    """Shape of the maximal unipotent subgroup.

    ``shape`` nests one triangular block per column class (last class acting
    first); ``per_ray_shape`` is the refinement with one vector-group factor
    per ray level.
    """

    shape: GroupShape
    per_ray_shape: GroupShape
    classes: tuple[tuple[int, ...], ...]
    block_sizes: tuple[tuple[int, int], ...]  # (k_s, l_s) per class


def umax_shape(A: RayMatrix) -> UmaxReport:
    pos = positive_roots(A)
    pre = column_preorder(A)
    blocks = []
    sizes = []
    for cls in pre.classes:
        k = len(pos[cls[0]]) + 1
        l = len(cls)
        sizes.append((k, l))
        blocks.append(block(k, l))
    shape = _chain(list(reversed(blocks)))
    per_ray = _chain([AbelianPower(len(pos[i])) for i in range(A.n - 1, -1, -1)])
    return UmaxReport(
        shape=shape,
        per_ray_shape=per_ray,
        classes=pre.classes,
        block_sizes=tuple(sizes),
    )


@dataclass(frozen=True)
class UssReport:
    """Maximal unipotent subgroup of the reductive part: a direct product of
    one unitriangular group per column class, plus the number of simple
    components of the reductive part."""

    shape: GroupShape
    factors: tuple[GroupShape, ...]
    simple_components: int


def uss_shape(A: RayMatrix) -> UssReport:
    system = demazure_roots(A)
    pos = positive_roots(A)
    pre = column_preorder(A)
    factors = []
    simple = 0
    for cls in pre.classes:
        class_roots = [r for i in cls for r in system.by_ray[i]]
        all_semisimple = all(r.semisimple for r in class_roots)
        k = len(pos[cls[0]]) + 1
        l = len(cls)
        if all_semisimple and k != l + 1:
            raise InvariantViolation("all-semisimple class must have k = l + 1")
        factors.append(full_unitriangular(k if all_semisimple else l))
        basic = next(r for r in system.by_ray[cls[0]] if r.kind == KIND_BASIC)
        if len(cls) >= 2 or basic.semisimple:
            simple += 1
    shape = factors[0] if len(factors) == 1 else DirectProduct(tuple(factors))
    return UssReport(shape=shape, factors=tuple(factors), simple_components=simple)


# ---------------------------------------------------------------------------
# centers, root graph, series


@dataclass(frozen=True)
class CenterReport:
    indices: tuple[int, ...]
    roots: RootSet


def center(M: RootsLike, A: RayMatrix) -> CenterReport:
    """Center of the subgroup with root set ``M`` (open orbit required):
    the product of the basic root subgroups at indices whose pairing with
    every root of ``M`` is non-positive."""
    rs = _as_rootset(A, M)
    if not has_open_orbit(rs):
        raise NoOpenOrbitError(
            "center formula needs an open orbit; use liealg.lie_center as the oracle"
        )
    indices = tuple(
        i for i in range(A.n) if all(r.coords[i] <= 0 for r in rs.roots)
    )
    system = demazure_roots(A)
    center_roots = RootSet.of(
        A.n,
        [
            system.find(tuple(-1 if j == i else 0 for j in range(A.n)))
            for i in indices
        ],
    )
    full_positive = frozenset(
        r.coords for level in positive_roots(A) for r in level
    )
    if rs.coords == full_positive:
        # for U_max the center indices are the smallest members of the
        # maximal column classes; verify
        pre = column_preorder(A)
        expected = tuple(sorted(cls[0] for cls in pre.maximal_classes()))
        if expected != indices:
            raise InvariantViolation(
                f"center indices {indices} disagree with maximal classes {expected}"
            )
    return CenterReport(indices=indices, roots=center_roots)


@dataclass(frozen=True)
class Arrow:
    source: DemazureRoot
    target: DemazureRoot
    label: DemazureRoot

    @property
    def inner(self) -> bool:
        return self.source.ray == self.target.ray


@dataclass(frozen=True)
class RootGraph:
    vertices: tuple[DemazureRoot, ...]
    arrows: tuple[Arrow, ...]

    def out_arrows(self, v: DemazureRoot) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.source == v)

    def in_arrows(self, v: DemazureRoot) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.target == v)

    def inner_subgraph(self) -> "RootGraph":
        return RootGraph(self.vertices, tuple(a for a in self.arrows if a.inner))


def root_graph(M: RootSet) -> RootGraph:
    """Directed graph with an arrow ``a -> a+e`` for every pair of roots of
    ``M`` whose sum is again in ``M``; asserts acyclicity."""
    index = {r.coords: r for r in M.roots}
    arrows = []
    for a in M.roots:
        for b in M.roots:
            diff = tuple(x - y for x, y in zip(b.coords, a.coords))
            label = index.get(diff)
            if label is not None:
                arrows.append(Arrow(source=a, target=b, label=label))
    graph = RootGraph(vertices=M.roots, arrows=tuple(sorted(
        arrows, key=lambda ar: (ar.source.coords, ar.target.coords)
    )))
    _topological_order(graph)  # raises on a cycle
    return graph


def _topological_order(graph: RootGraph) -> list[DemazureRoot]:
    indeg = {v: 0 for v in graph.vertices}
    for a in graph.arrows:
        indeg[a.target] += 1
    ready = sorted((v for v, d in indeg.items() if d == 0))
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a in graph.arrows:
            if a.source == v:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
    if len(order) != len(graph.vertices):
        raise InvariantViolation("root graph has a cycle")
    return order


def longest_path_length(graph: RootGraph) -> int:
    order = _topological_order(graph)
    longest_to = {v: 0 for v in graph.vertices}
    for v in order:
        for a in graph.arrows:
            if a.source == v:
                longest_to[a.target] = max(longest_to[a.target], longest_to[v] + 1)
    return max(longest_to.values(), default=0)


def _ascend_sets(M: RootSet, graph: RootGraph, steps: int) -> list[frozenset[IntVector]]:
    # k-th set: roots reached by a path of length exactly k
    sets = [frozenset(M.coords)]
    for _ in range(steps):
        prev = sets[-1]
        sets.append(frozenset(a.target.coords for a in graph.arrows if a.source.coords in prev))
    return sets


def _descend_sets(M: RootSet, graph: RootGraph, steps: int) -> list[frozenset[IntVector]]:
    # k-th set: roots from which every outgoing path has length < k
    order = _topological_order(graph)
    longest_from = {v.coords: 0 for v in graph.vertices}
    for v in reversed(order):
        for a in graph.arrows:
            if a.source == v:
                longest_from[v.coords] = max(
                    longest_from[v.coords], longest_from[a.target.coords] + 1
                )
    return [
        frozenset(c for c, lp in longest_from.items() if lp < k)
        for k in range(steps + 1)
    ]


@dataclass(frozen=True)
class SeriesReport:
    lower: tuple[RootSet, ...]
    upper: tuple[RootSet, ...]
    derived: tuple[RootSet, ...]
    nilpotency_class: int
    derived_length: int
    longest_path: int
    center_indices: Optional[tuple[int, ...]]


def series_report(M: RootSet) -> SeriesReport:
    """Lower/upper central series and derived series of the subgroup with
    saturated root set ``M``, via its root graph.

    The derived series recomputes the graph on each successive root set; the
    central series use the graph of ``M`` itself.
    """
    graph = root_graph(M)
    l = longest_path_length(graph)
    index = {r.coords: r for r in M.roots}

    def to_rootset(coords: frozenset[IntVector]) -> RootSet:
        return RootSet.of(M.n, [index[c] for c in coords])

    lower = tuple(to_rootset(s) for s in _ascend_sets(M, graph, l + 1))
    upper = tuple(to_rootset(s) for s in _descend_sets(M, graph, l + 1))

    derived_sets = [M]
    while derived_sets[-1].roots:
        g = root_graph(derived_sets[-1])
        nxt = frozenset(a.target.coords for a in g.arrows)
        derived_sets.append(to_rootset(nxt))
        if len(derived_sets) > len(M.roots) + 2:
            raise InvariantViolation("derived series did not terminate")

    center_indices = None
    if has_open_orbit(M):
        center_indices = tuple(
            i for i in range(M.n) if all(r.coords[i] <= 0 for r in M.roots)
        )

    return SeriesReport(
        lower=lower,
        upper=upper,
        derived=tuple(derived_sets),
        nilpotency_class=l + 1 if M.roots else 0,
        derived_length=len(derived_sets) - 1,
        longest_path=l,
        center_indices=center_indices,
    )


TYPE_I = "I"
TYPE_II = "II"


def variety_type(A: RayMatrix) -> str:
    """Type I when the maximal unipotent subgroup is commutative, i.e. when
    the root graph on the positive roots has no arrow."""
    pos = positive_roots(A)
    M = RootSet.of(A.n, [r for level in pos for r in level])
    return TYPE_I if not root_graph(M).arrows else TYPE_II


@dataclass(frozen=True)
class SplitReport:
    b: int
    remaining: Optional[RayMatrix]
    removed_columns: tuple[int, ...]
    removed_rows: tuple[int, ...]


def split_projective_lines(A: RayMatrix) -> SplitReport:
    """Factor off projective lines from a Type I variety.

    A column that is a unit vector whose matching row is also a unit vector
    contributes one projective-line factor; removing those rows and columns
    leaves the ray matrix of the complement, which has no detached roots.
    """
    if variety_type(A) != TYPE_I:
        raise NotTypeIError("projective-line splitting needs a commutative U_max (Type I)")
    cols = A.columns
    removed_cols = []
    removed_rows = []
    for i, col in enumerate(cols):
        if sum(col) == 1 and max(col) == 1:
            k = col.index(1)
            if all(A.rows[k][j] == (1 if j == i else 0) for j in range(A.n)):
                removed_cols.append(i)
                removed_rows.append(k)
    keep_cols = [j for j in range(A.n) if j not in removed_cols]
    keep_rows = [k for k in range(len(A.rows)) if k not in removed_rows]
    if not keep_cols:
        remaining = None
    else:
        rows = [tuple(A.rows[k][j] for j in keep_cols) for k in keep_rows]
        remaining = RayMatrix.validate(rows, len(keep_cols))
    return SplitReport(
        b=len(removed_cols),
        remaining=remaining,
        removed_columns=tuple(removed_cols),
        removed_rows=tuple(removed_rows),
    )
