"""Concrete model of root subgroups as substitution automorphisms of the Cox
coordinates ``x1..xm``.

The one-parameter subgroup of a positive root ``e`` on ray ``l`` sends
``x_l`` to ``x_l + alpha * x^{theta(e)}`` and fixes the other coordinates,
where ``theta(e)`` collects the pairings of ``e`` with all rays (zero in
position ``l``).  Because ``theta(e)`` does not involve ``x_l``, the
exponential truncates after one step and every image is an exact polynomial.

Composition follows matrix order: ``compose(g, h)`` substitutes ``h``'s
images into ``g``'s, so a product written multiplicatively as ``g h`` is
``compose(g, h)`` here.  All identities are verified symbolically, with the
group parameters as extra polynomial variables, which proves them as
polynomial identities rather than sampling them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Union

from .errors import InputError, InvariantViolation
from .fan import RayMatrix
from .lattice import IntVector
from .poly import Poly, PolyRing
from .roots import (
    DemazureRoot,
    KIND_ELEMENTARY,
    column_preorder,
    demazure_roots,
    is_positive_form,
    positive_roots,
    root_ray,
)

ScalarLike = Union[int, Fraction, Poly]


def ring_for(A: RayMatrix, params: tuple[str, ...] = ("a", "b"), degree_cap: int = 64) -> PolyRing:
    return PolyRing(num_coords=A.m, params=params, degree_cap=degree_cap)


@dataclass(frozen=True)
class PolyAutomorphism:
    """Substitution endomorphism given by the images of all coordinates."""

    ring: PolyRing
    images: tuple[Poly, ...]

    @classmethod
    def identity(cls, ring: PolyRing) -> "PolyAutomorphism":
        return cls(ring, tuple(ring.var(i) for i in range(ring.num_coords)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyAutomorphism):
            return NotImplemented
        return self.ring == other.ring and self.images == other.images


def theta(A: RayMatrix, root: DemazureRoot) -> tuple[int, ...]:
    """Exponent vector of the root monomial: all pairings, zeroed at the ray."""
    exps = list(A.pairings(root.coords))
    exps[root.ray] = 0
    if any(e < 0 for e in exps):
        raise InvariantViolation(f"negative exponent in theta({root.coords})")
    return tuple(exps)


def root_automorphism(
    A: RayMatrix, root: DemazureRoot, alpha: ScalarLike, ring: Optional[PolyRing] = None
) -> PolyAutomorphism:
    """The automorphism ``x_l -> x_l + alpha * x^{theta}`` of a positive root."""
    if ring is None:
        ring = ring_for(A)
    if root.ray >= A.n or not is_positive_form(root.coords, root.ray):
        raise InputError(f"only positive roots are modelled, got {root.coords}")
    if root_ray(A, root.coords) != root.ray:
        raise InputError(f"not a root of this ray matrix: {root.coords}")
    scale = alpha if isinstance(alpha, Poly) else ring.const(alpha)
    images = list(PolyAutomorphism.identity(ring).images)
    images[root.ray] = images[root.ray] + scale * ring.monomial(theta(A, root))
    return PolyAutomorphism(ring, tuple(images))


def compose(g: PolyAutomorphism, h: PolyAutomorphism) -> PolyAutomorphism:
    """Substitution composition: ``h``'s images replace the variables inside
    ``g``'s images, matching the matrix product ``g h``."""
    if g.ring != h.ring:
        raise InputError("automorphisms live in different rings")
    return PolyAutomorphism(g.ring, tuple(img.substitute(h.images) for img in g.images))


def product(autos: Sequence[PolyAutomorphism]) -> PolyAutomorphism:
    if not autos:
        raise InputError("empty product")
    out = autos[0]
    for nxt in autos[1:]:
        out = compose(out, nxt)
    return out


def _root_obj(A: RayMatrix, coords: IntVector) -> DemazureRoot:
    obj = demazure_roots(A).find(tuple(coords))
    if obj is None:
        raise InvariantViolation(f"{coords} is not a root")
    return obj


def verify_conjugation(
    A: RayMatrix,
    e: DemazureRoot,
    f: DemazureRoot,
    alpha: Optional[ScalarLike] = None,
    beta: Optional[ScalarLike] = None,
    ring: Optional[PolyRing] = None,
) -> bool:
    """Check the conjugation identity for ``e`` on a lower level than ``f``:

    u_f(beta)^-1 u_e(alpha) u_f(beta)
        = prod_{k=0..d} u_{e+k f}(C(d,k) alpha beta^k),  d = <e, p_{ray f}>.

    With symbolic parameters (the default) this is a polynomial identity.
    """
    if ring is None:
        ring = ring_for(A)
    if not f.ray > e.ray:
        raise InputError("conjugating root must live on a strictly higher level")
    a = ring.param("a") if alpha is None else alpha
    b = ring.param("b") if beta is None else beta
    d = e.coords[f.ray]
    lhs = product(
        [
            root_automorphism(A, f, -(b if isinstance(b, Poly) else ring.const(b)), ring),
            root_automorphism(A, e, a, ring),
            root_automorphism(A, f, b, ring),
        ]
    )
    factors = []
    for k in range(d + 1):
        coords = tuple(x + k * y for x, y in zip(e.coords, f.coords))
        coeff_scalar = (b if isinstance(b, Poly) else ring.const(b)) ** k
        coeff = (a if isinstance(a, Poly) else ring.const(a)) * coeff_scalar * comb(d, k)
        factors.append(root_automorphism(A, _root_obj(A, coords), coeff, ring))
    return lhs == product(factors)


def first_order_commutator_matches_bracket(
    A: RayMatrix, e: DemazureRoot, f: DemazureRoot, ring: Optional[PolyRing] = None
) -> bool:
    """The coefficient of ``s t`` on the root monomial of ``e+f`` in the group
    commutator ``u_f(t)^-1 u_e(s)^-1 u_f(t) u_e(s)`` must equal the bracket
    coefficient of the derivations (``-d`` for ``e`` below ``f``)."""
    from . import liealg

    if ring is None or ring.params != ("s", "t"):
        ring = ring_for(A, params=("s", "t"))
    s, t = ring.param("s"), ring.param("t")
    word = product(
        [
            root_automorphism(A, f, -t, ring),
            root_automorphism(A, e, -s, ring),
            root_automorphism(A, f, t, ring),
            root_automorphism(A, e, s, ring),
        ]
    )
    hit = liealg.bracket(e, f, A)
    identity = PolyAutomorphism.identity(ring)
    if hit is None:
        return word == identity
    coef, g = hit
    mono = theta(A, g) + (1, 1)  # x^{theta(g)} * s * t
    return word.images[g.ray].coefficient(mono) == coef


def monomial_support_is_root_aligned(
    A: RayMatrix, roots: Sequence[DemazureRoot], word: PolyAutomorphism
) -> bool:
    """Every non-identity monomial in the image of ``x_i`` must be the root
    monomial of some root of the given set on ray ``i``."""
    allowed_by_ray: dict[int, set[tuple[int, ...]]] = {}
    for r in roots:
        allowed_by_ray.setdefault(r.ray, set()).add(theta(A, r))
    for i, img in enumerate(word.images):
        unit = tuple(1 if j == i else 0 for j in range(A.m))
        for mono in img.coordinate_support():
            if mono == unit:
                continue
            if mono not in allowed_by_ray.get(i, set()):
                return False
    return True


@dataclass(frozen=True)
class VerificationCheck:
    name: str
    cases: int
    ok: bool


def verify_all(A: RayMatrix) -> tuple[VerificationCheck, ...]:
    """Run the whole symbolic verification battery on one ray matrix:
    one-parameter laws, conjugation identities, first-order agreement of
    group commutators with derivation brackets, and the matrix model of each
    column class."""
    ring = ring_for(A)
    pos = [r for level in positive_roots(A) for r in level]
    a, b = ring.param("a"), ring.param("b")

    law_ok = True
    for e in pos:
        u = root_automorphism(A, e, a, ring)
        v = root_automorphism(A, e, b, ring)
        if compose(u, v) != root_automorphism(A, e, a + b, ring):
            law_ok = False
        inv = root_automorphism(A, e, -a, ring)
        if compose(u, inv) != PolyAutomorphism.identity(ring):
            law_ok = False
    checks = [VerificationCheck("one-parameter-law", len(pos), law_ok)]

    pairs = [(e, f) for e in pos for f in pos if e.ray < f.ray]
    conj_ok = all(verify_conjugation(A, e, f, ring=ring) for e, f in pairs)
    checks.append(VerificationCheck("conjugation-identity", len(pairs), conj_ok))

    st_ring = ring_for(A, params=("s", "t"))
    first_ok = all(
        first_order_commutator_matches_bracket(A, e, f, st_ring) for e, f in pairs
    )
    checks.append(VerificationCheck("first-order-bracket", len(pairs), first_ok))

    classes = column_preorder(A).classes
    embed_ok = all(matrix_embedding_check(A, cls, ring) for cls in classes)
    checks.append(VerificationCheck("matrix-embedding", len(classes), embed_ok))
    return tuple(checks)


# ---------------------------------------------------------------------------
# matrix model of one column class


def _poly_matmul(X, Y, ring: PolyRing):
    k = len(X)
    return [
        [sum((X[i][t] * Y[t][j] for t in range(k)), ring.zero()) for j in range(k)]
        for i in range(k)
    ]


def _poly_identity(k: int, ring: PolyRing):
    return [[ring.one() if i == j else ring.zero() for j in range(k)] for i in range(k)]


def _elementary_matrix(k: int, row: int, col: int, value: Poly, ring: PolyRing):
    out = _poly_identity(k, ring)
    out[row][col] = out[row][col] + value
    return out


def class_embedding_positions(
    A: RayMatrix, cls: tuple[int, ...]
) -> dict[IntVector, tuple[int, int]]:
    """Assign to each positive root on the rays of one column class a matrix
    position inside the triangular block U_{k,l}.

    Elementary roots inside the class go to the upper-left l x l corner; the
    remaining roots of the leading ray are numbered into columns l+1..k and
    the translation bijection between levels of the class transports that
    numbering to the other rays.
    """
    pos = positive_roots(A)
    c = cls[0]
    l = len(cls)
    k = len(pos[c]) + 1
    in_class = set(cls)

    def elementary_target(r: DemazureRoot) -> Optional[int]:
        if r.kind != KIND_ELEMENTARY or not r.semisimple:
            return None
        j = next(j for j, v in enumerate(r.coords) if v == 1)
        return j if j in in_class else None

    leading = [r for r in pos[c] if elementary_target(r) is None]
    leading.sort()
    if len(leading) != k - l:
        raise InvariantViolation("unexpected count of non-elementary roots in class")
    column_of = {r.coords: l + 1 + idx for idx, r in enumerate(leading)}

    positions: dict[IntVector, tuple[int, int]] = {}
    for i in cls:
        row = i - c + 1
        for r in pos[i]:
            j = elementary_target(r)
            if j is not None:
                positions[r.coords] = (row, j - c + 1)
            else:
                # transport to the leading ray: subtract q_c, add q_i
                shifted = list(r.coords)
                shifted[c] -= 1
                shifted[i] += 1
                col = column_of.get(tuple(shifted))
                if col is None:
                    raise InvariantViolation(
                        f"translation of {r.coords} missed the leading ray"
                    )
                positions[r.coords] = (row, col)
    return positions


def matrix_embedding_check(A: RayMatrix, cls: tuple[int, ...], ring: Optional[PolyRing] = None) -> bool:
    """Verify that mapping each root generator of one column class to its
    elementary matrix yields a homomorphism onto U_{k,l}.

    The defining relations are the one-parameter law on each root subgroup
    and the conjugation formula between levels; both sides of every relation
    are expanded exactly (substitution automorphisms against matrix
    products) with symbolic parameters.
    """
    if ring is None:
        ring = ring_for(A)
    pos = positive_roots(A)
    c = cls[0]
    l = len(cls)
    k = len(pos[c]) + 1
    positions = class_embedding_positions(A, cls)

    # positions must exactly fill the U_{k,l} coordinate set
    expected = {(r, c2) for r in range(1, l + 1) for c2 in range(r + 1, k + 1)}
    if set(positions.values()) != expected or len(positions) != len(expected):
        return False

    a, b = ring.param("a"), ring.param("b")

    def phi(root: DemazureRoot, value: Poly):
        row, col = positions[root.coords]
        return _elementary_matrix(k, row - 1, col - 1, value, ring)

    class_roots = [r for i in cls for r in pos[i]]
    for e in class_roots:
        # one-parameter law: u_e(a) u_e(b) = u_e(a+b), on both sides
        left = compose(
            root_automorphism(A, e, a, ring), root_automorphism(A, e, b, ring)
        )
        if left != root_automorphism(A, e, a + b, ring):
            return False
        mat = _poly_matmul(phi(e, a), phi(e, b), ring)
        if mat != phi(e, a + b):
            return False
    for e in class_roots:
        for f in class_roots:
            if e.ray == f.ray:
                if e == f:
                    continue
                # same level: both sides must commute
                ge = root_automorphism(A, e, a, ring)
                gf = root_automorphism(A, f, b, ring)
                if compose(ge, gf) != compose(gf, ge):
                    return False
                m1 = _poly_matmul(phi(e, a), phi(f, b), ring)
                m2 = _poly_matmul(phi(f, b), phi(e, a), ring)
                if m1 != m2:
                    return False
            elif e.ray < f.ray:
                if not verify_conjugation(A, e, f, ring=ring):
                    return False
                d = e.coords[f.ray]
                lhs = _poly_matmul(
                    _poly_matmul(phi(f, -b), phi(e, a), ring), phi(f, b), ring
                )
                rhs = _poly_identity(k, ring)
                for step in range(d + 1):
                    coords = tuple(x + step * y for x, y in zip(e.coords, f.coords))
                    val = a * (b ** step) * comb(d, step)
                    rhs = _poly_matmul(rhs, phi(_root_obj(A, coords), val), ring)
                if lhs != rhs:
                    return False
    return True
