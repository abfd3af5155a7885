import math
import random

import pytest

from toricroots import RootSet, positive_roots, validate_ray_matrix
from toricroots.roots import canonical_reorder

# Seeds are fixed so the "random" fixtures are identical on every run.
SEED_20 = 20260809
SEED_100 = 424242


@pytest.fixture
def p123():
    """Ray matrix of the weighted projective plane with weights 1, 2, 3."""
    return validate_ray_matrix([[3, 2, 1]], 3)


@pytest.fixture
def f1p1():
    """Ray matrix of the product of the first Hirzebruch surface with a line."""
    return validate_ray_matrix([[1, 1, 0], [1, 0, 0], [0, 0, 1]], 3)


def projective_space(n):
    return validate_ray_matrix([[1] * n], n)


def incomparable_columns_matrix(n):
    """All-ones-minus-identity rows plus an all-ones row: every two columns
    are incomparable, so only the basic roots exist."""
    rows = [[0 if i == j else 1 for j in range(n)] for i in range(n)]
    rows.append([1] * n)
    return validate_ray_matrix(rows, n)


def positive_rootset(A):
    return RootSet.of(A.n, [r for level in positive_roots(A) for r in level])


def random_ray_matrices(count, seed, max_n=4, max_rows=3, max_entry=3):
    """Deterministic stream of valid, canonically ordered ray matrices."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        num_rows = rng.randint(1, max_rows)
        rows = []
        for _ in range(num_rows):
            for _attempt in range(200):
                row = tuple(rng.randint(0, max_entry) for _ in range(n))
                if not any(row):
                    continue
                g = math.gcd(*(abs(x) for x in row))
                row = tuple(x // g for x in row)
                if row not in rows:
                    rows.append(row)
                    break
            else:
                break
        if len(rows) != num_rows:
            continue
        if any(all(r[j] == 0 for r in rows) for j in range(n)):
            continue
        _, A = canonical_reorder(validate_ray_matrix(rows, n))
        out.append(A)
    return out
