"""Ranked posets of subsets P(n, 1) and subspaces P(n, q), with their incidence operators.

Rank-k elements are encoded canonically: bit masks for subsets, reduced
row echelon matrices (as tuples of row tuples) for subspaces.  Enumeration
order is fixed — numeric mask order, respectively lexicographic order of the
flattened rref entries — so every emitted matrix is reproducible.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from . import gf
from .errors import IncompatibleFieldError, ResourceLimitError
from .gfpla import SparseMat
from .qarith import FieldSpec, gauss_binom, q_int

DEFAULT_RANK_CAP = 5_000_000


@dataclass(frozen=True)
class PosetSpec:
    """One of the two supported poset families.

    kind "boolean": subsets of an n-set, q fixed to 1.
    kind "projective": subspaces of GF(q)^n, q a prime power >= 2.
    """

    kind: str
    n: int
    q: int = 1

    def __post_init__(self):
        if self.kind not in ("boolean", "projective"):
            raise ValueError(f"unknown poset kind {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"poset needs n >= 1, got {self.n}")
        if self.kind == "boolean":
            if self.q != 1:
                raise ValueError("boolean poset requires q = 1")
        else:
            if self.q < 2 or gf.prime_power_decomposition(self.q) is None:
                raise ValueError(f"projective poset needs a prime power q >= 2, got {self.q}")

    @staticmethod
    def boolean(n: int) -> "PosetSpec":
        return PosetSpec("boolean", n, 1)

    @staticmethod
    def projective(n: int, q: int) -> "PosetSpec":
        return PosetSpec("projective", n, q)

    @classmethod
    def parse(cls, text: str) -> "PosetSpec":
        """Parse "boolean:<n>" or "projective:<n>,<q>"."""
        kind, _, rest = text.partition(":")
        try:
            if kind == "boolean":
                return cls.boolean(int(rest))
            if kind == "projective":
                n, q = rest.split(",")
                return cls.projective(int(n), int(q))
        except (ValueError, TypeError) as exc:
            raise ValueError(f"bad poset {text!r}: {exc}") from None
        raise ValueError(f"bad poset {text!r}; use boolean:<n> or projective:<n>,<q>")

    def describe(self) -> str:
        if self.kind == "boolean":
            return f"boolean:{self.n}"
        return f"projective:{self.n},{self.q}"


def rank_size(spec: PosetSpec, k: int) -> int:
    """Number of rank-k elements; zero outside 0..n."""
    return gauss_binom(spec.n, k, spec.q)


def _check_cap(spec: PosetSpec, k: int, cap) -> int:
    size = rank_size(spec, k)
    limit = DEFAULT_RANK_CAP if cap is None else cap
    if size > limit:
        raise ResourceLimitError(
            f"rank {k} of {spec.describe()} has {size} elements, over the cap {limit}"
        )
    return size


@lru_cache(maxsize=2)
def _bool_mask_array(n: int, k: int) -> np.ndarray:
    """All n-bit masks of weight k, ascending, as uint64."""
    if n > 63:
        raise ResourceLimitError(f"boolean enumeration is limited to n <= 63, got n = {n}")
    if k < 0 or k > n:
        return np.zeros(0, dtype=np.uint64)
    # row-by-row merge; only the anti-diagonal band feeding (n, k) is kept
    row = {0: np.array([0], dtype=np.uint64)}
    for m in range(1, n + 1):
        lo = max(0, k - (n - m))
        hi = min(k, m)
        new = {}
        for j in range(lo, hi + 1):
            parts = []
            if j in row:
                parts.append(row[j])
            if j - 1 in row:
                parts.append(row[j - 1] | np.uint64(1 << (m - 1)))
            new[j] = np.concatenate(parts) if len(parts) > 1 else parts[0]
        row = new
    return row[k]


@lru_cache(maxsize=64)
def _rref_profiles(k: int, n: int, q: int) -> tuple:
    """All rank-k reduced row echelon k x n matrices over GF(q), sorted."""
    if k < 0 or k > n:
        return ()
    if k == 0:
        return ((),)
    out = []
    for pivots in combinations(range(n), k):
        free = [
            (r, c)
            for r in range(k)
            for c in range(n)
            if c > pivots[r] and c not in pivots
        ]
        base = [[0] * n for _ in range(k)]
        for r, c in enumerate(pivots):
            base[r][c] = 1
        for values in product(range(q), repeat=len(free)):
            rows = [list(row) for row in base]
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            out.append(tuple(tuple(row) for row in rows))
    out.sort()
    return tuple(out)


@lru_cache(maxsize=16)
def _proj_elements(spec: PosetSpec, k: int) -> tuple:
    return _rref_profiles(k, spec.n, spec.q)


@lru_cache(maxsize=16)
def _proj_index(spec: PosetSpec, k: int) -> dict:
    return {x: i for i, x in enumerate(_proj_elements(spec, k))}


def enumerate_rank(spec: PosetSpec, k: int, cap: int | None = None) -> list:
    """Deterministic sorted list of the rank-k elements; empty outside 0..n."""
    if k < 0 or k > spec.n:
        return []
    _check_cap(spec, k, cap)
    if spec.kind == "boolean":
        return [int(m) for m in _bool_mask_array(spec.n, k)]
    return list(_proj_elements(spec, k))


def canonical_form(spec: PosetSpec, x):
    """Re-encode an element canonically; idempotent on valid encodings."""
    if spec.kind == "boolean":
        return int(x)
    return gf.rref(x, spec.n, gf.field(spec.q))


def element_rank(spec: PosetSpec, x) -> int:
    if spec.kind == "boolean":
        return int(x).bit_count()
    return len(x)


def contains(spec: PosetSpec, x, y) -> bool:
    """True iff y <= x in the poset (y a subset / subspace of x)."""
    if spec.kind == "boolean":
        return int(y) & ~int(x) == 0
    F = gf.field(spec.q)
    pivots = [next(c for c in range(spec.n) if row[c]) for row in x]
    for row in y:
        v = list(row)
        for r, pc in enumerate(pivots):
            if v[pc]:
                f = v[pc]
                v = [F.sub(a, F.mul(f, b)) for a, b in zip(v, x[r])]
        if any(v):
            return False
    return True


def _subobjects(spec: PosetSpec, x, i: int):
    """All elements of corank i below x, in canonical encoding."""
    if spec.kind == "boolean":
        bits = [b for b in range(spec.n) if (x >> b) & 1]
        for keep in combinations(bits, len(bits) - i):
            yield sum(1 << b for b in keep)
    else:
        k = len(x)
        F = gf.field(spec.q)
        for coeff in _rref_profiles(k - i, k, spec.q):
            rows = tuple(
                tuple(
                    _dot_row(crow, x, c, F) for c in range(spec.n)
                )
                for crow in coeff
            )
            yield gf.rref(rows, spec.n, F)


def _dot_row(crow, x, c, F):
    acc = 0
    for j, a in enumerate(crow):
        if a:
            acc = F.add(acc, F.mul(a, x[j][c]))
    return acc


@lru_cache(maxsize=64)
def _incidence_cached(spec: PosetSpec, k: int, i: int) -> SparseMat:
    nrows = rank_size(spec, k - i)
    ncols = rank_size(spec, k)
    if k < 0 or k > spec.n or k - i < 0:
        return SparseMat.zero(nrows, ncols, 0)
    _check_cap(spec, k, None)
    _check_cap(spec, k - i, None)
    entries = {}
    if spec.kind == "boolean":
        masks = _bool_mask_array(spec.n, k)
        sub_masks = _bool_mask_array(spec.n, k - i)
        for col, x in enumerate(int(m) for m in masks):
            subs = np.fromiter(_subobjects(spec, x, i), dtype=np.uint64)
            for row in np.searchsorted(sub_masks, subs):
                entries[(int(row), col)] = 1
    else:
        index = _proj_index(spec, k - i)
        for col, x in enumerate(_proj_elements(spec, k)):
            for y in _subobjects(spec, x, i):
                entries[(index[y], col)] = 1
    return SparseMat(nrows, ncols, entries, 0)


def incidence_matrix(spec: PosetSpec, k: int, i: int) -> SparseMat:
    """0/1 integer matrix with entry (y, x) = 1 iff y <= x and rk x - rk y = i."""
    if i < 1:
        raise ValueError(f"incidence_matrix needs i >= 1, got {i}")
    return _incidence_cached(spec, k, i)


def boundary_matrix(spec: PosetSpec, k: int, field: FieldSpec) -> SparseMat:
    """Matrix over GF(p) of the incidence map from rank k to rank k - 1.

    Each column carries one 1 per corank-1 subobject: k ones in the boolean
    case, q_int(k, q) ones in the projective case.
    """
    if not (1 <= k <= spec.n):
        raise ValueError(f"boundary_matrix needs 1 <= k <= {spec.n}, got {k}")
    if spec.q % field.p == 0:
        raise IncompatibleFieldError(
            f"characteristic {field.p} divides q = {spec.q} of {spec.describe()}"
        )
    return incidence_matrix(spec, k, 1).reduce_mod(field.p)


def expected_column_ones(spec: PosetSpec, k: int) -> int:
    """Saturated-chain count below a rank-k element at corank 1."""
    if spec.kind == "boolean":
        return k
    return q_int(k, spec.q)
