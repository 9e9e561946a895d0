"""Permutation and matrix groups acting on rank sets.

Covers group parsing, exact order computation (Schreier-Sims for permutation
groups, closure for matrix groups), cycle types, fixed-subset counts, Burnside
orbit counting over all elements, and generator-closure orbit counting on a
single rank set.
"""

import json
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf, poset
from .errors import DataError, InternalConsistencyError, ResourceLimitError
from .poset import PosetSpec, _bool_mask_array, enumerate_rank, rank_size

DEFAULT_GROUP_CAP = 1_000_000

# above this many rank elements, orbit merging switches to the vectorized path
_VECTOR_THRESHOLD = 1 << 16


def _pmul(a, b):
    """Composition a after b: (a*b)(x) = a(b(x))."""
    return tuple(a[i] for i in b)


def _pinv(a):
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


def _identity(n):
    return tuple(range(n))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple:
    """Parse 1-based cycle notation like "(1,2,3)(4,5)"; fixed points may be omitted."""
    compact = text.replace(" ", "")
    if _CYCLE_RE.sub("", compact) != "":
        raise DataError(f"bad cycle notation {text!r}")
    perm = list(range(degree))
    seen = set()
    for body in _CYCLE_RE.findall(compact):
        if not body:
            continue
        try:
            pts = [int(tok) - 1 for tok in body.split(",")]
        except ValueError:
            raise DataError(f"bad cycle {body!r} in {text!r}") from None
        for v in pts:
            if not (0 <= v < degree):
                raise DataError(f"point {v + 1} outside 1..{degree} in {text!r}")
            if v in seen:
                raise DataError(f"point {v + 1} repeated in {text!r}")
            seen.add(v)
        for i, v in enumerate(pts):
            perm[v] = pts[(i + 1) % len(pts)]
    return tuple(perm)


def cycles_of(perm) -> str:
    """Render a permutation back into 1-based cycle notation."""
    n = len(perm)
    seen = [False] * n
    parts = []
    for s in range(n):
        if seen[s] or perm[s] == s:
            seen[s] = True
            continue
        cyc = [s]
        seen[s] = True
        x = perm[s]
        while x != s:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        parts.append("(" + ",".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) if parts else "()"


@dataclass(frozen=True)
class Group:
    """A permutation group on 1..degree, or a matrix group on GF(q)^degree."""

    kind: str
    degree: int
    generators: tuple
    q: int = 0
    declared_order: int | None = None
    name: str = ""


def _validate_matrix_generator(rows, n: int, q: int, where: str):
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DataError(f"{where}: matrix is not {n}x{n}")
    for r in rows:
        for v in r:
            if not isinstance(v, int) or not (0 <= v < q):
                raise DataError(f"{where}: entry {v!r} outside 0..{q - 1}")
    mat = tuple(tuple(r) for r in rows)
    if len(gf.rref(mat, n, gf.field(q))) != n:
        raise DataError(f"{where}: matrix is singular over GF({q})")
    return mat


def parse_group(source: str, name: str = "") -> Group:
    """Build a validated Group from its JSON description."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise DataError(f"group file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DataError("group file must be an object with a 'kind' field")
    kind = doc["kind"]
    declared = doc.get("order")
    if declared is not None and (not isinstance(declared, int) or declared < 1):
        raise DataError(f"declared order {declared!r} is not a positive integer")

    if kind == "permutation":
        degree = doc.get("degree")
        if not isinstance(degree, int) or degree < 1:
            raise DataError(f"bad degree {degree!r}")
        raw = doc.get("generators")
        if not isinstance(raw, list) or not raw:
            raise DataError("permutation group needs a nonempty generator list")
        gens = []
        for i, text in enumerate(raw):
            if not isinstance(text, str):
                raise DataError(f"generator {i + 1}: expected a cycle string")
            try:
                gens.append(parse_cycles(text, degree))
            except DataError as exc:
                raise DataError(f"generator {i + 1}: {exc}") from None
        return Group(
            kind="permutation", degree=degree, generators=tuple(gens),
            declared_order=declared, name=name,
        )

    if kind == "matrix":
        n, q = doc.get("n"), doc.get("q")
        if not isinstance(n, int) or n < 1:
            raise DataError(f"bad dimension n = {n!r}")
        try:
            gf.field(q if isinstance(q, int) else -1)
        except ValueError as exc:
            raise DataError(f"unsupported field size q = {q!r}: {exc}") from None
        raw = doc.get("generators")
        if not isinstance(raw, list) or not raw:
            raise DataError("matrix group needs a nonempty generator list")
        gens = tuple(
            _validate_matrix_generator(rows, n, q, f"generator {i + 1}")
            for i, rows in enumerate(raw)
        )
        return Group(
            kind="matrix", degree=n, q=q, generators=gens,
            declared_order=declared, name=name,
        )

    raise DataError(f"unknown group kind {kind!r}")


def _schreier_sims_order(gens, n: int) -> int:
    ident = _identity(n)
    gens = [g for g in gens if g != ident]
    if not gens:
        return 1
    base: list[int] = []
    strong: list[tuple] = []

    def extend_base(g):
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(n) if g[i] != i))

    for g in gens:
        extend_base(g)
        strong.append(g)

    while True:
        levels = []
        for l, beta in enumerate(base):
            S = [g for g in strong if all(g[base[j]] == base[j] for j in range(l))]
            tr = {beta: ident}
            inv_tr = {beta: ident}
            queue = [beta]
            while queue:
                x = queue.pop()
                ux = tr[x]
                for g in S:
                    y = g[x]
                    if y not in tr:
                        u = _pmul(g, ux)
                        tr[y] = u
                        inv_tr[y] = _pinv(u)
                        queue.append(y)
            levels.append((S, tr, inv_tr))

        def strip(g, l0):
            for j in range(l0, len(base)):
                x = g[base[j]]
                _, tr, inv_tr = levels[j]
                if x not in tr:
                    return g
                g = _pmul(inv_tr[x], g)
            return g

        residue = None
        for l in range(len(base)):
            S, tr, inv_tr = levels[l]
            for x in sorted(tr):
                ux = tr[x]
                for g in S:
                    sg = _pmul(inv_tr[g[x]], _pmul(g, ux))
                    if sg == ident:
                        continue
                    h = strip(sg, l + 1)
                    if h != ident:
                        residue = h
                        break
                if residue:
                    break
            if residue:
                break
        if residue is None:
            order = 1
            for _, tr, _ in levels:
                order *= len(tr)
            return order
        extend_base(residue)
        strong.append(residue)


def _matrix_mul(a, b, F):
    n = len(a)
    return tuple(
        tuple(
            _gf_dot(a[i], b, j, n, F)
            for j in range(n)
        )
        for i in range(n)
    )


def _gf_dot(row, b, j, n, F):
    acc = 0
    for t in range(n):
        v = row[t]
        if v:
            acc = F.add(acc, F.mul(v, b[t][j]))
    return acc


def _matrix_closure(gens, n, q, cap) -> list | None:
    """All elements by breadth-first closure, or None once the cap is exceeded."""
    F = gf.field(q)
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    elements = {ident: None}
    frontier = [ident]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = _matrix_mul(m, g, F)
                if prod not in elements:
                    elements[prod] = None
                    new.append(prod)
                    if len(elements) > cap:
                        return None
        frontier = new
    return list(elements)


@lru_cache(maxsize=64)
def _order_cached(g: Group, cap: int) -> int:
    if g.kind == "permutation":
        order = _schreier_sims_order(g.generators, g.degree)
        if g.declared_order is not None and g.declared_order != order:
            raise DataError(
                f"declared order {g.declared_order} but computed {order}"
            )
        return order
    elems = _matrix_closure(g.generators, g.degree, g.q, cap)
    if elems is None:
        if g.declared_order is not None:
            return g.declared_order
        raise ResourceLimitError(
            f"matrix group closure exceeded {cap} elements; "
            "supply an 'order' field in the group file"
        )
    order = len(elems)
    if g.declared_order is not None and g.declared_order != order:
        raise DataError(f"declared order {g.declared_order} but computed {order}")
    return order


def group_order(g: Group, cap: int | None = None) -> int:
    """Exact |G|; verifies any declared order whenever computation is feasible."""
    return _order_cached(g, DEFAULT_GROUP_CAP if cap is None else cap)


def cycle_type(perm) -> tuple:
    """Multiset of cycle lengths, descending, summing to the degree."""
    n = len(perm)
    seen = [False] * n
    lengths = []
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def fix_count_subsets(ct, k: int) -> int:
    """Number of k-subsets fixed by a permutation of cycle type ct.

    Coefficient of t^k in the product of (1 + t^c) over the cycle lengths c.
    """
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    n = sum(ct)
    if k > n:
        return 0
    coeffs = [0] * (n + 1)
    coeffs[0] = 1
    total = 0
    for c in ct:
        total += c
        for d in range(min(total, n), c - 1, -1):
            coeffs[d] += coeffs[d - c]
    return coeffs[k]


def _perm_closure(gens, n, cap):
    ident = _identity(n)
    elements = {ident: None}
    frontier = [ident]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = _pmul(m, g)
                if prod not in elements:
                    elements[prod] = None
                    new.append(prod)
                    if len(elements) > cap:
                        raise ResourceLimitError(
                            f"group closure exceeded the cap {cap}"
                        )
        frontier = new
    return list(elements)


@dataclass(frozen=True)
class OrbitSeries:
    """Orbit counts N_0..N_n on the rank sets; always palindromic with N_0 = N_n = 1."""

    n: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise InternalConsistencyError("orbit series has wrong length")
        if any(v < 1 for v in self.values):
            raise InternalConsistencyError("orbit counts must be positive")
        if self.values[0] != 1 or self.values[self.n] != 1:
            raise InternalConsistencyError("orbit series must start and end at 1")
        if any(self.values[k] != self.values[self.n - k] for k in range(self.n + 1)):
            raise InternalConsistencyError("orbit series must be palindromic")


def _check_action(g: Group, spec: PosetSpec):
    if spec.kind == "boolean":
        if g.kind != "permutation" or g.degree != spec.n:
            raise DataError(
                f"group ({g.kind}, degree {g.degree}) does not act on {spec.describe()}"
            )
    else:
        if g.kind != "matrix" or g.degree != spec.n or g.q != spec.q:
            raise DataError(
                f"group ({g.kind}, degree {g.degree}, q={g.q}) does not act on {spec.describe()}"
            )


def burnside_counts(g: Group, spec: PosetSpec, cap: int | None = None) -> OrbitSeries:
    """Orbit counts as the average number of fixed k-subsets over all elements.

    Requires a permutation group matching a boolean poset, and full element
    enumeration under the cap.  Division by |G| must be exact.
    """
    if g.kind != "permutation" or spec.kind != "boolean":
        raise DataError("burnside_counts needs a permutation group on a boolean poset")
    _check_action(g, spec)
    limit = DEFAULT_GROUP_CAP if cap is None else cap
    order = group_order(g, limit)
    if order > limit:
        raise ResourceLimitError(f"|G| = {order} exceeds the cap {limit}")
    type_counts: dict[tuple, int] = {}
    for el in _perm_closure(g.generators, g.degree, limit):
        ct = cycle_type(el)
        type_counts[ct] = type_counts.get(ct, 0) + 1
    n = spec.n
    values = []
    for k in range(n + 1):
        total = sum(cnt * fix_count_subsets(ct, k) for ct, cnt in type_counts.items())
        quot, rem = divmod(total, order)
        if rem:
            raise InternalConsistencyError(
                f"Burnside sum {total} not divisible by |G| = {order} at k = {k}"
            )
        values.append(quot)
    return OrbitSeries(n=n, values=tuple(values))


class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.count -= 1


def _components_vectorized(n: int, images) -> int:
    """Orbit count via minimum-label propagation with pointer doubling."""
    labels = np.arange(n, dtype=np.int64)
    maps = []
    for img in images:
        maps.append(img)
        inv = np.empty_like(img)
        inv[img] = np.arange(n, dtype=np.int64)
        maps.append(inv)
    while True:
        for img in maps:
            np.minimum(labels, labels[img], out=labels)
        while True:
            nxt = labels[labels]
            if np.array_equal(nxt, labels):
                break
            labels = nxt
        if all(np.array_equal(np.minimum(labels, labels[img]), labels) for img in maps):
            return int(np.unique(labels).size)


def _boolean_image_indices(masks: np.ndarray, perm) -> np.ndarray:
    images = np.zeros_like(masks)
    for src, dst in enumerate(perm):
        images |= ((masks >> np.uint64(src)) & np.uint64(1)) << np.uint64(dst)
    idx = np.searchsorted(masks, images)
    if not np.array_equal(masks[idx], images):
        raise InternalConsistencyError("permutation image left the rank set")
    return idx.astype(np.int64)


def orbit_count_unionfind(g: Group, spec: PosetSpec, k: int, cap: int | None = None) -> int:
    """Exact number of generator-closure orbits on the rank-k elements."""
    _check_action(g, spec)
    size = rank_size(spec, k)
    limit = poset.DEFAULT_RANK_CAP if cap is None else cap
    if size > limit:
        raise ResourceLimitError(
            f"rank {k} of {spec.describe()} has {size} elements, over the cap {limit}"
        )
    if size == 0:
        raise ValueError(f"rank {k} of {spec.describe()} is empty")

    if spec.kind == "boolean":
        masks = _bool_mask_array(spec.n, k)
        index_maps = [_boolean_image_indices(masks, perm) for perm in g.generators]
        if size > _VECTOR_THRESHOLD:
            return _components_vectorized(size, index_maps)
        uf = UnionFind(size)
        for img in index_maps:
            for i, j in enumerate(img.tolist()):
                uf.union(i, j)
        return uf.count

    elements = enumerate_rank(spec, k, cap=limit)
    index = {x: i for i, x in enumerate(elements)}
    uf = UnionFind(size)
    for mat in g.generators:
        for i, x in enumerate(elements):
            uf.union(i, index[act(mat, x, spec)])
    return uf.count


def act(element, x, spec: PosetSpec):
    """Image of the rank element x under a group element, re-canonicalized.

    Matrix elements act on row vectors v by v -> v g^T, so that composing
    group elements by matrix product gives a left action on subspaces.
    """
    if spec.kind == "boolean":
        mask = int(x)
        out = 0
        for src, dst in enumerate(element):
            if (mask >> src) & 1:
                out |= 1 << dst
        return out
    F = gf.field(spec.q)
    n = spec.n
    moved = tuple(
        tuple(
            _row_apply(row, element[c], F)
            for c in range(n)
        )
        for row in x
    )
    out = gf.rref(moved, n, F)
    if len(out) != len(x):
        raise InternalConsistencyError("matrix action changed the rank of a subspace")
    return out


def _row_apply(row, gcol, F):
    acc = 0
    for v, w in zip(row, gcol):
        if v and w:
            acc = F.add(acc, F.mul(v, w))
    return acc
