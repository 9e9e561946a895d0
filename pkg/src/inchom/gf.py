"""Arithmetic for GF(q), q prime or one of the supported prime powers 4, 8, 9, 16.

Elements are integers 0..q-1.  For prime powers the integer encodes the
coefficient vector of a polynomial in base p, and products are looked up in
tables built once from the reducing polynomial.
"""

from functools import lru_cache

# reducing polynomials, little-endian coefficients
_MIN_POLY = {
    4: (2, (1, 1, 1)),  # x^2 + x + 1 over GF(2)
    8: (2, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, (1, 0, 1)),  # x^2 + 1 over GF(3)
    16: (2, (1, 1, 0, 0, 1)),  # x^4 + x + 1
}


def prime_power_decomposition(q: int):
    """Return (p, e) with q = p^e and p prime, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
    return (q, 1)


class GF:
    """Field arithmetic on integer-encoded elements of GF(q)."""

    def __init__(self, q: int):
        dec = prime_power_decomposition(q)
        if dec is None:
            raise ValueError(f"{q} is not a prime power")
        p, e = dec
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self._mul = None
        else:
            if q not in _MIN_POLY:
                raise ValueError(f"GF({q}) is not supported (prime q or q in 4, 8, 9, 16)")
            self._mul = self._build_mul_table()
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul(a, b) == 1:
                    self._inv[a] = b
                    break

    def _build_mul_table(self):
        p, e = self.p, self.e
        _, red = _MIN_POLY[self.q]

        def digits(v):
            out = []
            for _ in range(e):
                out.append(v % p)
                v //= p
            return out

        def undigits(ds):
            v = 0
            for d in reversed(ds):
                v = v * p + d
            return v

        table = [[0] * self.q for _ in range(self.q)]
        for a in range(self.q):
            da = digits(a)
            for b in range(self.q):
                db = digits(b)
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                # reduce modulo the defining polynomial
                for i in range(len(prod) - 1, e - 1, -1):
                    c = prod[i]
                    if c:
                        prod[i] = 0
                        for j in range(e):
                            prod[i - e + j] = (prod[i - e + j] - c * red[j]) % p
                table[a][b] = undigits(prod[:e])
        return table

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        # componentwise addition of base-p digit vectors
        out, mult = 0, 1
        for _ in range(self.e):
            out += ((a + b) % self.p) * mult
            a //= self.p
            b //= self.p
            mult *= self.p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        out, mult = 0, 1
        for _ in range(self.e):
            out += ((-a) % self.p) * mult
            a //= self.p
            mult *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return self._inv[a]


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def rref(rows, n: int, F: GF):
    """Reduced row echelon form over F; returns a tuple of nonzero row tuples.

    The result is the canonical encoding of the row space: two row sets span
    the same subspace iff their rref tuples are equal.
    """
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = F.inv(work[r][c])
        work[r] = [F.mul(inv, v) for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r])
