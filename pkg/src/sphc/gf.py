"""Arithmetic in GF(2^k), k <= 8, and dense matrices over it.

Field elements are ints ``0 .. q-1`` (bit ``j`` = coefficient of ``x^j``).
Matrices are ``numpy.uint8`` arrays; every routine that multiplies
matrices also accepts stacks ``(..., m, m)`` so orbit searches can push a
whole BFS frontier through one call.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# primitive polynomials, bit j = coefficient of x^j
DEFAULT_POLYNOMIALS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
}


class FieldError(ValueError):
    pass


def _polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if _polymod(poly, f) == 0:
                return False
    return True


def _mulmod(a: int, b: int, poly: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> (poly.bit_length() - 1):
            a ^= poly
    return out


def _order(a: int, poly: int) -> int:
    x, power = a, 1
    while x != 1:
        x = _mulmod(x, a, poly)
        power += 1
    return power


def is_primitive(poly: int) -> bool:
    if not is_irreducible(poly):
        return False
    deg = poly.bit_length() - 1
    return _order(_polymod(2, poly), poly) == (1 << deg) - 1


def _generator(poly: int) -> int:
    order = (1 << (poly.bit_length() - 1)) - 1
    for g in range(1, order + 1):
        if _order(_polymod(g, poly), poly) == order:
            return _polymod(g, poly)
    raise FieldError("no generator found")


class GF:
    """GF(2^k) via log/antilog tables.

    Any irreducible polynomial is accepted; the tables are built on the
    smallest multiplicative generator, which is ``x`` when the polynomial
    is primitive.
    """

    def __init__(self, k: int, poly: int | None = None):
        if not 1 <= k <= 8:
            raise FieldError(f"extension degree {k} outside 1..8")
        if poly is None:
            poly = DEFAULT_POLYNOMIALS[k]
        if poly.bit_length() - 1 != k or not is_irreducible(poly):
            raise FieldError(f"polynomial {poly:#x} is not irreducible of degree {k}")
        self.k = k
        self.poly = poly
        self.q = q = 1 << k
        self.generator = gen = _generator(poly)
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = _mulmod(x, gen, poly)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self.exp = exp
        self.log = log
        a = np.arange(q)
        mul = exp[(log[a][:, None] + log[a][None, :]) % (q - 1)].astype(np.uint8)
        mul[0, :] = 0
        mul[:, 0] = 0
        self.MUL = mul
        inv = np.zeros(q, dtype=np.uint8)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self.INV = inv

    def __repr__(self):
        return f"GF(2^{self.k})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.k, self.poly) == (other.k, other.poly)

    def __hash__(self):
        return hash((self.k, self.poly))

    # scalars -------------------------------------------------------------

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def mul(self, a: int, b: int) -> int:
        return int(self.MUL[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.INV[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    def sqrt(self, a: int) -> int:
        # Frobenius is bijective: sqrt(a) = a^(q/2)
        return self.pow(a, self.q // 2)

    def additive_basis(self) -> list[int]:
        return [1 << j for j in range(self.k)]

    # matrices ------------------------------------------------------------

    def eye(self, m: int) -> np.ndarray:
        return np.eye(m, dtype=np.uint8)

    def matmul(self, A, B) -> np.ndarray:
        A = np.asarray(A, dtype=np.uint8)
        B = np.asarray(B, dtype=np.uint8)
        if self.q == 2:
            return (np.matmul(A.astype(np.int32), B.astype(np.int32)) & 1).astype(np.uint8)
        prod = self.MUL[A[..., :, :, None], B[..., None, :, :]]
        return np.bitwise_xor.reduce(prod, axis=-2)

    def scale(self, c: int, A) -> np.ndarray:
        return self.MUL[c][np.asarray(A, dtype=np.uint8)]

    def matpow(self, A, e: int) -> np.ndarray:
        out = np.broadcast_to(self.eye(A.shape[-1]), A.shape).copy()
        base = A
        while e:
            if e & 1:
                out = self.matmul(out, base)
            base = self.matmul(base, base)
            e >>= 1
        return out

    def row_reduce(self, M) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        R = np.array(M, dtype=np.uint8, copy=True)
        rows, cols = R.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(R[r:, c])[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                R[[r, p]] = R[[p, r]]
            R[r] = self.MUL[self.INV[R[r, c]]][R[r]]
            others = np.nonzero(R[:, c])[0]
            for o in others:
                if o != r:
                    R[o] ^= self.MUL[R[o, c]][R[r]]
            pivots.append(c)
            r += 1
        return R, pivots

    def rank(self, M) -> int:
        M = np.asarray(M)
        if M.size == 0:
            return 0
        return len(self.row_reduce(M)[1])

    def kernel(self, M) -> np.ndarray:
        """Basis of the right kernel, one vector per row."""
        M = np.asarray(M, dtype=np.uint8)
        cols = M.shape[1]
        R, pivots = self.row_reduce(M)
        free = [c for c in range(cols) if c not in pivots]
        basis = np.zeros((len(free), cols), dtype=np.uint8)
        for t, f in enumerate(free):
            basis[t, f] = 1
            for i, p in enumerate(pivots):
                basis[t, p] = R[i, f]  # char 2: -R = R
        return basis

    def inverse(self, M) -> np.ndarray:
        M = np.asarray(M, dtype=np.uint8)
        m = M.shape[0]
        R, pivots = self.row_reduce(np.concatenate([M, self.eye(m)], axis=1))
        if pivots[:m] != list(range(m)):
            raise FieldError("matrix is singular")
        return R[:, m:].copy()

    def det(self, M) -> int:
        R = np.array(M, dtype=np.uint8, copy=True)
        m = R.shape[0]
        d = 1
        for c in range(m):
            nz = np.nonzero(R[c:, c])[0]
            if nz.size == 0:
                return 0
            p = c + int(nz[0])
            if p != c:
                R[[c, p]] = R[[p, c]]
            piv = int(R[c, c])
            d = self.mul(d, piv)
            ip = self.inv(piv)
            for r in range(c + 1, m):
                if R[r, c]:
                    R[r] ^= self.MUL[self.mul(int(R[r, c]), ip)][R[c]]
        return d

    def bilinear(self, x, G, y) -> int:
        """x^T G y for vectors (or stacks of vectors)."""
        Gy = self.matmul(G, np.asarray(y, dtype=np.uint8)[..., None])[..., 0]
        return np.bitwise_xor.reduce(self.MUL[np.asarray(x, dtype=np.uint8), Gy], axis=-1)


@lru_cache(maxsize=None)
def field(k: int, poly: int | None = None) -> GF:
    return GF(k, poly)


def field_for_q(q: int, polynomials: dict[int, int] | None = None) -> GF:
    k = q.bit_length() - 1
    if q < 2 or 1 << k != q:
        raise FieldError(f"q={q} is not a power of 2")
    poly = (polynomials or DEFAULT_POLYNOMIALS).get(k)
    return field(k, poly)
