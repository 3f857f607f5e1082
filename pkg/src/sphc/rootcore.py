"""Root systems and Weyl groups of the finite crystallographic types.

Roots are integer coefficient vectors on the simple roots (Bourbaki
numbering).  Weyl group elements are integer matrices acting on those
coordinates, so every quantity used by the sphericity criterion (lengths,
ranks of ``1 - tau w``, Bruhat comparisons) is computed exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd

import numpy as np

SERIES = "ABCDEFG"

Root = tuple[int, ...]


class RootSystemError(ValueError):
    pass


def _e(dim: int, *entries: tuple[int, Fraction | int]) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * dim
    for idx, val in entries:
        v[idx - 1] += Fraction(val)
    return tuple(v)


def _half(*signs: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(s, 2) for s in signs)


def ambient_simple_roots(series: str, n: int) -> list[tuple[Fraction, ...]]:
    """Bourbaki (Planches I-IX) simple roots in the canonical basis e_1.."""
    check_type(series, n, small_d=True)
    if series == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(1, n + 1)]
    if series in "BCD":
        roots = [_e(n, (i, 1), (i + 1, -1)) for i in range(1, n)]
        if series == "B":
            roots.append(_e(n, (n, 1)))
        elif series == "C":
            roots.append(_e(n, (n, 2)))
        else:
            roots.append(_e(n, (n - 1, 1), (n, 1)))
        return roots
    if series == "G":
        return [_e(3, (1, 1), (2, -1)), _e(3, (1, -2), (2, 1), (3, 1))]
    if series == "F":
        return [
            _e(4, (2, 1), (3, -1)),
            _e(4, (3, 1), (4, -1)),
            _e(4, (4, 1)),
            _half(1, -1, -1, -1),
        ]
    e8 = [
        _half(1, -1, -1, -1, -1, -1, -1, 1),
        _e(8, (1, 1), (2, 1)),
        _e(8, (2, 1), (1, -1)),
        _e(8, (3, 1), (2, -1)),
        _e(8, (4, 1), (3, -1)),
        _e(8, (5, 1), (4, -1)),
        _e(8, (6, 1), (5, -1)),
        _e(8, (7, 1), (6, -1)),
    ]
    return e8[:n]


def check_type(series: str, n: int, small_d: bool = False) -> None:
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= (2 if small_d else 4),
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if series not in ok or not isinstance(n, (int, np.integer)) or not ok[series]:
        raise RootSystemError(f"no simple root system of type {series}{n}")


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class RootSystem:
    """Immutable root datum for one simple type.

    ``pairing`` is the symmetric integer matrix ``(alpha_i, alpha_j) =
    d_i a_ij``; the ambient Bourbaki vectors are kept only to convert
    table data written in e-coordinates and for cross-checks.
    """

    def __init__(self, series: str, rank: int, small_d: bool = False):
        check_type(series, rank, small_d)
        self.series = series
        self.rank = n = int(rank)
        self.ambient_simple = ambient_simple_roots(series, n)
        gram = [[_dot(a, b) for b in self.ambient_simple] for a in self.ambient_simple]
        cartan = [[int(2 * gram[i][j] / gram[i][i]) for j in range(n)] for i in range(n)]
        norms = [gram[i][i] for i in range(n)]
        smallest = min(norms)
        d = [int(x / smallest) for x in norms]
        g = 0
        for x in d:
            g = gcd(g, x)
        self.symmetrizer = tuple(x // g for x in d)
        self.cartan_matrix = _frozen(cartan)
        self.pairing = _frozen(
            [[self.symmetrizer[i] * cartan[i][j] for j in range(n)] for i in range(n)]
        )
        self.simple_roots: tuple[Root, ...] = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )
        self.positive_roots: tuple[Root, ...] = self._close_positive()
        self._index = {r: k for k, r in enumerate(self.positive_roots)}
        self._pos = np.array(self.positive_roots, dtype=np.int64)

    def __repr__(self):
        return f"RootSystem({self.series}{self.rank})"

    def __eq__(self, other):
        return (
            isinstance(other, RootSystem)
            and self.series == other.series
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.series, self.rank))

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def _close_positive(self) -> tuple[Root, ...]:
        seen = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(self.rank):
                    image = self.simple_reflect(i, beta)
                    if min(image) >= 0 and image not in seen:
                        seen.add(image)
                        nxt.append(image)
            frontier = nxt
        return tuple(sorted(seen, key=lambda r: (sum(r), r)))

    # pairing helpers -----------------------------------------------------

    def inner(self, a, b) -> int:
        S = self.pairing
        return int(sum(a[i] * S[i, j] * b[j] for i in range(self.rank) for j in range(self.rank)))

    def norm(self, a) -> int:
        return self.inner(a, a)

    def coroot_pairing(self, gamma, beta) -> int:
        """``<gamma, beta^vee> = 2 (gamma, beta) / (beta, beta)``."""
        num = 2 * self.inner(gamma, beta)
        den = self.norm(beta)
        if num % den:
            raise RootSystemError(f"{beta} is not a root of {self.name}")
        return num // den

    def simple_reflect(self, i: int, beta) -> Root:
        c = sum(beta[j] * int(self.pairing[j, i]) for j in range(self.rank)) // self.symmetrizer[i]
        out = list(beta)
        out[i] -= c
        return tuple(out)

    # root bookkeeping ----------------------------------------------------

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def is_root(self, beta) -> bool:
        beta = tuple(int(x) for x in beta)
        return beta in self._index or tuple(-x for x in beta) in self._index

    def is_positive(self, beta) -> bool:
        return tuple(int(x) for x in beta) in self._index

    def height(self, beta) -> int:
        return int(sum(beta))

    @cached_property
    def long_norm(self) -> int:
        return max(self.norm(r) for r in self.simple_roots)

    def is_long(self, beta) -> bool:
        return self.norm(beta) == self.long_norm

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @cached_property
    def highest_short_root(self) -> Root:
        short = [r for r in self.positive_roots if not self.is_long(r)]
        if not short:
            return self.highest_root
        return short[-1]

    def to_ambient(self, beta) -> tuple[Fraction, ...]:
        dim = len(self.ambient_simple[0])
        return tuple(
            sum((beta[i] * self.ambient_simple[i][k] for i in range(self.rank)), Fraction(0))
            for k in range(dim)
        )

    @cached_property
    def _ambient_lookup(self) -> dict:
        table = {}
        for r in self.positive_roots:
            table[self.to_ambient(r)] = r
            table[tuple(-x for x in self.to_ambient(r))] = tuple(-x for x in r)
        return table

    def from_ambient(self, vec) -> Root:
        """Simple-root coordinates of a root given in e-coordinates."""
        key = tuple(Fraction(x) for x in vec)
        try:
            return self._ambient_lookup[key]
        except KeyError:
            raise RootSystemError(f"{tuple(vec)} is not a root of {self.name}") from None

    # Weyl group ----------------------------------------------------------

    def identity(self) -> "WeylElement":
        return WeylElement(self, np.eye(self.rank, dtype=np.int64))

    def simple_reflection(self, i: int) -> "WeylElement":
        """``s_i`` for a 1-based simple index."""
        return reflection(self, self.simple_roots[i - 1])

    @cached_property
    def w0(self) -> "WeylElement":
        return longest_element(self, range(1, self.rank + 1))


def _frozen(rows) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    a.setflags(write=False)
    return a


_CACHE: dict[tuple[str, int], RootSystem] = {}


def build_root_system(series: str, rank: int) -> RootSystem:
    check_type(series, rank)
    key = (series, int(rank))
    if key not in _CACHE:
        _CACHE[key] = RootSystem(series, rank)
    return _CACHE[key]


def matrix_root_system(series: str, rank: int) -> RootSystem:
    """Like build_root_system, but also D2 and D3 (needed for SO(4), SO(6))."""
    key = (series, int(rank))
    if key not in _CACHE:
        _CACHE[key] = RootSystem(series, rank, small_d=True)
    return _CACHE[key]


class WeylElement:
    """A Weyl group element as its matrix on simple-root coordinates.

    Column ``j`` holds the coordinates of ``w(alpha_j)``.
    """

    __slots__ = ("rs", "matrix", "_length")

    def __init__(self, rs: RootSystem, matrix, length: int | None = None):
        m = np.array(matrix, dtype=np.int64)
        if m.shape != (rs.rank, rs.rank):
            raise RootSystemError(f"matrix shape {m.shape} does not fit {rs.name}")
        m.setflags(write=False)
        self.rs = rs
        self.matrix = m
        self._length = length

    def __repr__(self):
        return f"WeylElement({self.rs.name}, length={self.length})"

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.rs == other.rs
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.rs.series, self.rs.rank, self.matrix.tobytes()))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return compose(self, other)

    def __call__(self, beta) -> Root:
        return tuple(int(x) for x in self.matrix @ np.asarray(beta, dtype=np.int64))

    @property
    def cached_length(self) -> int | None:
        return self._length

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = length(self)
        return self._length

    def inverse(self) -> "WeylElement":
        # W is orthogonal for the pairing: w^-1 = S^-1 w^T S, but powers are cheaper.
        inv = np.rint(np.linalg.inv(self.matrix)).astype(np.int64)
        return WeylElement(self.rs, inv, self._length)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, np.eye(self.rs.rank, dtype=np.int64)))

    def is_involution(self) -> bool:
        return compose(self, self).is_identity()

    def determinant(self) -> int:
        return int(round(np.linalg.det(self.matrix)))

    def sends_negative(self, beta) -> bool:
        return min(self(beta)) < 0

    def permutes_roots(self) -> bool:
        images = self.rs._pos @ self.matrix.T
        return all(self.rs.is_root(r) for r in images)


def reflection(rs: RootSystem, beta) -> WeylElement:
    """The reflection ``s_beta``; ``beta`` given in simple-root coordinates."""
    beta = tuple(int(x) for x in beta)
    if not rs.is_root(beta):
        raise RootSystemError(f"{beta} is not a root of {rs.name}")
    cols = []
    for alpha in rs.simple_roots:
        c = rs.coroot_pairing(alpha, beta)
        cols.append([alpha[k] - c * beta[k] for k in range(rs.rank)])
    return WeylElement(rs, np.array(cols, dtype=np.int64).T)


def product_of_reflections(rs: RootSystem, roots) -> WeylElement:
    w = rs.identity()
    for beta in roots:
        w = compose(w, reflection(rs, beta))
    return w


def compose(u: WeylElement, v: WeylElement) -> WeylElement:
    """``u v`` (apply ``v`` first)."""
    if u.rs != v.rs:
        raise RootSystemError(f"cannot compose elements of {u.rs.name} and {v.rs.name}")
    return WeylElement(u.rs, u.matrix @ v.matrix)


def length(w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    images = w.rs._pos @ w.matrix.T
    return int(np.count_nonzero(images.min(axis=1) < 0))


def rational_rank(matrix) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in np.asarray(matrix)]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][c]
        for r in range(rank + 1, rows):
            for k in range(c + 1, cols):
                # exact division is the Bareiss invariant
                a[r][k] = (p * a[r][k] - a[r][c] * a[rank][k]) // prev
            a[r][c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


class DiagramAutomorphism:
    """A permutation of the simple roots preserving the Cartan matrix."""

    def __init__(self, rs: RootSystem, perm):
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(range(rs.rank)):
            raise RootSystemError(f"{perm} is not a permutation of the simple roots")
        A = rs.cartan_matrix
        if any(A[perm[i], perm[j]] != A[i, j] for i in range(rs.rank) for j in range(rs.rank)):
            raise RootSystemError(f"{perm} is not a diagram automorphism of {rs.name}")
        self.rs = rs
        self.perm = perm
        m = np.zeros((rs.rank, rs.rank), dtype=np.int64)
        for i, p in enumerate(perm):
            m[p, i] = 1
        m.setflags(write=False)
        self.matrix = m
        order, q = 1, list(perm)
        while q != list(range(rs.rank)):
            q = [perm[x] for x in q]
            order += 1
        self.order = order

    def __repr__(self):
        images = ", ".join(f"{i + 1}->{p + 1}" for i, p in enumerate(self.perm) if i != p)
        return f"DiagramAutomorphism({self.rs.name}: {images or 'id'})"

    def __call__(self, beta) -> Root:
        return tuple(int(x) for x in self.matrix @ np.asarray(beta, dtype=np.int64))

    def power_matrix(self, i: int) -> np.ndarray:
        return np.linalg.matrix_power(self.matrix, i % self.order)

    def fixed_nodes(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, p in enumerate(self.perm) if i == p)


def trivial_automorphism(rs: RootSystem) -> DiagramAutomorphism:
    return DiagramAutomorphism(rs, range(rs.rank))


def graph_automorphism(rs: RootSystem) -> DiagramAutomorphism:
    """The order-2 graph automorphism of A_n (n >= 2), D_n or E6."""
    n = rs.rank
    if rs.series == "A" and n >= 2:
        perm = [n - 1 - i for i in range(n)]
    elif rs.series == "D":
        perm = list(range(n))
        perm[n - 2], perm[n - 1] = n - 1, n - 2
    elif rs.series == "E" and n == 6:
        perm = [5, 1, 4, 3, 2, 0]
    else:
        raise RootSystemError(f"{rs.name} has no graph automorphism of order 2")
    return DiagramAutomorphism(rs, perm)


def triality(rs: RootSystem) -> DiagramAutomorphism:
    """alpha_1 -> alpha_3 -> alpha_4 -> alpha_1 in D4, alpha_2 fixed."""
    if rs.name != "D4":
        raise RootSystemError("triality exists only for D4")
    return DiagramAutomorphism(rs, [2, 1, 3, 0])


class TwistedElement:
    """``tau^i w`` acting on the root lattice."""

    def __init__(self, w: WeylElement, tau: DiagramAutomorphism | None = None, twist_power: int = 0):
        if tau is None:
            tau = trivial_automorphism(w.rs)
        if tau.rs != w.rs:
            raise RootSystemError("automorphism and Weyl element live in different root systems")
        self.w = w
        self.tau = tau
        self.twist_power = twist_power % tau.order

    def __repr__(self):
        return f"TwistedElement(tau^{self.twist_power}, {self.w!r})"

    @property
    def matrix(self) -> np.ndarray:
        return self.tau.power_matrix(self.twist_power) @ self.w.matrix


def as_twisted(t) -> TwistedElement:
    return t if isinstance(t, TwistedElement) else TwistedElement(t)


def rank_one_minus(t) -> int:
    """rk(1 - tau^i w) over Q."""
    t = as_twisted(t)
    m = np.eye(t.w.rs.rank, dtype=np.int64) - t.matrix
    return rational_rank(m)


def criterion_value(t) -> int:
    """``l(w) + rk(1 - tau^i w)``."""
    t = as_twisted(t)
    return t.w.length + rank_one_minus(t)


def longest_element(rs: RootSystem, J) -> WeylElement:
    """Longest element of the parabolic subgroup W_J (1-based indices)."""
    idx = sorted({int(j) - 1 for j in J})
    if any(j < 0 or j >= rs.rank for j in idx):
        raise RootSystemError(f"J={sorted(J)} is not a set of simple indices of {rs.name}")
    w = rs.identity()
    refl = {j: reflection(rs, rs.simple_roots[j]) for j in idx}
    changed = True
    while changed:
        changed = False
        for j in idx:
            if not w.sends_negative(rs.simple_roots[j]):
                w = compose(w, refl[j])
                changed = True
    return w


def _right_descent(w: WeylElement) -> int | None:
    for i, alpha in enumerate(w.rs.simple_roots):
        if w.sends_negative(alpha):
            return i
    return None


def bruhat_leq(w: WeylElement, z: WeylElement) -> bool:
    """Chevalley-Bruhat order, by the descent recursion on ``z``."""
    if w.rs != z.rs:
        raise RootSystemError("Bruhat comparison across different root systems")
    rs = w.rs
    if w.length > z.length:
        return False
    while True:
        i = _right_descent(z)
        if i is None:
            return w.is_identity()
        s = reflection(rs, rs.simple_roots[i])
        z = compose(z, s)
        if w.sends_negative(rs.simple_roots[i]):
            w = compose(w, s)
        if w.length > z.length:
            return False


def reduced_word(w: WeylElement) -> list[int]:
    """One reduced expression, as 1-based simple indices."""
    word = []
    rs = w.rs
    while True:
        i = _right_descent(w)
        if i is None:
            return word[::-1]
        word.append(i + 1)
        w = compose(w, reflection(rs, rs.simple_roots[i]))


def involution_orthogonal_decomposition(rs: RootSystem, w: WeylElement) -> tuple[Root, ...]:
    """Pairwise orthogonal positive roots whose reflections multiply to ``w``.

    Long roots are taken first, then higher roots before lower ones; in
    type C this returns L(w) followed by the short roots orthogonal to it.
    """
    if w.rs != rs:
        raise RootSystemError("element does not belong to this root system")
    if not w.is_involution():
        raise RootSystemError("element is not an involution")
    order = sorted(rs.positive_roots, key=lambda r: (not rs.is_long(r), -sum(r), r))
    chosen: list[Root] = []
    cur = w
    while not cur.is_identity():
        beta = next(r for r in order if cur(r) == tuple(-x for x in r))
        chosen.append(beta)
        cur = compose(cur, reflection(rs, beta))
    return tuple(chosen)
