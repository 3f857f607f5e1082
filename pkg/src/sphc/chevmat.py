"""Matrix models of GL, SL, Sp, O and SO over GF(2^k).

Basis ``v_1 .. v_m`` with ``f(v_i, v_{m+1-i}) = 1`` (antidiagonal Gram
matrix) and, for the orthogonal groups, ``Q(x) = sum_{i<=n} x_i x_{m+1-i}``.
Position ``k`` of the basis carries the torus weight ``e_{k+1}`` in the first
half and ``-e_{m-k}`` in the second, so the upper triangular matrices of the
group form a Borel subgroup and permutation matrices represent the Weyl
group.  Roots are written in e-coordinates throughout this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rootcore as rc
from .classlabels import ClassLabel, Partition, make_label, validate_label
from .gf import GF, FieldError, field as make_field

KINDS = ("GL", "SL", "Sp", "O", "SO")


class GroupError(ValueError):
    pass


AmbientRoot = tuple[int, ...]


class GroupSpec:
    """One classical group over one finite field."""

    def __init__(self, kind: str, n: int, field: GF | None = None):
        if kind not in KINDS:
            raise GroupError(f"unknown group kind {kind!r}")
        self.kind = kind
        self.n = n = int(n)
        self.field = field or make_field(1)
        if kind in ("GL", "SL"):
            if n < 2:
                raise GroupError("GL/SL need matrix size >= 2")
            self.m = m = n
            self.rs = rc.matrix_root_system("A", n - 1)
            self.weights = tuple(tuple(int(a == k) for a in range(m)) for k in range(m))
            self.gram = None
        else:
            if kind == "Sp" and n < 2 or kind in ("O", "SO") and n < 2:
                raise GroupError(f"{kind}(2n) needs n >= 2")
            self.m = m = 2 * n
            self.rs = rc.matrix_root_system("C" if kind == "Sp" else "D", n)
            w = []
            for k in range(m):
                vec = [0] * n
                if k < n:
                    vec[k] = 1
                else:
                    vec[m - 1 - k] = -1
                w.append(tuple(vec))
            self.weights = tuple(w)
            J = np.zeros((m, m), dtype=np.uint8)
            J[np.arange(m), m - 1 - np.arange(m)] = 1
            J.setflags(write=False)
            self.gram = J
        self._pos_of_weight = {wt: k for k, wt in enumerate(self.weights)}
        tables = {}
        for beta in self.rs.positive_roots:
            amb = self.to_ambient(beta)
            for root in (amb, tuple(-x for x in amb)):
                tables[root] = tuple(
                    (r, c)
                    for r in range(m)
                    for c in range(m)
                    if r != c and _sub(self.weights[r], self.weights[c]) == root
                )
        self.root_tables: dict[AmbientRoot, tuple[tuple[int, int], ...]] = tables

    # identity ------------------------------------------------------------

    @property
    def name(self) -> str:
        size = self.m
        return f"{self.kind}({size},{self.field.q})"

    def __repr__(self):
        return f"GroupSpec({self.name})"

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and (self.kind, self.n, self.field) == (
            other.kind, other.n, other.field)

    def __hash__(self):
        return hash((self.kind, self.n, self.field))

    def with_field(self, field: GF) -> "GroupSpec":
        return group_spec(self.kind, self.n, field)

    # roots ---------------------------------------------------------------

    def to_ambient(self, beta) -> AmbientRoot:
        return tuple(int(x) for x in self.rs.to_ambient(beta))

    def from_ambient(self, root) -> tuple[int, ...]:
        return self.rs.from_ambient(root)

    @property
    def positive_roots(self) -> list[AmbientRoot]:
        return [self.to_ambient(b) for b in self.rs.positive_roots]

    @property
    def simple_roots(self) -> list[AmbientRoot]:
        return [self.to_ambient(b) for b in self.rs.simple_roots]

    @property
    def roots(self) -> list[AmbientRoot]:
        pos = self.positive_roots
        return pos + [tuple(-x for x in r) for r in pos]

    def check_root(self, alpha) -> AmbientRoot:
        alpha = tuple(int(x) for x in alpha)
        if alpha not in self.root_tables:
            raise GroupError(f"{format_root(alpha)} is not a root of {self.name}")
        return alpha

    def coroot_pairings(self, alpha) -> list[int]:
        """``<weight_k, alpha^vee>`` for every basis position ``k``."""
        alpha = self.check_root(alpha)
        nn = sum(a * a for a in alpha)
        out = []
        for wt in self.weights:
            val = Fraction(2 * sum(a * b for a, b in zip(wt, alpha)), nn)
            out.append(int(val))
        return out

    # forms ---------------------------------------------------------------

    def quadratic(self, x) -> np.ndarray:
        """Q(x) for a vector or a stack of vectors (orthogonal kinds)."""
        x = np.asarray(x, dtype=np.uint8)
        F = self.field
        prod = F.MUL[x[..., : self.n], x[..., self.m - 1 : self.n - 1 : -1]]
        return np.bitwise_xor.reduce(prod, axis=-1)

    def bilinear(self, x, y):
        return self.field.bilinear(x, self.gram, y)

    @property
    def tau_matrix(self) -> np.ndarray:
        """The basis swap ``v_n <-> v_{n+1}`` (orthogonal kinds)."""
        if self.kind not in ("O", "SO"):
            raise GroupError("the basis swap lives in O(2n)")
        P = np.eye(self.m, dtype=np.uint8)
        P[[self.n - 1, self.n]] = P[[self.n, self.n - 1]]
        return P


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


_SPEC_CACHE: dict = {}


def group_spec(kind: str, n: int, field: GF | int | None = None) -> GroupSpec:
    """Cached constructor; ``field`` may be a GF or a field size q."""
    if isinstance(field, int):
        k = field.bit_length() - 1
        if field < 2 or 1 << k != field:
            raise FieldError(f"q={field} is not a power of 2")
        field = make_field(k)
    field = field or make_field(1)
    key = (kind, int(n), field)
    if key not in _SPEC_CACHE:
        _SPEC_CACHE[key] = GroupSpec(kind, n, field)
    return _SPEC_CACHE[key]


# elements -------------------------------------------------------------------


class GroupElement:
    __slots__ = ("spec", "matrix")

    def __init__(self, spec: GroupSpec, matrix):
        M = np.array(matrix, dtype=np.uint8)
        if M.shape != (spec.m, spec.m):
            raise GroupError(f"matrix shape {M.shape} does not fit {spec.name}")
        if M.max(initial=0) >= spec.field.q:
            raise GroupError("matrix entries outside the field")
        M.setflags(write=False)
        self.spec = spec
        self.matrix = M

    def __repr__(self):
        return f"GroupElement({self.spec.name})"

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.spec == other.spec
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.spec, self.matrix.tobytes()))

    def __mul__(self, other):
        if isinstance(other, TwistedGroupElement):
            return TwistedGroupElement(self.spec, 0, self) * other
        if self.spec != other.spec:
            raise GroupError("elements of different groups")
        return GroupElement(self.spec, self.spec.field.matmul(self.matrix, other.matrix))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.spec, self.spec.field.inverse(self.matrix))

    def conjugate(self, g: "GroupElement") -> "GroupElement":
        """g self g^-1."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, np.eye(self.spec.m, dtype=np.uint8)))

    def square(self) -> "GroupElement":
        return self * self

    def is_involution(self) -> bool:
        return self.square().is_identity() and not self.is_identity()


def identity(spec: GroupSpec) -> GroupElement:
    return GroupElement(spec, np.eye(spec.m, dtype=np.uint8))


def membership_problems(spec: GroupSpec, M) -> list[str]:
    """Reasons why ``M`` is not in the group (empty list when it is)."""
    F = spec.field
    M = np.asarray(M, dtype=np.uint8)
    out = []
    det = F.det(M)
    if det == 0:
        return ["singular"]
    if spec.kind == "SL" and det != 1:
        out.append("det != 1")
    if spec.gram is not None:
        J = spec.gram
        if not np.array_equal(F.matmul(F.matmul(M.T, J), M), J):
            out.append("does not preserve the bilinear form")
        if spec.kind in ("O", "SO"):
            # Q(Mx) = Q(x) on a basis plus f preserved gives Q preserved
            if spec.quadratic(M.T).any():
                out.append("does not preserve Q")
            elif spec.kind == "SO" and dickson_invariant_matrix(F, M):
                out.append("Dickson invariant 1")
    return out


def in_group(spec: GroupSpec, M) -> bool:
    return not membership_problems(spec, M)


def element(spec: GroupSpec, matrix) -> GroupElement:
    problems = membership_problems(spec, matrix)
    if problems:
        raise GroupError(f"not in {spec.name}: {', '.join(problems)}")
    return GroupElement(spec, matrix)


# Chevalley generators -------------------------------------------------------


def x_alpha(spec: GroupSpec, alpha, xi: int) -> GroupElement:
    alpha = spec.check_root(alpha)
    M = np.eye(spec.m, dtype=np.uint8)
    for r, c in spec.root_tables[alpha]:
        M[r, c] = xi
    return GroupElement(spec, M)


def h_alpha(spec: GroupSpec, alpha, z: int) -> GroupElement:
    if z == 0:
        raise GroupError("h_alpha(0) is undefined")
    F = spec.field
    diag = [F.pow(z, e) if e >= 0 else F.pow(F.inv(z), -e) for e in spec.coroot_pairings(alpha)]
    return GroupElement(spec, np.diag(np.array(diag, dtype=np.uint8)))


def n_alpha(spec: GroupSpec, alpha) -> GroupElement:
    """x_alpha(1) x_-alpha(-1) x_alpha(1); signs are invisible in char 2."""
    alpha = spec.check_root(alpha)
    neg = tuple(-a for a in alpha)
    return x_alpha(spec, alpha, 1) * x_alpha(spec, neg, 1) * x_alpha(spec, alpha, 1)


def torus_element(spec: GroupSpec, diag) -> GroupElement:
    return element(spec, np.diag(np.asarray(diag, dtype=np.uint8)))


def weyl_representative(spec: GroupSpec, w: rc.WeylElement) -> GroupElement:
    g = identity(spec)
    for i in rc.reduced_word(w):
        g = g * n_alpha(spec, spec.simple_roots[i - 1])
    return g


def verify_scambio(spec: GroupSpec, roots, scalars) -> bool:
    """Check the orthogonal-root conjugation identity as matrices.

    With ``g = x_b1(xi_1^-1) .. x_bl(xi_l^-1)`` and ``h = h_b1(xi_1) .. h_bl(xi_l)``
    (signs and the factors ``x_b(2 xi^-1)`` vanish in characteristic 2):
    ``g x_-b1(xi_1) .. x_-bl(xi_l) g^-1 = n_b1 .. n_bl h``.
    """
    roots = [spec.check_root(b) for b in roots]
    scalars = [int(x) for x in scalars]
    if len(roots) != len(scalars):
        raise GroupError("one scalar per root")
    if any(x == 0 for x in scalars):
        raise GroupError("scalars must be nonzero")
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            if sum(x * y for x, y in zip(a, b)) != 0:
                raise GroupError(f"{format_root(a)} and {format_root(b)} are not orthogonal")
    F = spec.field
    g = identity(spec)
    lhs = identity(spec)
    rhs_n = identity(spec)
    h = identity(spec)
    for b, xi in zip(roots, scalars):
        g = g * x_alpha(spec, b, F.inv(xi))
        lhs = lhs * x_alpha(spec, tuple(-v for v in b), xi)
        rhs_n = rhs_n * n_alpha(spec, b)
        h = h * h_alpha(spec, b, xi)
    return g * lhs * g.inverse() == rhs_n * h


# invariants -----------------------------------------------------------------


def _nilpotent_part(u: GroupElement) -> np.ndarray:
    N = u.matrix ^ np.eye(u.spec.m, dtype=np.uint8)
    F = u.spec.field
    if F.matpow(N, u.spec.m).any():
        raise GroupError("element is not unipotent")
    return N


def jordan_type_matrix(F: GF, N: np.ndarray) -> Partition:
    """Partition of the Jordan blocks of the nilpotent matrix N."""
    m = N.shape[0]
    ranks = [m]
    P = np.eye(m, dtype=np.uint8)
    while ranks[-1]:
        P = F.matmul(P, N)
        ranks.append(F.rank(P))
    ranks.append(0)
    mult = {}
    for i in range(1, len(ranks) - 1):
        c = ranks[i - 1] - 2 * ranks[i] + ranks[i + 1]
        if c:
            mult[i] = c
    return Partition.from_multiplicities(mult)


def jordan_type(u: GroupElement) -> Partition:
    return jordan_type_matrix(u.spec.field, _nilpotent_part(u))


def _form_vanishes(F: GF, G, A, basis) -> bool:
    """Does x -> f(Ax, x) vanish on the span of ``basis``?

    A quadratic form vanishes iff it vanishes on a basis and on all sums of
    two basis vectors.
    """
    vecs = [b for b in basis]
    vecs += [basis[i] ^ basis[j] for i in range(len(basis)) for j in range(i + 1, len(basis))]
    if not vecs:
        return True
    X = np.array(vecs, dtype=np.uint8)
    AX = F.matmul(A, X.T).T
    return not F.bilinear(AX, G, X).any()


def epsilon_invariant(u: GroupElement) -> ClassLabel:
    spec = u.spec
    if spec.gram is None:
        raise GroupError("epsilon is defined for Sp/O/SO only")
    F = spec.field
    N = _nilpotent_part(u)
    lam = jordan_type_matrix(F, N)
    eps = {}
    for i, c in lam.multiplicities().items():
        if i % 2:
            continue
        kernel = F.kernel(F.matpow(N, i))
        A = F.matpow(N, i - 1)
        eps[i] = 0 if _form_vanishes(F, spec.gram, A, list(kernel)) else 1
    kind = "Sp" if spec.kind == "Sp" else ("SO" if spec.kind == "SO" else "O")
    label = make_label(kind, spec.n, lam, eps)
    if kind == "SO" and not validate_label(label):
        label = make_label(kind, spec.n, lam, eps, so_split_tag(u))
    return label


def so_split_tag(u: GroupElement) -> str:
    """Which of the two SO-classes a splitting class lies in.

    ``M = sum_j (im N^j cap ker N^j)`` is a maximal totally singular
    subspace; the two SO(2n)-orbits on such subspaces are told apart by
    the parity of ``dim(M cap <v_1..v_n>)``.
    """
    spec = u.spec
    F = spec.field
    N = _nilpotent_part(u)
    m, n = spec.m, spec.n
    pieces = []
    P = np.eye(m, dtype=np.uint8)
    for _ in range(m):
        P = F.matmul(P, N)
        if not P.any():
            break
        im = F.row_reduce(P.T)[0][: F.rank(P)]
        ker = F.kernel(P)
        pieces.append(_intersect(F, im, ker))
    M = np.concatenate([p for p in pieces if len(p)] or [np.zeros((0, m), np.uint8)])
    R, piv = F.row_reduce(M) if len(M) else (M, [])
    M = R[: len(piv)]
    if len(M) != n or spec.quadratic(M).any():
        raise GroupError("element does not determine a maximal singular subspace")
    L0 = np.eye(m, dtype=np.uint8)[:n]
    d = len(_intersect(F, M, L0))
    return "I" if d % 2 == n % 2 else "II"


def _intersect(F: GF, A, B) -> np.ndarray:
    """Basis (rows) of rowspace(A) cap rowspace(B)."""
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    if len(A) == 0 or len(B) == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else B.shape[1]), np.uint8)
    # x = a^T A = b^T B  <=>  [a, b] in kernel of [A; B]^T
    K = F.kernel(np.concatenate([A, B]).T)
    if len(K) == 0:
        return np.zeros((0, A.shape[1]), np.uint8)
    vecs = F.matmul(K[:, : len(A)], A)
    R, piv = F.row_reduce(vecs)
    return R[: len(piv)]


def dickson_invariant_matrix(F: GF, M) -> int:
    return F.rank(np.asarray(M, dtype=np.uint8) ^ np.eye(len(M), dtype=np.uint8)) % 2


def dickson_invariant(g: GroupElement) -> int:
    spec = g.spec
    if spec.kind not in ("O", "SO"):
        raise GroupError("Dickson invariant is defined on O(2n)")
    if membership_problems(group_spec("O", spec.n, spec.field), g.matrix):
        raise GroupError("element is not orthogonal")
    return dickson_invariant_matrix(spec.field, g.matrix)


# Bruhat cells ---------------------------------------------------------------


def cell_permutations(F: GF, stack) -> np.ndarray:
    """For each matrix g = b1 P b2, the permutation of P.

    Returns ``sigma`` with ``sigma[..., j]`` the row of the pivot in column
    ``j``.  Rows are scanned from the bottom; the leftmost nonzero entry of
    each row is its pivot and is used to clear the column above it, which
    is left multiplication by an upper unitriangular matrix.
    """
    M = np.array(stack, dtype=np.uint8, copy=True)
    single = M.ndim == 2
    if single:
        M = M[None]
    count, m, _ = M.shape
    idx = np.arange(count)
    sigma = np.empty((count, m), dtype=np.int64)
    for i in range(m - 1, -1, -1):
        row = M[:, i, :]
        nz = row != 0
        if not nz.any(axis=1).all():
            raise GroupError("singular matrix has no Bruhat cell")
        j = nz.argmax(axis=1)
        inv = F.INV[row[idx, j]]
        for k in range(i):
            c = F.MUL[M[idx, k, j], inv]
            if c.any():
                M[:, k, :] ^= F.MUL[c[:, None], row]
        sigma[idx, j] = i
    return sigma[0] if single else sigma


def permutation_to_weyl(spec: GroupSpec, sigma) -> rc.WeylElement:
    sigma = [int(s) for s in sigma]
    m = spec.m
    if spec.gram is not None:
        if any(sigma[m - 1 - k] != m - 1 - sigma[k] for k in range(m)):
            raise GroupError("Bruhat permutation is not a signed permutation")
        if spec.kind in ("O", "SO"):
            flips = sum(1 for k in range(spec.n) if sigma[k] >= spec.n)
            if flips % 2:
                raise GroupError("Bruhat permutation has an odd number of sign changes")
    dim = len(spec.weights[0])
    image_of_e = [spec.weights[sigma[a]] for a in range(dim)]
    cols = []
    for alpha in spec.simple_roots:
        img = [0] * dim
        for a, coeff in enumerate(alpha):
            if coeff:
                img = [x + coeff * y for x, y in zip(img, image_of_e[a])]
        try:
            cols.append(spec.from_ambient(img))
        except rc.RootSystemError:
            raise GroupError("Bruhat permutation lies outside the Weyl group") from None
    return rc.WeylElement(spec.rs, np.array(cols, dtype=np.int64).T)


def bruhat_cell(g: GroupElement) -> rc.WeylElement:
    return permutation_to_weyl(g.spec, cell_permutations(g.spec.field, g.matrix))


def twisted_bruhat_cell(x) -> rc.WeylElement:
    """Cell of the g-part of a coset element tau g."""
    if isinstance(x, TwistedGroupElement):
        return bruhat_cell(x.g)
    spec = x.spec
    if spec.kind == "O" and dickson_invariant_matrix(spec.field, x.matrix):
        tau = GroupElement(spec, spec.tau_matrix)
        return bruhat_cell(tau * x)
    return bruhat_cell(x)


# graph automorphism of GL ---------------------------------------------------


def theta(spec: GroupSpec, M) -> np.ndarray:
    """g -> J (g^T)^-1 J^-1; in char 2 the antidiagonal J is its own inverse."""
    F = spec.field
    M = np.asarray(M, dtype=np.uint8)
    inv_t = F.inverse(M).T
    return inv_t[::-1, ::-1].copy()


class TwistedGroupElement:
    """``tau^twist g`` in the extension of GL(m) by the graph automorphism."""

    __slots__ = ("spec", "twist", "g")

    def __init__(self, spec: GroupSpec, twist: int, g: GroupElement):
        if spec.kind not in ("GL", "SL"):
            raise GroupError("graph-automorphism cosets are modelled for GL/SL")
        self.spec = spec
        self.twist = twist % 2
        self.g = g

    def __repr__(self):
        return f"TwistedGroupElement(tau^{self.twist}, {self.spec.name})"

    def __eq__(self, other):
        return (
            isinstance(other, TwistedGroupElement)
            and self.twist == other.twist
            and self.g == other.g
        )

    def __hash__(self):
        return hash((self.twist, self.g))

    def __mul__(self, other):
        if isinstance(other, GroupElement):
            other = TwistedGroupElement(self.spec, 0, other)
        g = self.g.matrix
        if other.twist:
            g = theta(self.spec, g)
        return TwistedGroupElement(
            self.spec, self.twist + other.twist, GroupElement(self.spec, self.spec.field.matmul(g, other.g.matrix))
        )

    def square(self):
        return self * self

    def is_identity(self) -> bool:
        return self.twist == 0 and self.g.is_identity()

    def is_involution(self) -> bool:
        return self.square().is_identity() and not self.is_identity()

    def symmetric_form(self) -> np.ndarray:
        """S = J^-1 g; symmetric exactly when tau g is an involution."""
        return self.g.matrix[::-1].copy()

    def form_type(self) -> str:
        S = self.symmetric_form()
        if not np.array_equal(S, S.T):
            raise GroupError("tau g is not an involution")
        return "alternating" if not np.diag(S).any() else "non-alternating"


def tau_element(spec: GroupSpec):
    if spec.kind in ("GL", "SL"):
        return TwistedGroupElement(spec, 1, identity(spec))
    if spec.kind == "O":
        return GroupElement(spec, spec.tau_matrix)
    raise GroupError(f"no graph automorphism element for {spec.kind}")


# recipes --------------------------------------------------------------------


_ROOT_TERM = re.compile(r"([+-]?)(\d*)e(\d+)")


def parse_root(text: str, dim: int) -> AmbientRoot:
    text = text.replace(" ", "")
    pos = 0
    vec = [0] * dim
    for t in _ROOT_TERM.finditer(text):
        if t.start() != pos:
            raise GroupError(f"cannot parse root {text!r}")
        pos = t.end()
        coeff = int(t.group(2) or 1) * (-1 if t.group(1) == "-" else 1)
        idx = int(t.group(3)) - 1
        if not 0 <= idx < dim:
            raise GroupError(f"index out of range in {text!r}")
        vec[idx] += coeff
    if pos != len(text) or not text:
        raise GroupError(f"cannot parse root {text!r}")
    return tuple(vec)


def format_root(root) -> str:
    out = ""
    for k, c in enumerate(root, 1):
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if out else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        out += f"{sign}{mag}e{k}"
    return out or "0"


@dataclass(frozen=True)
class Recipe:
    """A word in the symbols tau, n_root and x_root(xi)."""

    tokens: tuple

    def __str__(self):
        parts = []
        for t in self.tokens:
            if t[0] == "tau":
                parts.append("tau")
            elif t[0] == "n":
                parts.append(f"n({format_root(t[1])})")
            else:
                parts.append(f"x({format_root(t[1])};{t[2]})")
        return " ".join(parts)


def recipe(*tokens) -> Recipe:
    return Recipe(tuple(tokens))


_TOKEN = re.compile(r"^(tau|n\(([^)]*)\)|x\(([^;)]*);(\d+)\))$")


def parse_recipe(text: str, dim: int) -> Recipe:
    tokens = []
    for word in text.split():
        t = _TOKEN.match(word)
        if not t:
            raise GroupError(f"unknown recipe symbol {word!r}")
        if t.group(1) == "tau":
            tokens.append(("tau",))
        elif t.group(2) is not None:
            tokens.append(("n", parse_root(t.group(2), dim)))
        else:
            tokens.append(("x", parse_root(t.group(3), dim), int(t.group(4))))
    return Recipe(tuple(tokens))


def build_representative(spec: GroupSpec, rec: Recipe):
    """Multiply out a recipe.  ``tau`` lifts GL to a coset element and
    turns SO into O (the basis swap)."""
    if any(t[0] == "tau" for t in rec.tokens):
        if spec.kind == "SO":
            spec = group_spec("O", spec.n, spec.field)
        if spec.kind not in ("GL", "SL", "O"):
            raise GroupError(f"tau is not available in {spec.kind}")
    acc = identity(spec)
    for t in rec.tokens:
        if t[0] == "tau":
            factor = tau_element(spec)
        elif t[0] == "n":
            factor = n_alpha(spec, t[1])
        elif t[0] == "x":
            if not 0 <= t[2] < spec.field.q:
                raise GroupError(f"scalar {t[2]} outside GF({spec.field.q})")
            factor = x_alpha(spec, t[1], t[2])
        else:
            raise GroupError(f"unknown recipe symbol {t[0]!r}")
        if isinstance(acc, GroupElement) and isinstance(factor, TwistedGroupElement):
            acc = TwistedGroupElement(spec, 0, acc) * factor
        else:
            acc = acc * factor
    return acc


# random elements ------------------------------------------------------------


def random_torus(spec: GroupSpec, rng) -> GroupElement:
    F = spec.field
    if F.q == 2:
        return identity(spec)
    h = identity(spec)
    for alpha in spec.simple_roots:
        h = h * h_alpha(spec, alpha, int(rng.integers(1, F.q)))
    if spec.kind == "GL":
        d = np.eye(spec.m, dtype=np.uint8)
        d[0, 0] = int(rng.integers(1, F.q))
        h = h * GroupElement(spec, d)
    return h


def random_unipotent_upper(spec: GroupSpec, rng) -> GroupElement:
    g = identity(spec)
    for alpha in spec.positive_roots:
        g = g * x_alpha(spec, alpha, int(rng.integers(0, spec.field.q)))
    return g


def random_borel(spec: GroupSpec, rng) -> GroupElement:
    return random_torus(spec, rng) * random_unipotent_upper(spec, rng)


def random_weyl(spec: GroupSpec, rng, steps: int | None = None) -> rc.WeylElement:
    rs = spec.rs
    w = rs.identity()
    for _ in range(steps if steps is not None else 3 * rs.num_positive_roots):
        w = w * rs.simple_reflection(int(rng.integers(1, rs.rank + 1)))
    return w


def random_element(spec: GroupSpec, rng, steps: int = 12) -> GroupElement:
    g = random_borel(spec, rng)
    roots = spec.simple_roots
    for _ in range(steps):
        a = roots[int(rng.integers(len(roots)))]
        if rng.integers(2):
            a = tuple(-x for x in a)
        g = g * x_alpha(spec, a, int(rng.integers(0, spec.field.q)))
    return g


# serialization --------------------------------------------------------------


def serialize(g: GroupElement) -> str:
    """Header ``kind:m:k:poly`` and one hex line per bit-plane."""
    spec = g.spec
    F = spec.field
    lines = [f"{spec.kind}:{spec.m}:{F.k}:{F.poly:#x}"]
    for p in range(F.k):
        bits = ((g.matrix >> p) & 1).reshape(-1)
        lines.append(np.packbits(bits).tobytes().hex())
    return "\n".join(lines)


def deserialize(text: str) -> GroupElement:
    lines = [ln.strip() for ln in text.replace(";", "\n").strip().splitlines() if ln.strip()]
    if not lines:
        raise GroupError("empty element dump")
    head = lines[0].split(":")
    if len(head) != 4:
        raise GroupError(f"bad header {lines[0]!r}; expected kind:m:k:poly")
    kind, m, k, poly = head
    try:
        m, k, poly = int(m), int(k), int(poly, 0)
    except ValueError:
        raise GroupError(f"bad header {lines[0]!r}") from None
    if kind not in KINDS:
        raise GroupError(f"unknown group kind {kind!r}")
    n = m if kind in ("GL", "SL") else m // 2
    if kind not in ("GL", "SL") and m % 2:
        raise GroupError("form groups need even m")
    spec = group_spec(kind, n, make_field(k, poly))
    if len(lines) != 1 + k:
        raise GroupError(f"expected {k} bit-plane lines, got {len(lines) - 1}")
    M = np.zeros(m * m, dtype=np.uint8)
    nbytes = (m * m + 7) // 8
    for p, line in enumerate(lines[1:]):
        try:
            raw = bytes.fromhex(line)
        except ValueError:
            raise GroupError(f"malformed hex in plane {p}") from None
        if len(raw) != nbytes:
            raise GroupError(f"plane {p} has {len(raw)} bytes, expected {nbytes}")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))[: m * m]
        M |= bits << p
    return element(spec, M.reshape(m, m))
