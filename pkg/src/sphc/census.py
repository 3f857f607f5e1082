"""Brute-force census of unipotent classes over small finite fields.

Every unipotent element is conjugate into the upper unitriangular group
U(F_q), so breadth-first conjugation orbits seeded from U(F_q) exhaust the
unipotent variety; the orbit sizes must add up to q^(2N).  Orbits are
rational classes; those with the same label are fused into one geometric
class.  Degree estimates, B-orbit probes and Bruhat-cell histograms are
computed on the enumerated classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import chevmat as cm
from . import rootcore as rc
from .classlabels import ClassLabel, Partition, all_labels, label_leq, order4_minimal_labels
from .gf import GF, field_for_q

DEFAULT_MEMORY_LIMIT = 2 * 1024**3
CHUNK = 1 << 16


class ResourceGuardError(RuntimeError):
    """An enumeration would exceed the configured memory bound."""


_POLYNOMIALS: dict | None = None


def set_polynomials(polynomials: dict | None) -> None:
    """Choose the defining polynomials of GF(2^k) used by later censuses."""
    global _POLYNOMIALS
    _POLYNOMIALS = dict(polynomials) if polynomials else None
    _census_cached.cache_clear()


def group_over(kind: str, n: int, q: int) -> cm.GroupSpec:
    return cm.group_spec(kind, n, field_for_q(q, _POLYNOMIALS))


# packing --------------------------------------------------------------------


class KeyPacker:
    """Injective keys for stacks of matrices: uint64 when they fit, bytes otherwise."""

    def __init__(self, F: GF, m: int):
        self.bits = m * m * F.k
        self.k = F.k
        self.m = m
        if self.bits <= 64:
            self.weights = np.array([1 << (F.k * j) for j in range(m * m)], dtype=np.uint64)

    @property
    def compact(self) -> bool:
        return self.bits <= 64

    def keys(self, stack: np.ndarray) -> np.ndarray:
        flat = stack.reshape(len(stack), -1)
        if self.compact:
            return (flat.astype(np.uint64) * self.weights).sum(axis=1, dtype=np.uint64)
        return np.array([row.tobytes() for row in flat], dtype=object)

    def bytes_per_element(self) -> int:
        """Resident cost of one stored orbit element: matrix, key and index copies."""
        return 2 * (self.m * self.m + (24 if self.compact else 200))


class _KeySet:
    """A growing set of keys supporting vectorised membership tests."""

    def __init__(self, compact: bool):
        self.compact = compact
        self._sorted = np.zeros(0, dtype=np.uint64)
        self._set: set = set()

    def __len__(self):
        return len(self._sorted) if self.compact else len(self._set)

    def contains(self, keys) -> np.ndarray:
        if self.compact:
            if not len(self._sorted):
                return np.zeros(len(keys), dtype=bool)
            pos = np.searchsorted(self._sorted, keys)
            pos[pos == len(self._sorted)] = 0
            return self._sorted[pos] == keys
        return np.array([k in self._set for k in keys], dtype=bool)

    def add(self, keys) -> None:
        if self.compact:
            self._sorted = np.union1d(self._sorted, keys)
        else:
            self._set.update(keys)


def _dedupe(keys, stack):
    if isinstance(keys, np.ndarray) and keys.dtype == np.uint64:
        keys, idx = np.unique(keys, return_index=True)
        return keys, stack[idx]
    seen = {}
    for i, k in enumerate(keys):
        seen.setdefault(k, i)
    idx = np.array(sorted(seen.values()), dtype=np.int64)
    return np.array([keys[i] for i in idx], dtype=object), stack[idx]


# group data -----------------------------------------------------------------


def _pairs(F: GF, mats):
    return [(g, F.inverse(g)) for g in mats]


def conjugation_generators(spec: cm.GroupSpec, with_tau: bool = False):
    """Generators of G(F_q) as (g, g^-1) pairs."""
    F = spec.field
    gens = []
    for alpha in spec.simple_roots:
        for sign in (1, -1):
            root = tuple(sign * a for a in alpha)
            for b in F.additive_basis():
                gens.append(cm.x_alpha(spec, root, b).matrix)
    if spec.kind == "GL" and F.q > 2:
        d = np.eye(spec.m, dtype=np.uint8)
        d[0, 0] = F.generator
        gens.append(d)
    if with_tau:
        gens.append(spec.tau_matrix)
    return _pairs(F, gens)


def borel_generators(spec: cm.GroupSpec):
    F = spec.field
    gens = []
    for alpha in spec.positive_roots:
        for b in F.additive_basis():
            gens.append(cm.x_alpha(spec, alpha, b).matrix)
    if F.q > 2:
        for alpha in spec.simple_roots:
            gens.append(cm.h_alpha(spec, alpha, F.generator).matrix)
        if spec.kind == "GL":
            d = np.eye(spec.m, dtype=np.uint8)
            d[0, 0] = F.generator
            gens.append(d)
    return _pairs(F, gens)


def unitriangular_elements(spec: cm.GroupSpec) -> np.ndarray:
    """All of U(F_q), as ordered products of root elements."""
    F = spec.field
    stack = np.eye(spec.m, dtype=np.uint8)[None]
    for alpha in spec.positive_roots:
        factors = np.stack([cm.x_alpha(spec, alpha, xi).matrix for xi in range(F.q)])
        stack = F.matmul(stack[:, None], factors[None]).reshape(-1, spec.m, spec.m)
    return stack


def num_positive_roots(spec: cm.GroupSpec) -> int:
    return spec.rs.num_positive_roots


def orbit_bfs(F: GF, seed: np.ndarray, gens, packer: KeyPacker, cap: int | None = None,
              target_key=None):
    """Conjugation orbit of ``seed`` (or a stack of seeds) under ``<gens>``.

    Returns (keys, elements); ``None`` when the orbit exceeds ``cap``.
    With ``target_key`` the search stops as soon as that key is reached and
    returns ``True``/``False``.
    """
    seeds = seed[None] if seed.ndim == 2 else seed
    keys, frontier = _dedupe(packer.keys(seeds), seeds)
    seen = _KeySet(packer.compact)
    seen.add(keys)
    chunks = [frontier]
    key_chunks = [keys]
    total = len(frontier)
    while len(frontier):
        level_keys, level = [], []
        for start in range(0, len(frontier), CHUNK):
            block = frontier[start:start + CHUNK]
            cand = np.concatenate([F.matmul(F.matmul(g, block), gi) for g, gi in gens])
            ck, cand = _dedupe(packer.keys(cand), cand)
            fresh = ~seen.contains(ck)
            ck, cand = ck[fresh], cand[fresh]
            if not len(ck):
                continue
            if target_key is not None and (ck == target_key).any():
                return True
            seen.add(ck)
            total += len(ck)
            if cap is not None and total > cap:
                return None
            level_keys.append(ck)
            level.append(cand)
        if not level:
            break
        frontier = np.concatenate(level)
        chunks.append(frontier)
        key_chunks.append(np.concatenate(level_keys))
    if target_key is not None:
        return bool(seen.contains(np.array([target_key], dtype=seen._sorted.dtype
                                           if packer.compact else object))[0])
    return np.concatenate(key_chunks), np.concatenate(chunks)


def orbit_partition(F: GF, stack: np.ndarray, gens, packer: KeyPacker) -> list[int]:
    """Sizes of the orbits of ``<gens>`` on a stable set of matrices."""
    keys = packer.keys(stack)
    order = np.argsort(keys) if packer.compact else None
    covered = np.zeros(len(stack), dtype=bool)
    sizes = []
    if packer.compact:
        skeys = keys[order]
    else:
        index = {k: i for i, k in enumerate(keys)}
    start = 0
    while True:
        rest = np.nonzero(~covered[start:])[0]
        if not len(rest):
            break
        i = start + int(rest[0])
        start = i
        okeys, _ = orbit_bfs(F, stack[i], gens, packer)
        sizes.append(len(okeys))
        if packer.compact:
            pos = np.searchsorted(skeys, okeys)
            covered[order[pos]] = True
        else:
            covered[[index[k] for k in okeys]] = True
    return sizes


# labels ---------------------------------------------------------------------


def label_of(spec: cm.GroupSpec, M) -> ClassLabel:
    g = cm.GroupElement(spec, M)
    if spec.kind in ("GL", "SL"):
        return ClassLabel("GL", spec.m, cm.jordan_type(g))
    return cm.epsilon_invariant(g)


def gl_order(m: int, q: int) -> int:
    out = 1
    for i in range(m):
        out *= q**m - q**i
    return out


def gl_class_size(lam: Partition, q: int) -> int:
    """|GL_m(q)| / |C(u)| for a unipotent u of Jordan type ``lam``."""
    dual = lam.dual().parts
    mult = lam.multiplicities()
    cent = q ** (sum(d * d for d in dual) - sum(v * v for v in mult.values()))
    for v in mult.values():
        cent *= gl_order(v, q)
    return gl_order(lam.size, q) // cent


# census ---------------------------------------------------------------------


@dataclass
class RationalClass:
    label: ClassLabel
    size: int
    representative: np.ndarray
    elements: np.ndarray | None = field(default=None, repr=False)


@dataclass
class ClassRecord:
    label: ClassLabel
    sizes: dict = field(default_factory=dict)  # q -> geometric class size
    rational_sizes: dict = field(default_factory=dict)  # q -> list of sizes
    fusion_verified: bool | None = None
    degree: int | None = None
    degree_inconclusive: bool = False
    b_orbit_max: dict = field(default_factory=dict)
    b_orbit_count: dict = field(default_factory=dict)
    b_orbit_degree: int | None = None
    verdict: str | None = None
    cells: dict = field(default_factory=dict)  # q -> {word: count}
    flags: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "label": str(self.label),
            "sizes": {str(q): s for q, s in self.sizes.items()},
            "rational_class_sizes": {str(q): s for q, s in self.rational_sizes.items()},
            "fused_rational_classes": {str(q): len(s) for q, s in self.rational_sizes.items()},
            "fusion_verified": self.fusion_verified,
            "estimated_dim": self.degree,
            "estimated_dim_inconclusive": self.degree_inconclusive,
            "max_b_orbit": {str(q): s for q, s in self.b_orbit_max.items()},
            "b_orbit_count": {str(q): s for q, s in self.b_orbit_count.items()},
            "estimated_max_b_orbit_dim": self.b_orbit_degree,
            "spherical_verdict": self.verdict,
            "cells": {str(q): c for q, c in self.cells.items()},
            "flags": self.flags,
        }


@dataclass
class QCensus:
    spec: cm.GroupSpec
    classes: list  # of RationalClass
    total: int
    expected_total: int
    omitted: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.omitted and self.total == self.expected_total

    def by_label(self) -> dict:
        out: dict = {}
        for c in self.classes:
            out.setdefault(c.label, []).append(c)
        return out


def _check_scope(kind: str, n: int, q: int) -> None:
    if kind not in ("GL", "SL", "Sp", "SO"):
        raise ValueError(f"census covers GL, Sp and SO, not {kind}")
    if q & (q - 1) or not 2 <= q <= 256:
        raise ValueError(f"q={q} is not a power of 2")


@lru_cache(maxsize=16)
def _census_cached(kind: str, n: int, q: int, memory_limit: int, polys=None) -> QCensus:
    return _enumerate(kind, n, q, memory_limit)


def unipotent_census(kind: str, n: int, q: int, memory_limit: int = DEFAULT_MEMORY_LIMIT) -> QCensus:
    _check_scope(kind, n, q)
    polys = tuple(sorted(_POLYNOMIALS.items())) if _POLYNOMIALS else None
    return _census_cached(kind, n, q, memory_limit, polys)


def _enumerate(kind: str, n: int, q: int, memory_limit: int) -> QCensus:
    spec = group_over(kind, n, q)
    F = spec.field
    N = num_positive_roots(spec)
    expected = q ** (2 * N)
    packer = KeyPacker(F, spec.m)
    per = packer.bytes_per_element()
    if q**N * per > memory_limit:
        raise ResourceGuardError(f"U({spec.name}) has {q**N} elements; over the memory guard")
    cap = memory_limit // per
    U = unitriangular_elements(spec)
    ukeys = packer.keys(U)
    covered = np.zeros(len(U), dtype=bool)
    gens = conjugation_generators(spec)
    classes: list[RationalClass] = []
    omitted: list[str] = []
    skip_labels: set = set()
    used = 0
    if packer.compact:
        uorder = np.argsort(ukeys)
        usorted = ukeys[uorder]
    else:
        uindex = {k: i for i, k in enumerate(ukeys)}
    for i in range(len(U)):
        if covered[i]:
            continue
        lab = label_of(spec, U[i])
        if lab in skip_labels:
            covered[i] = True
            continue
        if kind in ("GL", "SL") and gl_class_size(lab.lam, q) > max(cap - used, 0):
            omitted.append(str(lab))
            skip_labels.add(lab)
            covered[i] = True
            continue
        res = orbit_bfs(F, U[i], gens, packer, cap=max(cap - used, 0))
        if res is None:
            omitted.append(str(lab))
            skip_labels.add(lab)
            covered[i] = True
            continue
        okeys, elems = res
        used += len(okeys)
        classes.append(RationalClass(lab, len(okeys), U[i].copy(), elems))
        if packer.compact:
            pos = np.searchsorted(usorted, okeys)
            pos[pos == len(usorted)] = 0
            hit = usorted[pos] == okeys
            covered[uorder[pos[hit]]] = True
        else:
            for k in okeys:
                j = uindex.get(k)
                if j is not None:
                    covered[j] = True
    total = sum(c.size for c in classes)
    return QCensus(spec, classes, total, expected, omitted)


def are_conjugate(spec: cm.GroupSpec, x, y, memory_limit: int = DEFAULT_MEMORY_LIMIT) -> bool:
    """Conjugacy in G(F_q) by orbit search."""
    F = spec.field
    packer = KeyPacker(F, spec.m)
    X = np.asarray(getattr(x, "matrix", x), dtype=np.uint8)
    Y = np.asarray(getattr(y, "matrix", y), dtype=np.uint8)
    target = packer.keys(Y[None])[0]
    if packer.keys(X[None])[0] == target:
        return True
    cap = memory_limit // packer.bytes_per_element()
    res = orbit_bfs(F, X, conjugation_generators(spec), packer, cap=cap, target_key=target)
    if res is None:
        raise ResourceGuardError("conjugacy search exceeded the memory guard")
    return bool(res)


def verify_fusion(kind: str, n: int, q: int, label: ClassLabel,
                  memory_limit: int = DEFAULT_MEMORY_LIMIT) -> bool | None:
    """Are the rational classes of ``label`` conjugate over GF(q^2)?

    Returns None when there is nothing to fuse or the search is too large.
    """
    cen = unipotent_census(kind, n, q, memory_limit)
    reps = [c for c in cen.classes if c.label == label]
    if len(reps) < 2:
        return None
    k2 = 2 * cen.spec.field.k
    if k2 > 4:
        return None
    big = group_over(kind, n, 1 << k2)
    est = max(c.size for c in reps) ** 2 * KeyPacker(big.field, big.m).bytes_per_element()
    if est > memory_limit:
        return None
    first = reps[0].representative
    return all(are_conjugate(big, first, r.representative, memory_limit) for r in reps[1:])


# estimators -----------------------------------------------------------------


@dataclass
class DegreeEstimate:
    value: int | None
    per_pair: dict
    inconclusive: bool

    def __int__(self):
        return int(self.value)


def _ratio_degree(sizes: dict) -> DegreeEstimate:
    qs = sorted(sizes)
    per = {}
    for a, b in zip(qs, qs[1:]):
        per[(a, b)] = math.log(sizes[b] / sizes[a]) / math.log(b / a)
    rounded = {round(v) for v in per.values()}
    if len(rounded) != 1:
        return DegreeEstimate(None, per, True)
    return DegreeEstimate(rounded.pop(), per, False)


def _fit_degree(sizes: dict) -> DegreeEstimate:
    """Fit size = q^a (q-1)^b on consecutive q-pairs; degree a + b."""
    qs = sorted(sizes)
    per = {}
    for a, b in zip(qs, qs[1:]):
        A = np.array([[math.log(a), math.log(a - 1)], [math.log(b), math.log(b - 1)]])
        rhs = np.array([math.log(sizes[a]), math.log(sizes[b])])
        x, y = np.linalg.lstsq(A, rhs, rcond=None)[0]
        per[(a, b)] = x + y
    rounded = {round(v) for v in per.values()}
    if len(rounded) != 1:
        return DegreeEstimate(None, per, True)
    return DegreeEstimate(rounded.pop(), per, False)


def geometric_class_size(kind: str, n: int, q: int, label: ClassLabel,
                         memory_limit: int = DEFAULT_MEMORY_LIMIT) -> int:
    cen = unipotent_census(kind, n, q, memory_limit)
    if str(label) in cen.omitted:
        raise ResourceGuardError(f"class {label} was omitted at q={q}")
    return sum(c.size for c in cen.classes if c.label == label)


def class_size_degree(kind: str, n: int, label: ClassLabel, probe_qs=(2, 4),
                      memory_limit: int = DEFAULT_MEMORY_LIMIT) -> DegreeEstimate:
    sizes = {q: geometric_class_size(kind, n, q, label, memory_limit) for q in probe_qs}
    if any(s == 0 for s in sizes.values()):
        raise ValueError(f"class {label} does not occur")
    return _ratio_degree(sizes)


def class_elements(kind: str, n: int, q: int, label: ClassLabel,
                   memory_limit: int = DEFAULT_MEMORY_LIMIT) -> np.ndarray:
    cen = unipotent_census(kind, n, q, memory_limit)
    parts = [c.elements for c in cen.classes if c.label == label]
    if not parts:
        raise ValueError(f"class {label} does not occur")
    return np.concatenate(parts)


def b_orbit_sizes(kind: str, n: int, q: int, label: ClassLabel,
                  memory_limit: int = DEFAULT_MEMORY_LIMIT) -> list[int]:
    spec = group_over(kind, n, q)
    elems = class_elements(kind, n, q, label, memory_limit)
    packer = KeyPacker(spec.field, spec.m)
    return sorted(orbit_partition(spec.field, elems, borel_generators(spec), packer), reverse=True)


@dataclass
class BOrbitResult:
    degree: int | None
    verdict: str
    max_orbit: dict
    orbit_count: dict
    class_degree: int | None
    detail: dict


def max_b_orbit_degree(kind: str, n: int, label: ClassLabel, probe_qs=(2, 4),
                       memory_limit: int = DEFAULT_MEMORY_LIMIT) -> BOrbitResult:
    """Degree of the largest B(F_q)-orbit in the class and a sphericity verdict.

    With two or more q the largest orbit size is fitted to q^a (q-1)^b and
    compared with the class degree on every q-pair.  With a single q only a
    negative verdict is possible: the class is declared non-spherical when
    the largest orbit falls short of the class size by at least q^2.
    """
    qs = sorted(probe_qs)
    maxes, counts, csizes = {}, {}, {}
    for q in qs:
        sizes = b_orbit_sizes(kind, n, q, label, memory_limit)
        maxes[q] = sizes[0]
        counts[q] = len(sizes)
        csizes[q] = geometric_class_size(kind, n, q, label, memory_limit)
    if len(qs) == 1:
        q = qs[0]
        bdeg = round(math.log(maxes[q], q))
        cdeg = round(math.log(csizes[q], q))
        verdict = "non-spherical" if bdeg <= cdeg - 2 else "inconclusive"
        return BOrbitResult(bdeg, verdict, maxes, counts, None,
                            {"single_q": q, "class_log": math.log(csizes[q], q),
                             "b_orbit_log": math.log(maxes[q], q)})
    b_est = _fit_degree(maxes)
    c_est = _ratio_degree(csizes)
    if b_est.inconclusive or c_est.inconclusive:
        verdict = "inconclusive"
    else:
        pair_b = {p: round(v) for p, v in b_est.per_pair.items()}
        pair_c = {p: round(v) for p, v in c_est.per_pair.items()}
        if all(pair_b[p] == pair_c[p] for p in pair_b):
            verdict = "spherical"
        elif all(pair_b[p] < pair_c[p] for p in pair_b):
            verdict = "non-spherical"
        else:
            verdict = "inconclusive"
    return BOrbitResult(b_est.value, verdict, maxes, counts, c_est.value,
                        {"b_fit": {f"{a},{b}": v for (a, b), v in b_est.per_pair.items()},
                         "class_ratio": {f"{a},{b}": v for (a, b), v in c_est.per_pair.items()}})


def cell_histogram(spec: cm.GroupSpec, elems: np.ndarray) -> dict:
    """Counts of Bruhat cells, keyed by WeylElement."""
    sig = cm.cell_permutations(spec.field, elems)
    uniq, counts = np.unique(sig, axis=0, return_counts=True)
    return {cm.permutation_to_weyl(spec, s): int(c) for s, c in zip(uniq, counts)}


def cell_distribution(kind: str, n: int, label: ClassLabel, q: int,
                      memory_limit: int = DEFAULT_MEMORY_LIMIT) -> dict:
    spec = group_over(kind, n, q)
    return cell_histogram(spec, class_elements(kind, n, q, label, memory_limit))


def weyl_word_text(spec: cm.GroupSpec, w: rc.WeylElement) -> str:
    if w.is_identity():
        return "e"
    if w.is_involution():
        roots = rc.involution_orthogonal_decomposition(spec.rs, w)
        return " ".join(f"s({cm.format_root(spec.to_ambient(b))})" for b in roots)
    return "".join(f"s{i}" for i in rc.reduced_word(w))


def argmax_cell(hist: dict):
    return max(hist.items(), key=lambda kv: (kv[1], kv[0].length))[0]


# outer coset ------------------------------------------------------------------


def group_elements(spec: cm.GroupSpec, gens, memory_limit: int = DEFAULT_MEMORY_LIMIT) -> np.ndarray:
    """All elements of the group generated by ``gens`` (right multiplication)."""
    F = spec.field
    packer = KeyPacker(F, spec.m)
    cap = memory_limit // packer.bytes_per_element()
    ident = np.eye(spec.m, dtype=np.uint8)[None]
    seen = _KeySet(packer.compact)
    seen.add(packer.keys(ident))
    frontier = ident
    chunks = [ident]
    total = 1
    while len(frontier):
        cand = np.concatenate([F.matmul(frontier, g) for g, _ in gens])
        ck, cand = _dedupe(packer.keys(cand), cand)
        fresh = ~seen.contains(ck)
        ck, cand = ck[fresh], cand[fresh]
        seen.add(ck)
        total += len(ck)
        if total > cap:
            raise ResourceGuardError(f"{spec.name} is too large to enumerate")
        chunks.append(cand)
        frontier = cand
    return np.concatenate(chunks)


def orthogonal_group_order(n: int, q: int) -> int:
    """|O^+(2n, q)| for even q."""
    order = 2 * q ** (n * (n - 1)) * (q**n - 1)
    for i in range(1, n):
        order *= q ** (2 * i) - 1
    return order


@dataclass
class OuterCensus:
    n: int
    q: int
    group_order: int
    buckets: dict  # Jordan type -> count
    single_class: dict  # Jordan type -> bool
    expected_types: list
    representatives_ok: dict

    @property
    def passed(self) -> bool:
        return (sorted(self.buckets) == sorted(self.expected_types)
                and all(self.single_class.values())
                and all(self.representatives_ok.values()))

    def to_dict(self) -> dict:
        return {
            "group": f"O({2 * self.n},{self.q})",
            "group_order": self.group_order,
            "buckets": {k: v for k, v in self.buckets.items()},
            "single_SO_class": self.single_class,
            "expected_types": self.expected_types,
            "representatives_in_bucket": self.representatives_ok,
            "passed": self.passed,
        }


def outer_coset_census(n: int, q: int = 2, memory_limit: int = DEFAULT_MEMORY_LIMIT) -> OuterCensus:
    if n < 2:
        raise ValueError("need n >= 2")
    order = orthogonal_group_order(n, q)
    spec_o = group_over("O", n, q)
    packer = KeyPacker(spec_o.field, spec_o.m)
    if order * packer.bytes_per_element() > memory_limit:
        raise ResourceGuardError(f"O({2 * n},{q}) has {order} elements; over the memory guard")
    F = spec_o.field
    spec_so = group_over("SO", n, q)
    gens_so = conjugation_generators(spec_so)
    elems = group_elements(spec_o, conjugation_generators(spec_o, with_tau=True), memory_limit)
    if len(elems) != order:
        raise AssertionError(f"enumerated {len(elems)} elements, expected {order}")
    eye = np.eye(spec_o.m, dtype=np.uint8)
    sq = F.matmul(elems, elems)
    invol = elems[(sq == eye).all(axis=(1, 2)) & ~(elems == eye).all(axis=(1, 2))]
    outer = np.array([g for g in invol if cm.dickson_invariant_matrix(F, g)], dtype=np.uint8)
    buckets: dict = {}
    members: dict = {}
    for g in outer:
        lam = str(cm.jordan_type_matrix(F, g ^ eye))
        buckets[lam] = buckets.get(lam, 0) + 1
        members.setdefault(lam, g)
    single = {}
    for lam, g in members.items():
        okeys, _ = orbit_bfs(F, g, gens_so, packer)
        single[lam] = len(okeys) == buckets[lam]
    expected = [str(Partition.of([2] * k + [1] * (2 * n - 2 * k))) for k in range(1, n + 1, 2)]
    from .sphericity import table12_rows

    reps = {}
    rows = table12_rows(n) if n >= 2 else []
    for row in rows:
        x = cm.build_representative(spec_o, row.recipe)
        lam = cm.jordan_type_matrix(F, x.matrix ^ eye)
        reps[row.class_name] = (str(lam) in buckets and x.is_involution()
                                and lam == row.expected_label.lam)
    return OuterCensus(n, q, order, buckets, single, expected, reps)


# minimality -------------------------------------------------------------------


@dataclass
class MinimalityResult:
    n: int
    minimal: list
    label_check: bool
    verdicts: dict

    @property
    def passed(self) -> bool:
        return self.label_check and all(v == "non-spherical" for v in self.verdicts.values())


def minimality_check(n: int, memory_limit: int = DEFAULT_MEMORY_LIMIT) -> MinimalityResult:
    order4 = [lab for lab in all_labels("Sp", n) if lab.lam.parts[0] in (3, 4)]
    brute = {a for a in order4 if not any(b != a and label_leq(b, a) for b in order4)}
    minimal = order4_minimal_labels(n)
    verdicts = {}
    if n <= 3:
        qs = (2, 4) if n == 2 else (2,)
        for lab in sorted(minimal, key=str):
            verdicts[str(lab)] = max_b_orbit_degree("Sp", n, lab, qs, memory_limit).verdict
    return MinimalityResult(n, sorted(str(x) for x in minimal), brute == minimal, verdicts)


# report -----------------------------------------------------------------------


@dataclass
class CensusReport:
    group: str
    n: int
    probe_qs: tuple
    totals: dict
    expected_totals: dict
    complete: dict
    records: list
    omitted: dict

    @property
    def steinberg_ok(self) -> bool:
        return all(self.totals[q] == self.expected_totals[q] for q in self.totals
                   if not self.omitted.get(q))

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "probe_qs": list(self.probe_qs),
            "totals": {str(q): t for q, t in self.totals.items()},
            "expected_totals": {str(q): t for q, t in self.expected_totals.items()},
            "complete": {str(q): c for q, c in self.complete.items()},
            "steinberg_ok": self.steinberg_ok,
            "omitted": {str(q): o for q, o in self.omitted.items()},
            "classes": [r.to_dict() for r in self.records],
        }


def _label_sort_key(lab: ClassLabel):
    return (lab.lam.parts, lab.epsilon, lab.so_split_tag or "")


def enumerate_unipotent_classes(kind: str, n: int, probe_qs=(2,), only=None,
                                b_orbits: bool = False, cells: bool = False,
                                memory_limit: int = DEFAULT_MEMORY_LIMIT) -> CensusReport:
    """Census over every q in ``probe_qs``; ``only`` restricts the per-class work."""
    qs = tuple(sorted(probe_qs))
    totals, expected, complete, omitted = {}, {}, {}, {}
    records: dict = {}
    for q in qs:
        try:
            cen = unipotent_census(kind, n, q, memory_limit)
        except ResourceGuardError as exc:
            omitted[q] = [f"entire census: {exc}"]
            totals[q] = 0
            spec = group_over(kind, n, q)
            expected[q] = q ** (2 * num_positive_roots(spec))
            complete[q] = False
            continue
        totals[q] = cen.total
        expected[q] = cen.expected_total
        complete[q] = cen.complete
        omitted[q] = list(cen.omitted)
        for lab, group in cen.by_label().items():
            rec = records.setdefault(lab, ClassRecord(lab))
            rec.sizes[q] = sum(c.size for c in group)
            rec.rational_sizes[q] = sorted((c.size for c in group), reverse=True)
    selected = [lab for lab in records if only is None or lab == only]
    for lab in selected:
        rec = records[lab]
        good_qs = [q for q in qs if q in rec.sizes]
        if len(rec.rational_sizes.get(qs[0], [])) > 1:
            rec.fusion_verified = verify_fusion(kind, n, qs[0], lab, memory_limit)
        if len(good_qs) >= 2:
            est = _ratio_degree({q: rec.sizes[q] for q in good_qs})
            rec.degree, rec.degree_inconclusive = est.value, est.inconclusive
        if b_orbits and sum(lab.lam.parts) != len(lab.lam.parts):
            res = max_b_orbit_degree(kind, n, lab, good_qs, memory_limit)
            rec.b_orbit_max, rec.b_orbit_count = res.max_orbit, res.orbit_count
            rec.b_orbit_degree, rec.verdict = res.degree, res.verdict
            spec = group_over(kind, n, good_qs[0])
            weyl_order = _weyl_order(spec.rs)
            if res.verdict == "spherical" and any(c > weyl_order for c in res.orbit_count.values()):
                rec.flags.append(f"B-orbit count exceeds |W|={weyl_order}")
        if cells:
            for q in good_qs:
                spec = group_over(kind, n, q)
                hist = cell_distribution(kind, n, lab, q, memory_limit)
                rec.cells[q] = {weyl_word_text(spec, w): c
                                for w, c in sorted(hist.items(), key=lambda kv: -kv[1])}
    ordered = [records[lab] for lab in sorted(records, key=_label_sort_key)
               if only is None or lab == only]
    return CensusReport(f"{kind}({_matrix_size(kind, n)})", n, qs, totals, expected,
                        complete, ordered, omitted)


def _matrix_size(kind: str, n: int) -> int:
    return n if kind in ("GL", "SL") else 2 * n


@lru_cache(maxsize=None)
def _weyl_order(rs: rc.RootSystem) -> int:
    seen = {rs.identity()}
    frontier = [rs.identity()]
    gens = [rs.simple_reflection(i) for i in range(1, rs.rank + 1)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                v = w * s
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return len(seen)
