"""Unipotent class labels (lambda, epsilon) for GL, Sp, O and SO in characteristic 2.

A label for Sp(2n)/O(2n)/SO(2n) is a partition of 2n together with a map
``epsilon`` from part sizes to ``{omega, 0, 1}``.  Only non-omega values are
stored; ``ClassLabel.eps(i)`` returns ``OMEGA`` for everything else.

Construction is permissive so that malformed labels can be inspected;
``validate_label`` checks the admissibility rules and ``make_label`` builds
a label with the forced values filled in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

OMEGA = "w"
KINDS = ("GL", "Sp", "O", "SO")
FORM_KINDS = ("Sp", "O", "SO")


class LabelError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise LabelError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise LabelError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> "Partition":
        parts = []
        for size in sorted(mult, reverse=True):
            parts.extend([size] * mult[size])
        return cls(tuple(parts))

    @classmethod
    def of(cls, parts) -> "Partition":
        return cls(tuple(sorted((int(p) for p in parts), reverse=True)))

    def c(self, i: int) -> int:
        return sum(1 for p in self.parts if p == i)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def dual(self) -> "Partition":
        return dual_partition(self)

    def __str__(self):
        if not self.parts:
            return "0"
        return "+".join(f"{p}^{c}" if c > 1 else f"{p}" for p, c in self.multiplicities().items())


def dual_partition(lam: Partition) -> Partition:
    if not lam.parts:
        return Partition(())
    return Partition(tuple(sum(1 for p in lam.parts if p > j) for j in range(lam.parts[0])))


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    if lam.size != mu.size:
        raise LabelError(f"cannot compare partitions of {lam.size} and {mu.size}")
    a = b = 0
    for j in range(max(len(lam), len(mu))):
        a += lam.parts[j] if j < len(lam) else 0
        b += mu.parts[j] if j < len(mu) else 0
        if a > b:
            return False
    return True


def partitions(total: int, largest: int | None = None):
    """All partitions of ``total`` in reverse lexicographic order."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class ClassLabel:
    group_kind: str
    n_param: int
    lam: Partition
    epsilon: tuple[tuple[int, int], ...] = ()
    so_split_tag: str | None = None

    def __post_init__(self):
        if self.group_kind not in KINDS:
            raise LabelError(f"unknown group kind {self.group_kind!r}")
        eps = self.epsilon
        if isinstance(eps, dict):
            eps = eps.items()
        cleaned = tuple(sorted((int(i), int(v)) for i, v in eps if v != OMEGA))
        object.__setattr__(self, "epsilon", cleaned)
        if not isinstance(self.lam, Partition):
            object.__setattr__(self, "lam", Partition.of(self.lam))

    def eps(self, i: int):
        for j, v in self.epsilon:
            if j == i:
                return v
        return OMEGA

    @property
    def matrix_size(self) -> int:
        return self.n_param if self.group_kind == "GL" else 2 * self.n_param

    def __str__(self):
        return format_label(self)


@dataclass(frozen=True)
class Validity:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_label(label: ClassLabel) -> Validity:
    lam = label.lam
    if lam.size != label.matrix_size:
        return Validity(False, f"partition of {lam.size}, expected {label.matrix_size}")
    if label.group_kind == "GL":
        if label.epsilon or label.so_split_tag:
            return Validity(False, "GL labels carry no epsilon or split tag")
        return Validity(True)
    mult = lam.multiplicities()
    for i, c in mult.items():
        if i % 2 and c % 2:
            return Validity(False, f"a: c({i})={c} is odd for odd part {i}")
    for i, v in label.epsilon:
        if i == 0:
            continue
        if v not in (0, 1):
            return Validity(False, f"epsilon({i})={v} is not 0, 1 or omega")
        if i % 2 or i not in mult:
            return Validity(False, f"b1: epsilon({i}) must be omega")
    for i, c in mult.items():
        if i % 2:
            continue
        if c % 2 and label.eps(i) != 1:
            return Validity(False, f"b2: c({i}) odd forces epsilon({i})=1")
        if label.eps(i) == OMEGA:
            return Validity(False, f"b3: epsilon({i}) must be 0 or 1")
    want0 = 1 if label.group_kind == "Sp" else 0
    if label.eps(0) != want0:
        return Validity(False, f"b4: epsilon(0) must be {want0} for {label.group_kind}")
    splittable = _splittable(label)
    if label.group_kind == "SO":
        if dual_partition(lam).parts[0] % 2:
            return Validity(False, "SO needs an even number of Jordan blocks")
        if splittable and label.so_split_tag not in ("I", "II"):
            return Validity(False, "this class splits in SO; a tag I/II is required")
    if label.so_split_tag is not None and not (label.group_kind == "SO" and splittable):
        return Validity(False, "split tag only allowed on splitting SO classes")
    return Validity(True)


def _splittable(label: ClassLabel) -> bool:
    mult = label.lam.multiplicities()
    if any(i % 2 or c % 2 for i, c in mult.items()):
        return False
    return all(label.eps(i) != 1 for i in mult)


def make_label(kind: str, n: int, parts, eps: dict | None = None, tag: str | None = None) -> ClassLabel:
    """Build a label, filling epsilon(0) and unmarked even parts with 1."""
    lam = parts if isinstance(parts, Partition) else Partition.of(parts)
    if kind == "GL":
        return ClassLabel("GL", n, lam)
    full = {0: 1 if kind == "Sp" else 0}
    for i in lam.multiplicities():
        if i % 2 == 0:
            full[i] = 1
    full.update(eps or {})
    return ClassLabel(kind, n, lam, tuple(full.items()), tag)


# ordering -------------------------------------------------------------------


def label_leq(a: ClassLabel, b: ClassLabel) -> bool:
    """Dominance on lambda, refined by epsilon (0 < 1) when lambda agrees."""
    if (a.group_kind, a.n_param) != (b.group_kind, b.n_param):
        raise LabelError(f"labels of {a.group_kind}({a.n_param}) and {b.group_kind}({b.n_param})")
    if a.lam != b.lam:
        return dominance_leq(a.lam, b.lam)
    if a.so_split_tag != b.so_split_tag:
        return False
    keys = {i for i, _ in a.epsilon} | {i for i, _ in b.epsilon}
    for i in keys:
        x, y = a.eps(i), b.eps(i)
        if x == y:
            continue
        if OMEGA in (x, y) or x > y:
            return False
    return True


def all_labels(kind: str, n: int) -> list[ClassLabel]:
    """Every valid label for GL(n) or Sp/O/SO(2n)."""
    if kind == "GL":
        return [ClassLabel("GL", n, Partition(p)) for p in partitions(n)]
    if kind not in FORM_KINDS:
        raise LabelError(f"unknown group kind {kind!r}")
    out = []
    for p in partitions(2 * n):
        lam = Partition(p)
        mult = lam.multiplicities()
        if any(i % 2 and c % 2 for i, c in mult.items()):
            continue
        if kind == "SO" and dual_partition(lam).parts[0] % 2:
            continue
        free = [i for i, c in mult.items() if i % 2 == 0 and c % 2 == 0]
        for bits in range(1 << len(free)):
            eps = {i: (bits >> t) & 1 for t, i in enumerate(free)}
            lab = make_label(kind, n, lam, eps)
            if kind == "SO" and _splittable(lab):
                out.append(make_label(kind, n, lam, eps, "I"))
                out.append(make_label(kind, n, lam, eps, "II"))
            else:
                out.append(lab)
    return out


def minimal_labels(labels) -> list[ClassLabel]:
    labels = list(labels)
    return [
        a
        for a in labels
        if not any(b != a and label_leq(b, a) for b in labels)
    ]


def order4_minimal_labels(n: int) -> set[ClassLabel]:
    if n < 2:
        raise LabelError("need n >= 2")
    order4 = [lab for lab in all_labels("Sp", n) if lab.lam.parts[0] in (3, 4)]
    return set(minimal_labels(order4))


# named classes --------------------------------------------------------------


@dataclass(frozen=True)
class NamedClass:
    name: str
    dim: int
    is_spherical: bool
    consists_of_involutions: bool
    label: ClassLabel | None = None
    component_group_order: int | None = None
    extra: dict = field(default_factory=dict, compare=False, hash=False)


def involution_labels(kind: str, n: int) -> list[NamedClass]:
    if kind == "Sp":
        if n < 1:
            raise LabelError("need n >= 1")
        out = []
        for ell in range(1, n + 1):
            if ell % 2 == 0:
                half = ell // 2
                lab = make_label("Sp", n, [2] * ell + [1] * (2 * n - 2 * ell), {2: 0})
                out.append(NamedClass(f"Y_{ell}", 4 * half * (n - half), True, True, lab))
            lab = make_label("Sp", n, [2] * ell + [1] * (2 * n - 2 * ell))
            out.append(NamedClass(f"X_{ell}", ell * (2 * n - ell + 1), True, True, lab))
        return out
    if kind == "SO":
        if n < 2:
            raise LabelError("need n >= 2")
        m = n // 2
        out = []
        for ell in range(1, m + 1):
            parts = [2] * (2 * ell) + [1] * (2 * n - 4 * ell)
            if ell == m and n % 2 == 0:
                out.append(NamedClass(f"X_{ell}", n * (n - 1), True, True,
                                      make_label("SO", n, parts, {2: 0}, "I")))
                out.append(NamedClass(f"X'_{ell}", n * (n - 1), True, True,
                                      make_label("SO", n, parts, {2: 0}, "II")))
            else:
                out.append(NamedClass(f"X_{ell}", 2 * ell * (2 * n - 2 * ell - 1), True, True,
                                      make_label("SO", n, parts, {2: 0})))
            out.append(NamedClass(f"Z_{ell}", 4 * ell * (n - ell), True, True,
                                  make_label("SO", n, parts)))
        return out
    raise LabelError(f"involution classes are tabulated for Sp and SO, not {kind!r}")


def outer_involution_labels(n: int) -> list[NamedClass]:
    """Involution classes of O(2n) outside SO(2n)."""
    if n < 4:
        raise LabelError("need n >= 4")
    out = []
    for k in range(1, n + 1, 2):
        lab = make_label("O", n, [2] * k + [1] * (2 * n - 2 * k))
        out.append(NamedClass(f"O_{k}", k * (2 * n - k), True, True, lab))
    return out


BAD_PRIMES = {"B": (2,), "C": (2,), "D": (2,), "E6": (2, 3), "E7": (2, 3), "E8": (2, 3, 5),
              "F4": (2, 3), "G2": (2, 3)}

# (name, dim, component group order, spherical, primes where the class exists)
_ALL = (2, 3, 5)
EXCEPTIONAL_CLASSES = {
    "E6": [("A1", 22, 1, True, _ALL), ("2A1", 32, 1, True, _ALL), ("3A1", 40, 1, True, _ALL),
           ("A2", 42, 2, False, _ALL)],
    "E7": [("A1", 34, 1, True, _ALL), ("2A1", 52, 1, True, _ALL), ("(3A1)''", 54, 1, True, _ALL),
           ("(3A1)'", 64, 1, True, _ALL), ("A2", 66, 2, False, _ALL), ("4A1", 70, 1, True, _ALL)],
    "E8": [("A1", 58, 1, True, _ALL), ("2A1", 92, 1, True, _ALL), ("3A1", 112, 1, True, _ALL),
           ("A2", 114, 2, False, _ALL), ("4A1", 128, 1, True, _ALL)],
    "F4": [("A1", 16, 1, True, _ALL), ("~A1", 16, 1, True, (2,)), ("~A1", 22, 2, True, (3, 5)),
           ("~A1(2)", 22, 1, True, (2,)), ("A1~A1", 28, 1, True, _ALL)],
    "G2": [("A1", 6, 1, True, _ALL), ("~A1", 6, 1, True, (3,)), ("~A1", 8, 1, True, (2, 5)),
           ("~A1(3)", 8, 1, True, (3,))],
}


def exceptional_classes(series: str, rank: int, char: int) -> list[NamedClass]:
    """Classes listed for an exceptional group, spherical or not."""
    key = f"{series}{rank}"
    if key not in EXCEPTIONAL_CLASSES:
        raise LabelError(f"no exceptional data for {key}")
    return [
        NamedClass(name, dim, sph, sph and char == 2, None, comp)
        for name, dim, comp, sph, primes in EXCEPTIONAL_CLASSES[key]
        if char in primes
    ]


def spherical_unipotent_classes(series: str, rank: int, char: int) -> list[NamedClass]:
    if series == "A":
        if rank < 1:
            raise LabelError("need rank >= 1")
        m = rank + 1
        return [
            NamedClass(f"X_{ell}", 2 * ell * (m - ell), True, char == 2,
                       make_label("GL", m, [2] * ell + [1] * (m - 2 * ell)))
            for ell in range(1, m // 2 + 1)
        ]
    key = series if series in "BCD" else f"{series}{rank}"
    if key not in BAD_PRIMES:
        raise LabelError(f"no simple group of type {series}{rank}")
    if char not in BAD_PRIMES[key]:
        raise LabelError(f"p={char} is not a bad prime for {series}{rank}; out of scope")
    if series in "BC":
        return involution_labels("Sp", rank)
    if series == "D":
        return involution_labels("SO", rank)
    return [c for c in exceptional_classes(series, rank, char) if c.is_spherical]


# text form ------------------------------------------------------------------

_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?(?:_([01]))?$")
_TAG = re.compile(r"^(.*?)(?:\((I|II)\))?$")


def format_label(label: ClassLabel) -> str:
    terms = []
    for i, c in label.lam.multiplicities().items():
        t = f"{i}^{c}" if c > 1 else f"{i}"
        if label.group_kind != "GL" and i % 2 == 0:
            v = label.eps(i)
            t += f"_{v}" if v != OMEGA else ""
        terms.append(t)
    text = "+".join(terms) if terms else "0"
    if label.so_split_tag:
        text += f"({label.so_split_tag})"
    return text


def parse_label(text: str, kind: str, n: int | None = None) -> ClassLabel:
    """Inverse of ``format_label``; unmarked even parts get epsilon 1."""
    m = _TAG.match(text.replace(" ", "").replace("⊕", "+"))
    body, tag = m.group(1), m.group(2)
    mult: dict[int, int] = {}
    eps: dict[int, int] = {}
    for term in body.split("+"):
        t = _TOKEN.match(term)
        if not t:
            raise LabelError(f"cannot parse label term {term!r} in {text!r}")
        part, count, e = int(t.group(1)), int(t.group(2) or 1), t.group(3)
        mult[part] = mult.get(part, 0) + count
        if e is not None:
            eps[part] = int(e)
    lam = Partition.from_multiplicities(mult)
    if n is None:
        n = lam.size if kind == "GL" else lam.size // 2
    if kind == "GL" and (eps or tag):
        raise LabelError("GL labels carry no epsilon")
    return make_label(kind, n, lam, eps, tag)


def sort_labels(labels) -> list[ClassLabel]:
    return sorted(labels, key=lambda a: (a.lam.parts, a.epsilon, a.so_split_tag or ""))
