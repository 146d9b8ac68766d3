"""Character lattices, root systems and reflections for the four families.

Coordinates for PGL, PGO and HSpin are taken in the standard basis of Z^I
(or Q^I) over the family's index set I.  E6 is written in the basis of its
simple roots.  All vectors are :class:`HalfIntVector` with doubled
coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterator

from .errors import InvalidFamilyParams, NotARoot
from .linalg import HalfIntVector, IntMatrix, lattice_basis

PGL = "PGL"
PGO_PLUS = "PGO_PLUS"
HSPIN16 = "HSPIN16"
E6_ADJOINT = "E6_ADJOINT"

E6_LABELS = ("alpha", "beta12", "beta21", "beta22", "beta31", "beta32")
# Dynkin edges: the inner node beta_i2 of each arm touches alpha.
E6_EDGES = (
    ("alpha", "beta12"),
    ("alpha", "beta22"),
    ("beta22", "beta21"),
    ("alpha", "beta32"),
    ("beta32", "beta31"),
)
# Highest root in simple-root coordinates; beta11 is its negative.
E6_HIGHEST_ROOT = {"alpha": 3, "beta12": 2, "beta21": 1, "beta22": 2, "beta31": 1, "beta32": 2}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def two_adic_split(n: int) -> tuple[int, int]:
    """Write ``n = 2**r * m`` with ``m`` odd."""
    r = 0
    while n % 2 == 0:
        n //= 2
        r += 1
    return r, n


def f_p_vectors(p: int, n: int) -> list[tuple[int, ...]]:
    """All of F_p^n as lexicographically ordered tuples."""
    return list(itertools.product(range(p), repeat=n))


@dataclass(frozen=True)
class Family:
    tag: str
    p: int | None = None
    n: int | None = None

    def __post_init__(self):
        if self.tag == PGL:
            if self.p is None or not is_prime(self.p):
                raise InvalidFamilyParams(f"PGL needs a prime p, got {self.p}")
            if self.n is None or self.n < 1:
                raise InvalidFamilyParams(f"PGL needs n >= 1, got {self.n}")
        elif self.tag == PGO_PLUS:
            if self.n is None or self.n < 3:
                raise InvalidFamilyParams(f"PGO+ needs n >= 3, got {self.n}")
        elif self.tag in (HSPIN16, E6_ADJOINT):
            if self.p is not None or self.n is not None:
                raise InvalidFamilyParams(f"{self.tag} takes no parameters")
        else:
            raise InvalidFamilyParams(f"unknown family {self.tag!r}")

    @classmethod
    def pgl(cls, p: int, n: int) -> "Family":
        return cls(PGL, p, n)

    @classmethod
    def pgo(cls, n: int) -> "Family":
        return cls(PGO_PLUS, None, n)

    @classmethod
    def hspin16(cls) -> "Family":
        return cls(HSPIN16)

    @classmethod
    def e6(cls) -> "Family":
        return cls(E6_ADJOINT)

    @property
    def r(self) -> int:
        return two_adic_split(self.n)[0]

    @property
    def m(self) -> int:
        return two_adic_split(self.n)[1]

    @property
    def name(self) -> str:
        if self.tag == PGL:
            return f"PGL_{self.p**self.n} (p={self.p}, n={self.n})"
        if self.tag == PGO_PLUS:
            return f"PGO+_{2 * self.n} (n={self.n}, r={self.r}, m={self.m})"
        if self.tag == HSPIN16:
            return "HSpin_16"
        return "E_6^ad"

    def params(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.tag == PGL:
            out.update(p=self.p, n=self.n)
        elif self.tag == PGO_PLUS:
            out.update(n=self.n, r=self.r, m=self.m)
        return out


@dataclass(frozen=True)
class LatticeDescriptor:
    family: Family | None
    index_labels: tuple[Hashable, ...]
    rank: int
    ambient_basis: tuple[HalfIntVector, ...]
    _member: Callable[[tuple[int, ...]], bool] = field(repr=False, compare=False)
    _box_rule: str = field(repr=False, compare=False)

    def contains(self, x: HalfIntVector) -> bool:
        return x.labels == self.index_labels and self._member(x.doubled)

    def contains_doubled(self, c: tuple[int, ...]) -> bool:
        return len(c) == len(self.index_labels) and self._member(c)

    def vector(self, doubled) -> HalfIntVector:
        return HalfIntVector(self.index_labels, tuple(doubled))

    def unit(self, label) -> HalfIntVector:
        return HalfIntVector.unit(self.index_labels, label)

    def from_coords(self, coords) -> HalfIntVector:
        return HalfIntVector.from_coords(self.index_labels, coords)

    def from_mapping(self, coeffs: dict) -> HalfIntVector:
        """Vector with the given (undoubled) coordinates on selected labels."""
        return self.from_coords([coeffs.get(l, 0) for l in self.index_labels])

    def combination(self, coeffs) -> HalfIntVector:
        """Integer combination of the ambient basis."""
        out = [0] * len(self.index_labels)
        for k, b in zip(coeffs, self.ambient_basis):
            for i, c in enumerate(b.doubled):
                out[i] += k * c
        return self.vector(out)

    def box_members(self, radius: int) -> Iterator[tuple[int, ...]]:
        """Lattice members with doubled coordinates in ``[-2B, 2B]``, as doubled tuples."""
        lim = 2 * radius
        dim = len(self.index_labels)
        if self._box_rule == "half_spin":
            parities = [[c for c in range(-lim, lim + 1) if c % 2 == 0],
                        [c for c in range(-lim, lim + 1) if c % 2 == 1]]
        else:
            parities = [[c for c in range(-lim, lim + 1) if c % 2 == 0]]
        for values in parities:
            if self._box_rule == "none":
                yield from itertools.product(values, repeat=dim)
                continue
            allowed = set(values)
            by_mod4: dict[int, list[int]] = {}
            for c in values:
                by_mod4.setdefault(c % 4, []).append(c)
            for head in itertools.product(values, repeat=dim - 1):
                s = sum(head)
                if self._box_rule == "sum_zero":
                    if -s in allowed:
                        yield head + (-s,)
                else:
                    for last in by_mod4.get(-s % 4, ()):
                        yield head + (last,)


def _pgl_lattice(fam: Family) -> LatticeDescriptor:
    labels = tuple(f_p_vectors(fam.p, fam.n))

    def member(c):
        return all(x % 2 == 0 for x in c) and sum(c) == 0

    e0 = HalfIntVector.unit(labels, labels[0])
    basis = tuple(e0 - HalfIntVector.unit(labels, v) for v in labels[1:])
    return LatticeDescriptor(fam, labels, len(labels) - 1, basis, member, "sum_zero")


def _dn_member(c) -> bool:
    return all(x % 2 == 0 for x in c) and sum(c) % 4 == 0


def _dn_basis(labels) -> tuple[HalfIntVector, ...]:
    units = [HalfIntVector.unit(labels, k) for k in labels]
    basis = [units[i] - units[i + 1] for i in range(len(units) - 1)]
    basis.append(units[-2] + units[-1])
    return tuple(basis)


def pgo_labels(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """K = V x {1..m}, sorted by the block index i, then lexicographically by v."""
    r, m = two_adic_split(n)
    return tuple((v, i) for i in range(1, m + 1) for v in f_p_vectors(2, r))


def _pgo_lattice(fam: Family) -> LatticeDescriptor:
    labels = pgo_labels(fam.n)
    return LatticeDescriptor(fam, labels, fam.n, _dn_basis(labels), _dn_member, "sum_mod4")


def _hspin_member(c) -> bool:
    if sum(c) % 4:
        return False
    par = c[0] % 2
    return all(x % 2 == par for x in c)


def half_sum_vector(labels) -> HalfIntVector:
    return HalfIntVector(tuple(labels), (1,) * len(labels))


def _hspin_lattice(fam: Family) -> LatticeDescriptor:
    labels = tuple(f_p_vectors(2, 3))
    gens = [b.doubled for b in _dn_basis(labels)] + [half_sum_vector(labels).doubled]
    basis = tuple(HalfIntVector(labels, b) for b in lattice_basis(gens))
    return LatticeDescriptor(fam, labels, 8, basis, _hspin_member, "half_spin")


def _e6_lattice(fam: Family) -> LatticeDescriptor:
    labels = E6_LABELS

    def member(c):
        return all(x % 2 == 0 for x in c)

    basis = tuple(HalfIntVector.unit(labels, l) for l in labels)
    return LatticeDescriptor(fam, labels, 6, basis, member, "none")


def free_lattice(n: int) -> LatticeDescriptor:
    """Z^n with the standard basis; used for toy checks, no family attached."""
    labels = tuple(range(n))
    basis = tuple(HalfIntVector.unit(labels, l) for l in labels)
    return LatticeDescriptor(
        None, labels, n, basis, lambda c: all(x % 2 == 0 for x in c), "none"
    )


def build_lattice(family: Family) -> LatticeDescriptor:
    return {
        PGL: _pgl_lattice,
        PGO_PLUS: _pgo_lattice,
        HSPIN16: _hspin_lattice,
        E6_ADJOINT: _e6_lattice,
    }[family.tag](family)


@dataclass(frozen=True)
class RootSet:
    roots: tuple[HalfIntVector, ...]
    gram: IntMatrix

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def doubled_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(r.doubled for r in self.roots)


def e6_cartan() -> IntMatrix:
    idx = {l: i for i, l in enumerate(E6_LABELS)}
    a = [[2 * (i == j) for j in range(6)] for i in range(6)]
    for u, v in E6_EDGES:
        a[idx[u]][idx[v]] = a[idx[v]][idx[u]] = -1
    return IntMatrix.from_rows(a)


def gram_matrix(lat: LatticeDescriptor) -> IntMatrix:
    """Twice the invariant form in the coordinate frame of ``index_labels``.

    With this scaling every root has self-pairing 4.
    """
    if lat.family.tag == E6_ADJOINT:
        c = e6_cartan()
        return IntMatrix(tuple(tuple(2 * x for x in r) for r in c.rows))
    n = len(lat.index_labels)
    return IntMatrix(tuple(tuple(2 * (i == j) for j in range(n)) for i in range(n)))


def pairing(x: HalfIntVector, y: HalfIntVector, gram: IntMatrix) -> Fraction:
    """Gram-form pairing of the actual (undoubled) vectors."""
    gy = gram @ y.doubled
    return Fraction(sum(a * b for a, b in zip(x.doubled, gy)), 4)


def reflect(root: HalfIntVector, x: HalfIntVector, gram: IntMatrix) -> HalfIntVector:
    """``x - <x, root^vee> root``."""
    if pairing(root, root, gram) != 4:
        raise NotARoot(f"{root} has self-pairing {pairing(root, root, gram)}, expected 4")
    k = pairing(x, root, gram) / 2
    return HalfIntVector.from_coords(
        x.labels, [a - k * b for a, b in zip(x.coords(), root.coords())]
    )


def reflection_matrix(root: HalfIntVector, gram: IntMatrix) -> IntMatrix:
    """Integer matrix of ``reflect(root, .)`` acting on coordinate columns."""
    if pairing(root, root, gram) != 4:
        raise NotARoot(f"{root} is not a root for this form")
    n = len(root.doubled)
    cols = []
    for j in range(n):
        e = HalfIntVector.unit(root.labels, root.labels[j])
        img = reflect(root, e, gram)
        cols.append([c // 2 for c in img.doubled])
    return IntMatrix.from_rows(zip(*cols)) if n else IntMatrix(())


def _signed_pair_roots(lat: LatticeDescriptor) -> list[HalfIntVector]:
    labels = lat.index_labels
    n = len(labels)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    c = [0] * n
                    c[i], c[j] = 2 * si, 2 * sj
                    out.append(HalfIntVector(labels, tuple(c)))
    return out


def _e6_roots(lat: LatticeDescriptor, gram: IntMatrix) -> list[HalfIntVector]:
    simple = list(lat.ambient_basis)
    mats = [reflection_matrix(s, gram) for s in simple]
    seen = {s.doubled for s in simple}
    frontier = list(seen)
    while frontier:
        nxt = []
        for c in frontier:
            for m in mats:
                img = m @ c
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return [HalfIntVector(lat.index_labels, c) for c in sorted(seen)]


def enumerate_roots(lat: LatticeDescriptor) -> RootSet:
    gram = gram_matrix(lat)
    tag = lat.family.tag
    labels = lat.index_labels
    if tag == PGL:
        roots = [
            HalfIntVector.unit(labels, u) - HalfIntVector.unit(labels, v)
            for u in labels
            for v in labels
            if u != v
        ]
    elif tag in (PGO_PLUS, HSPIN16):
        roots = _signed_pair_roots(lat)
    else:
        roots = _e6_roots(lat, gram)
    return RootSet(tuple(roots), gram)


def e6_beta11(lat: LatticeDescriptor) -> HalfIntVector:
    """The affine node: minus the highest root."""
    return -lat.from_mapping(E6_HIGHEST_ROOT)


def e6_root(lat: LatticeDescriptor, label: str) -> HalfIntVector:
    """``beta_ij`` (including the affine ``beta11``) or ``alpha`` as a lattice vector."""
    if label == "beta11":
        return e6_beta11(lat)
    return lat.unit(label)
