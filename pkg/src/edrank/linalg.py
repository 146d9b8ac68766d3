"""Exact integer and mod-p linear algebra.

Everything here works on Python ints (arbitrary precision) or
``fractions.Fraction``; nothing touches floating point.  Half-integral
vectors are stored with doubled coordinates so that ``c`` represents ``c/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Hashable, Iterable, Sequence

from .errors import GeneratorOutsideLattice

INFINITE = math.inf


@dataclass(frozen=True)
class HalfIntVector:
    """Vector over an ordered label set with coordinates in (1/2)Z."""

    labels: tuple[Hashable, ...]
    doubled: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.doubled):
            raise ValueError(
                f"{len(self.doubled)} coordinates for {len(self.labels)} labels"
            )

    @classmethod
    def from_coords(cls, labels, coords) -> "HalfIntVector":
        doubled = []
        for c in coords:
            c2 = Fraction(c) * 2
            if c2.denominator != 1:
                raise ValueError(f"coordinate {c} is not a half-integer")
            doubled.append(int(c2))
        return cls(tuple(labels), tuple(doubled))

    @classmethod
    def unit(cls, labels, label) -> "HalfIntVector":
        labels = tuple(labels)
        return cls(labels, tuple(2 if l == label else 0 for l in labels))

    @classmethod
    def zero(cls, labels) -> "HalfIntVector":
        labels = tuple(labels)
        return cls(labels, (0,) * len(labels))

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.doubled)

    def __getitem__(self, label) -> Fraction:
        return Fraction(self.doubled[self.labels.index(label)], 2)

    def is_integral(self) -> bool:
        return all(c % 2 == 0 for c in self.doubled)

    def is_half_integral(self) -> bool:
        """True iff every coordinate lies in 1/2 + Z."""
        return all(c % 2 == 1 for c in self.doubled)

    def is_zero(self) -> bool:
        return not any(self.doubled)

    def _check(self, other: "HalfIntVector"):
        if self.labels != other.labels:
            raise ValueError("vectors live on different index sets")

    def __add__(self, other: "HalfIntVector") -> "HalfIntVector":
        self._check(other)
        return HalfIntVector(
            self.labels, tuple(a + b for a, b in zip(self.doubled, other.doubled))
        )

    def __sub__(self, other: "HalfIntVector") -> "HalfIntVector":
        self._check(other)
        return HalfIntVector(
            self.labels, tuple(a - b for a, b in zip(self.doubled, other.doubled))
        )

    def __neg__(self) -> "HalfIntVector":
        return HalfIntVector(self.labels, tuple(-a for a in self.doubled))

    def __mul__(self, k: int) -> "HalfIntVector":
        return HalfIntVector(self.labels, tuple(k * a for a in self.doubled))

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join(
            str(c // 2) if c % 2 == 0 else f"{c}/2" for c in self.doubled
        )
        return f"HalfIntVector([{body}])"


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls(tuple((0,) * c for _ in range(r)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            cols = list(zip(*other.rows))
            return IntMatrix(
                tuple(tuple(sum(map(mul, r, c)) for c in cols) for r in self.rows)
            )
        return tuple(sum(map(mul, r, other)) for r in self.rows)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.rows))

    def __pow__(self, k: int) -> "IntMatrix":
        out = IntMatrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)


def snf(m: IntMatrix) -> SnfResult:
    """Invariant factors of ``m`` (length ``min(rows, cols)``, zeros last)."""
    if m.nrows == 0 or m.ncols == 0:
        raise ValueError("snf needs at least one row and one column")
    a = [list(r) for r in m.rows]
    nr, nc = m.shape
    diag = []
    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, nc):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, nr):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            # divisibility chain: fold a non-multiple row into the pivot row
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            for j in range(t, nc):
                a[t][j] += a[bad][j]
        diag.append(abs(a[t][t]))
        t += 1
    diag.extend([0] * (min(nr, nc) - len(diag)))
    return SnfResult(tuple(diag))


def _echelon(rows: list[list[int]], aug: list[list[int]] | None = None) -> int:
    """Integer row echelon form in place by unimodular row operations.

    ``aug`` receives the same row operations.  Returns the number of nonzero
    rows, which come first.
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    p = 0
    for col in range(nc):
        if p == nr:
            break
        while True:
            nz = [i for i in range(p, nr) if rows[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(rows[i][col]))
            rows[p], rows[k] = rows[k], rows[p]
            if aug is not None:
                aug[p], aug[k] = aug[k], aug[p]
            done = True
            for i in range(p + 1, nr):
                if rows[i][col]:
                    q = rows[i][col] // rows[p][col]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[p])]
                    if aug is not None:
                        aug[i] = [x - q * y for x, y in zip(aug[i], aug[p])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if any(rows[i][col] for i in range(p, nr)):
            if rows[p][col] < 0:
                rows[p] = [-x for x in rows[p]]
                if aug is not None:
                    aug[p] = [-x for x in aug[p]]
            p += 1
    return p


def integer_kernel(m: IntMatrix) -> list[HalfIntVector]:
    """Basis of the lattice ``{x in Z^cols : m x = 0}``."""
    nc = m.ncols
    labels = tuple(range(nc))
    if m.nrows == 0:
        return [HalfIntVector.unit(labels, i) for i in range(nc)]
    rows = [list(c) for c in zip(*m.rows)]
    aug = [[int(i == j) for j in range(nc)] for i in range(nc)]
    rk = _echelon(rows, aug)
    return [
        HalfIntVector(labels, tuple(2 * x for x in aug[i])) for i in range(rk, nc)
    ]


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return _echelon([list(r) for r in rows])


def lattice_basis(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Echelon basis of the Z-span of integer row vectors."""
    rows = [list(g) for g in generators]
    rk = _echelon(rows)
    return [tuple(r) for r in rows[:rk]]


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    if not a:
        return 0
    nc = len(a[0])
    rk = 0
    for col in range(nc):
        piv = next((i for i in range(rk, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = pow(a[rk][col], -1, p)
        a[rk] = [(x * inv) % p for x in a[rk]]
        for i in range(len(a)):
            if i != rk and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


def solve_in_basis(basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Rational ``y`` with ``sum y_i basis_i == v``, or None if ``v`` is outside the span.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    n = len(v)
    # columns are basis vectors; augmented with v
    a = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((i for i in range(row, n) if a[i][col]), None)
        if piv is None:
            raise ValueError("basis is linearly dependent")
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for i in range(n):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    if any(a[i][k] for i in range(row, n)):
        return None
    return tuple(a[i][k] for i in range(k))


def sublattice_index(
    ambient_basis: Sequence[HalfIntVector], generators: Sequence[HalfIntVector]
) -> int | float:
    """``[L : M]`` for L spanned by ``ambient_basis`` and M by ``generators``.

    Returns ``INFINITE`` when M has smaller rank than L.
    """
    basis = [b.doubled for b in ambient_basis]
    coords = []
    for g in generators:
        y = solve_in_basis(basis, g.doubled)
        if y is None or any(c.denominator != 1 for c in y):
            raise GeneratorOutsideLattice(f"{g} is not in the ambient lattice")
        coords.append([int(c) for c in y])
    if not coords:
        return INFINITE if basis else 1
    res = snf(IntMatrix.from_rows(coords))
    if res.rank < len(basis):
        return INFINITE
    return math.prod(res.invariant_factors)
