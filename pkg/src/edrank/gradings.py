"""Gradings X(T) -> F_p^d and the two hypothesis checks on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .lattices import (
    E6_ADJOINT,
    E6_LABELS,
    HSPIN16,
    PGL,
    PGO_PLUS,
    Family,
    LatticeDescriptor,
    RootSet,
)
from .linalg import HalfIntVector, rank_mod_p

GradingValue = tuple[int, ...]

MAX_REPORTED = 20


@dataclass(frozen=True)
class Grading:
    family: Family | None
    p: int
    d: int
    block_split: tuple[int, int]
    evaluator: Callable[[tuple[int, ...]], GradingValue] = field(repr=False, compare=False)

    def __post_init__(self):
        if sum(self.block_split) != self.d:
            raise ValueError(f"block split {self.block_split} does not add up to {self.d}")

    def __call__(self, x: HalfIntVector) -> GradingValue:
        return self.evaluator(x.doubled)

    def of_doubled(self, c: tuple[int, ...]) -> GradingValue:
        return self.evaluator(c)

    def component(self, value: GradingValue, which: int) -> GradingValue:
        d1 = self.block_split[0]
        return value[:d1] if which == 1 else value[d1:]


@dataclass(frozen=True)
class LinearEvaluator:
    """``c -> sum_k (c_k / 2) * weights[k]  mod p`` for integral ``c``."""

    weights: tuple[tuple[int, ...], ...]
    p: int

    def __call__(self, c) -> GradingValue:
        d = len(self.weights[0]) if self.weights else 0
        out = [0] * d
        for ck, w in zip(c, self.weights):
            if ck:
                x = ck // 2
                for j in range(d):
                    out[j] += x * w[j]
        return tuple(v % self.p for v in out)


@dataclass(frozen=True)
class HalfSpinEvaluator:
    """``d*nu + y -> (eps0(y), d)``; ``d`` is read off the parity of the coordinates."""

    eps0: LinearEvaluator

    def __call__(self, c) -> GradingValue:
        d = c[0] % 2
        return self.eps0(tuple(x - d for x in c)) + (d,)


@dataclass(frozen=True)
class E6Evaluator:
    """``d*alpha + sum a_ij beta_ij -> (sum a_ij, d)`` mod 3."""

    alpha: int
    betas: tuple[int, ...]

    def __call__(self, c) -> GradingValue:
        return (sum(c[i] // 2 for i in self.betas) % 3, (c[self.alpha] // 2) % 3)


@dataclass(frozen=True)
class ZeroEvaluator:
    d: int

    def __call__(self, c) -> GradingValue:
        return (0,) * self.d


def _pgl_grading(lat: LatticeDescriptor) -> Grading:
    fam = lat.family
    weights = tuple(tuple(v) for v in lat.index_labels)
    return Grading(fam, fam.p, fam.n, (fam.n, 0), LinearEvaluator(weights, fam.p))


def _pgo_grading(lat: LatticeDescriptor) -> Grading:
    # v + b_i, with (F_2^m)_0 identified with F_2^(m-1) by dropping the last coordinate
    fam = lat.family
    r, m = fam.r, fam.m
    weights = []
    for v, i in lat.index_labels:
        b = tuple(int(i == j) for j in range(1, m))
        weights.append(tuple(v) + b)
    d = r + m - 1
    return Grading(fam, 2, d, (d, 0), LinearEvaluator(tuple(weights), 2))


def _hspin_grading(lat: LatticeDescriptor) -> Grading:
    weights = tuple(tuple(v) for v in lat.index_labels)
    return Grading(lat.family, 2, 4, (4, 0), HalfSpinEvaluator(LinearEvaluator(weights, 2)))


def _e6_grading(lat: LatticeDescriptor) -> Grading:
    ia = E6_LABELS.index("alpha")
    ibs = tuple(i for i, l in enumerate(E6_LABELS) if l != "alpha")
    return Grading(lat.family, 3, 2, (1, 1), E6Evaluator(ia, ibs))


def build_grading(lat: LatticeDescriptor) -> Grading:
    return {
        PGL: _pgl_grading,
        PGO_PLUS: _pgo_grading,
        HSPIN16: _hspin_grading,
        E6_ADJOINT: _e6_grading,
    }[lat.family.tag](lat)


def zero_grading(lat: LatticeDescriptor, p: int, d: int) -> Grading:
    return Grading(lat.family, p, d, (d, 0), ZeroEvaluator(d))


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    checked: int
    n_offending: int
    offending: tuple[HalfIntVector, ...] = ()

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def check_condition_31(g: Grading, roots: RootSet) -> CheckReport:
    """Every root must have nonzero grading."""
    bad = [a for a in roots if not any(g(a))]
    return CheckReport(not bad, len(roots), len(bad), tuple(bad[:MAX_REPORTED]))


def check_surjectivity(g: Grading, lat: LatticeDescriptor) -> bool:
    images = [g(b) for b in lat.ambient_basis]
    return rank_mod_p(images, g.p) == g.d
