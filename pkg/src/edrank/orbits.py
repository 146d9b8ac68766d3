"""Orbits, orbit-size scans, the symmetric-rank lower bound, and generating sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import BudgetExceeded, EmptySubset, InvalidFamily, VectorOutsideLattice
from .gradings import Grading
from .lattices import PGO_PLUS, LatticeDescriptor, build_lattice, f_p_vectors
from .linalg import INFINITE, HalfIntVector, integer_rank, sublattice_index
from .weyl import FiniteActionGroup, GroupElement, closure


@dataclass(frozen=True)
class OrbitReport:
    seed: HalfIntVector
    orbit: tuple[HalfIntVector, ...]
    orbit_size: int
    stabilizer_order: int


def orbit(grp: FiniteActionGroup, x: HalfIntVector) -> OrbitReport:
    """Orbit and stabilizer of ``x``, both by running over every element."""
    images = [w.apply(x.doubled) for w in grp.elements]
    stab = sum(1 for c in images if c == x.doubled)
    pts = sorted(set(images))
    return OrbitReport(
        x, tuple(HalfIntVector(x.labels, c) for c in pts), len(pts), stab
    )


def generator_orbit(gens: Sequence[GroupElement], c: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Orbit of a doubled tuple by breadth-first search over the generators."""
    seen = {c}
    frontier = [c]
    while frontier:
        nxt = []
        for y in frontier:
            for s in gens:
                z = s.apply(y)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return seen


def subset_translation_stabilizer(
    V: Iterable[tuple[int, ...]], Y: Iterable[tuple[tuple[int, ...], Hashable]]
) -> list[tuple[int, ...]]:
    """All ``u`` in ``V = F_2^r`` with ``u + Y = Y`` (translation on the first factor)."""
    Y = frozenset(Y)
    if not Y:
        raise EmptySubset("Y must be non-empty")
    out = []
    for u in V:
        moved = frozenset((tuple((a + b) % 2 for a, b in zip(u, v)), i) for v, i in Y)
        if moved == Y:
            out.append(tuple(u))
    return out


@dataclass(frozen=True)
class ScanResult:
    radius: int
    component: int
    min_orbit_size: int
    witness: HalfIntVector
    vectors_scanned: int
    qualifying: int
    other_component_zero: bool = False


def min_orbit_scan(
    grp: FiniteActionGroup,
    g: Grading,
    component: int,
    radius: int,
    lat: LatticeDescriptor | None = None,
    other_component_zero: bool = False,
) -> ScanResult:
    """Smallest orbit among box vectors whose grading is nonzero in ``component``.

    The box is all lattice members with doubled coordinates in ``[-2B, 2B]``.
    Ties go to the lexicographically smallest doubled tuple.  This is a finite
    check on a ball, not a proof for the whole lattice.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    if component not in (1, 2):
        raise ValueError("component is 1 or 2")
    if g.block_split[component - 1] == 0:
        raise ValueError(f"component {component} is empty for block split {g.block_split}")
    lat = lat or build_lattice(g.family)
    gens = grp.generators or grp.elements
    other = 2 if component == 1 else 1
    sizes: dict[tuple[int, ...], int] = {}
    best = None
    scanned = qualifying = 0
    for c in lat.box_members(radius):
        scanned += 1
        val = g.of_doubled(c)
        if not any(g.component(val, component)):
            continue
        if other_component_zero and any(g.component(val, other)):
            continue
        qualifying += 1
        size = sizes.get(c)
        if size is None:
            orb = generator_orbit(gens, c)
            size = len(orb)
            for y in orb:
                sizes[y] = size
        cand = (size, c)
        if best is None or cand < best:
            best = cand
    if best is None:
        raise ValueError("no qualifying vector in the box")
    return ScanResult(
        radius, component, best[0], lat.vector(best[1]), scanned, qualifying, other_component_zero
    )


def pgl_stabilizer_lemma_scan(
    p: int, n: int, radius: int, require_sum_divisible: bool = True
) -> list[HalfIntVector]:
    """Counterexamples in a box of Z^V to the stabilizer lemma for F_p^n translations.

    The lemma: for ``x`` in Z^V with p odd or ``4 | sum x``, a nontrivial
    stabilizer forces ``sum_v x_v v = 0``.  Returns the (expected empty) list
    of violations.  With ``require_sum_divisible=False`` the divisibility
    hypothesis is dropped at p = 2, which does produce violations.  Not used
    by any bound.
    """
    labels = f_p_vectors(p, n)
    nonzero = [u for u in labels if any(u)]
    pos = {v: k for k, v in enumerate(labels)}
    shifts = [
        [pos[tuple((a + b) % p for a, b in zip(v, u))] for v in labels] for u in nonzero
    ]
    bad = []
    for x in itertools.product(range(-radius, radius + 1), repeat=len(labels)):
        if p == 2 and require_sum_divisible and sum(x) % 4:
            continue
        fixed = any(all(x[k] == x[t[k]] for k in range(len(x))) for t in shifts)
        if not fixed:
            continue
        tot = [0] * n
        for xv, v in zip(x, labels):
            for j in range(n):
                tot[j] += xv * v[j]
        if any(t % p for t in tot):
            bad.append(HalfIntVector(tuple(labels), tuple(2 * a for a in x)))
    return bad


def symrank_lower_bound(C1: int, C2: int, d1: int, d2: int) -> int:
    """``C1 * d1 + C2 * d2``: the bound on Rank(S, U; p) from orbit sizes on two blocks."""
    if (d1 > 0 and C1 < 1) or (d2 > 0 and C2 < 1):
        raise ValueError("orbit-size constants must be positive on nonzero blocks")
    return C1 * d1 + C2 * d2


@dataclass(frozen=True)
class GeneratingSetCertificate:
    gamma: tuple[HalfIntVector, ...]
    invariant: bool
    index: int | float
    p: int
    is_p_generating: bool
    size: int


def check_generating_set(
    grp: FiniteActionGroup, lat: LatticeDescriptor, gamma: Sequence[HalfIntVector], p: int
) -> GeneratingSetCertificate:
    for x in gamma:
        if not lat.contains(x):
            raise VectorOutsideLattice(f"{x} is not in X(T)")
    pts = {x.doubled for x in gamma}
    gens = grp.generators or grp.elements
    invariant = all({w.apply(c) for c in pts} == pts for w in gens)
    index = sublattice_index(lat.ambient_basis, list(gamma))
    ok = index != INFINITE and index % p != 0
    return GeneratingSetCertificate(tuple(gamma), invariant, index, p, ok, len(pts))


def build_dn_remark_gamma(
    lat: LatticeDescriptor, grp: FiniteActionGroup | None = None
) -> list[HalfIntVector]:
    """Union of the W(eps)-orbits of e_{0,1} + e_{v_i,1} and e_{0,1} + e_{v_1,j}."""
    fam = lat.family
    if fam is None or fam.tag != PGO_PLUS:
        raise InvalidFamily("the explicit generating set exists for PGO+ only")
    r, m = fam.r, fam.m
    if r < 1:
        raise InvalidFamily("the explicit generating set needs r >= 1")
    if grp is None:
        from .gradings import build_grading
        from .weyl import build_w_eps

        grp = build_w_eps(lat, build_grading(lat))
    zero = (0,) * r
    units = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    base = lat.unit((zero, 1))
    seeds = [base + lat.unit((v, 1)) for v in units]
    seeds += [base + lat.unit((units[0], j)) for j in range(2, m + 1)]
    gens = grp.generators or grp.elements
    out: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for s in seeds:
        orb = generator_orbit(gens, s.doubled)
        if orb & seen:
            raise AssertionError("orbits in the generating set are not disjoint")
        seen |= orb
        out.extend(sorted(orb))
    return [lat.vector(c) for c in out]


def _is_p_group_order(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def sylow_subgroup(grp: FiniteActionGroup, p: int) -> FiniteActionGroup:
    """A Sylow p-subgroup, grown greedily from the trivial group.

    Every p-subgroup that cannot be enlarged is Sylow, and a greedy pass over
    all elements cannot stop at a non-maximal one.
    """
    ident = next(w for w in grp.elements if w.is_identity())
    gens: list[GroupElement] = []
    cur = closure(gens, ident)
    keys = cur.keys()
    for w in grp.elements:
        if w.key in keys:
            continue
        trial = closure(gens + [w], ident)
        if _is_p_group_order(trial.order, p):
            gens.append(w)
            cur, keys = trial, trial.keys()
    return cur


EXACT_WITHIN_RADIUS = "EXACT_WITHIN_RADIUS"


def exact_symrank_toy(
    grp: FiniteActionGroup,
    lat: LatticeDescriptor,
    p: int,
    radius: int,
    max_size: int,
    budget: int = 200_000,
) -> tuple[int | None, str]:
    """Smallest invariant p-generating union of orbits of box vectors.

    Uses a Sylow p-subgroup of ``grp``, as the definition of symmetric rank
    does.  The value is an upper bound on the true rank, and equal to it when
    an optimal set uses only vectors from the box.  ``None`` if nothing of
    size at most ``max_size`` works.
    """
    if lat.rank > 4 or grp.order > 16:
        raise ValueError("toy oracle is limited to rank <= 4 and group order <= 16")
    sp = sylow_subgroup(grp, p)
    gens = sp.generators or sp.elements
    orbits: dict[frozenset, None] = {}
    for c in lat.box_members(radius):
        if any(c):
            orbits.setdefault(frozenset(generator_orbit(gens, c)), None)
    orbs = sorted(orbits, key=lambda o: (len(o), sorted(o)))
    sizes = [len(o) for o in orbs]
    checks = 0

    def generating(chosen) -> bool:
        nonlocal checks
        checks += 1
        if checks > budget:
            raise BudgetExceeded(f"more than {budget} candidate sets")
        vecs = [c for i in chosen for c in orbs[i]]
        if integer_rank(vecs) < lat.rank:
            return False
        idx = sublattice_index(lat.ambient_basis, [lat.vector(c) for c in vecs])
        return idx != INFINITE and idx % p != 0

    def search(start, remaining, chosen):
        if remaining == 0:
            return generating(chosen)
        for i in range(start, len(orbs)):
            if sizes[i] > remaining:
                break
            chosen.append(i)
            if search(i + 1, remaining - sizes[i], chosen):
                return True
            chosen.pop()
        return False

    for total in range(max(1, lat.rank), max_size + 1):
        if search(0, total, []):
            return total, EXACT_WITHIN_RADIUS
    return None, EXACT_WITHIN_RADIUS
