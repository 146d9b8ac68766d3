"""Seeded invariant checks that run without pytest, for ``edrank selftest``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .bounds import derive_bound, expected_ed_lower, orbit_constants, required_prime
from .gradings import build_grading, check_condition_31
from .lattices import Family, LatticeDescriptor, build_lattice, enumerate_roots, f_p_vectors
from .linalg import IntMatrix, snf
from .orbits import min_orbit_scan, orbit, subset_translation_stabilizer
from .weyl import build_w_eps, e6_identity_suite


@dataclass(frozen=True)
class Outcome:
    name: str
    passed: bool
    detail: str = ""


SMALL_FAMILIES = (
    Family.pgl(2, 2),
    Family.pgl(3, 1),
    Family.pgo(4),
    Family.pgo(5),
    Family.pgo(6),
    Family.hspin16(),
    Family.e6(),
)


def random_lattice_vector(lat: LatticeDescriptor, rng: random.Random, k: int = 2):
    return lat.combination([rng.randint(-k, k) for _ in lat.ambient_basis])


def check_snf(rng: random.Random, trials: int) -> Outcome:
    for t in range(trials):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = IntMatrix.from_rows([[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)])
        f = snf(m).invariant_factors
        nz = [x for x in f if x]
        if any(x < 0 for x in f) or f[: len(nz)] != tuple(nz):
            return Outcome("snf", False, f"bad shape {f} for {m.rows}")
        if any(b % a for a, b in zip(nz, nz[1:])):
            return Outcome("snf", False, f"no divisibility chain {f}")
        if r == c:
            prod = 1
            for x in f:
                prod *= x
            if prod != abs(m.det()):
                return Outcome("snf", False, f"product {prod} != |det| for {m.rows}")
    return Outcome("snf", True, f"{trials} matrices")


def check_orbit_stabilizer(rng: random.Random, trials: int) -> Outcome:
    groups = []
    for fam in SMALL_FAMILIES:
        lat = build_lattice(fam)
        groups.append((lat, build_w_eps(lat, build_grading(lat))))
    for _ in range(trials):
        lat, grp = rng.choice(groups)
        x = random_lattice_vector(lat, rng)
        rep = orbit(grp, x)
        if rep.orbit_size * rep.stabilizer_order != grp.order:
            return Outcome("orbit-stabilizer", False, f"{x}")
        pts = {y.doubled for y in rep.orbit}
        if any(s.apply(c) not in pts for s in grp.generators for c in pts):
            return Outcome("orbit-stabilizer", False, f"orbit of {x} not closed")
    return Outcome("orbit-stabilizer", True, f"{trials} orbits")


def check_grading_additivity(rng: random.Random, trials: int) -> Outcome:
    lats = [build_lattice(f) for f in SMALL_FAMILIES]
    for _ in range(trials):
        lat = rng.choice(lats)
        g = build_grading(lat)
        x, y = random_lattice_vector(lat, rng), random_lattice_vector(lat, rng)
        lhs = g(x + y)
        rhs = tuple((a + b) % g.p for a, b in zip(g(x), g(y)))
        if lhs != rhs:
            return Outcome("grading-additivity", False, f"{x}, {y}")
    return Outcome("grading-additivity", True, f"{trials} pairs")


def check_subset_stabilizer(rng: random.Random, trials: int) -> Outcome:
    for _ in range(trials):
        r, m = rng.randint(1, 3), rng.randint(1, 3)
        V = f_p_vectors(2, r)
        K = list(itertools.product(V, range(1, m + 1)))
        Y = rng.sample(K, rng.randint(1, len(K)))
        got = subset_translation_stabilizer(V, Y)
        if len(got) > len(Y):
            return Outcome("subset-stabilizer", False, f"{len(got)} > {len(Y)}")
    return Outcome("subset-stabilizer", True, f"{trials} subsets")


def check_conditions() -> Outcome:
    for fam in SMALL_FAMILIES:
        lat = build_lattice(fam)
        if not check_condition_31(build_grading(lat), enumerate_roots(lat)).passed:
            return Outcome("nonzero-roots", False, fam.name)
    return Outcome("nonzero-roots", True, f"{len(SMALL_FAMILIES)} families")


def check_e6_identities() -> Outcome:
    bad = [n for n, ok in e6_identity_suite(build_lattice(Family.e6())) if not ok]
    return Outcome("e6-identities", not bad, ", ".join(bad))


def check_pipelines() -> Outcome:
    for fam in SMALL_FAMILIES:
        cert = derive_bound(fam, required_prime(fam), radius=1)
        if cert.status != "VALID" or cert.ed_lower != expected_ed_lower(fam):
            return Outcome("pipelines", False, f"{fam.name}: {cert.problems()}")
    return Outcome("pipelines", True, f"{len(SMALL_FAMILIES)} certificates")


def check_scan_constants() -> Outcome:
    for fam in SMALL_FAMILIES:
        lat = build_lattice(fam)
        g = build_grading(lat)
        grp = build_w_eps(lat, g)
        C1, _, C2, d2 = orbit_constants(fam)
        if min_orbit_scan(grp, g, 1, 1, lat).min_orbit_size < C1:
            return Outcome("scan-constants", False, fam.name)
        if d2 and min_orbit_scan(grp, g, 2, 1, lat).min_orbit_size < C2:
            return Outcome("scan-constants", False, fam.name)
    return Outcome("scan-constants", True, "radius 1")


def run_selftest(seed: int = 0, scale: int = 1) -> Iterator[Outcome]:
    rng = random.Random(seed)
    checks: list[Callable[[], Outcome]] = [
        lambda: check_snf(rng, 500 * scale),
        lambda: check_orbit_stabilizer(rng, 200 * scale),
        lambda: check_grading_additivity(rng, 200 * scale),
        lambda: check_subset_stabilizer(rng, 100 * scale),
        check_conditions,
        check_e6_identities,
        check_scan_constants,
        check_pipelines,
    ]
    for check in checks:
        try:
            yield check()
        except Exception as exc:  # a crash is a failed check, not an abort
            yield Outcome(getattr(check, "__name__", "check"), False, repr(exc))
