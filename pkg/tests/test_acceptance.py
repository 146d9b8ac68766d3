"""The ten acceptance criteria, each with its tolerance and time limit.

Every test records one PASS/FAIL line, printed in the terminal summary.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from edrank.bounds import derive_bound, orbit_constants, required_prime
from edrank.gradings import build_grading, check_condition_31, check_surjectivity
from edrank.lattices import Family, build_lattice, enumerate_roots, f_p_vectors, is_prime
from edrank.linalg import IntMatrix, snf
from edrank.orbits import (
    build_dn_remark_gamma,
    check_generating_set,
    min_orbit_scan,
    orbit,
    subset_translation_stabilizer,
    symrank_lower_bound,
)
from edrank.weyl import (
    RootMatrix,
    brute_force_w_eps,
    build_e6_sigma_tau,
    build_w_eps,
    closure,
    e6_identity_suite,
    e6_weyl_group,
    fixed_subspace_rank,
    schreier_stabilizer,
)

from conftest import record_acceptance


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def check(number, failures, elapsed, limit, summary):
    ok = not failures and elapsed < limit
    detail = f"{summary} [{elapsed:.1f}s < {limit}s]"
    if failures:
        detail += " failures: " + "; ".join(failures)
    elif elapsed >= limit:
        detail += " time limit exceeded"
    record_acceptance(number, ok, detail)
    assert not failures, failures
    assert elapsed < limit, f"{elapsed:.1f}s over the {limit}s limit"


def test_01_pgl_reproduction():
    want = {(2, 1): 1, (2, 2): 5, (2, 3): 17, (3, 1): 1, (3, 2): 10}
    failures = []
    with Timer() as t:
        for (p, n), ed in want.items():
            got = derive_bound(Family.pgl(p, n), p).ed_lower
            if got != ed or got != (n - 1) * p**n + 1:
                failures.append(f"PGL p={p} n={n}: {got} != {ed}")
    check(1, failures, t.elapsed, 10, "PGL ed_lower = (n-1)p^n+1 for 5 cases")


def pgo_formula(n):
    r = Family.pgo(n).r
    return (r - 1) * 2 ** (r + 1) + n if r else 3 * n - 4


def test_02_pgo_reproduction():
    # (r-1)2^(r+1)+n at (r, m) = (2,1), (1,3), (3,1), (1,5), (2,3)
    even = {4: 12, 6: 6, 8: 40, 10: 10, 12: 20}
    failures = []
    with Timer() as t:
        for n, ed in even.items():
            got = derive_bound(Family.pgo(n), 2).ed_lower
            if got != pgo_formula(n) or got != ed:
                failures.append(f"n={n}: {got} != {ed}")
        for n in (3, 5, 7, 9):
            got = derive_bound(Family.pgo(n), 2).ed_lower
            if got != 3 * n - 4:
                failures.append(f"n={n}: {got} != {3 * n - 4}")
    got_even = ", ".join(f"{n}:{v}" for n, v in even.items())
    check(2, failures, t.elapsed, 30,
          f"PGO even n {got_even}; odd n = 3n-4 for 3,5,7,9 "
          "(listed 52/14 for n=8/10 disagree with the formula, see test_02_listed_values)")


@pytest.mark.xfail(strict=True, reason="the listed 52 and 14 are not values of (r-1)2^(r+1)+n")
@pytest.mark.parametrize("n,listed", [(8, 52), (10, 14)])
def test_02_listed_values(n, listed):
    assert pgo_formula(n) == listed


def test_03_hspin16():
    with Timer() as t:
        cert = derive_bound(Family.hspin16(), 2)
    failures = []
    if (cert.rank_lower, cert.ed_lower) != (64, 56):
        failures.append(f"rank {cert.rank_lower}, ed {cert.ed_lower}")
    if cert.status != "VALID":
        failures.append(str(cert.problems()))
    check(3, failures, t.elapsed, 10, f"HSpin_16 rank_lower {cert.rank_lower}, ed_lower {cert.ed_lower}")


def test_04_e6():
    with Timer() as t:
        cert = derive_bound(Family.e6(), 3)
    failures = []
    if (cert.rank_lower, cert.ed_lower) != (12, 6):
        failures.append(f"rank {cert.rank_lower}, ed {cert.ed_lower}")
    if cert.status != "VALID":
        failures.append(str(cert.problems()))
    check(4, failures, t.elapsed, 10, f"E6 rank_lower {cert.rank_lower}, ed_lower {cert.ed_lower}")


def test_05_brute_force_equality():
    failures = []
    with Timer() as t:
        for fam in [Family.pgl(2, 2), Family.pgl(3, 1), Family.pgl(2, 3), Family.pgo(4), Family.pgo(6)]:
            lat = build_lattice(fam)
            g = build_grading(lat)
            closed, brute = build_w_eps(lat, g), brute_force_w_eps(lat, g)
            if brute is None or brute.keys() != closed.keys():
                failures.append(f"{fam.name}: sets differ")
        lat = build_lattice(Family.e6())
        g = build_grading(lat)
        W = e6_weyl_group(lat)
        brute = brute_force_w_eps(lat, g)
        sch, _ = schreier_stabilizer(lat, g, W.generators)
        if W.order != 51840:
            failures.append(f"E6 ambient order {W.order}")
        if brute.keys() != sch.keys():
            failures.append("E6 filtered set != Schreier stabilizer")
        if not build_w_eps(lat, g).keys() <= brute.keys():
            failures.append("<sigma,tau> not inside W(eps)")
    check(5, failures, t.elapsed, 120,
          f"5 closed forms equal the filtered sets; E6 filtered = Schreier (order {brute.order})")


def test_06_e6_identities():
    lat = build_lattice(Family.e6())
    with Timer() as t:
        results = e6_identity_suite(lat)
    failures = [name for name, ok in results if not ok]
    needed = ["sigma^3 = id", "tau^3 = id", "sigma tau = tau sigma", "id + sigma + sigma^2 = 0",
              "sigma(alpha) = alpha + sum beta_ij", "-beta11 is the highest root"]
    names = {n for n, _ in results}
    failures += [f"missing {n}" for n in needed if n not in names]
    check(6, failures, t.elapsed, 1, f"{len(results)} exact identities")


def test_07_condition_suite():
    failures = []
    fams = [Family.pgl(2, 2), Family.pgl(3, 2), Family.pgo(4), Family.pgo(5), Family.pgo(6),
            Family.hspin16(), Family.e6()]
    with Timer() as t:
        for fam in fams:
            lat = build_lattice(fam)
            g = build_grading(lat)
            if not check_condition_31(g, enumerate_roots(lat)).passed:
                failures.append(f"{fam.name}: a root has zero grading")
            if not check_surjectivity(g, lat):
                failures.append(f"{fam.name}: not surjective")
            grp = build_w_eps(lat, g)
            if fam.tag == "E6_ADJOINT":
                grp = closure([build_e6_sigma_tau(lat)[0]], RootMatrix.identity(6))
            if fixed_subspace_rank(grp, lat) != 0:
                failures.append(f"{fam.name}: fixed sublattice nonzero")
    check(7, failures, t.elapsed, 10, f"conditions hold on {len(fams)} pipelines")


def supported_rank_at_most_8():
    out = []
    for p in (2, 3, 5, 7):
        for n in range(1, 4):
            if p**n - 1 <= 8:
                out.append(Family.pgl(p, n))
    out += [Family.pgo(n) for n in range(3, 9)]
    return out + [Family.hspin16(), Family.e6()]


def test_08_orbit_scans():
    failures = []
    fams = supported_rank_at_most_8()
    with Timer() as t:
        for fam in fams:
            lat = build_lattice(fam)
            g = build_grading(lat)
            grp = build_w_eps(lat, g)
            C1, _, C2, d2 = orbit_constants(fam)
            got = min_orbit_scan(grp, g, 1, 2, lat).min_orbit_size
            if got < C1:
                failures.append(f"{fam.name}: {got} < {C1}")
            if d2:
                for restrict in (False, True):
                    got2 = min_orbit_scan(grp, g, 2, 2, lat, other_component_zero=restrict).min_orbit_size
                    if got2 < C2:
                        failures.append(f"{fam.name} component 2: {got2} < {C2}")
    check(8, failures, t.elapsed, 180, f"radius-2 scans on {len(fams)} instances")


def _dn_certificate(n):
    lat = build_lattice(Family.pgo(n))
    g = build_grading(lat)
    w = build_w_eps(lat, g)
    cert = check_generating_set(w, lat, build_dn_remark_gamma(lat, w), 2)
    C1, d1, _, _ = orbit_constants(lat.family)
    return cert, symrank_lower_bound(C1, 0, d1, 0)


CRITERION_9 = {}


@pytest.mark.parametrize("n", [4, 8])
def test_09_rank_equality_m_one(n):
    with Timer() as t:
        cert, lower = _dn_certificate(n)
    ok = cert.invariant and cert.is_p_generating and cert.index % 2 == 1 and cert.size == lower
    CRITERION_9[n] = (ok, f"n={n}: size {cert.size}, bound {lower}, index {cert.index}", t.elapsed)
    assert ok and t.elapsed < 30


@pytest.mark.xfail(
    strict=True,
    reason="for m >= 2 the orbits of e_{0,1}+e_{v1,j} have size 2^(r+2); at n=6 the set "
    "has 20 elements, and no invariant 2-generating set of size 12 exists",
)
def test_09_rank_equality_n6():
    with Timer() as t:
        cert, lower = _dn_certificate(6)
    ok = cert.invariant and cert.is_p_generating and cert.index % 2 == 1 and cert.size == lower
    CRITERION_9[6] = (ok, f"n=6: size {cert.size}, bound {lower}, index {cert.index}", t.elapsed)
    parts = [CRITERION_9[k] for k in sorted(CRITERION_9)]
    elapsed = sum(p[2] for p in parts)
    all_ok = all(p[0] for p in parts) and len(parts) == 3 and elapsed < 30
    record_acceptance(9, all_ok, "; ".join(p[1] for p in parts) + f" [{elapsed:.1f}s < 30s]")
    assert ok


def _det(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n, d = len(a), Fraction(1)
    for i in range(n):
        piv = next((k for k in range(i, n) if a[k][i]), None)
        if piv is None:
            return 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            d = -d
        d *= a[i][i]
        for k in range(i + 1, n):
            f = a[k][i] / a[i][i]
            a[k] = [x - f * y for x, y in zip(a[k], a[i])]
    return int(d)


def test_10_property_suites():
    rng = random.Random(20261014)
    failures = []
    with Timer() as t:
        for _ in range(500):
            n = rng.randint(1, 5)
            rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            f = snf(IntMatrix.from_rows(rows)).invariant_factors
            nz = [x for x in f if x]
            if any(b % a for a, b in zip(nz, nz[1:])) or list(f[: len(nz)]) != nz:
                failures.append(f"chain {rows}")
            if math.prod(f) != abs(_det(rows)):
                failures.append(f"det {rows}")

        setups = []
        for fam in [Family.pgl(2, 3), Family.pgl(3, 2), Family.pgo(5), Family.pgo(6),
                    Family.hspin16(), Family.e6()]:
            lat = build_lattice(fam)
            g = build_grading(lat)
            setups.append((lat, g, build_w_eps(lat, g)))
        for _ in range(200):
            lat, _, w = rng.choice(setups)
            x = lat.combination([rng.randint(-3, 3) for _ in range(lat.rank)])
            rep = orbit(w, x)
            if rep.orbit_size * rep.stabilizer_order != w.order:
                failures.append(f"orbit-stabilizer {x}")
        for _ in range(200):
            lat, g, _ = rng.choice(setups)
            # members with coordinates in [-3, 3]
            box = None
            while box is None:
                c = tuple(2 * rng.randint(-3, 3) for _ in lat.index_labels)
                if lat.family.tag == "HSPIN16" and rng.random() < 0.5:
                    c = tuple(2 * rng.randint(-3, 2) + 1 for _ in lat.index_labels)
                if lat.contains_doubled(c):
                    box = c
            y = lat.combination([rng.randint(-1, 1) for _ in range(lat.rank)]).doubled
            s = tuple(a + b for a, b in zip(box, y))
            if g.of_doubled(s) != tuple((a + b) % g.p for a, b in zip(g.of_doubled(box), g.of_doubled(y))):
                failures.append(f"additivity {box} {y}")
        for _ in range(100):
            r, m = rng.randint(1, 3), rng.randint(1, 3)
            V = f_p_vectors(2, r)
            K = list(itertools.product(V, range(1, m + 1)))
            Y = rng.sample(K, rng.randint(1, len(K)))
            if len(subset_translation_stabilizer(V, Y)) > len(Y):
                failures.append(f"subset {Y}")
    check(10, failures[:5], t.elapsed, 60, "500 SNF, 200 orbits, 200 gradings, 100 subsets")
