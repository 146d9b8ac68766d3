import itertools
import random

import pytest
from hypothesis import given, strategies as st

from edrank.errors import BudgetExceeded, EmptySubset, InvalidFamily, VectorOutsideLattice
from edrank.gradings import Grading
from edrank.lattices import Family, build_lattice, f_p_vectors, free_lattice, half_sum_vector
from edrank.linalg import INFINITE, HalfIntVector, sublattice_index
from edrank.orbits import (
    EXACT_WITHIN_RADIUS,
    build_dn_remark_gamma,
    check_generating_set,
    exact_symrank_toy,
    generator_orbit,
    min_orbit_scan,
    orbit,
    pgl_stabilizer_lemma_scan,
    subset_translation_stabilizer,
    sylow_subgroup,
    symrank_lower_bound,
)
from edrank.weyl import SignedPerm, closure

from conftest import setup


def swap_group():
    return closure([SignedPerm((1, 0), (0, 0))], SignedPerm.identity(2))


def negation_group():
    return closure([SignedPerm((0, 1), (1, 1))], SignedPerm.identity(2))


def trivial_group(n):
    return closure([], SignedPerm.identity(n))


class TestOrbit:
    def test_pgl_example(self):
        lat, _, w, _ = setup("pgl-2-2")
        rep = orbit(w, lat.unit((0, 0)) - lat.unit((0, 1)))
        assert rep.orbit_size == 4 and rep.stabilizer_order == 1

    def test_half_sum_vector(self):
        lat, _, w, _ = setup("hspin16")
        rep = orbit(w, half_sum_vector(lat.index_labels))
        assert (rep.orbit_size, rep.stabilizer_order) == (16, 8)

    def test_zero(self):
        lat, _, w, _ = setup("e6")
        rep = orbit(w, HalfIntVector.zero(lat.index_labels))
        assert rep.orbit_size == 1 and rep.stabilizer_order == w.order

    @pytest.mark.parametrize("key", ["pgl-2-3", "pgl-3-2", "pgo-4", "pgo-5", "pgo-6", "hspin16", "e6"])
    @given(data=st.data())
    def test_orbit_stabilizer(self, key, data):
        lat, _, w, _ = setup(key)
        x = lat.combination(data.draw(st.lists(st.integers(-3, 3), min_size=lat.rank, max_size=lat.rank)))
        rep = orbit(w, x)
        assert rep.orbit_size * rep.stabilizer_order == w.order
        pts = {y.doubled for y in rep.orbit}
        assert all(s.apply(c) in pts for s in w.generators for c in pts)
        assert generator_orbit(w.generators, x.doubled) == pts


class TestSubsetStabilizer:
    V2 = f_p_vectors(2, 2)

    def test_example(self):
        got = subset_translation_stabilizer(self.V2, [((0, 0), 1), ((0, 1), 1)])
        assert got == [(0, 0), (0, 1)]

    def test_everything(self):
        K = [(v, i) for v in self.V2 for i in (1, 2)]
        assert subset_translation_stabilizer(self.V2, K) == self.V2

    def test_singleton(self):
        assert subset_translation_stabilizer(self.V2, [((1, 0), 2)]) == [(0, 0)]

    def test_empty(self):
        with pytest.raises(EmptySubset):
            subset_translation_stabilizer(self.V2, [])

    @given(st.integers(1, 3), st.integers(1, 3), st.data())
    def test_count_bounded_by_size(self, r, m, data):
        V = f_p_vectors(2, r)
        K = list(itertools.product(V, range(1, m + 1)))
        Y = data.draw(st.lists(st.sampled_from(K), min_size=1, unique=True))
        got = subset_translation_stabilizer(V, Y)
        assert (0,) * r in got and len(got) <= len(Y)
        # the stabilizer is a subgroup, so its size is a power of two dividing |Y|
        assert len(Y) % len(got) == 0


class TestScan:
    def test_pgl_2_2(self):
        lat, g, w, _ = setup("pgl-2-2")
        res = min_orbit_scan(w, g, 1, 2, lat)
        assert res.min_orbit_size == 4

    def test_pgo_4(self):
        lat, g, w, _ = setup("pgo-4")
        assert min_orbit_scan(w, g, 1, 1, lat).min_orbit_size == 8

    def test_e6_radius_one(self):
        lat, g, w, _ = setup("e6")
        assert min_orbit_scan(w, g, 1, 1, lat).min_orbit_size == 9
        assert min_orbit_scan(w, g, 2, 1, lat).min_orbit_size == 3
        assert min_orbit_scan(w, g, 2, 1, lat, other_component_zero=True).min_orbit_size == 3

    @pytest.mark.parametrize("key,comp", [("pgl-3-1", 1), ("pgo-5", 1), ("e6", 1), ("e6", 2)])
    def test_witness_and_tie_break(self, key, comp):
        lat, g, w, _ = setup(key)
        res = min_orbit_scan(w, g, comp, 1, lat)
        assert any(g.component(g(res.witness), comp))
        assert orbit(w, res.witness).orbit_size == res.min_orbit_size
        # brute force over the same box with full orbits
        best = min(
            (orbit(w, lat.vector(c)).orbit_size, c)
            for c in lat.box_members(1)
            if any(g.component(g.of_doubled(c), comp))
        )
        assert (res.min_orbit_size, res.witness.doubled) == best

    def test_bad_arguments(self):
        lat, g, w, _ = setup("pgo-4")
        with pytest.raises(ValueError):
            min_orbit_scan(w, g, 1, 0, lat)
        with pytest.raises(ValueError):
            min_orbit_scan(w, g, 2, 1, lat)  # second block is empty


class TestStabilizerLemma:
    @pytest.mark.parametrize("p,n,radius", [(2, 1, 3), (2, 2, 2), (3, 1, 3), (2, 3, 1), (3, 2, 1)])
    def test_no_counterexamples(self, p, n, radius):
        assert pgl_stabilizer_lemma_scan(p, n, radius) == []

    def test_hypothesis_is_needed(self):
        bad = pgl_stabilizer_lemma_scan(2, 2, 1, require_sum_divisible=False)
        assert bad and all(sum(x.doubled) // 2 % 4 for x in bad)


class TestLowerBound:
    @pytest.mark.parametrize(
        "args,want", [((8, 0, 3, 0), 24), ((16, 0, 4, 0), 64), ((9, 3, 1, 1), 12), ((16, 16, 4, 0), 64)]
    )
    def test_examples(self, args, want):
        assert symrank_lower_bound(*args) == want

    def test_nonpositive_constant(self):
        with pytest.raises(ValueError):
            symrank_lower_bound(0, 0, 1, 0)


class TestGeneratingSet:
    def test_basis_under_trivial_group(self):
        lat = setup("pgo-4")[0]
        cert = check_generating_set(trivial_group(4), lat, list(lat.ambient_basis), 2)
        assert cert.invariant and cert.index == 1 and cert.is_p_generating

    def test_doubled_basis(self):
        lat = setup("pgo-4")[0]
        cert = check_generating_set(trivial_group(4), lat, [b * 2 for b in lat.ambient_basis], 2)
        assert cert.index == 2**4 and not cert.is_p_generating
        cert3 = check_generating_set(trivial_group(4), lat, [b * 2 for b in lat.ambient_basis], 3)
        assert cert3.is_p_generating

    def test_not_invariant(self):
        lat, _, w, _ = setup("pgo-4")
        cert = check_generating_set(w, lat, list(lat.ambient_basis), 2)
        assert not cert.invariant and cert.is_p_generating

    def test_rank_deficit(self):
        lat, _, w, _ = setup("pgo-4")
        cert = check_generating_set(w, lat, [lat.ambient_basis[0]], 2)
        assert cert.index == INFINITE and not cert.is_p_generating

    def test_outside_lattice(self):
        lat, _, w, _ = setup("pgo-4")
        with pytest.raises(VectorOutsideLattice):
            check_generating_set(w, lat, [lat.unit(lat.index_labels[0])], 2)


class TestDnGamma:
    @pytest.mark.parametrize("key,orbits", [("pgo-4", [8, 8]), ("pgo-8", [16, 16, 16])])
    def test_sizes_when_m_is_one(self, key, orbits):
        lat, _, w, _ = setup(key)
        gamma = build_dn_remark_gamma(lat, w)
        fam = lat.family
        assert len(gamma) == sum(orbits) == (fam.r + fam.m - 1) * 2 ** (fam.r + 1)
        cert = check_generating_set(w, lat, gamma, 2)
        assert cert.invariant and cert.is_p_generating and cert.index % 2 == 1

    def test_n6_second_block_orbits_are_larger(self):
        # e_{0,1} + e_{v1,j} with j >= 2 is moved by translation by v1
        lat, _, w, _ = setup("pgo-6")
        gamma = build_dn_remark_gamma(lat, w)
        sizes = sorted(len(generator_orbit(w.generators, x.doubled)) for x in gamma)
        assert len(gamma) == 20
        assert set(sizes) == {4, 8}
        cert = check_generating_set(w, lat, gamma, 2)
        assert cert.invariant and cert.is_p_generating

    def test_n6_small_orbits_do_not_generate(self):
        # every orbit of size <= 4 lies in an index-4 sublattice, so no invariant
        # 2-generating set of size 12 exists for n = 6
        lat, _, w, _ = setup("pgo-6")
        small = set()
        for c in lat.box_members(2):
            if any(c):
                orb = generator_orbit(w.generators, c)
                if len(orb) <= 4:
                    small |= orb
        idx = sublattice_index(lat.ambient_basis, [lat.vector(c) for c in small])
        assert idx == 4

    def test_oddn_rejected(self):
        with pytest.raises(InvalidFamily):
            build_dn_remark_gamma(setup("pgo-5")[0])

    def test_other_family_rejected(self):
        with pytest.raises(InvalidFamily):
            build_dn_remark_gamma(setup("hspin16")[0])


class TestSylow:
    @pytest.mark.parametrize("key,p,order", [("pgo-4", 2, 32), ("e6", 3, 9), ("pgl-3-1", 2, 1)])
    def test_orders(self, key, p, order):
        _, _, w, _ = setup(key)
        assert sylow_subgroup(w, p).order == order

    def test_e6_full_stabilizer(self):
        from edrank.weyl import brute_force_w_eps

        lat, g, _, _ = setup("e6")
        full = brute_force_w_eps(lat, g)
        assert sylow_subgroup(full, 3).order == 27


class TestToyRank:
    def test_swap(self):
        assert exact_symrank_toy(swap_group(), free_lattice(2), 2, 1, 4) == (2, EXACT_WITHIN_RADIUS)

    def test_trivial_rank_one(self):
        assert exact_symrank_toy(trivial_group(1), free_lattice(1), 2, 1, 3)[0] == 1

    def test_negation_mod_three(self):
        # the Sylow 3-subgroup of {+-1} is trivial, so any basis already works
        assert exact_symrank_toy(negation_group(), free_lattice(2), 3, 1, 4)[0] == 2

    def test_negation_mod_two(self):
        # orbits {x, -x}: two of them are needed
        assert exact_symrank_toy(negation_group(), free_lattice(2), 2, 1, 6)[0] == 4

    def test_limits(self):
        with pytest.raises(ValueError):
            exact_symrank_toy(trivial_group(5), free_lattice(5), 2, 1, 5)
        with pytest.raises(BudgetExceeded):
            exact_symrank_toy(negation_group(), free_lattice(2), 2, 2, 6, budget=1)

    @pytest.mark.parametrize("key,p,max_size", [("pgl-2-1", 2, 4), ("pgl-3-1", 3, 6), ("pgo-3", 2, 10)])
    def test_sandwiches_lower_bound(self, key, p, max_size):
        lat, g, w, _ = setup(key)
        scan = min_orbit_scan(sylow_subgroup(w, p), g, 1, 1, lat)
        lower = symrank_lower_bound(scan.min_orbit_size, 0, g.block_split[0], 0)
        value, status = exact_symrank_toy(w, lat, p, 1, max_size)
        assert status == EXACT_WITHIN_RADIUS
        assert value is not None and value >= lower
        # on these small cases a radius-1 set already meets the bound
        assert value == lower

    def test_swap_with_identity_grading(self):
        g = Grading(None, 2, 2, (2, 0), lambda c: tuple((x // 2) % 2 for x in c))
        lat = free_lattice(2)
        scan = min_orbit_scan(swap_group(), g, 1, 1, lat)
        assert symrank_lower_bound(scan.min_orbit_size, 0, 2, 0) <= exact_symrank_toy(
            swap_group(), lat, 2, 1, 4
        )[0]
