import pytest
from hypothesis import given, strategies as st

from edrank.gradings import (
    Grading,
    build_grading,
    check_condition_31,
    check_surjectivity,
    zero_grading,
)
from edrank.lattices import Family, build_lattice, enumerate_roots, half_sum_vector
from edrank.linalg import HalfIntVector

from conftest import FAMILIES, setup


class TestBuild:
    @pytest.mark.parametrize(
        "key,d,split,p",
        [("pgl-2-2", 2, (2, 0), 2), ("pgl-3-2", 2, (2, 0), 3), ("pgo-4", 2, (2, 0), 2),
         ("pgo-6", 3, (3, 0), 2), ("pgo-5", 4, (4, 0), 2), ("hspin16", 4, (4, 0), 2),
         ("e6", 2, (1, 1), 3)],
    )
    def test_shape(self, key, d, split, p):
        g = setup(key)[1]
        assert (g.d, g.block_split, g.p) == (d, split, p)

    def test_pgl_example(self):
        lat, g, _, _ = setup("pgl-2-2")
        x = lat.unit((0, 0)) - lat.unit((0, 1))
        assert g(x) == (0, 1)

    def test_pgl_is_sum_of_labels(self):
        lat, g, _, roots = setup("pgl-3-2")
        for r in roots:
            u = next(l for l, c in zip(lat.index_labels, r.doubled) if c > 0)
            v = next(l for l, c in zip(lat.index_labels, r.doubled) if c < 0)
            assert g(r) == tuple((a - b) % 3 for a, b in zip(u, v))

    def test_hspin_nu(self):
        lat, g, _, _ = setup("hspin16")
        assert g(half_sum_vector(lat.index_labels)) == (0, 0, 0, 1)

    def test_e6_alpha(self):
        lat, g, _, _ = setup("e6")
        assert g(lat.unit("alpha")) == (0, 1)
        assert g(lat.unit("beta21")) == (1, 0)

    def test_pgo_root_values(self):
        lat, g, _, _ = setup("pgo-4")
        (v0, v1) = lat.index_labels[0], lat.index_labels[1]
        # e_{(v,1)} + e_{(v',1)} lands on v + v'
        assert g(lat.unit(v0) + lat.unit(v1)) == tuple(a ^ b for a, b in zip(v0[0], v1[0]))

    def test_split_must_add_up(self):
        with pytest.raises(ValueError):
            Grading(None, 2, 3, (1, 1), lambda c: (0, 0, 0))


class TestConditions:
    @pytest.mark.parametrize("key", sorted(FAMILIES))
    def test_every_family_passes(self, key):
        lat, g, _, roots = setup(key)
        rep = check_condition_31(g, roots)
        assert rep.passed and rep.n_offending == 0 and rep.status == "PASS"
        assert rep.checked == len(roots)
        assert check_surjectivity(g, lat)

    def test_zero_grading_fails(self):
        lat = build_lattice(Family.pgl(2, 1))
        z = zero_grading(lat, 2, 1)
        rep = check_condition_31(z, enumerate_roots(lat))
        assert not rep.passed and rep.n_offending == 2 and len(rep.offending) == 2
        assert not check_surjectivity(z, lat)

    def test_report_is_capped(self):
        lat, _, _, roots = setup("hspin16")
        rep = check_condition_31(zero_grading(lat, 2, 4), roots)
        assert rep.n_offending == 112 and len(rep.offending) == 20


class TestAdditivity:
    @pytest.mark.parametrize("key", ["pgl-2-3", "pgl-3-2", "pgo-6", "pgo-5", "hspin16", "e6"])
    @given(data=st.data())
    def test_additive(self, key, data):
        lat, g, _, _ = setup(key)
        cs = st.lists(st.integers(-3, 3), min_size=lat.rank, max_size=lat.rank)
        x, y = lat.combination(data.draw(cs)), lat.combination(data.draw(cs))
        assert g(x + y) == tuple((a + b) % g.p for a, b in zip(g(x), g(y)))
        assert g(-x) == tuple(-a % g.p for a in g(x))

    @given(st.lists(st.integers(-3, 3), min_size=8, max_size=8))
    def test_hspin_representative_independent(self, coeffs):
        lat, g, _, _ = setup("hspin16")
        # x = d*nu + y is decided by parity, so adding 2*nu flips nothing but y
        x = lat.combination(coeffs)
        nu2 = half_sum_vector(lat.index_labels) * 2
        assert g(x + nu2)[3] == g(x)[3]
        assert all(g(x + nu2 - nu2)[i] == g(x)[i] for i in range(4))
