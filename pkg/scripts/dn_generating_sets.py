"""Explicit invariant generating sets for PGO+_{2n}, n even, against the rank lower bound.

For each n it prints the orbit sizes making up the set, its size and index,
and the lower bound.  It also reports the index of the sublattice spanned by
all orbits of minimal size on a coordinate box, which decides whether the
bound can be met by orbits of minimal size alone.
"""

import argparse

from edrank.bounds import orbit_constants
from edrank.gradings import build_grading
from edrank.lattices import Family, build_lattice
from edrank.linalg import sublattice_index
from edrank.orbits import build_dn_remark_gamma, check_generating_set, generator_orbit
from edrank.weyl import build_w_eps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 6, 8])
    ap.add_argument("--radius", type=int, default=1)
    args = ap.parse_args()

    for n in args.n:
        fam = Family.pgo(n)
        lat = build_lattice(fam)
        g = build_grading(lat)
        w = build_w_eps(lat, g)
        gamma = build_dn_remark_gamma(lat, w)
        cert = check_generating_set(w, lat, gamma, 2)
        seen, sizes = set(), []
        for x in gamma:
            if x.doubled not in seen:
                orb = generator_orbit(w.generators, x.doubled)
                seen |= orb
                sizes.append(len(orb))
        C1, d1, _, _ = orbit_constants(fam)
        smallest = set()
        for c in lat.box_members(args.radius):
            if any(c):
                orb = generator_orbit(w.generators, c)
                if len(orb) <= C1:
                    smallest |= orb
        idx = sublattice_index(lat.ambient_basis, [lat.vector(c) for c in smallest])
        print(
            f"n={n:2d} (r={fam.r}, m={fam.m}): orbits {sizes} -> |set| {cert.size}, "
            f"index {cert.index}, bound {C1 * d1}, "
            f"orbits of size <= {C1} span index {idx} (radius {args.radius})"
        )


if __name__ == "__main__":
    main()
