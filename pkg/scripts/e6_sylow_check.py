"""Order of the full grading stabilizer in W(E6), by two independent methods.

The order-9 group generated by sigma and tau sits inside it; this script
reports whether it is a Sylow 3-subgroup.
"""

import time

from edrank.gradings import build_grading
from edrank.lattices import Family, build_lattice
from edrank.orbits import sylow_subgroup
from edrank.weyl import brute_force_w_eps, build_w_eps, e6_weyl_group, schreier_stabilizer


def three_part(k):
    out = 1
    while k % 3 == 0:
        k //= 3
        out *= 3
    return out


def main():
    lat = build_lattice(Family.e6())
    g = build_grading(lat)
    t = time.perf_counter()
    W = e6_weyl_group(lat)
    brute = brute_force_w_eps(lat, g)
    sch, orbit_len = schreier_stabilizer(lat, g, W.generators)
    small = build_w_eps(lat, g)
    print(f"|W(E6)|                       = {W.order}")
    print(f"|W(eps)| by filtering          = {brute.order}")
    print(f"|W(eps)| by Schreier           = {sch.order} (orbit of eps: {orbit_len})")
    print(f"same element sets              = {brute.keys() == sch.keys()}")
    print(f"3-part of |W(eps)|             = {three_part(brute.order)}")
    print(f"|<sigma, tau>|                 = {small.order}, contained: {small.keys() <= brute.keys()}")
    print(f"Sylow 3-subgroup order         = {sylow_subgroup(brute, 3).order}")
    print(f"<sigma, tau> is Sylow          = {small.order == three_part(brute.order)}")
    print(f"({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    main()
