"""Weyl group elements, grading-preserving subgroups W(eps), and condition (32).

Two element types are used: :class:`SignedPerm` for the families realized on
Z^I (PGL, PGO+, HSpin) and :class:`RootMatrix` for E6 in the simple-root
basis.  Both act on doubled coordinate tuples.
"""

from __future__ import annotations

import itertools
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import GradingNotPreserved, IdentityCheckFailed
from .gradings import Grading
from .lattices import (
    E6_ADJOINT,
    E6_HIGHEST_ROOT,
    E6_LABELS,
    HSPIN16,
    PGL,
    PGO_PLUS,
    LatticeDescriptor,
    e6_root,
    enumerate_roots,
    gram_matrix,
    pairing,
    reflection_matrix,
)
from .linalg import HalfIntVector, IntMatrix, integer_kernel, rank_mod_p, solve_in_basis

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SignedPerm:
    """``(sigma, delta) e_k = (-1)**delta_k e_sigma(k)`` on positions ``0..n-1``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(n)), (0,) * n)

    @property
    def key(self):
        return (self.perm, self.signs)

    def apply(self, c: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(c)
        for k, (s, d) in enumerate(zip(self.perm, self.signs)):
            out[s] = -c[k] if d else c[k]
        return tuple(out)

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """``self * other``: apply ``other`` first."""
        sp, ss = self.perm, self.signs
        return SignedPerm(
            tuple(sp[j] for j in other.perm),
            tuple(d ^ ss[j] for d, j in zip(other.signs, other.perm)),
        )

    def inverse(self) -> "SignedPerm":
        n = len(self.perm)
        perm = [0] * n
        signs = [0] * n
        for k, s in enumerate(self.perm):
            perm[s] = k
            signs[s] = self.signs[k]
        return SignedPerm(tuple(perm), tuple(signs))

    def matrix(self) -> IntMatrix:
        n = len(self.perm)
        a = [[0] * n for _ in range(n)]
        for k, (s, d) in enumerate(zip(self.perm, self.signs)):
            a[s][k] = -1 if d else 1
        return IntMatrix.from_rows(a)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and not any(self.signs)


@dataclass(frozen=True)
class RootMatrix:
    m: IntMatrix

    @classmethod
    def identity(cls, n: int) -> "RootMatrix":
        return cls(IntMatrix.identity(n))

    @property
    def key(self):
        return self.m.rows

    def apply(self, c: Sequence[int]) -> tuple[int, ...]:
        return self.m @ c

    def compose(self, other: "RootMatrix") -> "RootMatrix":
        return RootMatrix(self.m @ other.m)

    def inverse(self) -> "RootMatrix":
        n = self.m.nrows
        cols = []
        for j in range(n):
            e = [int(i == j) for i in range(n)]
            y = solve_in_basis(self.m.T.rows, e)
            if y is None or any(v.denominator != 1 for v in y):
                raise ValueError("matrix is not unimodular")
            cols.append([int(v) for v in y])
        return RootMatrix(IntMatrix.from_rows(zip(*cols)))

    def matrix(self) -> IntMatrix:
        return self.m

    def is_identity(self) -> bool:
        return self.m == IntMatrix.identity(self.m.nrows)


GroupElement = Union[SignedPerm, RootMatrix]


@dataclass(frozen=True)
class FiniteActionGroup:
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def keys(self) -> frozenset:
        return frozenset(e.key for e in self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g.key in self.keys()


def closure(generators: Sequence[GroupElement], identity: GroupElement) -> FiniteActionGroup:
    """Breadth-first closure of ``generators`` under right multiplication."""
    seen = {identity.key: identity}
    order = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = g.compose(s)
                if h.key not in seen:
                    seen[h.key] = h
                    order.append(h)
                    nxt.append(h)
        frontier = nxt
    return FiniteActionGroup(tuple(generators), tuple(order))


def _identity_for(lat: LatticeDescriptor) -> GroupElement:
    n = len(lat.index_labels)
    if lat.family.tag == E6_ADJOINT:
        return RootMatrix.identity(n)
    return SignedPerm.identity(n)


def translation(labels, shift, p: int) -> SignedPerm:
    """Translate the F_p-vector part of every label by ``shift``."""
    pos = {l: k for k, l in enumerate(labels)}

    def moved(l):
        if isinstance(l[0], tuple):  # PGO labels (v, i)
            v, i = l
            return (tuple((a + b) % p for a, b in zip(v, shift)), i)
        return tuple((a + b) % p for a, b in zip(l, shift))

    return SignedPerm(tuple(pos[moved(l)] for l in labels), (0,) * len(labels))


def sign_change(n: int, positions: Iterable[int]) -> SignedPerm:
    pos = set(positions)
    return SignedPerm(tuple(range(n)), tuple(int(k in pos) for k in range(n)))


def preserves_grading(w: GroupElement, lat: LatticeDescriptor, g: Grading) -> bool:
    return all(g.of_doubled(w.apply(b.doubled)) == g(b) for b in lat.ambient_basis)


def _units(k: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for j in range(k)) for i in range(k)]


def hspin_sign_subgroup_basis(labels) -> list[tuple[int, ...]]:
    """An F_2-basis of (F_2^V)_1: even sign vectors with sum_{delta_v=1} v = 0."""
    members = []
    for delta in itertools.product((0, 1), repeat=len(labels)):
        if sum(delta) % 2:
            continue
        tot = [0, 0, 0]
        for d, v in zip(delta, labels):
            if d:
                tot = [(a + b) % 2 for a, b in zip(tot, v)]
        if not any(tot):
            members.append(delta)
    basis: list[tuple[int, ...]] = []
    for delta in members:
        if rank_mod_p(basis + [delta], 2) > len(basis):
            basis.append(delta)
    return basis


def w_eps_generators(lat: LatticeDescriptor) -> list[GroupElement]:
    fam = lat.family
    labels = lat.index_labels
    n = len(labels)
    if fam.tag == PGL:
        return [translation(labels, u, fam.p) for u in _units(fam.n)]
    if fam.tag == PGO_PLUS:
        gens: list[GroupElement] = [translation(labels, u, 2) for u in _units(fam.r)]
        gens += [sign_change(n, (0, k)) for k in range(1, n)]
        return gens
    if fam.tag == HSPIN16:
        gens = [translation(labels, u, 2) for u in _units(3)]
        gens += [
            sign_change(n, [k for k, d in enumerate(delta) if d])
            for delta in hspin_sign_subgroup_basis(labels)
        ]
        return gens
    sigma, tau = build_e6_sigma_tau(lat)
    return [sigma, tau]


def build_w_eps(lat: LatticeDescriptor, g: Grading) -> FiniteActionGroup:
    """Closed-form W(eps); for E6 the order-9 subgroup generated by sigma and tau."""
    grp = closure(w_eps_generators(lat), _identity_for(lat))
    for w in grp.elements:
        if not preserves_grading(w, lat, g):
            raise GradingNotPreserved(f"{w} does not preserve the grading")
    return grp


def ambient_weyl_order(lat: LatticeDescriptor) -> int:
    fam = lat.family
    if fam.tag == PGL:
        return math.factorial(fam.p**fam.n)
    if fam.tag == PGO_PLUS:
        return math.factorial(fam.n) * 2 ** (fam.n - 1)
    if fam.tag == HSPIN16:
        return math.factorial(8) * 2**7
    return 51840


def e6_weyl_group(lat: LatticeDescriptor) -> FiniteActionGroup:
    """All 51840 elements, closed from the six simple reflections.

    The breadth-first closure runs on int64 arrays; Weyl group entries in the
    simple-root basis are bounded by the highest-root coefficients, so nothing
    can overflow.
    """
    gram = gram_matrix(lat)
    simple = [RootMatrix(reflection_matrix(b, gram)) for b in lat.ambient_basis]
    gens = np.array([s.m.rows for s in simple], dtype=np.int64)
    ident = np.eye(6, dtype=np.int64)
    seen = {ident.tobytes()}
    found = [ident]
    frontier = ident[None]
    while len(frontier):
        prods = np.einsum("fij,gjk->fgik", frontier, gens).reshape(-1, 6, 6)
        fresh = []
        for m in prods:
            b = m.tobytes()
            if b not in seen:
                seen.add(b)
                fresh.append(m)
        found.extend(fresh)
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, 6, 6)
    if max(int(abs(m).max()) for m in found) > 2**20:
        raise ArithmeticError("unexpected entry growth in the E6 Weyl group")
    elements = tuple(RootMatrix(IntMatrix(tuple(map(tuple, m.tolist())))) for m in found)
    return FiniteActionGroup(tuple(simple), elements)


def worker_count() -> int:
    cap = int(os.environ.get("EDRANK_THREADS", "0") or 0)
    cpus = os.cpu_count() or 1
    return max(1, min(cap, cpus)) if cap else 1


def _even_signs(n: int) -> list[tuple[int, ...]]:
    return [s for s in itertools.product((0, 1), repeat=n) if sum(s) % 2 == 0]


def _filter_perm_chunk(args):
    perms, sign_choices, basis, values, g = args
    keep = []
    for perm in perms:
        for signs in sign_choices:
            w = SignedPerm(perm, signs)
            if all(g.of_doubled(w.apply(b)) == v for b, v in zip(basis, values)):
                keep.append(w)
    return keep


def brute_force_w_eps(
    lat: LatticeDescriptor,
    g: Grading,
    budget: int = 10**5,
    workers: int | None = None,
    parallel_threshold: int = 50_000,
) -> FiniteActionGroup | None:
    """Filter the whole ambient Weyl group for grading-preserving elements.

    Returns None when the ambient group is larger than ``budget``.  The result
    is sorted, so it does not depend on the number of workers.
    """
    size = ambient_weyl_order(lat)
    if size > budget:
        return None
    tag = lat.family.tag
    if tag == E6_ADJOINT:
        keep = [w for w in e6_weyl_group(lat).elements if preserves_grading(w, lat, g)]
    else:
        n = len(lat.index_labels)
        signs = [(0,) * n] if tag == PGL else _even_signs(n)
        perms = list(itertools.permutations(range(n)))
        basis = [b.doubled for b in lat.ambient_basis]
        values = [g(b) for b in lat.ambient_basis]
        workers = workers or worker_count()
        if workers > 1 and len(perms) * len(signs) > parallel_threshold:
            step = math.ceil(len(perms) / workers)
            chunks = [
                (perms[i : i + step], signs, basis, values, g) for i in range(0, len(perms), step)
            ]
            with ProcessPoolExecutor(workers) as ex:
                keep = [w for part in ex.map(_filter_perm_chunk, chunks) for w in part]
        else:
            keep = _filter_perm_chunk((perms, signs, basis, values, g))
    keep.sort(key=lambda w: w.key)
    return FiniteActionGroup((), tuple(keep))


def _functional_on_basis(lat: LatticeDescriptor, g: Grading):
    return tuple(g(b) for b in lat.ambient_basis)


def schreier_stabilizer(
    lat: LatticeDescriptor, g: Grading, generators: Sequence[GroupElement]
) -> tuple[FiniteActionGroup, int]:
    """Stabilizer of ``g`` inside the group generated by ``generators``.

    Works on the orbit of the grading (as a functional recorded on the lattice
    basis) and closes the Schreier generators.  Returns the group and the orbit
    length.
    """
    basis = [b.doubled for b in lat.ambient_basis]
    p = g.p
    # coordinates of s(b_j) in the lattice basis, per generator
    images = []
    for s in generators:
        rows = []
        for b in basis:
            y = solve_in_basis(basis, s.apply(b))
            rows.append([int(v) for v in y])
        images.append(rows)

    def act(phi, gi):
        out = []
        for coeffs in images[gi]:
            val = [0] * g.d
            for c, v in zip(coeffs, phi):
                for k in range(g.d):
                    val[k] += c * v[k]
            out.append(tuple(x % p for x in val))
        return tuple(out)

    ident = _identity_for(lat)
    gen_inv = [s.inverse() for s in generators]
    start = _functional_on_basis(lat, g)
    transversal = {start: (ident, ident)}
    frontier = [start]
    stab_gens: list[GroupElement] = []
    grp = closure([], ident)
    members = grp.keys()
    while frontier:
        nxt = []
        for phi in frontier:
            t, t_inv = transversal[phi]
            for gi, s in enumerate(generators):
                psi = act(phi, gi)
                if psi not in transversal:
                    transversal[psi] = (t.compose(s), gen_inv[gi].compose(t_inv))
                    nxt.append(psi)
                    continue
                h = t.compose(s).compose(transversal[psi][1])
                if h.key not in members:
                    stab_gens.append(h)
                    grp = closure(stab_gens, ident)
                    members = grp.keys()
        frontier = nxt
    return grp, len(transversal)


def _lattice_action_matrix(w: GroupElement) -> IntMatrix:
    return w.matrix()


def fixed_subspace_rank(grp: FiniteActionGroup, lat: LatticeDescriptor) -> int:
    """Rank of the sublattice of X(T) fixed by every generator of ``grp``."""
    gens = grp.generators or grp.elements
    basis_cols = [[c for c in b.doubled] for b in lat.ambient_basis]
    n = len(lat.index_labels)
    rows = []
    for w in gens:
        a = _lattice_action_matrix(w)
        for i in range(n):
            # row i of (A - I) applied to each basis vector
            rows.append(
                [
                    sum(a.rows[i][k] * col[k] for k in range(n)) - col[i]
                    for col in basis_cols
                ]
            )
    if not rows:
        return lat.rank
    return len(integer_kernel(IntMatrix.from_rows(rows)))


def _coords(v: HalfIntVector) -> tuple[int, ...]:
    return tuple(c // 2 for c in v.doubled)


def _e6_named(lat: LatticeDescriptor) -> dict[str, HalfIntVector]:
    names = ["alpha"] + [f"beta{i}{j}" for i in (1, 2, 3) for j in (1, 2)]
    return {nm: e6_root(lat, nm) for nm in names}


def _e6_sigma_tau_raw(lat: LatticeDescriptor) -> tuple[RootMatrix, RootMatrix]:
    gram = gram_matrix(lat)
    r = _e6_named(lat)
    sigma = RootMatrix.identity(6)
    for i in (1, 2, 3):
        si = RootMatrix(
            reflection_matrix(r[f"beta{i}1"], gram) @ reflection_matrix(r[f"beta{i}2"], gram)
        )
        sigma = sigma.compose(si)
    image = {"alpha": r["alpha"]}
    for i in (1, 2, 3):
        for j in (1, 2):
            image[f"beta{i}{j}"] = r[f"beta{i % 3 + 1}{j}"]
    cols = [_coords(image[l]) for l in E6_LABELS]
    tau = RootMatrix(IntMatrix.from_rows(zip(*cols)))
    return sigma, tau


def e6_identity_suite(lat: LatticeDescriptor) -> list[tuple[str, bool]]:
    """Every exact identity that sigma and tau must satisfy."""
    sigma, tau = _e6_sigma_tau_raw(lat)
    s, t = sigma.m, tau.m
    ident = IntMatrix.identity(6)
    r = _e6_named(lat)
    gram = gram_matrix(lat)
    roots = enumerate_roots(lat)
    rootset = roots.doubled_set()

    def img(m, v):
        return HalfIntVector(v.labels, m @ v.doubled)

    sum_beta = sum((r[f"beta{i}{j}"] for i in (1, 2, 3) for j in (1, 2)), HalfIntVector.zero(lat.index_labels))
    theta = lat.from_mapping(E6_HIGHEST_ROOT)
    heights = {x.doubled: sum(x.doubled) for x in roots}
    top = max(roots, key=lambda x: sum(x.doubled))
    checks = [
        ("sigma^3 = id", s**3 == ident),
        ("tau^3 = id", t**3 == ident),
        ("sigma tau = tau sigma", s @ t == t @ s),
        ("id + sigma + sigma^2 = 0", (ident + s + s @ s).is_zero()),
        ("sigma(alpha) = alpha + sum beta_ij", img(s, r["alpha"]) == r["alpha"] + sum_beta),
    ]
    for i in (1, 2, 3):
        b1, b2 = r[f"beta{i}1"], r[f"beta{i}2"]
        checks.append((f"sigma(beta{i}1) = beta{i}2", img(s, b1) == b2))
        checks.append((f"sigma(beta{i}2) = -beta{i}1 - beta{i}2", img(s, b2) == -b1 - b2))
    for i in (1, 2, 3):
        for j in (1, 2):
            checks.append(
                (f"tau(beta{i}{j}) = beta{i % 3 + 1}{j}", img(t, r[f"beta{i}{j}"]) == r[f"beta{i % 3 + 1}{j}"])
            )
    checks += [
        ("tau(alpha) = alpha", img(t, r["alpha"]) == r["alpha"]),
        ("-beta11 is the highest root", (-r["beta11"]) == theta == top and sum(top.doubled) == max(heights.values())),
        ("beta11 is a root of self-pairing 2", r["beta11"].doubled in rootset and pairing(r["beta11"], r["beta11"], gram) == 4),
        ("sigma preserves the roots", {s @ x for x in rootset} == rootset),
        ("tau preserves the roots", {t @ x for x in rootset} == rootset),
        ("det sigma, det tau = +-1", abs(s.det()) == 1 and abs(t.det()) == 1),
    ]
    return checks


def build_e6_sigma_tau(lat: LatticeDescriptor) -> tuple[RootMatrix, RootMatrix]:
    if lat.family.tag != E6_ADJOINT:
        raise ValueError("sigma and tau exist only for E6")
    failed = [name for name, ok in e6_identity_suite(lat) if not ok]
    if failed:
        raise IdentityCheckFailed("; ".join(failed))
    return _e6_sigma_tau_raw(lat)
