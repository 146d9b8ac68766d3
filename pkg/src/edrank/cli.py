"""Command-line front end: ``edrank {bound,verify,scan,report,selftest}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from .bounds import (
    check_pair,
    fixed_check_group,
    derive_bound,
    orbit_constants,
    render_table_json,
    render_table_text,
    required_prime,
    scan_evidence,
    scan_to_dict,
    theorem_table,
)
from .errors import EdrankError, InvalidFamilyParams, UnsupportedPair
from .gradings import build_grading, check_condition_31, check_surjectivity
from .lattices import E6_ADJOINT, HSPIN16, PGL, PGO_PLUS, Family, build_lattice, enumerate_roots
from .orbits import ScanResult, build_dn_remark_gamma, check_generating_set
from .weyl import (
    ambient_weyl_order,
    brute_force_w_eps,
    build_w_eps,
    e6_identity_suite,
    e6_weyl_group,
    fixed_subspace_rank,
    schreier_stabilizer,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

FAMILY_TAGS = {"pgl": PGL, "pgo": PGO_PLUS, "hspin16": HSPIN16, "e6": E6_ADJOINT}
FORMATS = {
    "bound": ("text", "json"),
    "verify": ("text", "json"),
    "scan": ("text", "json", "csv"),
    "report": ("text", "json"),
    "selftest": ("text",),
}
BRUTE_FORCE_BUDGET = {0: 0, 1: 10**5, 2: 6 * 10**6}


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


@dataclass(frozen=True)
class CliConfig:
    command: str
    family: Family | None = None
    p: int | None = None
    radius: int | None = None
    format: str = "text"
    brute_force_level: int = 1
    output_path: str | None = None
    seed: int = 0
    pgo_even_n: int = 6
    pgo_odd_n: int = 5
    scans: bool = True


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edrank", description="Symmetric-rank lower bounds for essential dimension."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, family: bool):
        if family:
            sp.add_argument("--family", choices=sorted(FAMILY_TAGS), required=True)
            sp.add_argument("--p", type=int, help="prime (required for pgl)")
            sp.add_argument("--n", type=int, help="rank parameter for pgl and pgo")
        sp.add_argument("--format", default="text")
        sp.add_argument("--output", help="write to this file instead of stdout")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("bound", help="run the pipeline and print a certificate")
    common(sp, True)
    sp.add_argument("--radius", type=int, help="scan radius for the evidence (default: auto)")
    sp.add_argument("--no-scans", action="store_true", help="skip the orbit scans")

    sp = sub.add_parser("verify", help="check conditions, W(eps) and identities")
    common(sp, True)
    sp.add_argument("--brute-force-level", type=int, default=1)

    sp = sub.add_parser("scan", help="minimum orbit sizes on a coordinate box")
    common(sp, True)
    sp.add_argument("--radius", type=int, default=2)

    sp = sub.add_parser("report", help="the summary table of bounds")
    common(sp, False)
    sp.add_argument("--pgo-even-n", type=int, default=6)
    sp.add_argument("--pgo-odd-n", type=int, default=5)
    sp.add_argument("--no-scans", action="store_true")

    sp = sub.add_parser("selftest", help="run the seeded invariant checks")
    common(sp, False)
    return parser


def _family_from_args(ns) -> tuple[Family, int]:
    tag = FAMILY_TAGS[ns.family]
    if tag in (PGL, PGO_PLUS):
        if ns.n is None:
            raise UsageError("--n", f"required for --family {ns.family}")
    elif ns.n is not None:
        raise UsageError("--n", f"--family {ns.family} takes no --n")
    if tag == PGL and ns.p is None:
        raise UsageError("--p", "required for --family pgl")
    try:
        fam = Family(tag, ns.p if tag == PGL else None, ns.n)
    except InvalidFamilyParams as exc:
        flag = "--p" if tag == PGL and "prime" in str(exc) else "--n"
        raise UsageError(flag, str(exc)) from None
    p = ns.p if ns.p is not None else required_prime(fam)
    try:
        check_pair(fam, p)
    except UnsupportedPair as exc:
        raise UsageError("--p", str(exc)) from None
    return fam, p


def config_from_args(argv: list[str] | None = None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    if ns.format not in FORMATS[ns.command]:
        raise UsageError(
            "--format", f"{ns.command} supports {', '.join(FORMATS[ns.command])}, not {ns.format!r}"
        )
    fam = p = None
    if hasattr(ns, "family"):
        fam, p = _family_from_args(ns)
    radius = getattr(ns, "radius", None)
    if radius is not None and radius < 1:
        raise UsageError("--radius", f"must be at least 1, got {radius}")
    level = getattr(ns, "brute_force_level", 1)
    if level not in BRUTE_FORCE_BUDGET:
        raise UsageError("--brute-force-level", f"must be 0, 1 or 2, got {level}")
    even, odd = getattr(ns, "pgo_even_n", 6), getattr(ns, "pgo_odd_n", 5)
    if even < 4 or even % 2:
        raise UsageError("--pgo-even-n", f"must be even and at least 4, got {even}")
    if odd < 3 or odd % 2 == 0:
        raise UsageError("--pgo-odd-n", f"must be odd and at least 3, got {odd}")
    return CliConfig(
        command=ns.command,
        family=fam,
        p=p,
        radius=radius,
        format=ns.format,
        brute_force_level=level,
        output_path=ns.output,
        seed=ns.seed,
        pgo_even_n=even,
        pgo_odd_n=odd,
        scans=not getattr(ns, "no_scans", False),
    )


def _cmd_bound(cfg: CliConfig, out: io.StringIO) -> int:
    cert = derive_bound(cfg.family, cfg.p, radius=cfg.radius, scans=cfg.scans)
    if cfg.format == "json":
        out.write(cert.to_json() + "\n")
    else:
        C1, d1, C2, d2 = cert.constants
        out.write(f"{cfg.family.name} at p={cert.p}\n")
        out.write(f"  roots with nonzero grading: {cert.condition_31.status} ({cert.condition_31.checked})\n")
        out.write(f"  fixed sublattice rank: {cert.condition_32_rank}\n")
        out.write(f"  |W(eps)|: {cert.group_order}\n")
        out.write(f"  constants: C1={C1} d1={d1} C2={C2} d2={d2}\n")
        out.write(f"  rank lower bound: {cert.rank_lower}\n")
        out.write(f"  dim T: {cert.dim_t}\n")
        out.write(f"  ed lower bound: {cert.ed_lower}\n")
        for s in cert.scan_evidence:
            out.write(f"  scan: {_scan_line(s)}\n")
        u = cert.upper_certificate
        if u is not None:
            out.write(
                f"  explicit generating set: size {u.size}, invariant {u.invariant}, index {u.index}\n"
            )
        out.write(f"  status: {cert.status}\n")
    return EXIT_OK if cert.status == "VALID" else EXIT_FAILED


def _scan_line(s: ScanResult) -> str:
    extra = ", other component zero" if s.other_component_zero else ""
    return (
        f"radius {s.radius} component {s.component}{extra}: min orbit {s.min_orbit_size} "
        f"at {s.witness} ({s.vectors_scanned} box vectors)"
    )


def verify_checks(fam: Family, level: int, log=None) -> list[tuple[str, bool, str]]:
    """Every check behind ``edrank verify``, as (name, passed, detail)."""
    log = log or (lambda msg: None)
    lat = build_lattice(fam)
    g = build_grading(lat)
    results: list[tuple[str, bool, str]] = []

    def record(name, ok, detail=""):
        results.append((name, bool(ok), detail))
        log(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")

    c31 = check_condition_31(g, enumerate_roots(lat))
    record("roots have nonzero grading", c31.passed, f"{c31.checked} roots")
    record("grading is surjective", check_surjectivity(g, lat))
    if fam.tag == E6_ADJOINT:
        for name, ok in e6_identity_suite(lat):
            record(f"e6 identity {name}", ok)
    w = build_w_eps(lat, g)
    record("closed-form W(eps) preserves the grading", True, f"order {w.order}")
    rank = fixed_subspace_rank(fixed_check_group(lat, w), lat)
    record("fixed sublattice has rank 0", rank == 0, f"rank {rank}")

    budget = BRUTE_FORCE_BUDGET[level]
    if budget and ambient_weyl_order(lat) <= budget:
        t = time.perf_counter()
        bf = brute_force_w_eps(lat, g, budget=budget)
        dt = time.perf_counter() - t
        if fam.tag == E6_ADJOINT:
            sch, orbit_len = schreier_stabilizer(lat, g, e6_weyl_group(lat).generators)
            record(
                "brute-force W(eps) equals the Schreier stabilizer",
                bf.keys() == sch.keys(),
                f"order {bf.order}, orbit of the grading {orbit_len}",
            )
            record("<sigma,tau> lies in W(eps)", w.keys() <= bf.keys(), f"order {w.order}")
        else:
            record(
                "brute-force W(eps) equals the closed form",
                bf.keys() == w.keys(),
                f"order {bf.order} of {ambient_weyl_order(lat)}, {dt:.1f}s",
            )
    elif budget:
        log(f"SKIP brute force: ambient group has {ambient_weyl_order(lat)} elements")

    if fam.tag == PGO_PLUS and fam.r >= 1:
        u = check_generating_set(w, lat, build_dn_remark_gamma(lat, w), 2)
        record(
            "explicit generating set is invariant and 2-generating",
            u.invariant and u.is_p_generating,
            f"size {u.size}, index {u.index}",
        )
        C1, d1, _, _ = orbit_constants(fam)
        log(f"INFO explicit set size {u.size} vs rank lower bound {C1 * d1}")
    return results


def _cmd_verify(cfg: CliConfig, out: io.StringIO) -> int:
    lines: list[str] = []
    results = verify_checks(cfg.family, cfg.brute_force_level, lines.append)
    ok = all(r[1] for r in results)
    if cfg.format == "json":
        payload = {
            "family": cfg.family.params(),
            "brute_force_level": cfg.brute_force_level,
            "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results],
            "passed": ok,
        }
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
        out.write(f"{'PASS' if ok else 'FAIL'} {cfg.family.name}\n")
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_scan(cfg: CliConfig, out: io.StringIO) -> int:
    lat = build_lattice(cfg.family)
    g = build_grading(lat)
    grp = build_w_eps(lat, g)
    scans = scan_evidence(grp, g, lat, cfg.radius)
    C1, _, C2, _ = orbit_constants(cfg.family)
    ok = all(s.min_orbit_size >= (C1 if s.component == 1 else C2) for s in scans)
    if cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["radius", "component", "min_orbit", "witness"])
        for s in scans:
            if not s.other_component_zero:
                w.writerow([s.radius, s.component, s.min_orbit_size, ";".join(map(str, s.witness.doubled))])
    elif cfg.format == "json":
        out.write(json.dumps([scan_to_dict(s) for s in scans], sort_keys=True, indent=2) + "\n")
    else:
        for s in scans:
            out.write(_scan_line(s) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_report(cfg: CliConfig, out: io.StringIO) -> int:
    rows = theorem_table(cfg.pgo_even_n, cfg.pgo_odd_n, scans=cfg.scans)
    out.write(render_table_json(rows) + "\n" if cfg.format == "json" else render_table_text(rows))
    ok = all(r.certificate is None or r.certificate.status == "VALID" for r in rows)
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_selftest(cfg: CliConfig, out: io.StringIO) -> int:
    from .selftest import run_selftest

    ok = True
    for o in run_selftest(cfg.seed):
        ok &= o.passed
        out.write(f"{'PASS' if o.passed else 'FAIL'} {o.name}{': ' + o.detail if o.detail else ''}\n")
    return EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "bound": _cmd_bound,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "report": _cmd_report,
    "selftest": _cmd_selftest,
}


def run(cfg: CliConfig) -> tuple[int, str]:
    out = io.StringIO()
    try:
        code = COMMANDS[cfg.command](cfg, out)
    except EdrankError as exc:
        out.write(f"FAIL {type(exc).__name__}: {exc}\n")
        code = EXIT_FAILED
    return code, out.getvalue()


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        print(f"edrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    code, text = run(cfg)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
