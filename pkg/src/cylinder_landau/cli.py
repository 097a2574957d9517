"""Command-line interface.

Every subcommand prints a JSON report to stdout.  ``--out`` additionally
writes a file: CSV when the path ends in ``.csv``, JSON otherwise.  The
exit code is 0 when every check passes, 1 when a check fails, 2 for bad
input and 3 for I/O failures.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import gauge, grouprep, spectral, symmetry
from .core import CylinderConfig, PhysicalInput, load_config, physical_step_size
from .errors import ConfigError, CylinderError
from .hilbert import inner_product, smooth_random_state

DEFAULT_TOLERANCES = {
    "level": 1e-3,
    "degeneracy_bin": 1e-6,
    "mode_spread": 1e-6,
    "holonomy": 1e-6,
    "holonomy_equivalence": 1e-8,
    "projective_phase": 1e-6,
    "commutation": 1e-3,
    "unitarity": 1e-6,
    "cocycle": 1e-9,
    "rep_commutator": 1e-12,
    "rep_unitarity": 1e-12,
    "w_v_commute": 1e-6,
    "flux": 1e-9,
    "overlap": 1e-6,
    "step_size": 0.02,
}


@dataclass
class RunReport:
    command: str
    config: dict | None
    seed: int
    results: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def check(self, name: str, value: float, tolerance: float, passed: bool | None = None, **extra) -> bool:
        ok = bool(value <= tolerance) if passed is None else bool(passed)
        self.checks[name] = {"value": float(value), "tolerance": tolerance, "pass": ok, **extra}
        return ok

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    @property
    def max_deviation(self) -> float:
        return max((c["value"] for c in self.checks.values()), default=0.0)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "results": self.results,
            "checks": self.checks,
            "max_deviation": self.max_deviation,
            "pass": self.passed,
            "wall_time": self.wall_time,
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def _parse_window(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"window must look like 'a,b', got {text!r}") from exc
    if a > b:
        raise argparse.ArgumentTypeError(f"window {text!r} is empty")
    return a, b


def _parse_overrides(text: str | None) -> dict:
    if not text:
        return {}
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
    else:
        data = dict(item.split("=", 1) for item in text.split(",") if item)
    unknown = set(data) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigError(f"unknown tolerance names: {sorted(unknown)}")
    return {k: float(v) for k, v in data.items()}


def _load_json_arg(text: str):
    """Inline JSON or a path to a JSON file."""
    stripped = text.strip()
    if stripped.startswith(("{", "[")):
        source = stripped
    else:
        try:
            source = Path(text).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {text}: {exc}") from exc
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {text!r}: {exc}") from exc


# --------------------------------------------------------------------------
# subcommands


def cmd_spectrum(args, cfg: CylinderConfig, tol: dict, report: RunReport):
    window = args.window or (-3, 3)
    res = spectral.spectrum(cfg, window, args.levels, n_points=args.points)
    report.results.update(res.to_dict())
    width = window[1] - window[0] + 1
    for N, (E, exact) in enumerate(zip(res.levels, res.exact_levels)):
        report.check(f"level_{N}", abs(E - exact) / exact, tol["level"])
        report.check(f"degeneracy_{N}", abs(res.degeneracy[N] - width), 0, expected=width,
                     measured=res.degeneracy[N])
    report.check("mode_spread", res.mode_spread, tol["mode_spread"])
    return ["n", "N", "E"], res.table_rows()


def _loops_from_arg(text: str | None) -> list[gauge.Loop]:
    if text is None:
        return gauge.default_loop_suite()
    data = _load_json_arg(text)
    if isinstance(data, dict) and "loops" in data:
        data = data["loops"]
    if isinstance(data, dict) or (data and isinstance(data[0], (list, tuple)) and len(data[0]) == 2
                                  and not isinstance(data[0][0], (list, tuple))):
        return [gauge.loop_from_dict(data)]
    return [gauge.loop_from_dict(d) for d in data]


def _potential_from_arg(cfg: CylinderConfig, text: str | None) -> gauge.GaugePotential:
    if text is None:
        return gauge.potential_for_config(cfg)
    return gauge.potential_from_dict(cfg, _load_json_arg(text))


def cmd_holonomy(args, cfg, tol, report):
    A = _potential_from_arg(cfg, args.potential)
    loops = _loops_from_arg(args.loop)
    rows = []
    for i, lp in enumerate(loops):
        h = gauge.holonomy(A, lp, args.samples)
        ref = gauge.holonomy_closed_form(A, lp)
        dev = abs(h - ref)
        rows.append({
            "loop": lp.to_dict(),
            "winding": lp.winding,
            "phase": [h.real, h.imag],
            "closed_form": [ref.real, ref.imag],
            "enclosed_flux": gauge.enclosed_flux(A, lp),
        })
        report.check(f"loop_{i}", dev, tol["holonomy"])
    report.results.update({"potential": A.to_dict(), "class": gauge.classify(A).to_dict(), "loops": rows})
    return ["loop", "winding", "re", "im"], [(i, r["winding"], *r["phase"]) for i, r in enumerate(rows)]


def cmd_classify(args, cfg, tol, report):
    A = _potential_from_arg(cfg, args.potential)
    cls = gauge.classify(A)
    report.results["class"] = cls.to_dict()
    if args.compare is not None:
        B = _potential_from_arg(cfg, args.compare)
        eq, comp = gauge.holonomically_equivalent(A, B, tol=tol["holonomy_equivalence"])
        same = cls == gauge.classify(B)
        report.results["compare"] = {"class": gauge.classify(B).to_dict(), "holonomy": comp.to_dict(),
                                     "same_class": same}
        report.check("holonomy_matches_class", float(eq != same), 0)
    if args.translate is not None:
        moved = gauge.translate_potential(A, args.translate)
        kept = gauge.classify(moved) == cls
        admissible = gauge.is_symmetry_translation(cfg, args.translate)
        report.results["translation"] = {
            "ell": args.translate,
            "ell_mu": args.translate * cfg.mu,
            "class_after": gauge.classify(moved).to_dict(),
            "class_preserved": kept,
            "admissible": admissible,
            "nearest_admissible": gauge.nearest_admissible_shifts(cfg, args.translate),
        }
        report.check("translation_consistency", float(kept != admissible), 0)
    return None, None


def _symmetry_test_states(cfg, rng, k):
    lo, hi = -2, 2
    grid = spectral.default_grid(cfg, lo - abs(k) - 1, hi + abs(k) + 1, 2001, n_sigma=14)
    centers = {n: spectral.mode_center(cfg, n) for n in range(lo, hi + 1)}
    states = [smooth_random_state(cfg.q, grid, range(lo, hi + 1), rng, centers) for _ in range(3)]
    states.append(spectral.analytic_ground_state(cfg, 0, grid))
    return states


def cmd_symmetry_check(args, cfg, tol, report):
    rng = np.random.default_rng(args.seed)
    phi, k = args.phi, args.k
    states = _symmetry_test_states(cfg, rng, k)
    expected = np.exp(1j * k * phi)
    proj = max(symmetry.projective_phase_check(cfg, phi, k, s) for s in states)
    report.results["projective_phase"] = {"expected": [expected.real, expected.imag], "deviation": proj}
    report.check("projective_phase", proj, tol["projective_phase"])
    report.check("commute_H_U", symmetry.hamiltonian_commutation_check(cfg, symmetry.Rotation(cfg, phi), states),
                 tol["commutation"])
    report.check("commute_H_V", symmetry.hamiltonian_commutation_check(cfg, symmetry.AxialShift(cfg, k), states),
                 tol["commutation"])
    unit = max(max(abs(symmetry.apply_U(cfg, phi, s).norm() - 1), abs(symmetry.apply_V(cfg, k, s).norm() - 1))
               for s in states)
    report.check("unitarity", unit, tol["unitarity"])
    report.results["C_theta"] = symmetry.c_theta(cfg)
    report.results["C_y"] = symmetry.c_y(cfg)
    report.results["step"] = 1.0 / cfg.mu
    if args.shift is not None:
        a = args.shift
        try:
            op = symmetry.AxialShift.from_length(cfg, a)
            verdict = {"verdict": "Admissible", "k": op.k}
        except symmetry.NonAdmissibleTranslation as exc:
            verdict = {"verdict": "NonAdmissible", "reason": str(exc)}
        verdict.update({
            "a": a,
            "a_mu": a * cfg.mu,
            "nearest_admissible": gauge.nearest_admissible_shifts(cfg, a),
            "multiplier_mismatch": symmetry.axial_multiplier_mismatch(cfg, a),
        })
        report.results["admissibility"] = verdict
    return None, None


def cmd_rep_check(args, cfg, tol, report):
    rng = np.random.default_rng(args.seed)
    nu, N = args.nu, args.N
    flux_ok = grouprep.flux_quantization_check(nu, tol["flux"])
    report.check("flux_quantization", grouprep.flux_quantization_defect(nu), tol["flux"], passed=flux_ok)
    cf = grouprep.PeriodicCylinderNu(nu)
    law = grouprep.check_cocycle_laws(cf, grouprep.random_triples(cf, args.samples, rng), tol["cocycle"])
    report.results["cocycle_laws"] = law.to_dict()
    report.check("cocycle_laws", law.worst, tol["cocycle"])
    etas = [0.5, 1 / 3, math.sqrt(2) / 2]
    report.results["obstruction"] = {"lam": args.lam, "eta_samples": etas,
                                     "max_violation": grouprep.cylinder_obstruction(args.lam, etas)}
    if not flux_ok:
        report.results["representations"] = {"skipped": f"nu={nu} is not an integer"}
        return None, None
    nu = int(round(nu))
    thetas = np.linspace(0.0, 2 * math.pi, 5, endpoint=False) + 0.3
    ms = range(-2, 3)
    worst = {"S1": 0.0, "Z": 0.0}
    unit = 0.0
    for kind in ("S1", "Z"):
        for th in thetas:
            for m in ms:
                g, h = grouprep.PerCylElem(th, 0), grouprep.PerCylElem(0.0, m)
                worst[kind] = max(worst[kind], grouprep.rep_commutator_deviation(kind, nu, g, h, N))
                rep = grouprep.rep_S1 if kind == "S1" else grouprep.rep_Z
                unit = max(unit, grouprep.unitarity_deviation(rep(nu, h, N), grouprep.rep_shift_size(kind, nu, h)),
                           grouprep.unitarity_deviation(rep(nu, g, N)))
    report.check("rep_S1_commutator", worst["S1"], tol["rep_commutator"])
    report.check("rep_Z_commutator", worst["Z"], tol["rep_commutator"])
    report.check("rep_unitarity", unit, tol["rep_unitarity"])
    # commuting W and V actions on a smooth state
    grid = spectral.default_grid(cfg, -6, 6, 1201)
    psi = smooth_random_state(cfg.q, grid, range(-1, 2), rng)
    dev = 0.0
    for _ in range(5):
        phi, m = rng.uniform(0, 2 * math.pi), int(rng.integers(-1, 2))
        xi, eta = rng.uniform(-1, 1), rng.uniform(-1, 1)
        wv = grouprep.wavefunction_rep_W(cfg, nu, phi, m, grouprep.heisenberg_rep_V(cfg, nu, xi, eta, psi))
        vw = grouprep.heisenberg_rep_V(cfg, nu, xi, eta, grouprep.wavefunction_rep_W(cfg, nu, phi, m, psi))
        dev = max(dev, (wv - vw).norm())
    report.check("w_v_commute", dev, tol["w_v_commute"])
    return None, None


def cmd_groundstate(args, cfg, tol, report):
    n = args.n
    grid = spectral.default_grid(cfg, n, n, args.points)
    analytic = spectral.analytic_ground_state(cfg, n, grid)
    numeric = spectral.numeric_eigenstate(cfg, n, grid)
    ov = abs(inner_product(analytic, numeric))
    y = grid.points
    f_num = numeric.profile(n)
    peak = float(y[np.argmax(np.abs(f_num))])
    center = spectral.mode_center(cfg, n)
    report.results.update({
        "n": n,
        "overlap": ov,
        "peak": peak,
        "expected_peak": center,
        "annihilation_residual": spectral.annihilation_residual(cfg, n, analytic),
        "normalization": analytic.norm(),
    })
    report.check("overlap", 1.0 - ov, tol["overlap"])
    report.check("peak", abs(peak - center), grid.spacing)
    f_an = analytic.profile(n)
    rows = [(float(yy), float(a.real), float(b.real), float(b.imag)) for yy, a, b in zip(y, f_an, f_num)]
    return ["y", "analytic", "numeric_re", "numeric_im"], rows


def cmd_step_size(args, cfg, tol, report):
    value = physical_step_size(PhysicalInput(args.B_gauss, args.R_cm))
    estimate = 6.6e-8 / (args.B_gauss * args.R_cm)
    report.results.update({"B_gauss": args.B_gauss, "R_cm": args.R_cm, "step_cm": value,
                           "order_of_magnitude_estimate_cm": estimate})
    report.check("step_size", abs(value - estimate) / estimate, tol["step_size"])
    return ["B_gauss", "R_cm", "step_cm"], [(args.B_gauss, args.R_cm, value)]


COMMANDS = {
    "spectrum": cmd_spectrum,
    "holonomy": cmd_holonomy,
    "classify": cmd_classify,
    "symmetry-check": cmd_symmetry_check,
    "rep-check": cmd_rep_check,
    "groundstate": cmd_groundstate,
    "step-size": cmd_step_size,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config with keys B, R, q, rho, hbar, e, m")
    common.add_argument("--out", help="output file (.csv for tables, JSON otherwise)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized test states")
    common.add_argument("--window", type=_parse_window, help="mode window 'a,b'")
    common.add_argument("--levels", type=int, default=4)
    common.add_argument("--tolerance-overrides", help="'name=value,...' or a JSON object")

    p = argparse.ArgumentParser(prog="cylinder-landau", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common], help="per-mode spectrum and Landau levels")
    s.add_argument("--points", type=int, default=spectral.DEFAULT_POINTS)

    s = sub.add_parser("holonomy", parents=[common], help="holonomies along loops")
    s.add_argument("--potential", help="JSON (inline or file): {zeta, lambda: [...]}")
    s.add_argument("--loop", help="JSON (inline or file): {vertices: [[theta, y], ...]} or a list")
    s.add_argument("--samples", type=int, default=gauge.DEFAULT_SAMPLES)

    s = sub.add_parser("classify", parents=[common], help="gauge class of a potential")
    s.add_argument("--potential")
    s.add_argument("--compare", help="second potential to test for holonomic equivalence")
    s.add_argument("--translate", type=float, help="axial translation length ell")

    s = sub.add_parser("symmetry-check", parents=[common], help="magnetic translation algebra")
    s.add_argument("--phi", type=float, default=math.pi)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--shift", type=float, help="arbitrary axial length to test for admissibility")

    s = sub.add_parser("rep-check", parents=[common], help="commutator functions and truncated representations")
    s.add_argument("--nu", type=float, default=1.0)
    s.add_argument("--N", type=int, default=grouprep.DEFAULT_CUTOFF)
    s.add_argument("--lam", type=float, default=1.0, help="lambda for the cylinder obstruction")
    s.add_argument("--samples", type=int, default=100)

    s = sub.add_parser("groundstate", parents=[common], help="analytic vs numeric ground state of one mode")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--points", type=int, default=spectral.DEFAULT_POINTS)

    s = sub.add_parser("step-size", parents=[common], help="axial step hbar c/(e B R) in cm")
    s.add_argument("--B-gauss", type=float, default=1.0)
    s.add_argument("--R-cm", type=float, default=1.0)
    return p


def _write_out(path: str, payload: dict, header, rows) -> None:
    p = Path(path)
    if p.suffix.lower() == ".csv":
        if header is None:
            raise ConfigError(f"command has no tabular output; use a .json path instead of {path}")
        with p.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
    else:
        p.write_text(json.dumps(payload, indent=2))


def run(argv=None) -> tuple[int, dict | None]:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # let "--window -3,3" through; argparse would read "-3,3" as a flag
    for i, tok in enumerate(argv[:-1]):
        if tok == "--window":
            argv[i:i + 2] = [f"--window={argv[i + 1]}"]
            break
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        tol = {**DEFAULT_TOLERANCES, **_parse_overrides(args.tolerance_overrides)}
        cfg = load_config(args.config)
        report = RunReport(args.command, cfg.to_dict() | {"mu": cfg.mu}, args.seed)
        header, rows = COMMANDS[args.command](args, cfg, tol, report)
    except CylinderError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2, None
    report.wall_time = time.perf_counter() - t0
    payload = _jsonable(report.to_dict())
    if args.out:
        try:
            _write_out(args.out, payload, header, rows)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 3, payload
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2, payload
    print(json.dumps(payload, indent=2))
    return (0 if report.passed else 1), payload


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
