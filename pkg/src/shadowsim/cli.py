"""Command-line entry point.

Every demonstration and consistency check is a subcommand with an explicit
seed; identical configurations produce byte-identical output documents.  The
JSON document always carries the keys {config, results, invariants, errata};
invariants map a check name to its boolean and measured residual.  Exit codes:
0 success, 1 invariant violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np
from scipy import stats

from . import fock, waves
from .errata import build_erratum_report
from .measurement import projective_measure, Z_BASIS
from .protocols import (
    derive_correction_table,
    entangled_readout_demo,
    product_state_demo,
    run_entanglement_swap,
    run_teleportation,
    swap_outcome_map,
)
from .register import BellKind, bell_pair

RESOURCE_NAMES = {k.value: k for k in BellKind}


# ---------------------------------------------------------------------------
# deterministic serialization


def _format_float(x):
    if x != x:
        raise ValueError("cannot serialize NaN")
    s = format(float(x), ".17g")
    return s if any(c in s for c in ".einf") else s + ".0"


def to_json(obj, indent=0):
    """Deterministic JSON: insertion-ordered keys, 17-significant-digit
    floats, complex numbers as [re, im] pairs."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (
            f'{inner}"{k}": {to_json(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        return "[" + ", ".join(to_json(v, indent + 1) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return to_json(obj.tolist(), indent)
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{_format_float(obj.real)}, {_format_float(obj.imag)}]"
    if isinstance(obj, (float, np.floating)):
        return _format_float(obj)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def to_csv(fieldnames, rows):
    lines = [",".join(fieldnames)]
    for row in rows:
        cells = []
        for name in fieldnames:
            v = row[name]
            if isinstance(v, (float, np.floating)):
                cells.append(_format_float(v))
            elif isinstance(v, (complex, np.complexfloating)):
                cells.append(f"{_format_float(v.real)}+{_format_float(v.imag)}i")
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _invariant(residual, tol):
    return {"ok": bool(residual <= tol), "residual": float(residual), "tolerance": tol}


def _parse_complex(text):
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


# ---------------------------------------------------------------------------
# subcommands: each returns (results, invariants, errata, fieldnames, rows)


def _cmd_teleport(args, rng):
    resource = RESOURCE_NAMES[args.resource]
    table = derive_correction_table(resource)
    shots, worst_fid, worst_dev = [], 1.0, 0.0
    for s in range(args.shots):
        r = run_teleportation(args.alpha, args.beta, resource, rng, table)
        worst_fid = min(worst_fid, r.fidelity_with_input)
        worst_dev = max(worst_dev, r.shadow_deviation)
        shots.append({
            "shot": s,
            "outcome": r.outcome.value,
            "probability": r.probability,
            "fidelity": r.fidelity_with_input,
        })
    results = {"shots": shots, "min_fidelity": worst_fid}
    invariants = {
        "teleportation_fidelity": _invariant(1.0 - worst_fid, 1e-10),
        "mirror": _invariant(worst_dev, 1e-12),
    }
    return results, invariants, [], ["shot", "outcome", "probability", "fidelity"], shots


def _cmd_swap(args, rng):
    mapping = swap_outcome_map()
    shots, counts, worst_fid, worst_dev = [], {k.value: 0 for k in BellKind}, 1.0, 0.0
    for s in range(args.shots):
        r = run_entanglement_swap(rng, mapping)
        counts[r.outcome.value] += 1
        worst_fid = min(worst_fid, r.fidelity_with_prediction)
        worst_dev = max(worst_dev, r.shadow_deviation)
        shots.append({
            "shot": s,
            "outcome": r.outcome.value,
            "remote_kind": r.predicted_remote_kind.value,
            "fidelity": r.fidelity_with_prediction,
        })
    freq_dev = max(abs(counts[k.value] / args.shots - 0.25) for k in BellKind)
    sigma = np.sqrt(0.25 * 0.75 / args.shots)
    results = {
        "shots": shots,
        "outcome_counts": counts,
        "outcome_map": {k.value: v.value for k, v in mapping.items()},
        "min_fidelity": worst_fid,
    }
    invariants = {
        "swap_fidelity": _invariant(1.0 - worst_fid, 1e-10),
        "outcome_frequencies": _invariant(freq_dev, 3.0 * sigma),
        "mirror": _invariant(worst_dev, 1e-12),
    }
    return results, invariants, [], ["shot", "outcome", "remote_kind", "fidelity"], shots


def _cmd_bell(args, rng):
    kinds = list(BellKind)
    vecs = np.array([k.amplitudes() for k in kinds])
    gram = vecs.conj() @ vecs.T
    gram_residual = float(np.max(np.abs(gram - np.eye(4))))
    rows = []
    for k in kinds:
        for i, a in enumerate(k.amplitudes()):
            rows.append({"kind": k.value, "basis_index": i,
                         "re": a.real, "im": a.imag})
    results = {
        "states": {k.value: list(k.amplitudes()) for k in kinds},
        "gram_residual": gram_residual,
    }
    invariants = {"orthonormal_basis": _invariant(gram_residual, 1e-12)}
    return results, invariants, [], ["kind", "basis_index", "re", "im"], rows


def _cmd_readout(args, rng):
    stats_r = entangled_readout_demo(args.shots, rng)
    counts = {f"{a}{b}": stats_r.counts.get((a, b), 0) for a in (0, 1) for b in (0, 1)}
    results = {
        "shots": stats_r.shots,
        "outcome_counts": counts,
        "correlation": stats_r.correlation,
        "marginal0_up_fraction": stats_r.marginal0_up_fraction,
        "min_remote_fidelity": stats_r.min_remote_fidelity,
    }
    invariants = {
        "perfect_correlation": _invariant(abs(stats_r.correlation - 1.0), 0.0),
        "remote_via_shadow": _invariant(1.0 - stats_r.min_remote_fidelity, 1e-10),
    }
    rows = [{"pattern": k, "count": v} for k, v in sorted(counts.items())]
    return results, invariants, [], ["pattern", "count"], rows


def _cmd_product(args, rng):
    st = product_state_demo(args.shots, rng)
    bound = 4.0 / np.sqrt(args.shots)
    results = {
        "shots": st.shots,
        "tvd_z": st.tvd_z,
        "tvd_x": st.tvd_x,
        "measured_z_up_fraction": st.measured_z_up_fraction,
        "control_z_up_fraction": st.control_z_up_fraction,
        "measured_x_plus_fraction": st.measured_x_plus_fraction,
        "control_x_plus_fraction": st.control_x_plus_fraction,
        "min_remote_fidelity": st.min_remote_fidelity,
    }
    invariants = {
        "no_signalling_z": _invariant(st.tvd_z, bound),
        "no_signalling_x": _invariant(st.tvd_x, bound),
        "remote_unchanged": _invariant(1.0 - st.min_remote_fidelity, 1e-10),
    }
    rows = [{"basis": "z", "tvd": st.tvd_z}, {"basis": "x", "tvd": st.tvd_x}]
    return results, invariants, [], ["basis", "tvd"], rows


def _cmd_algebra(args, rng):
    if args.statistics == "fermion":
        grid = fock.ModeGrid(tuple(range(args.modes)), 1, "fermion")
        residual_fn = fock.anticommutator_residual
    else:
        grid = fock.ModeGrid(tuple(range(args.modes)), args.nmax, "boson")
        residual_fn = fock.commutator_residual
    rows, worst = [], 0.0
    for i in range(args.modes):
        for j in range(args.modes):
            for pair_kind, ann in (("mixed", False), ("annihilation", True)):
                r = residual_fn(grid, i, j, annihilation_pair=ann)
                worst = max(worst, r)
                rows.append({"i": i, "j": j, "pair": pair_kind, "residual": r})
    results = {
        "statistics": args.statistics,
        "modes": args.modes,
        "max_occupation": grid.max_occupation,
        "residuals": rows,
        "max_residual": worst,
    }
    invariants = {"algebra_residuals": _invariant(worst, 1e-12)}
    return results, invariants, [], ["i", "j", "pair", "residual"], rows


def _cmd_evolve(args, rng):
    grid = waves.gaussian_packet(args.xmin, args.xmax, args.points,
                                 x0=args.x0, sigma=args.sigma, k0=args.k0)
    if args.potential == "harmonic":
        v = waves.Potential.harmonic(grid)
    else:
        v = waves.Potential.zero(grid)
    out = waves.evolve(grid, v, args.dt, args.steps)
    x = out.x
    dens = np.abs(out.psi_primary) ** 2 * out.dx
    mean = float(np.sum(x * dens))
    width = float(np.sqrt(np.sum((x - mean) ** 2 * dens)))
    norm_drift = abs(1.0 - out.norm())
    results = {
        "t_final": out.t,
        "norm": out.norm(),
        "mean_position": mean,
        "width": width,
    }
    invariants = {
        "norm_drift": _invariant(norm_drift, 1e-8),
        "mirror": _invariant(out.mirror_deviation(), 1e-10),
    }
    if args.potential == "free" and args.k0 == 0.0:
        t = args.dt * args.steps
        sigma_t = args.sigma * np.sqrt(1.0 + (t / (2.0 * args.sigma ** 2)) ** 2)
        results["analytic_width"] = float(sigma_t)
        invariants["width_match"] = _invariant(abs(width - sigma_t) / sigma_t, 0.01)
    rows = [{"quantity": k, "value": float(v)} for k, v in results.items()]
    return results, invariants, [], ["quantity", "value"], rows


def _cmd_collapse(args, rng):
    grid = waves.gaussian_packet(-8.0, 8.0, args.points, sigma=1.0)
    partition = waves.ZonePartition.equal_zones(args.points, args.zones)
    c = waves.zone_coefficients(grid, partition)
    probs = np.abs(c) ** 2
    counts = np.zeros(args.zones, dtype=int)
    support_ok = True
    worst_dev = 0.0
    for _ in range(args.shots):
        zone, collapsed = waves.collapse_detect(grid, partition, rng)
        counts[zone] += 1
        worst_dev = max(worst_dev, collapsed.mirror_deviation())
        sl = partition.slices(args.points)
        outside = np.concatenate(
            [collapsed.psi_primary[s] for k, s in enumerate(sl) if k != zone]
        )
        if np.max(np.abs(outside)) > 0.0:
            support_ok = False
    chi = stats.chisquare(counts, probs / probs.sum() * args.shots)
    results = {
        "zone_probabilities": [float(p) for p in probs],
        "zone_counts": [int(n) for n in counts],
        "chi_square": float(chi.statistic),
        "p_value": float(chi.pvalue),
    }
    invariants = {
        "collapse_statistics": _invariant(1.0 - float(chi.pvalue), 1.0 - 0.001),
        "support_confinement": _invariant(0.0 if support_ok else 1.0, 0.0),
        "mirror": _invariant(worst_dev, 1e-10),
    }
    rows = [{"zone": i, "probability": float(probs[i]), "count": int(counts[i])}
            for i in range(args.zones)]
    return results, invariants, [], ["zone", "probability", "count"], rows


def _cmd_doubleslit(args, rng):
    geometry = waves.SlitGeometry(args.separation, args.width, args.distance)
    slits = "left" if args.single_slit else "both"
    res = waves.double_slit_accumulate(
        geometry, args.shots, args.bins, rng, wavelength=args.wavelength, slits=slits
    )
    results = {
        "slits": slits,
        "fringe_spacing": res.fringe_spacing,
        "visibility": res.visibility,
        "bin_edges": [float(e) for e in res.bin_edges],
        "counts": [int(n) for n in res.counts],
        "expected": [float(e) for e in res.expected],
    }
    invariants = {}
    if slits == "both":
        keep = res.expected >= 5.0
        chi = stats.chisquare(
            res.counts[keep],
            res.expected[keep] / res.expected[keep].sum() * res.counts[keep].sum(),
        )
        results["p_value"] = float(chi.pvalue)
        invariants["fringe_statistics"] = _invariant(
            1.0 - float(chi.pvalue), 1.0 - 0.001
        )
    else:
        invariants["no_fringes"] = _invariant(res.visibility, 0.05)
    rows = [{"bin": i, "left_edge": float(res.bin_edges[i]),
             "count": int(res.counts[i]), "expected": float(res.expected[i])}
            for i in range(args.bins)]
    return results, invariants, [], ["bin", "left_edge", "count", "expected"], rows


def _cmd_erratum(args, rng):
    report = build_erratum_report()
    reassembly = max(
        f.get("reassembly_residual", 0.0) for f in report["findings"]
    )
    invariants = {"branch_completeness": _invariant(reassembly, 1e-12)}
    rows = [{"id": f["id"], "residual": f["residual"], "verdict": f["verdict"]}
            for f in report["findings"]]
    return {"finding_count": report["finding_count"],
            "erratum_count": report["erratum_count"]}, \
        invariants, report["findings"], ["id", "residual", "verdict"], rows


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shadowsim",
        description="dual-register (shadow) quantum simulator demonstrations",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, shots=1000):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--shots", type=int, default=shots)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--output", default=None)

    p = sub.add_parser("teleport", help="teleportation round trips")
    common(p, shots=100)
    p.add_argument("--alpha", type=_parse_complex, default=complex(0.6))
    p.add_argument("--beta", type=_parse_complex, default=0.8j)
    p.add_argument("--resource", choices=sorted(RESOURCE_NAMES),
                   default=BellKind.PHI_MINUS.value)

    p = sub.add_parser("swap", help="entanglement swapping rounds")
    common(p, shots=1000)

    p = sub.add_parser("bell", help="Bell basis states and orthonormality")
    common(p, shots=1)

    p = sub.add_parser("readout", help="entangled readout correlation")
    common(p, shots=10000)

    p = sub.add_parser("product", help="product-state no-signalling check")
    common(p, shots=10000)

    p = sub.add_parser("algebra", help="ladder operator algebra residuals")
    common(p, shots=1)
    p.add_argument("--modes", type=int, default=3)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--statistics", choices=["boson", "fermion"], default="boson")

    p = sub.add_parser("evolve", help="Schroedinger evolution of a packet")
    common(p, shots=1)
    p.add_argument("--points", type=int, default=1024)
    p.add_argument("--xmin", type=float, default=-20.0)
    p.add_argument("--xmax", type=float, default=20.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--k0", type=float, default=0.0)
    p.add_argument("--dt", type=float, default=0.002)
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--potential", choices=["free", "harmonic"], default="free")

    p = sub.add_parser("collapse", help="zone-partition collapse statistics")
    common(p, shots=10000)
    p.add_argument("--points", type=int, default=512)
    p.add_argument("--zones", type=int, default=4)

    p = sub.add_parser("doubleslit", help="single-detection fringe build-up")
    common(p, shots=10000)
    p.add_argument("--separation", type=float, default=5.0)
    p.add_argument("--width", type=float, default=0.1)
    p.add_argument("--distance", type=float, default=100.0)
    p.add_argument("--wavelength", type=float, default=0.05)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--single-slit", action="store_true")

    p = sub.add_parser("erratum", help="printed identities vs oracle expansion")
    common(p, shots=1)
    return parser


_DISPATCH = {
    "teleport": _cmd_teleport,
    "swap": _cmd_swap,
    "bell": _cmd_bell,
    "readout": _cmd_readout,
    "product": _cmd_product,
    "algebra": _cmd_algebra,
    "evolve": _cmd_evolve,
    "collapse": _cmd_collapse,
    "doubleslit": _cmd_doubleslit,
    "erratum": _cmd_erratum,
}


def _config_echo(args):
    skip = {"format", "output"}
    cfg = {}
    for key in sorted(vars(args)):
        if key in skip:
            continue
        val = getattr(args, key)
        cfg[key] = val
    return cfg


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.shots < 1:
        parser.error("--shots must be >= 1")
    if args.seed < 0 or args.seed >= 2 ** 64:
        parser.error("--seed must be a 64-bit unsigned integer")
    rng = np.random.default_rng(args.seed)
    try:
        results, invariants, errata, fieldnames, rows = _DISPATCH[args.subcommand](
            args, rng
        )
    except (ValueError, IndexError) as exc:
        parser.error(str(exc))
    doc = {
        "config": _config_echo(args),
        "results": results,
        "invariants": invariants,
        "errata": errata,
    }
    if args.format == "csv":
        text = to_csv(fieldnames, rows)
    else:
        text = to_json(doc) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(v["ok"] for v in invariants.values()) else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
