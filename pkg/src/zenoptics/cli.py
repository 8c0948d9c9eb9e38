"""Command-line front end: ``zenoptics {trace,sweep,mc,chain,replay}``.

Exit codes: 0 success, 1 runtime error, 2 usage error. Data goes to stdout
when ``--out-prefix`` is absent; diagnostics always go to stderr.
"""

import argparse
import csv
import io
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from . import elements as el
from . import polarization as pol
from .stochastic import MonteCarloConfig, mc_survival_exact_check
from .svg import PlotSpec, emit_svg
from .zeno import ZenoConfig, asymptotic_deficit, output_ratio, sample_trace, zeno_sweep

DEFAULT_TRACE_NS = (1, 2, 4, 8, 16, 32)


class UsageError(Exception):
    """Bad flag value detected after argparse; carries the flag name."""

    def __init__(self, flag, message):
        super().__init__(f"argument {flag}: {message}")


def parse_angle(text):
    """``"90deg"`` or ``"1.5708rad"`` to radians. Bare numbers are rejected."""
    text = text.strip()
    for suffix, scale in (("deg", math.pi / 180), ("rad", 1.0)):
        if text.endswith(suffix):
            try:
                value = float(text[: -len(suffix)])
            except ValueError:
                break
            if not math.isfinite(value):
                break
            return value * scale
    raise argparse.ArgumentTypeError(f"invalid angle {text!r}; use a unit suffix, e.g. '90deg' or '1.5708rad'")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _int_list(text):
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty list")
    return [_positive_int(p.strip()) for p in parts]


def _float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def _fmt_angle(rad):
    return f"{rad!r}rad"


def format_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, (int, np.integer, str)) else f"{v:.9g}" for v in row])
    return buf.getvalue()


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path, text):
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return str(path)


def build_manifest(command, argv, config, outputs, seed=None):
    manifest = {
        "command": command,
        "argv": argv,
        "config": config,
        "outputs": outputs,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    if seed is not None:
        manifest["seed"] = seed
    return manifest


def _formats(args):
    fmt = args.format or ("all" if args.out_prefix else "csv")
    if fmt == "all":
        if not args.out_prefix:
            raise UsageError("--format", "'all' requires --out-prefix")
        return ["csv", "json", "svg"]
    return [fmt]


def _emit(args, argv, config, files, seed=None):
    """Write ``files`` (suffix -> text) under the prefix plus a manifest, or dump to stdout."""
    if not args.out_prefix:
        for text in files.values():
            sys.stdout.write(text)
        return
    outputs = [_write(f"{args.out_prefix}{suffix}", text) for suffix, text in files.items()]
    manifest = build_manifest(args.command, argv, config, outputs, seed)
    _write(f"{args.out_prefix}.manifest.json", _dumps(manifest))


# ---- trace ---------------------------------------------------------------


def _trace_argv(args, Ns):
    return [
        "trace",
        "--n", ",".join(map(str, Ns)),
        "--samples-per-segment", str(args.samples_per_segment),
        "--total-angle", _fmt_angle(args.total_angle),
        "--length", repr(args.length),
        "--i0", repr(args.i0),
        "--kind", args.kind,
    ]


def _trace_json(trace):
    cfg = trace.config
    return _dumps(
        {
            "kind": trace.kind,
            "N": cfg.N,
            "I0": cfg.I0,
            "L": cfg.L,
            "total_angle_rad": cfg.total_angle,
            "z": trace.z.tolist(),
            "intensity": trace.intensity.tolist(),
        }
    )


def cmd_trace(args):
    Ns = [n for group in (args.n or [list(DEFAULT_TRACE_NS)]) for n in group]
    if args.samples_per_segment < 2:
        raise UsageError("--samples-per-segment", "must be >= 2")
    if not args.length > 0:
        raise UsageError("--length", "must be > 0")
    if args.i0 < 0:
        raise UsageError("--i0", "must be >= 0")
    formats = _formats(args)
    argv = _trace_argv(args, Ns)

    traces = []  # (file tag, series name, trace)
    kinds = ["measured", "continuous"] if args.kind == "both" else [args.kind]
    for kind in kinds:
        if kind == "continuous" and args.kind == "both":
            cfg = ZenoConfig(max(Ns), args.i0, args.length, args.total_angle)
            traces.append(("_continuous", "no measurement", sample_trace(cfg, kind, args.samples_per_segment)))
            continue
        for n in Ns:
            cfg = ZenoConfig(n, args.i0, args.length, args.total_angle)
            name = f"N={n}" if kind == "measured" else f"no measurement (N={n} grid)"
            traces.append((f"_N{n}", name, sample_trace(cfg, kind, args.samples_per_segment)))

    files = {}
    if args.out_prefix:
        for tag, _, trace in traces:
            if "csv" in formats:
                files[f"{tag}.csv"] = format_csv(["z", "intensity"], zip(trace.z, trace.intensity))
            if "json" in formats:
                files[f"{tag}.json"] = _trace_json(trace)
    elif formats == ["csv"]:
        rows = [(t.kind, t.config.N, z, i) for _, _, t in traces for z, i in zip(t.z, t.intensity)]
        files[""] = format_csv(["kind", "N", "z", "intensity"], rows)
    elif formats == ["json"]:
        files[""] = "[\n" + ",\n".join(_trace_json(t).rstrip("\n") for _, _, t in traces) + "\n]\n"
    if "svg" in formats:
        spec = PlotSpec(
            [(name, zip(t.z, t.intensity)) for _, name, t in traces],
            title="y-polarized intensity along the Faraday media",
            x_label="z (m)",
            y_label="intensity",
            y_range=(0.0, 1.05 * args.i0 if args.i0 > 0 else 1.0),
            dashed={name for _, name, t in traces if t.kind == "continuous"},
        )
        files[".svg"] = emit_svg(spec)
    config = {
        "n": Ns,
        "samples_per_segment": args.samples_per_segment,
        "total_angle_rad": args.total_angle,
        "length": args.length,
        "i0": args.i0,
        "kind": args.kind,
        "format": args.format or ("all" if args.out_prefix else "csv"),
    }
    _emit(args, argv + ["--format", config["format"]], config, files)


# ---- sweep ---------------------------------------------------------------


def sweep_ns(n_min, n_max, extra_powers_to):
    Ns = list(range(n_min, n_max + 1))
    p = 1
    while p <= extra_powers_to:
        if p > n_max:
            Ns.append(p)
        p *= 2
    return Ns


def cmd_sweep(args):
    if args.n_min > args.n_max:
        raise UsageError("--n-min", f"must not exceed --n-max ({args.n_min} > {args.n_max})")
    if args.extra_powers_to < 0:
        raise UsageError("--extra-powers-to", "must be >= 0")
    formats = _formats(args)
    Ns = sweep_ns(args.n_min, args.n_max, args.extra_powers_to)
    result = zeno_sweep(Ns, ZenoConfig(1, total_angle=args.total_angle))
    rows = [(n, r, asymptotic_deficit(n, args.total_angle)) for n, r in result.rows]
    argv = [
        "sweep",
        "--n-min", str(args.n_min),
        "--n-max", str(args.n_max),
        "--extra-powers-to", str(args.extra_powers_to),
        "--total-angle", _fmt_angle(args.total_angle),
    ] + (["--log-x"] if args.log_x else [])

    files = {}
    if "csv" in formats:
        files[".csv"] = format_csv(["N", "ratio", "deficit_times_N"], rows)
    if "json" in formats:
        files[".json"] = _dumps(
            {
                "total_angle_rad": args.total_angle,
                "limit_deficit_times_N": args.total_angle**2 / 2,
                "rows": [{"N": n, "ratio": r, "deficit_times_N": d} for n, r, d in rows],
            }
        )
    if "svg" in formats:
        spec = PlotSpec(
            [("I_out / I0", [(n, r) for n, r, _ in rows])],
            title="output intensity against measurement count",
            x_label="N",
            y_label="I_out / I0",
            y_range=(0.0, 1.05),
            log_x=args.log_x,
        )
        files[".svg"] = emit_svg(spec)
    fmt = args.format or ("all" if args.out_prefix else "csv")
    config = {
        "n_min": args.n_min,
        "n_max": args.n_max,
        "extra_powers_to": args.extra_powers_to,
        "total_angle_rad": args.total_angle,
        "log_x": args.log_x,
        "format": fmt,
    }
    _emit(args, argv + ["--format", fmt], config, files)


# ---- mc ------------------------------------------------------------------


def cmd_mc(args):
    if args.photons < 1:
        raise UsageError("--photons", f"must be >= 1, got {args.photons}")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed", "must be an unsigned 64-bit integer")
    cfg = ZenoConfig(args.n, total_angle=args.total_angle)
    est, z = mc_survival_exact_check(cfg, MonteCarloConfig(args.photons, args.seed))
    report = {
        "n": args.n,
        "photons": args.photons,
        "seed": args.seed,
        "mean": est.mean,
        "std_error": est.std_error,
        "exact": output_ratio(cfg.N, cfg.total_angle),
        # strict JSON has no infinity
        "z_score": z if math.isfinite(z) else None,
    }
    if not math.isfinite(z):
        report["z_infinite"] = True
    argv = [
        "mc",
        "--n", str(args.n),
        "--photons", str(args.photons),
        "--seed", str(args.seed),
        "--total-angle", _fmt_angle(args.total_angle),
    ]
    config = {"n": args.n, "photons": args.photons, "seed": args.seed, "total_angle_rad": args.total_angle}
    suffix = ".json" if args.out_prefix else ""
    _emit(args, argv, config, {suffix: _dumps(report)}, seed=args.seed)


# ---- chain ---------------------------------------------------------------


def chain_report(chain):
    out, states = el.propagate(chain)
    mueller = chain.needs_mueller
    input_intensity = pol.intensity(chain.input)

    def inten(s):
        return float(s[0]) if mueller else pol.intensity(s)

    final = inten(out)
    if mueller:
        state = {"representation": "stokes", "s": [float(v) for v in out]}
    else:
        state = {
            "representation": "jones",
            "ex": [float(out[0].real), float(out[0].imag)],
            "ey": [float(out[1].real), float(out[1].imag)],
        }
    return {
        "label": chain.label,
        "input_intensity": input_intensity,
        "elements": [
            {"index": k, "kind": e.kind, "intensity": inten(s)}
            for k, (e, s) in enumerate(zip(chain.elements, states))
        ],
        "final_state": state,
        "final_intensity": final,
        "total_transmittance": final / input_intensity if input_intensity > 0 else None,
    }


def cmd_chain(args):
    chain = el.load_chain(args.config)
    report = chain_report(chain)
    config = {"config": str(args.config)}
    suffix = ".json" if args.out_prefix else ""
    _emit(args, ["chain", "--config", str(args.config)], config, {suffix: _dumps(report)})


# ---- replay --------------------------------------------------------------


def cmd_replay(args):
    with open(args.manifest, encoding="utf-8") as fh:
        manifest = json.load(fh)
    argv = list(manifest["argv"])
    prefix = args.out_prefix
    if prefix is None:
        prefix = str(Path(args.manifest).name).removesuffix(".manifest.json")
        prefix = str(Path(args.manifest).with_name(prefix))
    return main(argv + ["--out-prefix", prefix])


# ---- parser --------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="zenoptics", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=True):
        p.add_argument("--out-prefix", default=None, help="write files under this prefix instead of stdout")
        if formats:
            p.add_argument("--format", choices=["csv", "json", "svg", "all"], default=None, help="default: all with --out-prefix, csv otherwise")

    p = sub.add_parser("trace", help="intensity along z with and without measurement")
    p.add_argument("--n", action="append", type=_int_list, help="measurement count(s); repeatable or comma list")
    p.add_argument("--samples-per-segment", type=int, default=50, help="points per medium (default 50)")
    p.add_argument("--total-angle", type=parse_angle, default=parse_angle("90deg"), help="rotation over all media, e.g. 90deg or 1.5708rad")
    p.add_argument("--length", type=_float, default=1.0, help="total rotator length in m")
    p.add_argument("--i0", type=_float, default=1.0, help="input intensity")
    p.add_argument("--kind", choices=["continuous", "measured", "both"], default="both", help="which curve(s) to sample")
    common(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("sweep", help="output ratio against measurement count")
    p.add_argument("--n-min", type=_positive_int, default=1)
    p.add_argument("--n-max", type=_positive_int, default=100, help="dense range is n-min..n-max")
    p.add_argument("--extra-powers-to", type=int, default=1024, help="also include powers of two up to this")
    p.add_argument("--total-angle", type=parse_angle, default=parse_angle("90deg"), help="rotation over all media, e.g. 90deg or 1.5708rad")
    p.add_argument("--log-x", action="store_true", help="log-scaled N axis in the SVG")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mc", help="photon-ensemble Monte Carlo of the measured setup")
    p.add_argument("--n", type=_positive_int, required=True, help="number of polarizers")
    p.add_argument("--photons", type=int, default=10**6, help="photons to launch")
    p.add_argument("--seed", type=int, default=42, help="RNG seed, 0..2**64-1")
    p.add_argument("--total-angle", type=parse_angle, default=parse_angle("90deg"), help="rotation over all media, e.g. 90deg or 1.5708rad")
    common(p, formats=False)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("chain", help="propagate a chain described in JSON")
    p.add_argument("--config", required=True, help="chain description (JSON)")
    common(p, formats=False)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("replay", help="re-run a command from its manifest")
    p.add_argument("manifest", help="manifest JSON written by an earlier run")
    p.add_argument("--out-prefix", default=None)
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
