"""Command-line entry point.

    subspec region --flow affine --p 2
    subspec pseudospectrum --operator cesaro --N 100 --box -0.5,2.5,-1.5,1.5 --res 200,200
    subspec subordinate --flow affine --measure '{"density": {"name": "exp", "lambda": [1, 0]}}' --N 8
    subspec localradius --operator cesaro --N 1024 --x e0 --n-max 30
    subspec verify semiflow-identities

Exit codes: 0 success, 1 failed check or inadmissible measure, 2 bad configuration.
"""

import argparse
import json
import os
import sys

import numpy as np

from .matrices import cesaro_matrix, identity_matrix
from .spectral import (
    generator_spectrum_region,
    local_radius_trace,
    pseudospectrum_grid,
    semigroup_spectrum_region,
)
from .subordination import AdmissibilityError, PlanTooSmallError, subordinate_matrix
from .suites import SUITES, ConfigError, ExperimentConfig, composition_operator, run_suite
from .svg import DEFAULT_LEVELS, pseudospectrum_svg

OPERATORS = ("cesaro", "identity", "composition", "subordinate")


def fmt(v):
    return format(float(v), ".17g")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) if not isinstance(v, (int, np.integer)) else str(int(v)) for v in row) + "\n")


def write_text(path, text):
    with open(path, "w") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def _floats(text, count, what):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"{what} must be {count} comma-separated numbers") from None
    if len(vals) != count:
        raise ConfigError(f"{what} must be {count} comma-separated numbers")
    return vals


def _measure(text):
    if text is None:
        return None
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"--measure is neither a file nor inline JSON: {exc}") from None


def build_config(args):
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    overrides = {
        "flow": args.flow,
        "p": args.p,
        "t": args.t,
        "N": args.N,
        "measure": _measure(args.measure),
        "box": _floats(args.box, 4, "--box") if args.box else None,
        "resolution": [int(v) for v in _floats(args.res, 2, "--res")] if args.res else None,
        "suite": args.suite_name or args.suite,
        "out": args.out,
        "operator": args.operator,
        "x": args.x,
        "n_max": args.n_max,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    if data.get("flow_params") is None and args.alpha is not None:
        data["flow_params"] = {"alpha": args.alpha}
    try:
        return ExperimentConfig.from_dict(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def out_dir(cfg):
    path = cfg.out or "."
    os.makedirs(path, exist_ok=True)
    return path


# -- subcommands -------------------------------------------------------------------


def cmd_region(cfg):
    flow = cfg.semiflow()
    p = cfg.p or 2.0
    try:
        region = generator_spectrum_region(flow, p) if cfg.t is None else semigroup_spectrum_region(flow, p, cfg.t)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    d = out_dir(cfg)
    text = region.to_json()
    write_text(os.path.join(d, "region.json"), text)
    pts = region.boundary_sample(256)
    write_csv(os.path.join(d, "region_boundary.csv"), "re,im", zip(pts.real, pts.imag))
    print(text)
    return 0


def build_operator(cfg):
    name = cfg.operator or "cesaro"
    if name not in OPERATORS:
        raise ConfigError(f"unknown operator {name!r}; choose from {', '.join(OPERATORS)}")
    N = 100 if cfg.N is None else cfg.N
    if name == "cesaro":
        return cesaro_matrix(N)
    if name == "identity":
        return identity_matrix(N)
    if name == "composition":
        return composition_operator(cfg.semiflow(), 1.0 if cfg.t is None else cfg.t, N)
    return subordinate_matrix(cfg.semiflow(), cfg.borel_measure(), N)


def _closed(curve):
    return np.concatenate([curve, curve[:1]])


def reference_curves(cfg):
    """Closed-form spectrum boundaries drawn under the contours."""
    name = cfg.operator or "cesaro"
    theta = 2.0 * np.pi * np.arange(256) / 256
    if name == "cesaro":
        return [_closed(1.0 + np.exp(1j * theta))]
    if name == "composition":
        try:
            region = semigroup_spectrum_region(cfg.semiflow(), cfg.p or 2.0, 1.0 if cfg.t is None else cfg.t)
        except ValueError:
            return []
        p = region.params
        radii = [p["radius"]] if "radius" in p else [p["r_in"], p["r_out"]]
        return [_closed(r * np.exp(1j * theta)) for r in radii]
    return []


def cmd_pseudospectrum(cfg):
    A = build_operator(cfg)
    box = cfg.box or (-0.5, 2.5, -1.5, 1.5)
    res = cfg.resolution or (200, 200)
    grid = pseudospectrum_grid(A, box, res)
    d = out_dir(cfg)
    csv_path = os.path.join(d, "pseudospectrum.csv")
    svg_path = os.path.join(d, "pseudospectrum.svg")
    write_csv(csv_path, "re,im,sigma_min", grid.rows())
    write_text(svg_path, pseudospectrum_svg(grid, DEFAULT_LEVELS, reference_curves(cfg)))
    print(json.dumps({"csv": csv_path, "svg": svg_path, "min_sigma": float(grid.values.min())}, sort_keys=True))
    return 0


def cmd_subordinate(cfg):
    flow = cfg.semiflow()
    N = 8 if cfg.N is None else cfg.N
    A = subordinate_matrix(flow, cfg.borel_measure(), N)
    rows = ((m, k, A.entries[m, k].real, A.entries[m, k].imag) for m in range(N + 1) for k in range(N + 1))
    path = os.path.join(out_dir(cfg), "subordinate.csv")
    write_csv(path, "m,k,re,im", rows)
    print(json.dumps({"csv": path, "structure": A.structure, "exactness": A.exactness}, sort_keys=True))
    return 0


def parse_vector(spec, N):
    """'e3' for a basis vector, or comma-separated real coefficients."""
    spec = (spec or "e0").strip()
    v = np.zeros(N + 1, dtype=complex)
    if spec.startswith("e"):
        try:
            k = int(spec[1:])
        except ValueError:
            raise ConfigError(f"bad vector spec {spec!r}") from None
        if not 0 <= k <= N:
            raise ConfigError(f"basis index {k} outside 0..{N}")
        v[k] = 1.0
        return v
    vals = _floats(spec, len(spec.split(",")), "--x")
    if len(vals) > N + 1:
        raise ConfigError("--x has more coefficients than the truncation allows")
    v[: len(vals)] = vals
    if not np.any(v):
        raise ConfigError("--x must be nonzero")
    return v


def cmd_localradius(cfg):
    A = build_operator(cfg)
    x = parse_vector(cfg.x, A.order)
    n_max = cfg.n_max or 30
    trace = local_radius_trace(A, x, n_max)
    path = os.path.join(out_dir(cfg), "localradius.csv")
    write_csv(path, "n,r_n", zip(trace.n, trace.r))
    summary = {"csv": path, "note": trace.note, "strictly_increasing": trace.strictly_increasing()}
    print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_verify(cfg):
    if cfg.suite is None:
        raise ConfigError(f"verify needs a suite: {', '.join(SUITES)}")
    report = run_suite(cfg.suite, cfg)
    d = out_dir(cfg)
    path = os.path.join(d, f"{cfg.suite}.json")
    report.artifacts.append(path)
    text = report.to_json()
    write_text(path, text)
    print(text)
    return 0 if report.passed else 1


COMMANDS = {
    "region": cmd_region,
    "pseudospectrum": cmd_pseudospectrum,
    "subordinate": cmd_subordinate,
    "localradius": cmd_localradius,
    "verify": cmd_verify,
}


def make_parser():
    parser = argparse.ArgumentParser(prog="subspec", description=__doc__.split("\n")[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("suite_name", nargs="?", help="suite for 'verify'")
    parser.add_argument("--flow", help="affine, hyp-auto, para-auto, elliptic-rot or elliptic-pow")
    parser.add_argument("--alpha", type=float, help="scale parameter of hyp-auto")
    parser.add_argument("--p", type=float, help="Hardy space exponent (default 2)")
    parser.add_argument("--t", type=float, help="flow time")
    parser.add_argument("--N", type=int, help="truncation order")
    parser.add_argument("--measure", help="measure JSON file or inline JSON")
    parser.add_argument("--box", help="x0,x1,y0,y1")
    parser.add_argument("--res", help="nx,ny")
    parser.add_argument("--suite", help="suite name for 'verify'")
    parser.add_argument("--operator", help=f"one of {', '.join(OPERATORS)}")
    parser.add_argument("--x", help="vector for localradius: e<k> or comma-separated coefficients")
    parser.add_argument("--n-max", dest="n_max", type=int, help="number of powers for localradius")
    parser.add_argument("--out", help="output directory (default .)")
    parser.add_argument("--config", help="JSON experiment config; flags override its keys")
    return parser


def _glue_values(argv):
    """Attach values such as '-0.5,2.5,-1.5,1.5' to their flag so argparse
    does not read them as options."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--box", "--res", "--x"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = make_parser().parse_args(_glue_values(argv))
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"subspec: config error: {exc}", file=sys.stderr)
        return 2
    except (AdmissibilityError, PlanTooSmallError) as exc:
        print(f"subspec: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
