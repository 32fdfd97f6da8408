"""Command-line front end: field rendering, experiments, validation.

Field files are UTF-8 CSV with header ``x,y,re,im``, one row per grid
node, followed by ``#``-prefixed footer comments echoing the effective
configuration and quadrature error estimates. Alongside every field file
a binary PGM (P5) quick-look image maps the phase linearly from
(-pi, pi] to 0..255. All outputs are written atomically (temp + rename)
and are byte-identical across reruns of the same configuration.

Exit codes: 0 ok, 1 validation failure, 2 bad configuration, 3 IO error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile

import numpy as np

from . import checks, euclid, moire
from .errors import ConfigError, HorowaveError
from .geometry import BoundaryPoint, DiskPoint, busemann_array, distance_array
from .tapers import TaperSpec
from .transform import DEFAULT_GRID, GridSpec, SampledField, forward, inverse
from .waves import CONVENTION, helgason_wave_array, spherical_radial

__all__ = ["main"]


# --- configuration --------------------------------------------------------

def _parse_grid(text: str) -> tuple[int, int]:
    try:
        n_r, n_theta = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise ConfigError("grid", f"expected NxM, got {text!r}")
    if n_r < 4 or n_theta < 4:
        raise ConfigError("grid", "grid must be at least 4x4")
    return n_r, n_theta


def _parse_taper(text: str) -> TaperSpec:
    try:
        kind, width = text.split(":")
        spec = TaperSpec(kind, float(width))
    except ValueError as exc:
        raise ConfigError("taper", f"expected kind:width, got {text!r} ({exc})")
    return spec


def _parse_complex(text: str) -> complex:
    try:
        re, im = (float(p) for p in text.split(","))
    except ValueError:
        raise ConfigError("x", f"expected re,im pair, got {text!r}")
    return complex(re, im)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p]
    except ValueError:
        raise ConfigError("sigmas", f"expected comma-separated reals, got {text!r}")


def _load_config_file(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("config", f"{path}:{lineno}: expected key=value")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def _merge_config(args: argparse.Namespace) -> None:
    """Fill argparse Nones from the optional key=value config file."""
    if not getattr(args, "config", None):
        return
    file_values = _load_config_file(args.config)
    for key, val in file_values.items():
        attr = key.replace("-", "_")
        if attr == "lambda":
            attr = "lam"
        if not hasattr(args, attr):
            raise ConfigError(key, "unknown configuration key")
        if getattr(args, attr) is None:
            setattr(args, attr, val)


def _required(args, name: str, parse, default=None):
    raw = getattr(args, name if name != "lambda" else "lam")
    if raw is None:
        if default is None:
            raise ConfigError(name, "missing required parameter")
        return default
    if isinstance(raw, str):
        return parse(raw)
    return raw


def _positive(key: str, value: float) -> float:
    if not value > 0:
        raise ConfigError(key, f"must be positive, got {value}")
    return value


def _grid_from(args) -> GridSpec:
    n_r, n_theta = _parse_grid(args.grid) if args.grid else (DEFAULT_GRID.n_r,
                                                            DEFAULT_GRID.n_theta)
    radius = _positive("radius", float(args.radius)) if args.radius else DEFAULT_GRID.R
    return GridSpec(n_r, n_theta, radius)


# --- output ----------------------------------------------------------------

def _atomic_write(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".horowave-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _field_csv(xy: np.ndarray, values: np.ndarray, footer: dict) -> bytes:
    lines = ["x,y,re,im"]
    for p, v in zip(xy.ravel(), values.ravel()):
        lines.append(f"{p.real:.12g},{p.imag:.12g},{v.real:.12g},{v.imag:.12g}")
    for key, val in footer.items():
        lines.append(f"# {key}={val}")
    return ("\n".join(lines) + "\n").encode()


def _phase_pgm(values: np.ndarray) -> bytes:
    phase = np.angle(values)
    gray = np.clip(np.floor((phase + math.pi) / (2.0 * math.pi) * 256.0), 0, 255)
    h, w = values.shape
    return f"P5\n{w} {h}\n255\n".encode() + gray.astype(np.uint8).tobytes()


def _emit_field(path: str, xy: np.ndarray, values: np.ndarray, footer: dict) -> None:
    _atomic_write(path, _field_csv(xy, values, footer))
    _atomic_write(os.path.splitext(path)[0] + ".pgm", _phase_pgm(values))


# --- subcommands ------------------------------------------------------------

def cmd_wave(args) -> int:
    lam = _required(args, "lambda", float)
    b0 = BoundaryPoint(float(args.b0) if args.b0 is not None else 0.0)
    grid = _grid_from(args)
    values = helgason_wave_array(lam, b0.theta, grid.z)
    footer = {"command": "wave", "lambda": lam, "b0": b0.theta,
              "grid": f"{grid.n_r}x{grid.n_theta}", "radius": grid.R,
              "quadrature_error_estimate": 0.0}  # closed-form evaluation
    _emit_field(args.out, grid.z, values, footer)
    return 0


def cmd_spherical(args) -> int:
    lam = _required(args, "lambda", float)
    grid = _grid_from(args)
    d = 2.0 * np.arctanh(np.abs(grid.z))
    values = spherical_radial(lam, d).astype(complex)
    # cross-check the radial quadrature against the boundary average at the
    # outermost radius; reported, not asserted
    from .waves import spherical
    M = int(args.resolution) if args.resolution else 4096
    far = DiskPoint(float(np.abs(grid.z).max()) + 0j)
    est = abs(spherical(lam, far, M=M) - spherical_radial(lam, float(d.max())))
    footer = {"command": "spherical", "lambda": lam,
              "grid": f"{grid.n_r}x{grid.n_theta}", "radius": grid.R,
              "quadrature_error_estimate": f"{est:.3e}"}
    _emit_field(args.out, grid.z, values, footer)
    return 0


def cmd_moire(args) -> int:
    lam = _required(args, "lambda", float)
    b0 = BoundaryPoint(float(args.b0) if args.b0 is not None else 0.0)
    x = DiskPoint(_parse_complex(args.x)) if args.x else DiskPoint(0j)
    grid = _grid_from(args)
    n = int(args.centers) if args.centers else 5
    if n < 1:
        raise ConfigError("centers", "must be a positive integer")
    spacing = _positive("spacing", float(args.spacing)) if args.spacing else 0.35
    sigmas = _parse_floats(args.sigmas) if args.sigmas else [4.0, 8.0, 12.0]
    kind = (_parse_taper(args.taper).kind if args.taper else "gaussian")

    field = moire.moire_sum_discrete(lam, b0, n, spacing, grid)
    footer = {"command": "moire", "lambda": lam, "b0": b0.theta, "centers": n,
              "spacing": spacing, "grid": f"{grid.n_r}x{grid.n_theta}",
              "radius": grid.R,
              "quadrature_error_estimate": "1e-8 (tapered line quadrature tolerance)"}
    _emit_field(args.out, grid.z, field.values, footer)

    reports = moire.convergence_study(lam, b0, x, sigmas, kind=kind)
    lines = ["sigma,approx_re,approx_im,target_re,target_im,abs_error"]
    for r in reports:
        lines.append(f"{r.taper.width:.12g},{r.approx.real:.12g},{r.approx.imag:.12g},"
                     f"{r.target.real:.12g},{r.target.imag:.12g},{r.abs_error:.12g}")
    lines.append(f"# oscillation_amplitude={reports[-1].oscillation_amplitude:.12g}")
    lines.append(f"# divergent={reports[-1].divergent}")
    report_path = os.path.splitext(args.out)[0] + ".report.csv"
    _atomic_write(report_path, ("\n".join(lines) + "\n").encode())
    return 0


def cmd_transform(args) -> int:
    grid = _grid_from(args)
    width = float(args.bump_width) if args.bump_width else 1.25
    _positive("bump-width", width)
    f = SampledField.from_function(
        lambda z: np.exp(-width * (2.0 * np.arctanh(np.abs(z))) ** 2), grid)
    g = inverse(forward(f))
    err = math.sqrt(float(np.sum(f.weights * np.abs(g.values - f.values) ** 2))
                    / f.norm2())
    footer = {"command": "transform", "bump_width": width,
              "grid": f"{grid.n_r}x{grid.n_theta}", "radius": grid.R,
              "plancherel_kappa": f"{CONVENTION.plancherel_kappa:.12g}",
              "roundtrip_relative_l2_error": f"{err:.3e}",
              "quadrature_error_estimate": f"{err:.3e}"}
    _emit_field(args.out, grid.z, g.values, footer)
    return 0


def cmd_lemma(args) -> int:
    from .transform import lemma_check
    b0 = BoundaryPoint(float(args.b0) if args.b0 is not None else 0.0)
    x = DiskPoint(_parse_complex(args.x)) if args.x else DiskPoint(0j)
    psi = lambda z: np.exp(-1.25 * (2.0 * np.arctanh(np.abs(z))) ** 2)
    lhs, rhs = lemma_check(psi, b0, x)
    rel = abs(lhs - rhs) / abs(rhs) if rhs != 0 else abs(lhs)
    print(f"lhs={lhs.real:.9f}{lhs.imag:+.9f}j")
    print(f"rhs={rhs.real:.9f}{rhs.imag:+.9f}j")
    print(f"relative_error={rel:.3e}")
    if args.out:
        body = ("quantity,re,im\n"
                f"lhs,{lhs.real:.12g},{lhs.imag:.12g}\n"
                f"rhs,{rhs.real:.12g},{rhs.imag:.12g}\n"
                f"# relative_error={rel:.3e}\n")
        _atomic_write(args.out, body.encode())
    return 0


def cmd_euclid(args) -> int:
    lam = _required(args, "lambda", float, default=1.0)
    _positive("lambda", lam)
    n = int(args.centers) if args.centers else 5
    if n < 1:
        raise ConfigError("centers", "must be a positive integer")
    spacing = _positive("spacing", float(args.spacing)) if args.spacing else 0.5
    n_x, n_y = _parse_grid(args.grid) if args.grid else (81, 81)
    xs = np.linspace(2.0, 6.0, n_x)
    ys = np.linspace(-2.0, 2.0, n_y)
    Q = xs[None, :] + 1j * ys[:, None]
    m = int(args.resolution) if args.resolution else 256
    values = euclid.line_moire_array(lam, n, spacing, Q, m=m)
    est = float(np.max(np.abs(values - euclid.line_moire_array(lam, n, spacing, Q,
                                                               m=m // 2))))
    footer = {"command": "euclid", "lambda": lam, "centers": n, "spacing": spacing,
              "grid": f"{n_x}x{n_y}", "resolution": m,
              "quadrature_error_estimate": f"{est:.3e}"}
    _emit_field(args.out, Q, values, footer)
    return 0


def cmd_validate(args) -> int:
    names = args.suite.split(",") if args.suite else None
    kappa_scale = float(args.kappa_scale) if args.kappa_scale else 1.0
    try:
        results, all_ok = checks.run_suites(names, kappa_scale=kappa_scale)
    except KeyError as exc:
        raise ConfigError("suite", f"unknown suite {exc.args[0]!r}")
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    print(f"{'PASS' if all_ok else 'FAIL'}  {sum(r.ok for r in results)}/{len(results)} checks")
    return 0 if all_ok else 1


# --- argument parsing --------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", help="spectral parameter")
    p.add_argument("--b0", help="boundary direction angle in radians")
    p.add_argument("--x", help="disk point as re,im")
    p.add_argument("--grid", help="grid size NxM")
    p.add_argument("--radius", help="geodesic truncation radius R")
    p.add_argument("--taper", help="taper as kind:width")
    p.add_argument("--out", help="output file path")
    p.add_argument("--config", help="key=value configuration file")
    p.add_argument("--resolution", help="quadrature resolution override")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horowave",
        description="Waves on the hyperbolic disk from horocycle superpositions")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, extra in (
        ("wave", cmd_wave, ()),
        ("spherical", cmd_spherical, ()),
        ("moire", cmd_moire, ("centers", "spacing", "sigmas")),
        ("transform", cmd_transform, ("bump-width",)),
        ("lemma", cmd_lemma, ()),
        ("euclid", cmd_euclid, ("centers", "spacing")),
        ("validate", cmd_validate, ("suite", "kappa-scale")),
    ):
        p = sub.add_parser(name)
        _add_common(p)
        for flag in extra:
            p.add_argument(f"--{flag}")
        p.set_defaults(func=fn)
    return parser


_NEEDS_OUT = {"wave", "spherical", "moire", "transform", "euclid"}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _merge_config(args)
        if args.command in _NEEDS_OUT and not args.out:
            raise ConfigError("out", "missing required parameter")
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    except HorowaveError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
