"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 numerical-tolerance failure,
64 usage error.  All numbers are serialized with 17 significant digits,
'.' decimal separator and ',' field separator.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fock, groups, radon, spin, states, verify
from .errors import QradonError, ToleranceError, ValidationError

USAGE_ERROR = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; the CLI reserves that
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qradon", description=__doc__)
    parser.add_argument("--seed", type=int, default=0, help="seed for the verify fixtures")
    parser.add_argument("--tol", type=float, default=None,
                        help="override the trace tolerance used when reading states")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radon", help="project an image grid into a sinogram")
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--angles", type=int, default=180)
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--nx", type=int, required=True)

    p = sub.add_parser("iradon", help="filtered backprojection of a sinogram")
    p.add_argument("--sino", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--qmin", type=float, required=True)
    p.add_argument("--qmax", type=float, required=True)
    p.add_argument("--nq", type=int, required=True)
    p.add_argument("--pmin", type=float, required=True)
    p.add_argument("--pmax", type=float, required=True)
    p.add_argument("--np", type=int, required=True, dest="npix")

    p = sub.add_parser("spin-tomogram", help="two-atom tomogram of a qubit state")
    p.add_argument("--state", required=True)
    p.add_argument("--axis", required=True, help="sx,sy,sz")
    p.add_argument("--out", default=None, help="output JSON path (stdout if omitted)")

    p = sub.add_parser("group-reconstruct", help="rebuild a state from group samples")
    p.add_argument("--group", required=True,
                   help="pauli | cyclic:n[:k] | heisenberg:d | dihedral:n[:k] | group JSON path")
    p.add_argument("--chi", required=True, help="CSV g,re,im with one row per element")
    p.add_argument("--out", default=None)

    p = sub.add_parser("wh-tomogram", help="quadrature tomogram on an X grid")
    p.add_argument("--state", required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=None,
                   help="expected Fock cutoff of the state (validated)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("wh-reconstruct", help="state from characteristic-function samples")
    p.add_argument("--chi", required=True, help="CSV mu,nu,re,im on the midpoint box grid")
    p.add_argument("--box", type=float, required=True)
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--psd-clip", action="store_true")
    p.add_argument("--out", default=None)

    p = sub.add_parser("wigner", help="Wigner function on a phase-space grid")
    p.add_argument("--state", required=True)
    p.add_argument("--qmin", type=float, required=True)
    p.add_argument("--qmax", type=float, required=True)
    p.add_argument("--nq", type=int, required=True)
    p.add_argument("--pmin", type=float, required=True)
    p.add_argument("--pmax", type=float, required=True)
    p.add_argument("--np", type=int, required=True, dest="npix")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--module", default=None, choices=sorted(verify.SUITES))
    return parser


def _read_state(path: str, tol: float | None) -> states.DensityMatrix:
    kwargs = {} if tol is None else {"trace_tol": tol}
    return states.density_from_json(Path(path).read_text(), **kwargs)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _cmd_radon(args) -> int:
    img = radon.image_from_csv(args.image)
    thetas = np.pi * np.arange(args.angles) / args.angles
    x = np.linspace(args.xmin, args.xmax, args.nx)
    sino = radon.radon(img, thetas, x)
    radon.sinogram_to_csv(sino, args.out)
    return 0


def _cmd_iradon(args) -> int:
    sino = radon.sinogram_from_csv(args.sino)
    geometry = radon.ImageGrid(
        q0=args.qmin,
        p0=args.pmin,
        dq=(args.qmax - args.qmin) / (args.nq - 1),
        dp=(args.pmax - args.pmin) / (args.npix - 1),
        values=np.zeros((args.nq, args.npix)),
    )
    out = radon.inverse_radon(sino, out_grid=geometry)
    radon.image_to_csv(out, args.out)
    return 0


def _cmd_spin_tomogram(args, tol) -> int:
    rho = _read_state(args.state, tol)
    try:
        comps = [float(v) for v in args.axis.split(",")]
        if len(comps) != 3:
            raise ValueError
    except ValueError:
        raise SystemExit(USAGE_ERROR)
    tom = spin.spin_tomogram(rho, spin.SpinAxis(*comps))
    doc = {
        "axis": comps,
        "atoms": [{"X": float(x), "w": float(w)} for x, w in zip(tom.locations, tom.weights)],
    }
    _write_text(args.out, json.dumps(doc))
    return 0


def _load_group(spec: str) -> groups.UnitaryRep:
    path = Path(spec)
    if path.exists():
        _, reps = groups.group_from_json(path.read_text())
        if not reps:
            raise ValidationError(f"group file {spec} carries no representation")
        return reps[0]
    return groups.builtin_group(spec)[1]


def _cmd_group_reconstruct(args) -> int:
    rep = _load_group(args.group)
    order = rep.group.order
    raw = np.loadtxt(args.chi, delimiter=",", skiprows=1, ndmin=2)
    if raw.shape != (order, 3):
        raise ValidationError(f"chi file must have {order} rows of g,re,im")
    idx = raw[:, 0].astype(int)
    if not np.array_equal(np.sort(idx), np.arange(order)):
        raise ValidationError("chi rows must cover every group element once")
    values = np.empty(order, dtype=complex)
    values[idx] = raw[:, 1] + 1j * raw[:, 2]
    chi = groups.SamplingFunction(values=values, weights=np.full(order, 1.0 / order))
    rho = groups.reconstruct_finite(chi, rep)
    _write_text(args.out, states.density_to_json(rho))
    return 0


def _cmd_wh_tomogram(args, tol) -> int:
    rho = _read_state(args.state, tol)
    if args.cutoff is not None and rho.dim != args.cutoff:
        raise ValidationError(f"state dim {rho.dim} does not match --cutoff {args.cutoff}")
    d = fock.WHDirection(mu=[args.mu], nu=[args.nu])
    x = np.linspace(args.xmin, args.xmax, args.nx)
    tom = fock.grid_tomogram(rho, d, x)
    lines = ["X,W"] + [f"{x_:.17g},{w:.17g}" for x_, w in zip(tom.x, tom.values)]
    Path(args.out).write_text("\n".join(lines) + "\n")
    return 0


def _cmd_wh_reconstruct(args, tol) -> int:
    psd_tol = 1e-10 if tol is None else tol
    raw = np.loadtxt(args.chi, delimiter=",", skiprows=1, ndmin=2)
    m = args.grid
    if raw.shape != (m * m, 4):
        raise ValidationError(f"chi file must have {m * m} rows of mu,nu,re,im")
    h = 2.0 * args.box / m
    cs = -args.box + h * (np.arange(m) + 0.5)
    expect = np.stack(np.meshgrid(cs, cs, indexing="ij"), axis=-1).reshape(-1, 2)
    if not np.allclose(raw[:, :2], expect, atol=1e-9):
        raise ValidationError("chi samples are not on the midpoint grid of the requested box")
    chi = (raw[:, 2] + 1j * raw[:, 3]).reshape(m, m)
    rec = fock.reconstruct_wh(
        chi, box=args.box, grid=m, cutoff=args.cutoff, psd_clip=args.psd_clip
    )
    sys.stderr.write(
        f"raw trace {rec.raw_trace.real:.6f}{rec.raw_trace.imag:+.2e}j, "
        f"min eigenvalue {rec.min_eigenvalue:.3e}\n"
    )
    # every emitted density JSON must pass validation on re-read; quadrature
    # negativity beyond tolerance is reported as a tolerance failure instead
    try:
        rho = states.validate_density(
            rec.matrix, psd_tol=psd_tol, hermitian_rtol=1e-8, trace_tol=1e-8
        )
    except ValidationError as exc:
        raise ToleranceError(
            f"reconstruction is not a state at tolerance {psd_tol:.1e} ({exc}); "
            "rerun with --psd-clip or a looser --tol"
        ) from exc
    _write_text(args.out, states.density_to_json(rho))
    return 0


def _cmd_wigner(args, tol) -> int:
    rho = _read_state(args.state, tol)
    q = np.linspace(args.qmin, args.qmax, args.nq)
    p = np.linspace(args.pmin, args.pmax, args.npix)
    w = fock.wigner(rho, q, p)
    lines = ["q,p,w"]
    for i, qi in enumerate(q):
        lines += [f"{qi:.17g},{pj:.17g},{w[i, j]:.17g}" for j, pj in enumerate(p)]
    Path(args.out).write_text("\n".join(lines) + "\n")
    return 0


def _cmd_verify(args) -> int:
    modules = [args.module] if args.module else None
    results = verify.run(modules=modules, seed=args.seed)
    print(verify.format_table(results))
    return 0 if all(r.passed for r in results) else 2


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "radon":
            return _cmd_radon(args)
        if args.command == "iradon":
            return _cmd_iradon(args)
        if args.command == "spin-tomogram":
            return _cmd_spin_tomogram(args, args.tol)
        if args.command == "group-reconstruct":
            return _cmd_group_reconstruct(args)
        if args.command == "wh-tomogram":
            return _cmd_wh_tomogram(args, args.tol)
        if args.command == "wh-reconstruct":
            return _cmd_wh_reconstruct(args, args.tol)
        if args.command == "wigner":
            return _cmd_wigner(args, args.tol)
        if args.command == "verify":
            return _cmd_verify(args)
        raise SystemExit(USAGE_ERROR)  # pragma: no cover
    except ToleranceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QradonError as exc:  # pragma: no cover - other subclasses
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
