"""Command line interface.

Exit codes: 0 Schmidt number >= 2 certified, 3 ran but nothing certified,
1 invalid input, 2 covariance matrix not bona fide, 4 no cross correlations,
5 other numerical failure.
"""
import argparse
import contextlib
import sys

from gsnw import __version__, covariance, formats, snbounds, states
from gsnw.errors import InputError, NotBonaFide, SemiboundednessViolated, WitnessError
from gsnw.params import WitnessParams
from gsnw.recipe import FamilyNone, certify_standard_form
from gsnw.sweep import SweepSpec, run_sweep

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_BONA_FIDE = 2
EXIT_NOT_CERTIFIED = 3
EXIT_FAMILY_NONE = 4
EXIT_OTHER = 5

P_FAMILY_NOTE = "P-family determinant levels exceed g1; certification uses the effective ladder"


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _load_cm(args):
    """Return ``(cm, provenance)`` from ``--cm`` or ``--samples``."""
    if getattr(args, "cm", None):
        return formats.read_cm_json(args.cm), {"kind": "cm", "path": args.cm, "sha256": formats.file_sha256(args.cm)}
    records = formats.read_samples_csv(args.samples)
    prov = {"kind": "samples", "path": args.samples, "sha256": formats.file_sha256(args.samples), "n_samples": len(records)}
    return covariance.cm_from_samples(records), prov


def _require_bona_fide(cm):
    bf = covariance.validate_bona_fide(cm)
    if not bf.valid:
        raise NotBonaFide(f"symplectic eigenvalue {bf.symplectic_eigenvalues[1]!r} below 1/2")
    return bf


def _sf_dict(sf):
    return {"v1": sf.v1, "v2": sf.v2, "vc1": sf.vc1, "vc2": sf.vc2, "detVc": sf.det_vc}


def cmd_certify(args):
    if args.state:
        name, params = states.parse_state(args.state)
        sf = states.from_spec(name, **params)
        nus = covariance.symplectic_eigenvalues(covariance.embed_full_cm(sf))
        prov = {"kind": "state", "spec": args.state}
    else:
        cm, prov = _load_cm(args)
        nus = _require_bona_fide(cm).symplectic_eigenvalues
        sf = covariance.to_standard_form(cm)
    out = certify_standard_form(sf, args.family, rmax=args.rmax, grid=args.grid)
    report = {
        "tool": {"name": "gsnw", "version": __version__},
        "input": prov,
        "options": {"family": args.family, "rmax": args.rmax, "grid": args.grid, "seed": args.seed},
        "standard_form": _sf_dict(sf),
        "symplectic_eigenvalues": list(nus),
        "family_selected": out.selection.value,
        "families_examined": [f.value for f in out.examined],
        "families_unusable": [f.value for f in out.unusable],
        "certified_r": out.certified_r,
    }
    res = out.result
    if res is None:
        report.update(family_used=None, saturated_inf=False, optimization=None, ladder=None)
    else:
        p = res.params
        report.update(
            family_used=p.family.value,
            saturated_inf=res.report.saturated_inf,
            optimization={
                "omega1": p.omega1,
                "omega2": p.omega2,
                "omegac": p.omegac,
                "coupling": res.coupling,
                "expectation": res.expectation,
                "normalized_expectation": res.normalized_expectation,
                "grid_points_usable": len(res.trace),
            },
            ladder={
                "raw": res.ladder.raw,
                "effective": res.ladder.effective,
                "g_inf": res.ladder.g_inf,
                "normalized_margins": res.report.margins,
            },
        )
    with _output(args.out) as fh:
        fh.write(formats.dumps(report))
    return EXIT_OK if out.certified_r >= 2 else EXIT_NOT_CERTIFIED


def cmd_standard_form(args):
    cm, _ = _load_cm(args)
    bf = _require_bona_fide(cm)
    sf = covariance.to_standard_form(cm)
    doc = _sf_dict(sf)
    doc["symplectic_eigenvalues"] = list(bf.symplectic_eigenvalues)
    with _output(args.out) as fh:
        fh.write(formats.dumps(doc))
    return EXIT_OK


def cmd_sweep(args):
    name, fixed = states.parse_state(args.state)
    spec = SweepSpec(
        state=name,
        fixed=fixed,
        param=args.param,
        start=args.start,
        stop=args.stop,
        step=args.step,
        family=args.family,
        rmax=args.rmax,
        grid=args.grid,
    )
    rows = run_sweep(spec)
    with _output(args.out) as fh:
        formats.write_csv(spec.columns(), rows, fh)
    return EXIT_OK


def cmd_ingest(args):
    records = formats.read_samples_csv(args.samples)
    cm = covariance.cm_from_samples(records)
    bf = covariance.validate_bona_fide(cm)
    with _output(args.out) as fh:
        formats.write_cm_json(cm, fh)
    summary = {"n_samples": len(records), "bona_fide": bf.valid, "symplectic_eigenvalues": list(bf.symplectic_eigenvalues)}
    sys.stderr.write(formats.dumps(summary))
    return EXIT_OK if bf.valid else EXIT_NOT_BONA_FIDE


def cmd_gr_table(args):
    fam = args.family.lower()
    if fam not in ("p", "n"):
        raise InputError("gr-table needs --family p or --family n")
    omega2 = 1.0 - args.omega1 if args.omega2 is None else args.omega2
    try:
        p = WitnessParams(fam.upper(), args.omega1, omega2, args.omegac)
    except SemiboundednessViolated as exc:
        raise InputError(str(exc)) from None
    lad = snbounds.ladder(p, args.rmax)
    note = P_FAMILY_NOTE if fam == "p" else ""
    rows = [{"r": r, "g_raw": g, "g_effective": e, "note": ""} for r, g, e in zip(range(1, lad.rmax + 1), lad.raw, lad.effective)]
    rows.append({"r": "inf", "g_raw": lad.g_inf, "g_effective": lad.g_inf, "note": note})
    with _output(args.out) as fh:
        formats.write_csv(["r", "g_raw", "g_effective", "note"], rows, fh)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is reserved for non-bona-fide input
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--rmax", type=int, default=snbounds.DEFAULT_RMAX, help="highest Schmidt level in the ladder")
    common.add_argument("--grid", type=int, default=101, help="omega1 grid points")
    common.add_argument("--family", default="auto", type=str.lower, choices=["auto", "p", "n", "both"])
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="gsnw", description="Gaussian Schmidt-number witnesses from covariance matrices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="certify a Schmidt-number lower bound")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cm", help="covariance matrix JSON")
    src.add_argument("--samples", help="quadrature sample CSV")
    src.add_argument("--state", help='generator spec, e.g. "squeezed-thermal gamma=0.7 nbar=1.5"')
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("standard-form", parents=[common], help="reduce a covariance matrix to standard form")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cm")
    src.add_argument("--samples")
    p.set_defaults(func=cmd_standard_form)

    p = sub.add_parser("sweep", parents=[common], help="sweep one state parameter, CSV out")
    p.add_argument("state", help='family and fixed parameters, e.g. "squeezed-thermal gamma=0.7"')
    p.add_argument("--param", required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ingest", parents=[common], help="estimate a covariance matrix from samples")
    p.add_argument("--samples", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("gr-table", parents=[common], help="tabulate the g_r ladder")
    p.add_argument("--omega1", type=float, required=True)
    p.add_argument("--omega2", type=float, default=None, help="default 1 - omega1")
    p.add_argument("--omegac", type=float, required=True)
    p.set_defaults(func=cmd_gr_table)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FamilyNone as exc:
        sys.stderr.write(f"gsnw: {exc}\n")
        return EXIT_FAMILY_NONE
    except InputError as exc:
        sys.stderr.write(f"gsnw: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    except NotBonaFide as exc:
        sys.stderr.write(f"gsnw: {type(exc).__name__}: {exc}\n")
        return EXIT_NOT_BONA_FIDE
    except WitnessError as exc:
        sys.stderr.write(f"gsnw: {type(exc).__name__}: {exc}\n")
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
