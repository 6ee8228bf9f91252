"""Command line frontend.

Subcommands: profile, search, verify, bound, rrlab, sample.  All outputs are
deterministic given the inputs (including seeds): exact quantities print as
integers or p/q, reals with 12 significant digits.

Exit codes: 0 success, 1 other failure or flagged violation, 2 parse or
format errors, 3 empty subscheme, 4 search budget exhausted, 5 invalid
certificate, 6 all sample points excluded, 7 inconsistent growth profile.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .auxdiv import (
    BudgetExhaustedError,
    CertificateFormatError,
    InvalidProfileError,
    bound_coefficient,
    load_certificate,
    save_certificate,
    search_certificate,
    verify_certificate,
)
from .harness import (
    AllExcludedError,
    SampleSpec,
    iter_evaluate_bound,
    iter_sample_points,
    point_str,
    summarize,
    write_summary_json,
)
from .ideals import (
    EmptySubschemeError,
    IdealError,
    hilbert_profile,
    load_ideal,
)
from .polyalgebra import ParseError
from .rr_lab import (
    InconsistentProfileError,
    check_lemma_h0,
    check_rr_inequality,
    rr_growth_in_m,
)

EXIT_OTHER = 1
EXIT_PARSE = 2
EXIT_EMPTY = 3
EXIT_BUDGET = 4
EXIT_INVALID_CERT = 5
EXIT_ALL_EXCLUDED = 6
EXIT_INCONSISTENT = 7


def _real(x):
    return f"{x:.12g}"


class UsageError(ValueError):
    pass


def _fail(code, message):
    print(f"error: {message}", file=sys.stderr)
    return code


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"missing required flag --{name.replace('_', '-')} "
                             f"(or config key)")


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_profile(args):
    _require(args, "ideal")
    ideal = load_ideal(args.ideal)
    profile = hilbert_profile(ideal, m0=args.m0)
    line = (f"n={profile.n} d={profile.d} c={profile.c} "
            f"degY={profile.degY}")
    if profile.c >= 2:
        line += f" coefficient={_real(bound_coefficient(profile))}"
    else:
        line += " coefficient=n/a (codimension < 2)"
    print(line)
    return 0


def cmd_search(args):
    _require(args, "ideal")
    ideal = load_ideal(args.ideal)
    cert = search_certificate(ideal, args.epsilon, args.r_budget,
                              args.m_budget)
    out = _out_dir(args)
    path = out / "certificate.json"
    save_certificate(cert, path)
    within = cert.within_epsilon(args.epsilon)
    print(f"slope={cert.slope} coefficient={_real(cert.coefficient)} "
          f"within_epsilon={'true' if within else 'false'}")
    print(f"certificate written to {path}")
    return 0


def cmd_verify(args):
    _require(args, "cert")
    cert = load_certificate(args.cert)
    check = verify_certificate(cert)
    if check.ok:
        print(f"certificate valid: slope={cert.slope} "
              f"degree={cert.m} order={cert.r}")
        return 0
    for d in check.diagnostics:
        print(f"invalid: {d}", file=sys.stderr)
    return EXIT_INVALID_CERT


def cmd_bound(args):
    _require(args, "cert")
    cert = load_certificate(args.cert)
    check = verify_certificate(cert)
    if not check.ok:
        for d in check.diagnostics:
            print(f"invalid certificate: {d}", file=sys.stderr)
        return EXIT_INVALID_CERT
    spec = SampleSpec(n=cert.n, height_bound=args.height_bound,
                      mode=args.mode, count=args.count, seed=args.seed)
    out = _out_dir(args)
    report_path = out / "report.csv"
    # single pass: stream rows to CSV while folding the summary
    with open(report_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["point", "weil", "gcd_finite", "gcd_arch",
                         "gcd_total", "slope_bound", "excess", "excluded"])

        def rows_to_disk():
            for row in iter_evaluate_bound(cert, iter_sample_points(spec)):
                writer.writerow([
                    point_str(row.point), _real(row.weil),
                    _real(row.gcd_finite), _real(row.gcd_arch),
                    _real(row.gcd_total), _real(row.slope_bound),
                    "" if row.excess is None else _real(row.excess),
                    "true" if row.excluded else "false"])
                yield row

        summary = summarize(rows_to_disk())
    write_summary_json(out / "summary.json", summary, spec, cert)
    print(f"points={summary.n_points} excluded={summary.n_excluded} "
          f"max_excess={_real(summary.max_excess)} "
          f"mean_excess={_real(summary.mean_excess)}")
    print(f"report written to {report_path}")
    return 0


def cmd_rrlab(args):
    _require(args, "ideal")
    ideal = load_ideal(args.ideal)
    profile = hilbert_profile(ideal)
    out = _out_dir(args)
    violations = 0

    fit_r = check_rr_inequality(ideal, profile, args.m, args.r_max)
    _write_fit(out / "fit_in_r.csv", fit_r)
    violations += fit_r.violation
    print(f"growth in r: exponent={fit_r.exponent} "
          f"leading={_real(fit_r.leading)} predicted={_real(fit_r.predicted)} "
          f"K={_real(fit_r.max_residual_ratio)} "
          f"violation={'true' if fit_r.violation else 'false'}")

    fit_m = rr_growth_in_m(ideal, args.growth_r, args.m_max, profile=profile)
    _write_fit(out / "fit_in_m.csv", fit_m)
    violations += fit_m.violation
    print(f"growth in m: exponent={fit_m.exponent} "
          f"leading={_real(fit_m.leading)} predicted={_real(fit_m.predicted)} "
          f"K={_real(fit_m.max_residual_ratio)} "
          f"violation={'true' if fit_m.violation else 'false'}")

    bad = [(n, e) for n in range(1, 7) for e in range(1, 21)
           if not check_lemma_h0(n, e)]
    print(f"section-count grid (n<=6, e<=20): "
          f"{'ok' if not bad else f'violated at {bad}'}")
    violations += len(bad)
    return 0 if not violations else EXIT_OTHER


def _write_fit(path, fit):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([fit.variable, "computed_dim",
                         "predicted_leading_term", "residual"])
        for t, value, pred, resid in fit.rows():
            writer.writerow([t, value, _real(pred), _real(resid)])


def cmd_sample(args):
    _require(args, "n", "height_bound")
    spec = SampleSpec(n=args.n, height_bound=args.height_bound,
                      mode=args.mode, count=args.count, seed=args.seed)
    points = list(iter_sample_points(spec))
    if args.out:
        out = _out_dir(args)
        if args.format == "json":
            path = out / "points.json"
            with open(path, "w", encoding="utf-8") as fh:
                json.dump([point_str(p) for p in points], fh, indent=2)
                fh.write("\n")
        else:
            path = out / "points.csv"
            with open(path, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["point"])
                for p in points:
                    writer.writerow([point_str(p)])
        print(f"{len(points)} points written to {path}")
    else:
        for p in points:
            print(point_str(p))
    return 0


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="gcdbound",
        description="generalized-GCD height bound toolkit (exact arithmetic)")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="optional JSON config file; "
                        "command line flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)
    parser.subcommand_parsers = {}

    p = sub.add_parser("profile", help="dimension/degree profile of an ideal")
    p.add_argument("--ideal", default=None)
    p.add_argument("--m0", type=int, default=None,
                   help="override the interpolation window start")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("search", help="search for a divisor certificate")
    p.add_argument("--ideal", default=None)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--r-budget", type=int, default=4, dest="r_budget")
    p.add_argument("--m-budget", type=int, default=12, dest="m_budget")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="re-verify a certificate file")
    p.add_argument("--cert", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="evaluate the bound over sample points")
    p.add_argument("--cert", default=None)
    p.add_argument("--height-bound", type=int, default=25,
                   dest="height_bound")
    p.add_argument("--mode", choices=["exhaustive", "random"],
                   default="exhaustive")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("rrlab", help="dimension growth fit tables")
    p.add_argument("--ideal", default=None)
    p.add_argument("--m", type=int, default=10,
                   help="fixed twist for the growth-in-r table")
    p.add_argument("--r-max", type=int, default=5, dest="r_max")
    p.add_argument("--growth-r", type=int, default=1, dest="growth_r",
                   help="fixed power for the growth-in-m table")
    p.add_argument("--m-max", type=int, default=10, dest="m_max")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_rrlab)

    p = sub.add_parser("sample", help="enumerate or draw sample points")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--height-bound", type=int, default=None,
                   dest="height_bound")
    p.add_argument("--mode", choices=["exhaustive", "random"],
                   default="exhaustive")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_sample)

    for name, action in sub.choices.items():
        parser.subcommand_parsers[name] = action
    return parser


def _apply_config(parser, argv):
    """Load --config JSON (if given) as parser defaults, then reparse so
    explicit flags win."""
    ns, _ = parser.parse_known_args(argv)
    if getattr(ns, "config", None):
        with open(ns.config, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise CertificateFormatError(f"bad config JSON: {exc}")
        if not isinstance(data, dict):
            raise CertificateFormatError("config must be a JSON object")
        defaults = {k.replace("-", "_"): v for k, v in data.items()}
        # subparsers own their flags and their namespace wins, so the
        # defaults must land on every one of them
        parser.set_defaults(**defaults)
        for sp in parser.subcommand_parsers.values():
            sp.set_defaults(**{k: v for k, v in defaults.items()
                               if k != "func"})
    return parser.parse_args(argv)


def main(argv=None):
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except (ParseError, IdealError) as exc:
        # ordering matters: the specific sub-errors first
        if isinstance(exc, EmptySubschemeError):
            return _fail(EXIT_EMPTY, exc)
        if isinstance(exc, BudgetExhaustedError):
            return _fail(EXIT_BUDGET, exc)
        if isinstance(exc, InconsistentProfileError):
            return _fail(EXIT_INCONSISTENT, exc)
        if isinstance(exc, CertificateFormatError):
            return _fail(EXIT_PARSE, exc)
        if isinstance(exc, InvalidProfileError):
            return _fail(EXIT_PARSE, exc)
        return _fail(EXIT_PARSE, exc)
    except AllExcludedError as exc:
        return _fail(EXIT_ALL_EXCLUDED, exc)
    except UsageError as exc:
        return _fail(EXIT_PARSE, exc)
    except FileNotFoundError as exc:
        return _fail(EXIT_PARSE, exc)
    except json.JSONDecodeError as exc:
        return _fail(EXIT_PARSE, exc)
    except ValueError as exc:
        return _fail(EXIT_OTHER, exc)


if __name__ == "__main__":
    sys.exit(main())
