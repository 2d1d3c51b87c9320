"""Command-line front end.

Exit codes: 0 ok, 2 usage or unreadable input, 3 invalid state,
4 self-test regression failure.
"""
import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__, bloch, criteria, states
from .errors import ConsistencyError, DimensionError, DomainError, InvalidStateError
from .io import Report, StateFile, StateFileError, rows_to_csv

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_REGRESSION = 0, 2, 3, 4

RULE_THRESHOLDS = {
    "not_fully_separable": None,  # min over the three case-(i) rules
    "not_separable_1_23": ("norm_1_23", "1_23"),
    "not_separable_2_13": ("norm_2_13", "2_13"),
    "not_separable_3_12": ("norm_3_12", "3_12"),
    "gme_detected": ("t_value", None),
}
_EXAMPLE_FOR_STATE = {"w": "example1", "w3": "example2"}


class UsageError(Exception):
    pass


def _fmt(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _color(text, code, stream=sys.stdout):
    if os.environ.get("NO_COLOR") is not None or not stream.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _common(parser):
    parser.add_argument("--d", type=int, default=None, help="local dimension")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON")
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    parser.add_argument("--tol", type=float, default=None,
                        help="validation tolerance for trace, Hermiticity and PSD checks")
    parser.add_argument("--no-meta", action="store_true",
                        help="omit wall-time from machine output")
    parser.add_argument("--mid-index", type=int, default=1,
                        help="1-based generator fixed on party 2 for the 2|13 slice")


def build_parser():
    p = argparse.ArgumentParser(prog="gmebloch", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="print the separability bounds and GME threshold")
    _common(b)

    a = sub.add_parser("analyze", help="evaluate all criteria on one state")
    _common(a)
    a.add_argument("--input", help="state file (JSON)")
    a.add_argument("--state", choices=sorted(states.NAMED_STATES))
    a.add_argument("--x", type=float, default=1.0, help="white-noise mixing weight")

    s = sub.add_parser("scan", help="sweep a white-noise family")
    _common(s)
    s.add_argument("--input", help="pure-state file (JSON)")
    s.add_argument("--state", choices=sorted(states.NAMED_STATES))
    s.add_argument("--x-min", type=float, default=0.0)
    s.add_argument("--x-max", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=101)

    t = sub.add_parser("selftest", help="regression fixtures and biseparable soundness probe")
    _common(t)
    t.add_argument("--trials", type=int, default=10000,
                   help="random biseparable states per bipartition")
    t.add_argument("--workers", type=int, default=1)
    return p


def _tolerances(args):
    return bloch.Tolerances() if args.tol is None else bloch.Tolerances.uniform(args.tol)


def _imag_tol(args, d):
    # Hermiticity slack of h per entry can leak up to ~dim^2 * h into a trace
    if args.tol is None:
        return bloch.IMAG_TOL
    return max(bloch.IMAG_TOL, args.tol * d**6)


def _config(args):
    return bloch.SliceConfig(mid_index=args.mid_index)


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_input(args, want_pure=False):
    """Return (state, descriptor) from --input or --state."""
    if bool(args.input) == bool(args.state):
        raise UsageError("give exactly one of --input or --state")
    if args.input:
        sf = StateFile.load(args.input)
        if args.d is not None and args.d != sf.d:
            raise UsageError(f"--d {args.d} disagrees with file d={sf.d}")
        state = sf.state(_tolerances(args))
        if want_pure and not isinstance(state, states.PureState):
            raise UsageError("scan needs a pure-state file (kind 'pure')")
        return state, {"source": "file", "path": args.input, "label": sf.label, "kind": sf.kind}
    pure = states.named_state(args.state, args.d)
    return pure, {"source": "builtin", "state": args.state}


# -- bounds ------------------------------------------------------------------

def cmd_bounds(args):
    d = 2 if args.d is None else args.d
    if d < 2:
        raise UsageError(f"--d must be >= 2, got {d}")
    table = criteria.lemma_bounds(d)
    if args.json:
        _emit(json.dumps(table.as_dict(), indent=2))
    elif args.csv:
        _emit(rows_to_csv([table.as_dict()]))
    else:
        rows = [("bipartition", "case (i)", "case (ii)")]
        for i, k in enumerate(("1|23", "2|13", "3|12"), start=1):
            rows.append((k, _fmt(getattr(table, f"b{i}_case_i")),
                         _fmt(getattr(table, f"b{i}_case_ii"))))
        _emit(f"d = {d}")
        for r in rows:
            _emit(f"  {r[0]:<12}{r[1]:>12}{r[2]:>12}")
        _emit(f"  GME threshold M = {_fmt(table.M)}")
    return EXIT_OK


# -- analyze -----------------------------------------------------------------

def cmd_analyze(args):
    start = time.perf_counter()
    state, desc = _load_input(args)
    if args.state:
        desc["x"] = args.x
        rho = states.white_noise(state, args.x)
    else:
        rho = state.density() if isinstance(state, states.PureState) else state
    desc["d"] = rho.d
    crit = criteria.evaluate(rho, _config(args), _imag_tol(args, rho.d))
    report = Report(desc, crit, wall_time=time.perf_counter() - start, seeds=[])
    meta = not args.no_meta
    if args.json:
        _emit(report.to_json(meta))
    elif args.csv:
        row = report.flat()
        if not meta:
            row.pop("wall_time", None)
        _emit(rows_to_csv([row]))
    else:
        _print_report(report)
    return EXIT_OK


def _print_report(report):
    c = report.criterion
    src = report.input
    name = src.get("state") or src.get("path")
    extra = f", x = {_fmt(src['x'])}" if "x" in src else ""
    _emit(f"state: {name} (d = {c.d}{extra})")
    for k, v in c.norms.items():
        _emit(f"  |N^{k.replace('_', '|', 1)}|_tr = {_fmt(v)}")
    _emit(f"  T(rho) = {_fmt(c.t_value)}   M = {_fmt(c.bounds.M)}")
    for flag, v in c.verdicts.items():
        mark = _color("yes", "32") if v else "no"
        _emit(f"  {flag:<22}{mark:>5}   margin {_fmt(c.margins[flag])}")


# -- scan --------------------------------------------------------------------

def _critical_summary(fam, config):
    table = criteria.lemma_bounds(fam.d)
    out = {}
    for rule, spec in RULE_THRESHOLDS.items():
        if spec is None:
            xs = [states.critical_x(fam, f"norm_{k}", table.case_i(k), config=config)
                  for k in ("1_23", "2_13", "3_12")]
            xs = [x for x in xs if x is not None]
            out[rule] = min(xs) if xs else None
            continue
        stat, key = spec
        threshold = table.M if key is None else table.separable_bound(key)
        out[rule] = states.critical_x(fam, stat, threshold, config=config)
    return out


def cmd_scan(args):
    start = time.perf_counter()
    if not (0.0 <= args.x_min < args.x_max <= 1.0):
        raise UsageError("need 0 <= x-min < x-max <= 1")
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    pure, desc = _load_input(args, want_pure=True)
    config = _config(args)
    fam = states.family(pure, desc.get("state") or desc.get("label") or "")
    table = criteria.lemma_bounds(pure.d)
    lines = {}
    if args.state in _EXAMPLE_FOR_STATE:
        lines = criteria.reference_lines(_EXAMPLE_FOR_STATE[args.state])
    # every statistic is linear through the origin in x
    pure_norms = bloch.n_norms(pure.density(), config)
    rows = []
    for x in np.linspace(args.x_min, args.x_max, args.steps):
        x = float(x)
        n = [x * v for v in pure_norms]
        t = sum(n) / 3.0
        row = {"x": x, "norm_1_23": n[0], "norm_2_13": n[1], "norm_3_12": n[2],
               "t_value": t, "t_minus_M": t - table.M}
        for name, (slope, icpt) in lines.items():
            row[name] = slope * x + icpt
        rows.append(row)
    summary = _critical_summary(fam, config)
    desc["d"] = pure.d
    if args.json:
        doc = {"input": desc, "M": table.M, "critical_x": summary, "rows": rows,
               "reference_lines": {k: list(v) for k, v in lines.items()},
               "version": __version__}
        if not args.no_meta:
            doc["wall_time"] = time.perf_counter() - start
        _emit(json.dumps(doc, indent=2))
    elif args.csv:
        comments = [f"critical_x {k} {v!r}" for k, v in summary.items()]
        _emit(rows_to_csv(rows, comments))
    else:
        _emit(f"family: {fam.label or 'input'} (d = {pure.d}), M = {_fmt(table.M)}")
        _emit(f"  {'x':>8}{'|N1|23|':>12}{'|N2|13|':>12}{'|N3|12|':>12}{'T':>12}")
        for r in rows:
            _emit(f"  {r['x']:>8.4f}{_fmt(r['norm_1_23']):>12}{_fmt(r['norm_2_13']):>12}"
                  f"{_fmt(r['norm_3_12']):>12}{_fmt(r['t_value']):>12}")
        _emit("critical x:")
        for k, v in summary.items():
            _emit(f"  {k:<22}{'none' if v is None else f'{v:.4f}'}")
    return EXIT_OK


# -- selftest ----------------------------------------------------------------

def _phi_plus_fixture():
    phi = np.zeros(4)
    phi[0] = phi[3] = 1 / math.sqrt(2)
    return states.product_state([1, 0], phi, "1|23", 2)


def regression_fixtures():
    """(name, computed, expected, tolerance) for the worked examples."""
    w = states.w_qubit()
    fam = states.family(w, "w")
    b2 = criteria.lemma_bounds(2)
    n1, _, _ = bloch.n_norms(w.density())
    w3 = states.w3_qutrit()
    fam3 = states.family(w3, "w3")
    b3 = criteria.lemma_bounds(3)
    # published qutrit figures correspond to the 2|13 slice fixed at generator d
    alt = bloch.SliceConfig(mid_index=3)
    out = [
        ("w_norm_1_23", n1, 35.0710, 1e-3),
        ("w_t_value", bloch.t_value(w.density()), 26.4918, 1e-3),
        ("w_x_not_fully_separable", states.critical_x(fam, "norm_1_23", b2.b1_case_i), 0.4296, 5e-4),
        ("w_x_not_separable_1_23", states.critical_x(fam, "norm_1_23", b2.b1_case_ii), 0.4352, 5e-4),
        ("w_x_gme", states.critical_x(fam, "t_value", b2.M), 0.5762, 5e-4),
        ("M_d3", b3.M, 27.6257, 1e-3),
        ("w3_t_value", bloch.t_value(w3.density()), 35.5184, 1e-3),
        ("w3_t_value_mid_index_3", bloch.t_value(w3.density(), alt), 34.5797, 1e-3),
        ("w3_x_gme_mid_index_3", states.critical_x(fam3, "t_value", b3.M, config=alt),
         0.798899, 1e-4),
        ("phi_plus_norm_1_23", bloch.n_norms(_phi_plus_fixture().density())[0], 45.0, 1e-9),
    ]
    return out


def cmd_selftest(args):
    start = time.perf_counter()
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    if args.workers < 1:
        raise UsageError(f"--workers must be >= 1, got {args.workers}")
    d = 2 if args.d is None else args.d
    if d < 2:
        raise UsageError(f"--d must be >= 2, got {d}")
    regressions = []
    for name, got, want, tol in regression_fixtures():
        ok = got is not None and abs(got - want) <= tol
        regressions.append({"name": name, "value": got, "expected": want,
                            "tolerance": tol, "passed": ok})
    inject = [("1|23", _phi_plus_fixture())] if d == 2 else []
    probe = criteria.soundness_probe(d, args.trials, seed=args.seed, workers=args.workers,
                                     inject=inject, config=_config(args))
    failed = [r["name"] for r in regressions if not r["passed"]]
    if args.json:
        doc = {
            "regressions": regressions,
            "probe": {"d": d, "trials": args.trials, "seed": args.seed,
                      "bounds": probe.bounds.as_dict(), "summary": probe.summary(),
                      "findings": [vars(f) for f in probe.findings]},
            "version": __version__, "seeds": [args.seed],
        }
        if not args.no_meta:
            doc["wall_time"] = time.perf_counter() - start
        _emit(json.dumps(doc, indent=2))
    elif args.csv:
        _emit(rows_to_csv(regressions))
    else:
        _emit("regression fixtures:")
        for r in regressions:
            mark = _color("pass", "32") if r["passed"] else _color("FAIL", "31")
            _emit(f"  {mark}  {r['name']:<26}{_fmt(r['value']):>12}  "
                  f"(expected {_fmt(r['expected'])} +/- {r['tolerance']:g})")
        _emit(f"biseparable probe: d = {d}, {args.trials} trials per bipartition, seed {args.seed}")
        for bp, s in probe.summary().items():
            _emit(f"  {bp}: max |N| = {_fmt(s['max_norm'])} (bound {_fmt(s['bound'])}), "
                  f"max T = {_fmt(s['max_t_value'])} (M {_fmt(s['M'])}), "
                  f"{s['n_findings']} states exceed")
        injected = [f for f in probe.findings if f.trial == -1]
        for f in injected:
            _emit(f"  injected |0>(x)Phi+ across {f.bipartition}: |N^1|23| = "
                  f"{_fmt(f.norms['1_23'])}, exceeds {', '.join(f.exceeded)}")
    if failed:
        print(f"regression failures: {', '.join(failed)}", file=sys.stderr)
        return EXIT_REGRESSION
    return EXIT_OK


COMMANDS = {"bounds": cmd_bounds, "analyze": cmd_analyze, "scan": cmd_scan,
            "selftest": cmd_selftest}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidStateError as exc:
        print(f"invalid state ({exc.check}): {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConsistencyError as exc:
        print(f"invalid state (hermiticity): {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, StateFileError, DimensionError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
