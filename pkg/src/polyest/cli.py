"""Command-line front end.

Subcommands: ``fingerprint``, ``support``, ``entropy``, ``distinct`` and
``simulate``. A usage error exits with status 2; failing data or
numerics exit with 1. Every output embeds the resolved
configuration, defaults included.
"""

import argparse
import csv
import io
import json
import math
import sys
import warnings

from . import __version__
from .distinct import DistinctConfig, estimate_distinct
from .entropy import EntropyConfig, empirical_entropy, entropy_record, miller_madow
from .exceptions import PolyestError
from .fingerprints import parse_input, write_fingerprint
from .sim import ESTIMATORS, EstimatorSpec, ExperimentSpec, run_trials
from .support import (
    SupportConfig,
    apply_linear,
    chao1_support,
    chebyshev_support_coeffs,
    chebyshev_support_coeffs_adaptive,
    efron_thisted_support,
    good_toulmin_support,
    good_turing_support,
    plugin_support,
)

SUPPORT_ESTIMATORS = [
    "chebyshev", "chebyshev-adaptive", "plugin", "good-turing", "chao1",
    "good-toulmin", "efron-thisted",
]
ENTROPY_ESTIMATORS = ["polynomial", "plugin", "miller-madow"]


class UsageError(Exception):
    pass


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _positive_float(s):
    v = float(s)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return v


def _int_list(s):
    try:
        vals = [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("sample sizes must be positive")
    return vals


def _add_io(p, inputs=True):
    if inputs:
        p.add_argument("--input", required=True, help="input file (- reads stdin)")
        p.add_argument("--format", choices=["counts", "fingerprint", "text"], default="counts")
        p.add_argument("--n", type=_positive_int, help="declared sample size (validated)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--output-format", choices=["json", "csv"], default="json")
    p.add_argument("--config", help="file of 'flag = value' lines")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polyest",
        description="Estimate symmetric properties of a distribution from a sample.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("fingerprint", help="compute the fingerprint of a sample")
    _add_io(p)
    p.set_defaults(output_format="fingerprint")
    p.add_argument("--as-json", action="store_true", help="emit JSON instead of 'j Phi_j' lines")

    p = subs.add_parser("support", help="estimate the support size")
    _add_io(p)
    p.add_argument("--estimator", choices=SUPPORT_ESTIMATORS, default="chebyshev")
    p.add_argument("--k", type=_positive_int, help="1/k lower-bounds every nonzero mass")
    p.add_argument("--c0", type=_positive_float, default=0.45)
    p.add_argument("--c1", type=_positive_float, default=0.5)
    p.add_argument("--adaptive", action="store_true", help="k-agnostic variant (needs --eps)")
    p.add_argument("--eps", type=_positive_float, help="relative accuracy for --adaptive")
    p.add_argument("--t", type=_positive_float, help="extrapolation ratio (good-toulmin, efron-thisted)")
    p.add_argument("--J", type=_positive_int, help="truncation for efron-thisted")

    p = subs.add_parser("entropy", help="estimate Shannon entropy")
    _add_io(p)
    p.add_argument("--estimator", choices=ENTROPY_ESTIMATORS, default="polynomial")
    p.add_argument("--k", type=_positive_int, help="alphabet size bound")
    p.add_argument("--c0", type=_positive_float, default=1.6)
    p.add_argument("--c1", type=_positive_float, default=3.5)
    p.add_argument("--c2", type=_positive_float, default=1.6)
    p.add_argument("--split", action="store_true", help="sample splitting for branch selection")
    p.add_argument("--adaptive", action="store_true", help="replace ln k by ln n")
    p.add_argument("--seed", type=int, default=0, help="seed for the splitting coins")
    p.add_argument("--bits", action="store_true", help="report in bits instead of nats")

    p = subs.add_parser("distinct", help="distinct elements in a k-ball urn")
    _add_io(p)
    p.add_argument("--k", type=_positive_int, required=True, help="number of balls in the urn")
    p.add_argument("--alpha", type=_positive_float, required=True)
    p.add_argument("--beta", type=_positive_float, required=True)
    p.add_argument("--n-expected", type=_positive_float,
                   help="expected sample size (default: observed n)")

    p = subs.add_parser("simulate", help="Monte Carlo RMSE table on a synthetic distribution")
    _add_io(p, inputs=False)
    p.set_defaults(output_format="csv")
    p.add_argument("--family", choices=["uniform", "zipf", "geo-zipf-mix"], required=True)
    p.add_argument("--k", type=_positive_int, required=True, help="support size")
    p.add_argument("--zipf-alpha", type=_positive_float, default=1.0)
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated sample sizes")
    p.add_argument("--trials", type=_positive_int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["iid", "poissonized"], default="iid")
    p.add_argument("--estimators", default="plugin,chebyshev,good-turing,chao1",
                   help=f"comma-separated subset of {','.join(ESTIMATORS)}")
    p.add_argument("--est-k", type=_positive_int,
                   help="k handed to the estimators (default: round(1/min mass))")
    p.add_argument("--c0", type=_positive_float)
    p.add_argument("--c1", type=_positive_float)
    p.add_argument("--c2", type=_positive_float)
    p.add_argument("--eps", type=_positive_float)
    p.add_argument("--t", type=_positive_float)
    p.add_argument("--J", type=_positive_int)
    p.add_argument("--alpha", type=_positive_float)
    p.add_argument("--beta", type=_positive_float)
    p.add_argument("--workers", type=_positive_int, default=1)
    return parser


def _read_config(path):
    """``key = value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = val
    return out


def _apply_config(sub, path):
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in _read_config(path).items():
        if key not in actions or key in ("help", "config"):
            raise UsageError(f"unknown config key {key!r}")
        act = actions[key]
        if isinstance(act, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
            continue
        try:
            val = act.type(raw) if act.type else raw
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"config key {key!r}: {exc}") from None
        if act.choices and val not in act.choices:
            raise UsageError(f"config key {key!r}: {val!r} not in {list(act.choices)}")
        defaults[key] = val
        act.required = False
    sub.set_defaults(**defaults)


def _resolved(args):
    return {k: v for k, v in vars(args).items() if k not in ("func",)}


def _read(args, histogram=False):
    src = sys.stdin.buffer if args.input == "-" else args.input
    return parse_input(src, args.format, n=args.n, histogram=histogram)


def _records_csv(records):
    keys = []
    for r in records:
        keys += [k for k in r if k not in keys]
    buf = io.StringIO()
    w = csv.DictWriter(buf, keys, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: ";".join(v) if isinstance(v, list) else v for k, v in r.items()})
    return buf.getvalue()


def _emit(args, records, text=None):
    if text is None:
        if args.output_format == "csv":
            text = _records_csv(records)
        else:
            text = json.dumps({"config": _resolved(args), "results": records}, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        if args.output_format == "csv":
            with open(args.output + ".meta.json", "w", encoding="utf-8") as fh:
                json.dump({"config": _resolved(args)}, fh, indent=2)
    else:
        sys.stdout.write(text)


def cmd_fingerprint(args):
    f = _read(args)
    if args.as_json:
        text = json.dumps({"config": _resolved(args), "n": f.n,
                           "phi": {str(j): v for j, v in f.phi.items()}}, indent=2) + "\n"
    else:
        text = write_fingerprint(f)
    args.output_format = "json" if args.as_json else "fingerprint"
    _emit(args, None, text)


def cmd_support(args):
    est = args.estimator
    if args.adaptive:
        est = "chebyshev-adaptive"
    if est == "chebyshev" and args.k is None:
        raise UsageError("--k is required for the chebyshev estimator (or use --adaptive --eps)")
    if est == "chebyshev-adaptive" and args.eps is None:
        raise UsageError("--eps is required for the adaptive estimator")
    if est in ("good-toulmin", "efron-thisted") and args.t is None:
        raise UsageError(f"--t is required for {est}")
    if est == "efron-thisted" and args.J is None:
        raise UsageError("--J is required for efron-thisted")
    if args.eps is not None and not args.eps < 1:
        raise UsageError("--eps must lie in (0, 1)")

    f = _read(args)
    base = {"estimator": est, "k": args.k, "n": f.n, "L": None, "l": None, "r": None,
            "c0": None, "c1": None, "warnings": []}
    if est in ("chebyshev", "chebyshev-adaptive"):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if est == "chebyshev":
                cfg = SupportConfig(k=args.k, c0=args.c0, c1=args.c1)
                e = chebyshev_support_coeffs(cfg, f.n)
            else:
                e = chebyshev_support_coeffs_adaptive(f.n, args.eps, args.c0, args.c1)
        rec = apply_linear(f, e, args.k, est).to_record()
        for w in caught:
            msg = str(w.message)
            if msg not in rec["warnings"]:
                rec["warnings"].append(msg)
    else:
        if est == "plugin":
            raw = plugin_support(f)
        elif est == "good-turing":
            raw = good_turing_support(f)
        elif est == "chao1":
            raw = chao1_support(f)
        elif est == "good-toulmin":
            raw = good_toulmin_support(f, args.t)
        else:
            raw = efron_thisted_support(f, args.t, args.J)
        rec = dict(base, raw=float(raw), estimate=raw)
        if est in ("good-toulmin", "efron-thisted"):
            rec.update(t=args.t, J=args.J)
    _emit(args, [rec])


def cmd_entropy(args):
    if args.estimator == "polynomial" and not args.adaptive and args.k is None:
        raise UsageError("--k is required for the polynomial estimator (or pass --adaptive)")
    h = _read(args, histogram=True)
    if args.estimator == "polynomial":
        cfg = EntropyConfig(k=args.k, c0=args.c0, c1=args.c1, c2=args.c2,
                            split=args.split, adaptive=args.adaptive)
        rec = entropy_record(h, cfg, seed=args.seed)
    else:
        fn = empirical_entropy if args.estimator == "plugin" else miller_madow
        rec = {"estimator": args.estimator, "k_or_n": h.n, "L": None, "beta": None,
               "T": None, "split": False, "estimate": fn(h)}
    rec["unit"] = "nats"
    if args.bits:
        rec["estimate"] = rec["estimate"] / math.log(2)
        rec["unit"] = "bits"
    _emit(args, [rec])


def cmd_distinct(args):
    f = _read(args)
    n_exp = args.n_expected if args.n_expected is not None else f.n
    if n_exp <= 0:
        raise PolyestError("empty sample and no --n-expected")
    if not args.beta > args.alpha:
        raise UsageError("--beta must exceed --alpha")
    cfg = DistinctConfig(k=args.k, n=n_exp, alpha=args.alpha, beta=args.beta)
    _emit(args, [estimate_distinct(f, cfg).to_record()])


def cmd_simulate(args):
    names = [s.strip() for s in args.estimators.split(",") if s.strip()]
    bad = [s for s in names if s not in ESTIMATORS]
    if bad:
        raise UsageError(f"unknown estimators {bad}; choose from {sorted(ESTIMATORS)}")
    if args.family == "geo-zipf-mix" and args.k % 2:
        raise UsageError("--family geo-zipf-mix needs an even --k")
    shared = {key: getattr(args, key) for key in ("c0", "c1", "c2", "eps", "t", "J", "alpha", "beta")
              if getattr(args, key) is not None}
    if args.est_k is not None:
        shared["k"] = args.est_k
    for s in names:
        if s in ("good-toulmin", "efron-thisted") and "t" not in shared:
            raise UsageError(f"--t is required for {s}")
        if s == "efron-thisted" and "J" not in shared:
            raise UsageError("--J is required for efron-thisted")
        if s == "distinct" and not ("alpha" in shared and "beta" in shared):
            raise UsageError("--alpha and --beta are required for distinct")
    ests = []
    for s in names:
        params = dict(shared)
        if ESTIMATORS[s][0] == "entropy" or s == "entropy-poly":
            for key in ("eps", "t", "J", "alpha", "beta"):
                params.pop(key, None)
        ests.append(EstimatorSpec(s, params))
    fam_params = {"alpha": args.zipf_alpha} if args.family == "zipf" else {}
    spec = ExperimentSpec(
        family=args.family, k=args.k, estimators=tuple(ests), sample_sizes=tuple(args.n),
        trials=args.trials, mode=args.mode, seed=args.seed, family_params=fam_params,
    )
    result = run_trials(spec, workers=args.workers)
    if args.output_format == "csv":
        text = result.to_csv()
    else:
        payload = json.loads(result.to_json())
        payload["config"] = _resolved(args)
        text = json.dumps(payload, indent=2) + "\n"
    _emit(args, None, text)


COMMANDS = {
    "fingerprint": cmd_fingerprint,
    "support": cmd_support,
    "entropy": cmd_entropy,
    "distinct": cmd_distinct,
    "simulate": cmd_simulate,
}


def _peek(argv):
    """Subcommand name and ``--config`` path, read before full parsing."""
    command = next((a for a in argv if not a.startswith("-")), None)
    path = None
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif a.startswith("--config="):
            path = a.split("=", 1)[1]
    return command, path


def run(argv=None):
    """Parse ``argv`` and execute; returns the exit status."""
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    subparsers = parser._subparsers._group_actions[0].choices
    command, config = _peek(argv)
    try:
        if config and command in subparsers:
            _apply_config(subparsers[command], config)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"polyest: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"polyest: error: cannot read config: {exc}", file=sys.stderr)
        return 2
    sub = subparsers[args.command]
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        sub.print_usage(sys.stderr)
        print(f"polyest {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"polyest {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (PolyestError, ValueError) as exc:
        print(f"polyest {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
