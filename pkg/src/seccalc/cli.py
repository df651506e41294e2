"""Command-line interface: ``seccalc <command> DESCRIPTOR [options]``.

Exit codes: 0 ok, 1 corpus mismatch, 2 bad input, 3 oracle unsupported,
4 classifiers disagree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import corpora
from .descriptor import DescriptorError, from_descriptor, to_descriptor
from .h1 import HypothesisViolation, check_h1_sec
from .hirzebruch import check_numerically_special_fe, is_laface_special
from .lattice import ModelMismatch, arithmetic_genus, expected_dimension, virtual_dimension
from .negone import IncompleteSplitting, is_neg_one_special
from .oracle import DEFAULT_PRIME, UnsupportedSurface, effective_dimension
from .special import find_alpha_curves, greedy_configuration, homogeneous_smooth_search

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_DISAGREE = 0, 1, 2, 3, 4
ENV_PREFIX = "SECCALC_"


class InputError(Exception):
    pass


def _env(name, default, cast=int):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise InputError(f"{ENV_PREFIX}{name}={raw!r} is not valid") from None


def _emit(obj):
    print(json.dumps(obj, separators=(",", ":")))


def _parse(text):
    try:
        L = from_descriptor(text)
    except (DescriptorError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    if any(m < 0 for m in L.mults):
        raise InputError("multiplicities of a linear system must be nonnegative")
    return L


def _oracle_opts(args):
    return {"seed": args.seed, "trials": args.trials, "prime": args.prime}


# ---------------------------------------------------------------------------
# commands


def cmd_vdim(args):
    L = _parse(args.descriptor)
    v = virtual_dimension(L)
    if args.pretty:
        print(f"{L} on {L.surface}: virtual dimension {v}, expected {expected_dimension(L)}")
    else:
        print(v)
    return EXIT_OK


def cmd_dim(args):
    L = _parse(args.descriptor)
    try:
        rep = effective_dimension(L, **_oracle_opts(args))
    except UnsupportedSurface as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    if args.pretty:
        print(f"{L} on {L.surface}: dim {rep.dimension} (rank {rep.rank} of {rep.rows}x{rep.cols}, "
              f"h1 {rep.h1}, prime {rep.prime}, seed {rep.seed}"
              f"{', UNSTABLE' if rep.unstable else ''})")
    else:
        print(rep.dimension)
    return EXIT_OK


def cmd_genus(args):
    L = _parse(args.descriptor)
    try:
        g = arithmetic_genus(L)
    except (ModelMismatch, ValueError) as exc:
        raise InputError(str(exc)) from exc
    print(g)
    return EXIT_OK


def classify(L, opts: dict) -> dict:
    """Run every available classifier on L and return the verdict record."""
    s = L.surface
    verdict = {"system": to_descriptor(L), "nu": virtual_dimension(L),
               "epsilon": expected_dimension(L)}
    votes = []

    try:
        rep = effective_dimension(L, seed=opts["seed"], trials=opts["trials"], prime=opts["prime"])
        special = rep.dimension > verdict["epsilon"]
        verdict["oracle"] = {"dim": rep.dimension, "h1": rep.h1, "prime": rep.prime,
                             "seed": rep.seed, "special": special, "unstable": rep.unstable}
        votes.append(special)
    except UnsupportedSurface:
        verdict["oracle"] = None

    components = []
    if s.kind == "P" and s.n == 2:
        try:
            special, split = is_neg_one_special(L, opts["neg_one_bound"])
            components = [C for C, _ in split.components]
            verdict["hh"] = {"special": special,
                             "splitting": [{"curve": to_descriptor(C), "N": N}
                                           for C, N in split.components],
                             "residual": to_descriptor(split.residual)}
            votes.append(special)
        except IncompleteSplitting as exc:
            verdict["hh"] = {"special": None, "error": str(exc)}
    elif s.kind == "Hirzebruch":
        special, red = is_laface_special(L)
        components = [ev.curve for ev in red.steps]
        verdict["hh"] = {"special": special,
                         "splitting": [{"curve": to_descriptor(ev.curve), "N": ev.t,
                                        "kind": ev.kind} for ev in red.steps],
                         "residual": to_descriptor(red.residual)}
        votes.append(special)
    else:
        verdict["hh"] = None

    config = None
    if s.kind == "P" and s.n == 2:
        config = greedy_configuration(L, opts["e_bound"], opts["c_bound"], opts["depth"])
    elif s.kind == "Hirzebruch":
        config = check_numerically_special_fe(L, depth=opts["depth"])
    if s.is_rational and s.is_surface:
        verdict["nsec"] = {"certificate": None if config is None else [
            {"curve": to_descriptor(Y), "alpha": a, "trace": list(t)} for Y, a, t in config.steps]}
        votes.append(config is not None)
    else:
        verdict["nsec"] = None

    if s.is_rational and s.is_surface:
        found = None
        seen = set()
        for C in components:
            if C in seen or C == L:
                continue
            seen.add(C)
            try:
                cert = check_h1_sec(L, C, evidence="oracle",
                                    oracle_options={k: opts[k] for k in ("seed", "trials", "prime")})
            except (HypothesisViolation, ValueError):
                continue
            if cert.accepted:
                found = {"curve": to_descriptor(C), "degree": cert.restricted_degree,
                         "genus": cert.genus, "h0": cert.h0_restricted, "h1": cert.h1_restricted,
                         "h0_residual": cert.h0_residual,
                         "convention_dependent": cert.convention_dependent}
                break
        verdict["csec"] = {"certificate": found}
        votes.append(found is not None)
    else:
        verdict["csec"] = None

    verdict["agree"] = len(set(votes)) <= 1
    return verdict


def _classify_worker(payload):
    desc, opts = payload
    return classify(from_descriptor(desc), opts)


def _classify_opts(args):
    return {"seed": args.seed, "trials": args.trials, "prime": args.prime,
            "neg_one_bound": args.neg_one_bound, "depth": args.depth,
            "e_bound": args.e_bound, "c_bound": args.c_bound}


def _map(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))  # map keeps input order


def cmd_classify(args):
    systems = [_parse(d) for d in args.descriptor]
    opts = _classify_opts(args)
    results = _map(_classify_worker, [(to_descriptor(L), opts) for L in systems], args.jobs)
    for v in results:
        if args.pretty:
            _pretty_verdict(v)
        else:
            _emit(v)
    return EXIT_OK if all(v["agree"] for v in results) else EXIT_DISAGREE


def _pretty_verdict(v):
    L = from_descriptor(v["system"])
    oracle = v["oracle"]
    rows = [("system", f"{L} on {L.surface}"), ("nu / epsilon", f"{v['nu']} / {v['epsilon']}"),
            ("oracle dim", "n/a" if oracle is None else f"{oracle['dim']} (h1 {oracle['h1']})"),
            ("(-1)-special", "n/a" if v["hh"] is None else str(v["hh"]["special"])),
            ("NSEC", "n/a" if v["nsec"] is None else
             ("none" if v["nsec"]["certificate"] is None else
              " + ".join(f"{c['alpha']}*{from_descriptor(c['curve'])}"
                         for c in v["nsec"]["certificate"]))),
            ("CSEC", "n/a" if v["csec"] is None else
             ("none" if v["csec"]["certificate"] is None else
              str(from_descriptor(v["csec"]["certificate"]["curve"])))),
            ("agree", str(v["agree"]))]
    width = max(len(k) for k, _ in rows)
    for k, val in rows:
        print(f"{k:<{width}}  {val}")
    print()


def check_entry(entry, opts) -> dict:
    L = from_descriptor(entry["descriptor"])
    exp = entry.get("expected", {})
    got = {"vdim": virtual_dimension(L)}
    try:
        rep = effective_dimension(L, seed=opts["seed"], trials=opts["trials"], prime=opts["prime"])
        got["dim"] = rep.dimension
        got["special"] = rep.dimension > expected_dimension(L)
    except UnsupportedSurface:
        pass
    mismatches = sorted(k for k in exp if k in got and got[k] != exp[k])
    return {"label": entry.get("label", str(L)), "expected": exp, "got": got,
            "ok": not mismatches, "mismatches": mismatches}


def _check_worker(payload):
    entry, opts = payload
    return check_entry(entry, opts)


def cmd_corpus(args):
    try:
        entries = corpora.load(args.path)
        for e in entries:
            from_descriptor(e["descriptor"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read corpus {args.path}: {exc}") from exc
    opts = {"seed": args.seed, "trials": args.trials, "prime": args.prime}
    results = _map(_check_worker, [(e, opts) for e in entries], args.jobs)
    bad = [r for r in results if not r["ok"]]
    for r in results:
        if args.pretty:
            flag = "ok  " if r["ok"] else "FAIL"
            print(f"{flag} {r['label']}: expected {r['expected']} got {r['got']}")
        else:
            _emit(r)
    summary = {"checked": len(results), "mismatches": len(bad)}
    if args.pretty:
        print(f"{len(results)} checked, {len(bad)} mismatches")
    else:
        _emit(summary)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_search(args):
    L = _parse(args.descriptor)
    s = L.surface
    if s.kind == "P" and s.n == 2:
        certs = find_alpha_curves(L, args.e_bound, args.c_bound)
        config = greedy_configuration(L, args.e_bound, args.c_bound, args.depth)
    elif s.kind == "Hirzebruch":
        certs = []
        config = check_numerically_special_fe(L, depth=args.depth)
    else:
        print(f"error: no curve search on {s}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    out = {"system": to_descriptor(L),
           "certificates": [{"curve": to_descriptor(c.curve), "alpha": c.alpha,
                             "trace": list(c.nu_trace), "curve_check": c.curve_check}
                            for c in certs],
           "configuration": None if config is None else [
               {"curve": to_descriptor(Y), "alpha": a} for Y, a, _ in config.steps]}
    if args.pretty:
        print(f"{L}: {len(certs)} special effect curve(s)")
        for c in certs:
            print(f"  {c.alpha}*{c.curve}  trace {list(c.nu_trace)}")
        if config is not None:
            print("  configuration: " + " + ".join(f"{a}*{Y}" for Y, a, _ in config.steps))
    else:
        _emit(out)
    return EXIT_OK


def cmd_enumerate(args):
    fams = homogeneous_smooth_search(args.e_max, args.h_max, args.m_max, args.d_max)
    for f in fams:
        ranges = {str(m): list(f.d_range(m)) for m in sorted({m for m, _, _ in f.members})}
        if args.pretty:
            print(f"e={f.e} h={f.h}: {f.description}")
            for m, (lo, hi) in ranges.items():
                print(f"  m={m}: {lo} <= d <= {hi}")
        else:
            _emit({"e": f.e, "h": f.h, "description": f.description, "d_ranges": ranges})
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options (also SECCALC_<NAME> environment variables)")
    g.add_argument("--prime", type=int, default=_env("PRIME", DEFAULT_PRIME))
    g.add_argument("--seed", type=int, default=_env("SEED", 0))
    g.add_argument("--trials", type=int, default=_env("TRIALS", 3))
    g.add_argument("--neg-one-bound", type=int, default=_env("NEG_ONE_BOUND", 10))
    g.add_argument("--depth", type=int, default=_env("DEPTH", 8))
    g.add_argument("--jobs", type=int, default=_env("JOBS", 1))
    g.add_argument("--pretty", action="store_true", default=bool(_env("PRETTY", 0)))

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--e-bound", type=int, default=4)
    bounds.add_argument("--c-bound", type=int, default=2)

    parser = argparse.ArgumentParser(prog="seccalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, help_ in (("vdim", cmd_vdim, "virtual dimension"),
                            ("dim", cmd_dim, "effective dimension from the oracle"),
                            ("genus", cmd_genus, "arithmetic genus of a curve class")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("descriptor")
        p.set_defaults(func=fn)
    p = sub.add_parser("classify", parents=[common, bounds], help="run all classifiers")
    p.add_argument("descriptor", nargs="+")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("corpus", parents=[common], help="check a corpus file or bundled corpus")
    p.add_argument("path", help=f"file path or one of: {', '.join(corpora.BUNDLED)}")
    p.set_defaults(func=cmd_corpus)
    p = sub.add_parser("search", parents=[common, bounds], help="special effect curve search")
    p.add_argument("descriptor")
    p.set_defaults(func=cmd_search)
    p = sub.add_parser("enumerate", parents=[common], help="homogeneous smooth-curve families")
    p.add_argument("--e-max", type=int, default=5)
    p.add_argument("--h-max", type=int, default=12)
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--d-max", type=int, default=30)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
