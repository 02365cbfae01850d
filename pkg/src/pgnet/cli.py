"""Command-line front end.

Subcommands: generate (write simulated networks plus tail fits), table1
(simulation study comparing fitted and predicted exponents across models),
theory (stationary predictions, optional expected-distribution evolution),
fit (posterior sampling for an observed network), distplot (averaged degree
distribution of saved networks with the fitted tail, ready for plotting).

Exit codes: 0 success, 2 usage or invalid parameters, 3 file I/O or format
problems, 4 numeric failures.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .errors import (
    ChainInitError,
    GraphFormatError,
    NumericError,
    ParamError,
    PgnetError,
)
from .estimate import average_distribution, estimate_gamma_ml, fit_distribution
from .generate import RngSpec, generate_ba, generate_pg, generate_pg_binomial
from .graph import DegreeHistogram, degree_histogram, read_graph, write_graph
from .infer import McmcConfig, mcmc_theta
from .params import ModelParams
from .theory import TheoryPrediction, evolve_master_equation, write_distribution_csv

TABLE1_ROWS = (
    # label, model, a, b, lam, m
    ("ba-m1", "ba", None, None, None, 1),
    ("pg-a0-b0-l1", "pg", 0.0, 0.0, 1.0, None),
    ("pg-a-0.9-b0.1-l1", "pg", -0.9, 0.1, 1.0, None),
    ("pg-a-0.9-b0.1-l3", "pg", -0.9, 0.1, 3.0, None),
    ("pg-a0.5-b0.5-l3", "pg", 0.5, 0.5, 3.0, None),
)


def _pmap(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _make_graph(model, a, b, lam, m, n, seed, stream):
    rng = RngSpec(seed, stream)
    if model == "ba":
        return generate_ba(None, int(m), n, rng)
    params = ModelParams(a=a, b=b, lam=lam)
    if model == "pg":
        return generate_pg(None, params, n, rng)
    if model == "pg-binomial":
        return generate_pg_binomial(None, params, n, rng)
    raise ParamError(f"unknown model {model!r}")


def _sim_hist(task):
    # worker: one replicate -> (degree counts, zero-degree fraction, edges)
    model, a, b, lam, m, n, seed, stream = task
    g = _make_graph(model, a, b, lam, m, n, seed, stream)
    h = degree_histogram(g)
    return tuple(sorted(h.counts.items())), h.p(0), g.num_edges


def _gen_rep(task):
    model, a, b, lam, m, n, seed, rep, kmin, outdir = task
    g = _make_graph(model, a, b, lam, m, n, seed, rep)
    gpath = f"{outdir}/graph_{rep:04d}.txt"
    fpath = f"{outdir}/fit_{rep:04d}.json"
    write_graph(g, gpath)
    try:
        fit = estimate_gamma_ml(degree_histogram(g), k_min=kmin).as_dict()
    except PgnetError as exc:
        fit = {"error": str(exc)}
    with open(fpath, "w") as fh:
        json.dump(fit, fh, sort_keys=True)
        fh.write("\n")
    return rep, gpath, g.num_nodes, g.num_edges, fit.get("gamma_hat")


def cmd_generate(args):
    os.makedirs(args.out, exist_ok=True)
    tasks = [
        (args.model, args.a, args.b, args.lam, args.m, args.n, args.seed, rep, args.kmin, args.out)
        for rep in range(args.nsim)
    ]
    for rep, gpath, nodes, edges, gamma in _pmap(_gen_rep, tasks, args.jobs):
        gtxt = "fit-failed" if gamma is None else f"gamma_hat={gamma:.4f}"
        print(f"wrote {gpath} nodes={nodes} edges={edges} {gtxt}")
    return 0


def _row_prediction(model, a, b, lam):
    if model == "ba":
        return 3.0, 0.0
    pred = TheoryPrediction.from_params(ModelParams(a=a, b=b, lam=lam))
    return pred.gamma, pred.p0


def cmd_table1(args):
    nsim = args.nsim if args.nsim is not None else (10000 if args.paper_scale else 100)
    rows = []
    for row_idx, (label, model, a, b, lam, m) in enumerate(TABLE1_ROWS):
        tasks = [
            (model, a, b, lam, m, args.n, args.seed, row_idx * nsim + rep)
            for rep in range(nsim)
        ]
        results = _pmap(_sim_hist, tasks, args.jobs)
        hists = [DegreeHistogram(dict(items)) for items, _, _ in results]
        gammas = []
        for h in hists:
            try:
                gammas.append(estimate_gamma_ml(h, k_min=args.kmin).gamma_hat)
            except PgnetError:
                pass
        gamma_pred, p0_pred = _row_prediction(model, a, b, lam)
        gamma_avg = fit_distribution(hists, k_min=args.kmin).gamma_hat
        gamma_mean = float(np.mean(gammas)) if gammas else float("nan")
        gamma_sd = float(np.std(gammas, ddof=1)) if len(gammas) >= 2 else float("nan")
        mean_k = float(np.mean([2.0 * edges / args.n for _, _, edges in results]))
        p0_avg = float(np.mean([p0 for _, p0, _ in results]))
        rows.append(
            {
                "model": label,
                "a": a,
                "b": b,
                "lambda": lam,
                "m": m,
                "mean_k": mean_k,
                "gamma_mean": gamma_mean,
                "gamma_sd": gamma_sd,
                "gamma_avg": gamma_avg,
                "gamma_pred": gamma_pred,
                "p0_pred": p0_pred,
                "p0_avg": p0_avg,
            }
        )

    cols = ("model", "a", "b", "lambda", "m", "mean_k", "gamma_mean", "gamma_sd",
            "gamma_avg", "gamma_pred", "p0_pred", "p0_avg")
    with open(args.out, "w") as fh:
        fh.write(f"# n={args.n} nsim={nsim} kmin={args.kmin} seed={args.seed}\n")
        fh.write(",".join(cols) + "\n")
        for r in rows:
            cells = []
            for c in cols:
                v = r[c]
                cells.append("" if v is None else (v if isinstance(v, str) else repr(float(v))))
            fh.write(",".join(cells) + "\n")

    hdr = (f"{'model':<18} {'mean_k':>7} {'gamma_mean':>10} {'gamma_sd':>9} "
           f"{'gamma_avg':>10} {'gamma_pred':>10} {'p0_pred':>8} {'p0_avg':>8}")
    print(hdr)
    for r in rows:
        print(
            f"{r['model']:<18} {r['mean_k']:>7.3f} {r['gamma_mean']:>10.4f} "
            f"{r['gamma_sd']:>9.4f} {r['gamma_avg']:>10.4f} {r['gamma_pred']:>10.4f} "
            f"{r['p0_pred']:>8.4f} {r['p0_avg']:>8.4f}"
        )
    print(f"wrote {args.out}")
    return 0


def cmd_theory(args):
    params = ModelParams(a=args.a, b=args.b, lam=args.lam)
    pred = TheoryPrediction.from_params(params)
    out = {"p0": pred.p0, "gamma": pred.gamma, "mean_degree": pred.mean_degree}
    print(json.dumps(out, sort_keys=True))
    if args.evolve is not None:
        dist = evolve_master_equation(params, None, args.evolve, k_max=args.kmax)
        write_distribution_csv(dist, args.out, params=params)
        print(f"wrote {args.out}")
    return 0


def cmd_fit(args):
    g = read_graph(args.graph)
    chain_path = f"{args.out}.chain.jsonl"
    summary_path = f"{args.out}.summary.json"
    base = {
        "n_nodes": g.num_nodes,
        "n_edges": g.num_edges,
        "lock_ab": bool(args.lock_ab),
        "iters": args.iters,
        "burn_in": args.burnin,
        "thin": args.thin,
    }
    if args.iters == 0:
        with open(chain_path, "w"):
            pass
        summary = dict(base, n=0)
        chain = None
    else:
        cfg = McmcConfig(
            n_iter=args.iters,
            burn_in=args.burnin,
            thin=args.thin,
            swap_moves_per_iter=args.swap_moves,
            sigma_every=args.sigma_every,
            lock_ab=bool(args.lock_ab),
            record_sigma=bool(args.save_sigma),
            rng=RngSpec(args.seed),
        )
        chain = mcmc_theta(g, cfg)
        with open(chain_path, "w") as fh:
            for i in range(len(chain)):
                rec = {
                    "iter": int(chain.iters[i]),
                    "a": float(chain.a[i]),
                    "b": float(chain.b[i]),
                    "lambda": float(chain.lam[i]),
                    "log_post": float(chain.log_post[i]),
                }
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        summary = dict(base, **chain.summary())
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, sort_keys=True, indent=2)
        fh.write("\n")
    if args.save_sigma and chain is not None:
        with open(f"{args.out}.sigma.jsonl", "w") as fh:
            for i in range(len(chain)):
                rec = {"iter": int(chain.iters[i]),
                       "order": [int(x) for x in chain.sigma[i]]}
                fh.write(json.dumps(rec) + "\n")
    n_rec = 0 if chain is None else len(chain)
    print(f"recorded {n_rec} samples -> {chain_path}")
    if chain is not None:
        s = chain.summary()
        print(
            f"posterior means: a={s['mean_a']:.4f} b={s['mean_b']:.4f} "
            f"lambda={s['mean_lam']:.4f} accept_theta={s['accept_theta']:.3f}"
        )
    return 0


def _expand_graph_paths(paths):
    out = []
    for p in paths:
        if os.path.isdir(p):
            names = sorted(x for x in os.listdir(p) if x.startswith("graph_") and x.endswith(".txt"))
            out.extend(os.path.join(p, x) for x in names)
        else:
            out.append(p)
    return out


def cmd_distplot(args):
    files = _expand_graph_paths(args.paths)
    if not files:
        raise ParamError("no input networks; pass graph files or directories holding graph_*.txt")
    hists = [degree_histogram(read_graph(f)) for f in files]
    dist = average_distribution(hists)
    fit = fit_distribution(hists, k_min=args.kmin)
    gam = fit.gamma_hat
    tail_mass = float(sum(dist.p(k) for k in range(args.kmin, dist.kmax + 1)))
    with open(args.out, "w") as fh:
        fh.write(f"# files={len(files)} t={dist.t}\n")
        fh.write(f"# gamma_hat={gam!r} k_min={args.kmin} n_tail={fit.n_tail} tail_mass={tail_mass!r}\n")
        fh.write("k,p_k,fit\n")
        for k in range(dist.kmax + 1):
            pk = dist.p(k)
            if k >= args.kmin:
                fitv = tail_mass * (gam - 1.0) / args.kmin * (k / args.kmin) ** (-gam)
                fh.write(f"{k},{pk!r},{fitv!r}\n")
            else:
                fh.write(f"{k},{pk!r},\n")
    print(f"fitted gamma_hat={gam:.4f} (k_min={args.kmin}, n_tail={fit.n_tail})")
    print(f"wrote {args.out}")
    return 0


def _add_model_args(p):
    p.add_argument("--model", choices=("pg", "ba", "pg-binomial"), default="pg")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--m", type=int, default=1, help="edges per node (ba model)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pgnet",
        description="Poisson-growth preferential attachment: simulate, predict, fit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("generate", help="write simulated networks and tail fits")
    _add_model_args(p)
    p.add_argument("--n", type=int, default=5000, help="nodes per network")
    p.add_argument("--nsim", type=int, default=1, help="number of replicates")
    p.add_argument("--kmin", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--config", default=None, help="key=value defaults file")
    p.set_defaults(func=cmd_generate)
    subs["generate"] = p

    p = sub.add_parser("table1", help="simulation study across the model zoo")
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--nsim", type=int, default=None, help="replicates per row (default 100)")
    p.add_argument("--paper-scale", action="store_true", help="10000 replicates per row")
    p.add_argument("--kmin", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="table1.csv")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_table1)
    subs["table1"] = p

    p = sub.add_parser("theory", help="stationary predictions, optional evolution")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--evolve", type=int, default=None, metavar="T",
                   help="march expected counts to T nodes and write a CSV")
    p.add_argument("--kmax", type=int, default=2000)
    p.add_argument("--out", default="evolve.csv")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_theory)
    subs["theory"] = p

    p = sub.add_parser("fit", help="posterior sampling for an observed network")
    p.add_argument("graph", help="network file (header 'N <count>', one edge copy per line)")
    p.add_argument("--iters", type=int, default=5000)
    p.add_argument("--burnin", type=int, default=0)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--swap-moves", type=int, default=10)
    p.add_argument("--sigma-every", type=int, default=1)
    p.add_argument("--lock-ab", action="store_true", help="tie a = b")
    p.add_argument("--save-sigma", action="store_true",
                   help="write the arrival order of each retained sample")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="fit", help="output path prefix")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_fit)
    subs["fit"] = p

    p = sub.add_parser("distplot", help="averaged degree distribution with fitted tail")
    p.add_argument("paths", nargs="*",
                   help="network files or directories holding graph_*.txt")
    p.add_argument("--kmin", type=int, default=10)
    p.add_argument("--out", default="dist.csv")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_distplot)
    subs["distplot"] = p

    return parser, subs


def _coerce_config_value(action, key, value):
    if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
        low = value.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ParamError(f"config key {key!r} expects a boolean, got {value!r}")
    if action.type is not None:
        try:
            return action.type(value)
        except ValueError:
            raise ParamError(f"config key {key!r}: cannot parse {value!r}") from None
    return value


def _apply_config(subparser, path):
    actions = {}
    for act in subparser._actions:
        actions[act.dest] = act
        for opt in act.option_strings:
            actions[opt.lstrip("-").replace("-", "_")] = act
    defaults = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParamError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            name = key.strip().replace("-", "_")
            if name not in actions or actions[name].dest in ("help", "config", "func"):
                raise ParamError(f"{path}:{lineno}: unknown config key {key.strip()!r}")
            act = actions[name]
            if act.choices and value.strip() not in act.choices:
                raise ParamError(
                    f"{path}:{lineno}: {key.strip()!r} must be one of {sorted(act.choices)}"
                )
            defaults[act.dest] = _coerce_config_value(act, key.strip(), value.strip())
    subparser.set_defaults(**defaults)


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, subs = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "config", None):
            # config supplies defaults; explicit flags win on the re-parse
            _apply_config(subs[args.command], args.config)
            args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        if code in (0, None):
            return 0
        return code if isinstance(code, int) else 2
    except GraphFormatError as exc:
        print(f"pgnet: error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"pgnet: error: {exc}", file=sys.stderr)
        return 3
    except (NumericError, ChainInitError) as exc:
        print(f"pgnet: error: {exc}", file=sys.stderr)
        return 4
    except (PgnetError, ValueError) as exc:
        print(f"pgnet: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
