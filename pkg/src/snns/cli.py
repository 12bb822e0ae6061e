"""Command-line experiment runner.

Every subcommand writes ``run.json`` into ``--out`` plus CSV series and SVG
plots rendered from those CSVs. Exit status is 0 on success, 2 when a
classification is INCONCLUSIVE and 1 on any error.
"""

import argparse
import csv
import json
import logging
import os
import sys
from dataclasses import asdict, fields, replace

import numpy as np

from . import states
from .errors import ConfigError, ParseError, SNNSError
from .learning import INCONCLUSIVE, LearnConfig, classify, learner_for, train
from .measures import (
    capacity_bound,
    distance_measure,
    gme,
    ree_upper,
    ree_variants,
    warm_source,
    write_sweep_csv,
)
from .parallel import run_jobs
from .qmath import DensityMatrix, min_pt_eigenvalue
from .separability import PartitionSet, free, fully_separable, presets, validate
from .svg import plot_csv

log = logging.getLogger("snns")

SIZE_DEFAULTS = {"hidden": 10, "mixing": 10}

# Per-figure overrides of the learning defaults; explicit flags win.
FIGURE_DEFAULTS = {
    "werner5": {"eta": -0.75, "d": 5, "max_iters": 6000, "restarts": 5},
    "bound-ent": {"alpha_steps": 5, "max_iters": 40000, "learning_rate": 0.02, "restarts": 5,
                  "sep_iters": 8000},
    "wghz": {"p_values": [0.0, 1.0 / 3.0], "max_iters": 20000, "learning_rate": 0.02, "restarts": 3},
    "ree-variants": {"p_steps": 10, "max_iters": 4000, "restarts": 1},
    "plob": {"channel": "depolarising", "d": 2, "steps": 11, "max_iters": 6000, "restarts": 1},
}

CONFIG_KEYS = {
    "target", "partition", "mode", "d", "hidden", "mixing", "lr", "iters", "eps", "seed", "restarts",
    "jobs", "out", "family", "measure", "metric", "param", "values", "warm", "optimizer",
    "monitor_every", "init_scale", "lr_final",
}


# ---------------------------------------------------------------------------
# density-matrix files


def export_density_matrix(rho: DensityMatrix, path):
    m = np.asarray(rho.mat)
    with open(path, "w") as fh:
        json.dump({"dims": list(rho.dims), "re": np.real(m).ravel().tolist(),
                   "im": np.imag(m).ravel().tolist()}, fh)


def ingest_density_matrix(path) -> DensityMatrix:
    """Read ``{"dims": [...], "re": [...], "im": [...]}`` (row-major) and validate it.

    Raises :class:`ParseError` for malformed files and
    :class:`InvariantViolationError` naming the broken invariant otherwise.
    """
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object")
    for key in ("dims", "re"):
        if key not in data:
            raise ParseError(f"{path}: missing field {key!r}")
    try:
        dims = tuple(int(d) for d in data["dims"])
        re = np.asarray(data["re"], dtype=float).ravel()
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float).ravel()
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    n = int(np.prod(dims))
    if re.size != n * n or im.size != n * n:
        raise ParseError(f"{path}: dims {dims} need {n * n} entries, got re={re.size} im={im.size}")
    mat = (re + 1j * im).reshape(n, n)
    return DensityMatrix.from_array(mat, dims, check=True, tol_trace=1e-8)


# ---------------------------------------------------------------------------
# target specs: name[:key=value,...] or a JSON density-matrix file


def _spec_args(text):
    name, _, rest = text.partition(":")
    kw = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise ConfigError(f"target parameter {item!r} is not key=value")
        kw[key.strip()] = val.strip()
    return name.strip().lower().replace("-", "_"), kw


def _num(kw, key, default, cast=float):
    try:
        return cast(kw.pop(key, default))
    except ValueError as exc:
        raise ConfigError(f"target parameter {key}: {exc}") from exc


def parse_target(text, d=None) -> DensityMatrix:
    """Build a target state from ``name[:k=v,...]`` or load a JSON file."""
    if text.endswith(".json") or os.path.isfile(text):
        return ingest_density_matrix(text)
    name, kw = _spec_args(text)
    if name == "bell":
        out = states.phi_plus(_num(kw, "d", d or 2, int))
    elif name == "werner":
        out = states.werner(_num(kw, "eta", -0.75), _num(kw, "d", d or 5, int))
    elif name == "isotropic":
        out = states.choi(states.ChannelSpec("depolarising", _num(kw, "d", d or 2, int), _num(kw, "p", 0.0)))
    elif name in ("bound_entangled", "bound_ent"):
        out = states.bound_entangled(_num(kw, "alpha", 3.5))
    elif name == "ghz":
        out = states.depolarise(states.ghz(_num(kw, "d", d or 2, int), _num(kw, "n", 3, int)), _num(kw, "p", 0.0))
    elif name in ("w", "noisy_w"):
        out = states.noisy_w(_num(kw, "p", 0.0))
    elif name == "maximally_mixed":
        out = states.maximally_mixed((_num(kw, "d", d or 2, int),) * _num(kw, "n", 2, int))
    elif name == "choi":
        kind = kw.pop("channel", "depolarising")
        out = states.choi(states.ChannelSpec(kind, _num(kw, "d", d or 2, int), _num(kw, "param", 0.0)))
    else:
        raise ConfigError(f"unknown target {name!r}")
    if kw:
        raise ConfigError(f"unused target parameters for {name}: {sorted(kw)}")
    return out


def _with_param(text, param, value):
    return f"{text}{',' if ':' in text else ':'}{param}={float(value)!r}"


# ---------------------------------------------------------------------------
# configuration


def load_config_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    for key in data:
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}: unknown field {key!r}")
    return data


def _resolve(args, figure=None):
    """Merge figure defaults, config file and flags (later wins) into plain settings."""
    settings = {}
    if figure is not None:
        settings.update(FIGURE_DEFAULTS[figure])
    if getattr(args, "config", None):
        file_cfg = load_config_file(args.config)
        rename = {"lr": "learning_rate", "iters": "max_iters"}
        settings.update({rename.get(k, k): v for k, v in file_cfg.items()})
    for key, dest in (("lr", "learning_rate"), ("iters", "max_iters"), ("eps", "eps"),
                      ("restarts", "restarts"), ("family", "family")):
        val = getattr(args, key, None)
        if val is not None:
            settings[dest] = val
    for key in ("target", "partition", "d", "hidden", "mixing", "jobs", "out", "mode"):
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    seed = getattr(args, "seed", None)
    if seed is None:
        env = os.environ.get("SNNS_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError as exc:
                raise ConfigError(f"SNNS_SEED={env!r} is not an integer") from exc
    if seed is not None:
        settings["seed"] = seed
    return settings


def learn_config(settings) -> LearnConfig:
    names = {f.name for f in fields(LearnConfig)}
    kw = {k: v for k, v in settings.items() if k in names}
    try:
        return LearnConfig(**kw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"learning configuration: {exc}") from exc


def _partition(settings, n):
    text = settings.get("partition")
    if text is None:
        return fully_separable(n)
    if text in ("free", "FS"):
        return free(n) if text == "free" else fully_separable(n)
    K = PartitionSet.parse(text, n, settings.get("mode"))
    bad = validate(K)
    if bad:
        raise ConfigError(f"partition {text!r}: " + "; ".join(str(v) for v in bad))
    return K


def _outdir(settings, default="snns-out"):
    out = settings.get("out") or default
    os.makedirs(out, exist_ok=True)
    return out


def _write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(_clean(obj), fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def _clean(x):
    """JSON-safe copy: numpy scalars and arrays unwrapped, non-finite floats -> null."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x) if np.isfinite(x) else None
    return x


def _sizes(settings):
    return int(settings.get("hidden", SIZE_DEFAULTS["hidden"])), int(settings.get("mixing", SIZE_DEFAULTS["mixing"]))


def _plot_series(out, report, title):
    report.write_csv(os.path.join(out, "series.csv"))
    plot_csv(os.path.join(out, "series.csv"), os.path.join(out, "plot.svg"), "iter",
             ["loss", "qre", "trace_distance"], title=title, logy=True)
    plot_csv(os.path.join(out, "series.csv"), os.path.join(out, "fidelity.svg"), "iter",
             ["fidelity"], title=title)


# ---------------------------------------------------------------------------
# subcommands


def cmd_defaults(args):
    out = {"learn": asdict(LearnConfig()), "sizes": SIZE_DEFAULTS, "figures": FIGURE_DEFAULTS,
           "config_fields": sorted(CONFIG_KEYS)}
    print(json.dumps(_clean(out), indent=2, sort_keys=True))
    return 0


def cmd_learn(args):
    s = _resolve(args)
    cfg = learn_config(s)
    target = parse_target(s.get("target", "bell"), s.get("d"))
    K = _partition(s, len(target.dims))
    n_h, n_m = _sizes(s)
    a, t = learner_for(target, K, n_h, n_m, cfg.family)
    rep = train(a, t, cfg)
    out = _outdir(s)
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "partition": K.to_json(),
                                                "report": rep.to_json()})
    _plot_series(out, rep, f"learn {s.get('target', 'bell')} under {K}")
    print(f"final fidelity {rep.final_fidelity:.10f}  best {rep.best_fidelity:.10f}  "
          f"best QRE {rep.best_qre:.6g}  ({rep.iterations} iterations)")
    return 0


def cmd_classify(args):
    s = _resolve(args)
    cfg = learn_config(s)
    target = parse_target(s.get("target", "bell"), s.get("d"))
    K = _partition(s, len(target.dims))
    n_h, n_m = _sizes(s)
    res = classify(target, K, cfg, n_h, n_m, jobs=int(s.get("jobs", 1)))
    out = _outdir(s)
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "classification": res.to_json(),
                                                "masked_report": res.masked_report.to_json()})
    _plot_series(out, res.masked_report, f"masked learner under {K}")
    print(f"{res.verdict}  free F={res.free_fidelity:.8f}  masked F={res.masked_fidelity:.8f}  "
          f"F_opt={res.f_opt}")
    return res.exit_code


def _measure(kind, target, K, cfg, n_h, n_m, jobs, warm=()):
    if kind == "gme":
        return gme(target, K, cfg, n_h, jobs=jobs)
    if kind in ("trace", "bures"):
        return distance_measure(target, K, kind, cfg, n_h, n_m, jobs=jobs)
    if kind == "ree":
        return ree_upper(target, K, cfg, n_h, n_m, warm=warm, jobs=jobs)
    raise ConfigError(f"unknown measure {kind!r}")


def cmd_measure(args):
    s = _resolve(args)
    cfg = learn_config(s)
    target = parse_target(s.get("target", "bell"), s.get("d"))
    n_h, n_m = _sizes(s)
    jobs = int(s.get("jobs", 1))
    out = _outdir(s)
    kind = args.measure
    if kind == "variants":
        res = ree_variants(target, cfg, n_h, n_m, jobs=jobs)
        payload = {k: res[k].to_json() for k in ("E_R", "E_R^Gen", "E_R^W")}
        payload["ordered"] = res["ordered"]
        _write_json(os.path.join(out, "run.json"), payload)
        for k in ("E_R", "E_R^Gen", "E_R^W"):
            print(f"{k} <= {res[k].value:.6g}")
        return 0
    K = _partition(s, len(target.dims))
    est = _measure(kind, target, K, cfg, n_h, n_m, jobs)
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "estimate": est.to_json()})
    if est.report is not None:
        _plot_series(out, est.report, f"{est.measure} under {K}")
    print(f"{est.measure}[{est.partition}] {est.bound} {est.value:.8g}")
    return 0


def _grid(args_values, start=None, stop=None, steps=None):
    if args_values:
        try:
            return [float(v) for v in str(args_values).split(",")] if not isinstance(args_values, list) \
                else [float(v) for v in args_values]
        except ValueError as exc:
            raise ConfigError(f"values: {exc}") from exc
    return [float(v) for v in np.linspace(start, stop, steps)]


def _sweep_point(task):
    kind, spec, d, K, cfg, n_h, n_m = task
    return _measure(kind, parse_target(spec, d), K, cfg, n_h, n_m, 1)


def cmd_sweep(args):
    s = _resolve(args)
    cfg = learn_config(s)
    spec = s.get("target", "werner:d=3")
    param = args.param or s.get("param") or "eta"
    values = _grid(args.values or s.get("values"), args.start, args.stop, args.steps)
    n_h, n_m = _sizes(s)
    jobs = int(s.get("jobs", 1))
    kind = args.measure or s.get("measure") or "ree"
    first = parse_target(_with_param(spec, param, values[0]), s.get("d"))
    K = _partition(s, len(first.dims))
    warm = args.warm and bool(s.get("warm", True)) and kind == "ree"
    rows = []
    if warm:
        prev = None
        for v in values:
            target = parse_target(_with_param(spec, param, v), s.get("d"))
            est = _measure(kind, target, K, cfg, n_h, n_m, jobs, warm=[warm_source(prev)] if prev else [])
            rows.append((v, est))
            prev = est
            print(f"{param}={v:.6g}  {est.measure} {est.value:.8g}", flush=True)
    else:
        tasks = [(kind, _with_param(spec, param, v), s.get("d"), K, cfg, n_h, n_m) for v in values]
        for v, est in zip(values, run_jobs(_sweep_point, tasks, jobs)):
            rows.append((v, est))
            print(f"{param}={v:.6g}  {est.measure} {est.value:.8g}")
    out = _outdir(s)
    write_sweep_csv(os.path.join(out, "sweep.csv"), rows)
    plot_csv(os.path.join(out, "sweep.csv"), os.path.join(out, "plot.svg"), "sweep_param", ["value"],
             group="measure", title=f"{kind} sweep over {param}")
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "param": param,
                                                "points": [{"value": v, "estimate": e.to_json()} for v, e in rows]})
    return 0


def cmd_plot(args):
    ys = args.y.split(",")
    plot_csv(args.csv, args.out, args.x, ys, group=args.group, logy=args.logy, title=args.title or "")
    return 0


# ---------------------------------------------------------------------------
# figures


def fig_werner5(s, cfg, out):
    eta, d = float(s.get("eta", -0.75)), int(s.get("d", 5))
    n_h, n_m = _sizes(s)
    exact = states.werner_ree(eta)
    est = ree_upper(states.werner(eta, d), fully_separable(2), cfg, n_h, n_m, jobs=int(s.get("jobs", 1)))
    _plot_series(out, est.report, f"Werner d={d} eta={eta}: fully separable learner")
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "estimate": est.to_json(),
                                                "exact": exact, "error": est.value - exact})
    print(f"E_R estimate {est.value:.8f}  analytic {exact:.8f}  difference {est.value - exact:.3e}")
    return 0


def _alpha_grid(steps):
    # midpoints of (3, 4] so that 5 steps give 3.1, 3.3, ..., 3.9
    return [3.0 + (k + 0.5) / steps for k in range(steps)]


def fig_bound_ent(s, cfg, out):
    alphas = _alpha_grid(int(s.get("alpha_steps", 5)))
    n_h, n_m = _sizes(s)
    sep_cfg = replace(cfg, max_iters=int(s.get("sep_iters", cfg.max_iters)))
    rows = []
    for alpha in alphas:
        rho = states.bound_entangled(alpha)
        pt = min_pt_eigenvalue(rho, 1)
        fr = distance_measure(rho, free(2), "trace", cfg, n_h, n_m, stop_below=1e-4)
        sp = distance_measure(rho, fully_separable(2), "trace", sep_cfg, n_h, n_m, jobs=int(s.get("jobs", 1)))
        fids = sp.diagnostics["best_fidelities"]
        reached = sum(f >= cfg.f_opt for f in fids)
        rows.append((alpha, pt, fr.value, sp.value, max(fids), reached, len(fids)))
        print(f"alpha={alpha:.3f}  min PT eig {pt:.3e}  free {fr.value:.3e}  separable {sp.value:.4e}  "
              f"separable best F {max(fids):.6f} ({reached}/{len(fids)} reach F_opt)", flush=True)
    path = os.path.join(out, "series.csv")
    cols = ("alpha", "min_pt_eigenvalue", "free_trace_distance", "separable_trace_distance",
            "separable_best_fidelity", "separable_runs_reaching_fopt", "separable_runs")
    _write_rows(path, cols, rows)
    plot_csv(path, os.path.join(out, "plot.svg"), "alpha", ["separable_trace_distance", "free_trace_distance"],
             title="trace-distance bounds", logy=True)
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "rows": [dict(zip(cols, r)) for r in rows]})
    return 0


def fig_wghz(s, cfg, out):
    pv = s.get("p_values", [0.0, 1.0 / 3.0])
    n_h, n_m = _sizes(s)
    parts = {"K_GHZ": presets(3)["GHZ"][0], "K_W": presets(3)["W"]}
    rows = []
    code = 0
    for p in pv:
        for name, target in (("GHZ", states.noisy_ghz(p)), ("W", states.noisy_w(p))):
            for label, K in parts.items():
                res = classify(target, K, cfg, n_h, n_m, jobs=int(s.get("jobs", 1)))
                reached = res.masked_fidelity >= res.f_opt
                rows.append((p, name, label, res.masked_fidelity, res.free_fidelity, int(reached), res.verdict))
                print(f"p={p:.4f} {name:3s} {label:5s} masked F={res.masked_fidelity:.8f} "
                      f"{'reaches' if reached else 'fails'} F_opt  ({res.verdict})", flush=True)
                if res.verdict == INCONCLUSIVE:
                    code = 2
    path = os.path.join(out, "series.csv")
    cols = ("p", "state", "partition", "masked_fidelity", "free_fidelity", "reached", "verdict")
    _write_rows(path, cols, rows)
    # one series per (state, partition) for plotting
    series = os.path.join(out, "plot.csv")
    _write_rows(series, ("p", "series", "infidelity"),
                [(r[0], f"{r[1]} {r[2]}", max(1.0 - r[3], 1e-16)) for r in rows])
    plot_csv(series, os.path.join(out, "plot.svg"), "p", ["infidelity"], group="series",
             title="masked-learner infidelity", logy=True, markers=tuple(f"{a} {b}" for a in ("GHZ", "W") for b in parts))
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "rows": [dict(zip(cols, r)) for r in rows]})
    return code


def fig_ree_variants(s, cfg, out):
    steps = int(s.get("p_steps", 10))
    ps = [round(0.1 * k, 10) for k in range(steps)] if steps == 10 else list(np.linspace(0, 0.9, steps))
    n_h, n_m = _sizes(s)
    prev, rows, payload = None, [], []
    for p in ps:
        res = ree_variants(states.noisy_w(p), cfg, n_h, n_m, jobs=int(s.get("jobs", 1)), previous=prev)
        prev = res
        for k in ("E_R", "E_R^Gen", "E_R^W"):
            rows.append((p, res[k]))
        payload.append({"p": p, "ordered": res["ordered"], **{k: res[k].to_json() for k in ("E_R", "E_R^Gen", "E_R^W")}})
        print(f"p={p:.2f}  E_R {res['E_R'].value:.6f}  E_R^Gen {res['E_R^Gen'].value:.6f}  "
              f"E_R^W {res['E_R^W'].value:.6f}  ordered={res['ordered']}", flush=True)
    path = os.path.join(out, "sweep.csv")
    write_sweep_csv(path, rows)
    plot_csv(path, os.path.join(out, "plot.svg"), "sweep_param", ["value"], group="measure",
             title="REE bounds of noisy W states")
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "points": payload})
    return 0


def fig_plob(s, cfg, out):
    kind = s.get("channel", "depolarising")
    d = int(s.get("d", 2))
    steps = int(s.get("steps", 11))
    if kind == "depolarising":
        grid = list(np.linspace(0.0, 1.0, steps))
    elif kind == "holevo_werner":
        grid = list(np.linspace(-1.0, -0.5, steps))
    else:
        raise ConfigError(f"unknown channel {kind!r}")
    n_h, n_m = _sizes(s)
    rows, exact, prev = [], [], None
    for x in grid:
        ch = states.ChannelSpec(kind, d, float(x))
        est = capacity_bound(ch, cfg, n_h, n_m, jobs=int(s.get("jobs", 1)),
                             warm=[warm_source(prev)] if prev else [])
        prev = est
        rows.append((x, est))
        exact.append((x, states.channel_ree(ch)))
        print(f"param={x:.4f}  bound {est.value:.6f}  exact {exact[-1][1]:.6f}", flush=True)
    write_sweep_csv(os.path.join(out, "sweep.csv"), rows)
    _write_rows(os.path.join(out, "exact.csv"), ("sweep_param", "value"), exact)
    comb = os.path.join(out, "plot.csv")
    _write_rows(comb, ("sweep_param", "series", "value"),
                [(x, "exact", v) for x, v in exact] + [(x, "network", e.value) for x, e in rows])
    plot_csv(comb, os.path.join(out, "plot.svg"), "sweep_param", ["value"], group="series",
             title=f"{kind} d={d}: capacity bound", markers=("network",))
    _write_json(os.path.join(out, "run.json"), {"config": cfg.to_json(), "channel": kind, "d": d,
                                                "points": [{"param": x, "estimate": e.to_json(), "exact": v}
                                                           for (x, e), (_, v) in zip(rows, exact)]})
    return 0


def _write_rows(path, cols, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for r in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])


FIGURES = {
    "werner5": fig_werner5,
    "bound-ent": fig_bound_ent,
    "wghz": fig_wghz,
    "ree-variants": fig_ree_variants,
    "plob": fig_plob,
}


def cmd_figure(args):
    s = _resolve(args, args.name)
    for key in ("eta", "alpha_steps", "channel", "p_steps", "steps"):
        val = getattr(args, key, None)
        if val is not None:
            s[key] = val
    cfg = learn_config(s)
    out = _outdir(s, f"snns-{args.name}")
    return FIGURES[args.name](s, cfg, out)


# ---------------------------------------------------------------------------
# argument parsing


def _common(p):
    p.add_argument("--config", help="JSON file with settings (flags override it)")
    p.add_argument("--target", help="named state, e.g. werner:eta=-0.75,d=5, or a JSON density-matrix file")
    p.add_argument("--partition", help="partition set such as '1,2|3' ('free' or 'FS' also accepted)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--disjoint", dest="mode", action="store_const", const="disjoint")
    mode.add_argument("--nondisjoint", dest="mode", action="store_const", const="nondisjoint")
    p.add_argument("--d", type=int, help="local dimension")
    p.add_argument("--hidden", type=int, help="hidden pure-state units")
    p.add_argument("--mixing", type=int, help="hidden mixing units")
    p.add_argument("--family", help="ansatz family override")
    p.add_argument("--lr", type=float, help="learning rate")
    p.add_argument("--iters", type=int, help="iterations per run")
    p.add_argument("--eps", type=float, help="fidelity threshold 1 - F_opt")
    p.add_argument("--seed", type=int, help="base seed (falls back to SNNS_SEED)")
    p.add_argument("--restarts", type=int, help="independent restarts")
    p.add_argument("--jobs", type=int, help="worker processes")
    p.add_argument("--out", help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(prog="snns", description="Separable network-state entanglement toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("defaults", help="print every default setting")
    p.set_defaults(func=cmd_defaults)
    for name, func, text in (("learn", cmd_learn, "train one learner"),
                             ("classify", cmd_classify, "free vs masked learner verdict")):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.set_defaults(func=func)
    p = sub.add_parser("measure", help="estimate an entanglement measure")
    _common(p)
    p.add_argument("--measure", default="ree", choices=("gme", "trace", "bures", "ree", "variants"))
    p.set_defaults(func=cmd_measure)
    p = sub.add_parser("sweep", help="measure along a one-parameter family")
    _common(p)
    p.add_argument("--measure", choices=("gme", "trace", "bures", "ree"))
    p.add_argument("--param", help="target parameter to vary (default eta)")
    p.add_argument("--values", help="comma-separated values")
    p.add_argument("--start", type=float, default=-1.0)
    p.add_argument("--stop", type=float, default=-0.1)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--no-warm", dest="warm", action="store_false", help="independent cold starts (parallel)")
    p.set_defaults(func=cmd_sweep, warm=True)
    p = sub.add_parser("figure", help="regenerate a reference experiment")
    _common(p)
    p.add_argument("name", choices=sorted(FIGURES))
    p.add_argument("--eta", type=float)
    p.add_argument("--alpha-steps", dest="alpha_steps", type=int)
    p.add_argument("--channel", choices=("depolarising", "holevo_werner"))
    p.add_argument("--p-steps", dest="p_steps", type=int)
    p.add_argument("--steps", type=int)
    p.set_defaults(func=cmd_figure)
    p = sub.add_parser("plot", help="render an SVG from a CSV file")
    p.add_argument("csv")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True, help="comma-separated column names")
    p.add_argument("--group")
    p.add_argument("--logy", action="store_true")
    p.add_argument("--title")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (SNNSError, ValueError, OSError) as exc:
        print(f"snns: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
