"""Command-line front end.

Every computation in the library is reachable as a subcommand reading
JSON files (or building model fields from flags) and writing a table in
one of three formats.  Outputs are deterministic: canonical row order,
fixed seeds, and exact values rendered as rational strings so that
exact-mode output never contains a float.

Exit codes: 0 success or affirmative verdict, 1 negative verdict,
2 input error, 3 enumeration budget exceeded.  Progress for long
enumerations goes to standard error; standard output carries only the
result.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .acceptance import CRITERIA, run_all
from .errors import BudgetExceededError, GridmassError, InputError
from .graph import (
    WeightedGraph,
    _id_from_json,
    _id_to_json,
    graph_from_json,
    is_lipschitz,
    vertex_key,
)
from .grid import (
    FieldWeights,
    GridWindow,
    flatness_diagnostics,
    kappa_grid,
    log_model_field,
    mass_estimate,
    scalar_grid,
    schwarzschild_field,
    standard_window,
    strong_decay_check,
    window_from_json,
)
from .instances import build_instance, instance_json, instance_names
from .numeric import EXACT, FLOAT, NumericMode, format_weight, parse_weight
from .ollivier import DEFAULT_BUDGET, edge_curvature, scalar_curvature
from .salami import (
    afg_from_json,
    extremal_extension,
    harmonicity_propagation_check,
    make_partition,
    rigidity_check,
)
from .torus import (
    TorusSpec,
    build_torus,
    closed_form_distance_condition,
    distance_condition,
    torus_kappa,
    torus_spec_from_json,
    total_scalar_curvature,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

PROGRESS_THRESHOLD = 200


@dataclass(frozen=True)
class RunConfig:
    """Common knobs shared by all subcommands."""

    command: str
    mode: Optional[NumericMode]
    fmt: str
    out: Optional[str]
    jobs: int
    seed: int
    budget: int

    @staticmethod
    def from_args(args: argparse.Namespace) -> "RunConfig":
        mode = {None: None, "exact": EXACT, "float": FLOAT}[args.numeric]
        jobs = getattr(args, "jobs", 1)
        if jobs < 1:
            raise InputError(f"--jobs must be positive, got {jobs}")
        return RunConfig(
            command=args.command,
            mode=mode,
            fmt=args.fmt,
            out=args.out,
            jobs=jobs,
            seed=getattr(args, "seed", 0),
            budget=getattr(args, "budget", DEFAULT_BUDGET),
        )


# -- output -------------------------------------------------------------------


def _json_value(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool) or v is None or isinstance(v, (int, str, float)):
        return v
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in v.items()}
    return str(v)


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(_json_value(v))
    return str(v)


@dataclass(frozen=True)
class Report:
    """One subcommand's result: scalar summary plus a row table."""

    summary: dict
    columns: tuple
    rows: tuple


def _emit(report: Report, cfg: RunConfig, stream) -> None:
    if cfg.fmt == "json":
        data = {k: _json_value(v) for k, v in report.summary.items()}
        data["rows"] = [
            {c: _json_value(v) for c, v in zip(report.columns, row)}
            for row in report.rows
        ]
        stream.write(json.dumps(data, indent=2))
        stream.write("\n")
    elif cfg.fmt == "csv":
        # data-only: the summary is for humans, the rows are for plotters
        stream.write(",".join(report.columns) + "\n")
        for row in report.rows:
            cells = [_csv_cell(_text_value(v)) for v in row]
            stream.write(",".join(cells) + "\n")
    else:
        for k, v in report.summary.items():
            stream.write(f"{k}: {_text_value(v)}\n")
        if report.rows:
            stream.write("\n")
            widths = [len(c) for c in report.columns]
            text_rows = []
            for row in report.rows:
                cells = [_text_value(v) for v in row]
                widths = [max(w, len(c)) for w, c in zip(widths, cells)]
                text_rows.append(cells)
            head = "  ".join(c.ljust(w) for c, w in zip(report.columns, widths))
            stream.write(head.rstrip() + "\n")
            for cells in text_rows:
                line = "  ".join(c.ljust(w) for c, w in zip(cells, widths))
                stream.write(line.rstrip() + "\n")


def _csv_cell(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _write_report(report: Report, cfg: RunConfig) -> None:
    if cfg.out is None or cfg.out == "-":
        _emit(report, cfg, sys.stdout)
    else:
        with open(cfg.out, "w", newline="") as fh:
            _emit(report, cfg, fh)


def _progress(done: int, total: int) -> None:
    if total >= PROGRESS_THRESHOLD:
        step = max(1, total // 20)
        if done % step == 0 or done == total:
            print(f"{done}/{total}", file=sys.stderr, flush=True)


# -- shared input helpers ------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}"
        ) from exc


def _parse_rational(text: str):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {text!r}") from exc
    return int(value) if value.denominator == 1 else value


def _field_window(args, cfg: RunConfig, default_rho: int) -> GridWindow:
    rho = args.rho if args.rho is not None else default_rho
    field = args.field
    if field == "unit":
        n = args.n if args.n is not None else 2
        if cfg.mode is FLOAT:
            return GridWindow(n, rho, FieldWeights(lambda x, i: 1.0), mode=FLOAT)
        return standard_window(n, rho)
    if field == "schwarzschild":
        n = args.n if args.n is not None else 3
        m = _parse_rational(args.m) if args.m is not None else 1
        if cfg.mode is FLOAT:
            m = float(m)
        return schwarzschild_field(n, m, rho, mode=cfg.mode)
    if field == "log-model":
        if args.n not in (None, 2):
            raise InputError("the log model is two-dimensional")
        m = float(Fraction(args.m)) if args.m is not None else 0.01
        return log_model_field(m, rho)
    raise InputError(f"unknown field {field!r}")


def _field_mode(args) -> bool:
    return (
        args.grid
        or args.field != "unit"
        or args.n is not None
        or args.rho is not None
        or args.m is not None
    )


def _window_input(args, cfg: RunConfig, default_rho: int) -> GridWindow:
    if args.input is not None and _field_mode(args):
        raise InputError("give either an input file or window flags, not both")
    if args.input is not None:
        return window_from_json(_load_json(args.input), mode=cfg.mode)
    if _field_mode(args):
        return _field_window(args, cfg, default_rho)
    raise InputError("need an input file or --grid")


def _selector(text: str, what: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad {what} selector {text!r}: {exc}") from exc
    return data


# -- curvature / scalar --------------------------------------------------------

_WORKER_GRAPH: Optional[WeightedGraph] = None


def _init_worker(g: WeightedGraph) -> None:
    global _WORKER_GRAPH
    _WORKER_GRAPH = g


def _edge_task(item):
    u, v, budget, want_witness = item
    try:
        res = edge_curvature(_WORKER_GRAPH, u, v, budget=budget, want_witness=want_witness)
    except BudgetExceededError:
        return u, v, None, None, "budget-exceeded"
    witness = None
    if want_witness:
        witness = sorted(
            ((w, res.witness[w]) for w in res.witness.domain),
            key=lambda p: vertex_key(p[0]),
        )
    return u, v, res.kappa, witness, "ok"


def _vertex_task(item):
    v, budget = item
    try:
        return v, scalar_curvature(_WORKER_GRAPH, v, budget=budget), "ok"
    except BudgetExceededError:
        return v, None, "budget-exceeded"


def _parallel_map(task: Callable, items: list, g: WeightedGraph, jobs: int):
    # canonical input order in, canonical order out, whatever the schedule
    total = len(items)
    if jobs == 1:
        _init_worker(g)
        for done, item in enumerate(items, 1):
            yield task(item)
            _progress(done, total)
        return
    chunk = max(1, total // (4 * jobs))
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=_init_worker, initargs=(g,)
    ) as pool:
        for done, out in enumerate(pool.map(task, items, chunksize=chunk), 1):
            yield out
            _progress(done, total)


def _interior_grid_edges(win: GridWindow):
    b = win.rho - 1
    for base, axis in win.edges():
        tip = list(base)
        tip[axis] += 1
        if all(abs(c) <= b for c in base) and all(abs(c) <= b for c in tip):
            yield base, axis, tuple(tip)


def cmd_curvature(args, cfg: RunConfig) -> int:
    if _field_mode(args):
        if args.witness:
            raise InputError("--witness needs a graph input (grid mode is closed-form)")
        win = _window_input(args, cfg, default_rho=4)
        selected = None
        if args.edge is not None:
            selected = _grid_edge_selector(win, args.edge)
        rows = []
        for base, axis, tip in _interior_grid_edges(win):
            if selected is not None and selected != (base, axis):
                continue
            rows.append((list(base), list(tip), kappa_grid(win, base, axis)))
        if selected is not None and not rows:
            raise InputError("selected edge is not interior to the window")
        summary = {
            "command": "curvature",
            "source": f"grid window n={win.n} rho={win.rho}",
            "mode": "exact" if win.mode.exact else "float",
            "edges": len(rows),
        }
        _write_report(Report(summary, ("u", "v", "kappa"), tuple(rows)), cfg)
        return EXIT_OK

    if args.input is None:
        raise InputError("need a graph file or --grid")
    g = graph_from_json(_load_json(args.input), mode=cfg.mode)
    pairs = [(u, v) for u, v, _ in g.edges()]
    if args.edge is not None:
        u, v = (_id_from_json(x) for x in _selector(args.edge, "edge"))
        if not g.has_edge(u, v):
            raise InputError(f"no edge between {u!r} and {v!r}")
        pairs = [(u, v) if vertex_key(u) < vertex_key(v) else (v, u)]
    items = [(u, v, cfg.budget, args.witness) for u, v in pairs]
    rows = []
    exceeded = 0
    for u, v, kappa, witness, status in _parallel_map(_edge_task, items, g, cfg.jobs):
        row = [_id_to_json(u), _id_to_json(v), kappa, status]
        if args.witness:
            row.append(
                None
                if witness is None
                else [[_id_to_json(w), val] for w, val in witness]
            )
        rows.append(tuple(row))
        exceeded += status == "budget-exceeded"
    columns = ("u", "v", "kappa", "status") + (("witness",) if args.witness else ())
    summary = {
        "command": "curvature",
        "source": args.input,
        "mode": "exact" if g.mode.exact else "float",
        "edges": len(rows),
        "budget_exceeded": exceeded,
    }
    _write_report(Report(summary, columns, tuple(rows)), cfg)
    return EXIT_BUDGET if exceeded else EXIT_OK


def _grid_edge_selector(win: GridWindow, text: str):
    data = _selector(text, "edge")
    try:
        u = tuple(int(c) for c in data[0])
        v = tuple(int(c) for c in data[1])
    except (TypeError, ValueError, IndexError) as exc:
        raise InputError(f"bad grid edge selector {text!r}") from exc
    diffs = [(i, b - a) for i, (a, b) in enumerate(zip(u, v)) if a != b]
    if len(u) != win.n or len(diffs) != 1 or abs(diffs[0][1]) != 1:
        raise InputError(f"{u} - {v} is not a grid edge")
    axis, step = diffs[0]
    return (u if step == 1 else v), axis


def cmd_scalar(args, cfg: RunConfig) -> int:
    if _field_mode(args):
        win = _window_input(args, cfg, default_rho=4)
        b = win.rho - 2
        targets = itertools.product(range(-b, b + 1), repeat=win.n)
        if args.vertex is not None:
            x = tuple(int(c) for c in _selector(args.vertex, "vertex"))
            if not all(abs(c) <= b for c in x):
                raise InputError(f"{x} is not interior (need coordinates within {b})")
            targets = [x]
        rows = [(list(x), scalar_grid(win, x)) for x in targets]
        summary = {
            "command": "scalar",
            "source": f"grid window n={win.n} rho={win.rho}",
            "mode": "exact" if win.mode.exact else "float",
            "vertices": len(rows),
        }
        _write_report(Report(summary, ("vertex", "R"), tuple(rows)), cfg)
        return EXIT_OK

    if args.input is None:
        raise InputError("need a graph file or --grid")
    g = graph_from_json(_load_json(args.input), mode=cfg.mode)
    targets = list(g.vertices)
    if args.vertex is not None:
        x = _id_from_json(_selector(args.vertex, "vertex"))
        if x not in g:
            raise InputError(f"vertex {x!r} not in the graph")
        targets = [x]
    items = [(v, cfg.budget) for v in targets]
    rows = []
    exceeded = 0
    for v, value, status in _parallel_map(_vertex_task, items, g, cfg.jobs):
        rows.append((_id_to_json(v), value, status))
        exceeded += status == "budget-exceeded"
    summary = {
        "command": "scalar",
        "source": args.input,
        "mode": "exact" if g.mode.exact else "float",
        "vertices": len(rows),
        "budget_exceeded": exceeded,
    }
    _write_report(Report(summary, ("vertex", "R", "status"), tuple(rows)), cfg)
    return EXIT_BUDGET if exceeded else EXIT_OK


# -- mass / flatness ------------------------------------------------------------


def cmd_mass(args, cfg: RunConfig) -> int:
    default_rho = (args.r_max + 2) if args.r_max is not None else 10
    win = _window_input(args, cfg, default_rho=default_rho)
    est = mass_estimate(win, r_max=args.r_max, tolerance=args.tolerance)
    rows = tuple((r + 1, m_r) for r, m_r in enumerate(est.partial))
    summary = {
        "command": "mass",
        "n": win.n,
        "rho": win.rho,
        "mode": "exact" if win.mode.exact else "float",
        "r_max": len(est.partial),
    }
    if win.mode.exact and isinstance(est.value, float):
        # the tail correction is a float extrapolation; exact output
        # keeps the exact partial and carries the fit as an annotation
        summary["mass"] = est.partial[-1]
        summary["mass_tail_corrected"] = repr(est.value)
    else:
        summary["mass"] = est.value
    summary["converged"] = est.converged
    _write_report(Report(summary, ("r", "M_r"), rows), cfg)
    return EXIT_OK


def cmd_flatness(args, cfg: RunConfig) -> int:
    win = _window_input(args, cfg, default_rho=8)
    rep = flatness_diagnostics(win, p_claimed=args.p, slack=args.slack)
    summary = {
        "command": "flatness",
        "n": win.n,
        "rho": win.rho,
        "p_claimed": args.p,
        "weight_slope": rep.w_slope,
        "abs_slope": rep.abs_slope,
        "scalar_slope": rep.scalar_slope,
        "verdict": rep.verdict,
    }
    if args.strong_decay:
        sd = strong_decay_check(win, p=args.p, slack=args.slack)
        summary["strong_decay_hypotheses"] = sd.hypotheses_hold
        summary["strong_decay_verdict"] = sd.verdict
    rows = tuple((r, w, a, s) for r, w, a, s in rep.shells)
    _write_report(
        Report(summary, ("r", "max_weight_dev", "max_abs", "max_scalar"), rows), cfg
    )
    return EXIT_OK if rep.verdict else EXIT_NEGATIVE


# -- torus -----------------------------------------------------------------------


def _random_torus_weights(rng: random.Random, t) -> dict:
    weights = {}
    seen = set()
    for rep in t.classes:
        for i in range(t.spec.n):
            v = t.neighbor(rep, i, 1)
            key = (rep, v) if rep <= v else (v, rep)
            if key not in seen:
                seen.add(key)
                weights[(rep, i)] = Fraction(rng.randint(5, 20), 10)
    return weights


def cmd_torus(args, cfg: RunConfig) -> int:
    if (args.input is None) == (args.identity is None):
        raise InputError("give either a torus spec file or --identity K")
    if args.input is not None:
        t = torus_spec_from_json(_load_json(args.input), mode=cfg.mode)
        source = args.input
    else:
        n = args.n if args.n is not None else 2
        matrix = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )
        t = build_torus(TorusSpec(matrix, args.identity), mode=cfg.mode)
        source = f"identity n={n} k={args.identity}"
    if args.random_weights:
        rng = random.Random(cfg.seed)
        spec = t.spec
        t = build_torus(spec, _random_torus_weights(rng, t), mode=cfg.mode)

    ball = distance_condition(t)
    gate = closed_form_distance_condition(t)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # gate verdicts are reported instead
        res = total_scalar_curvature(t)
        rows = tuple(
            (_id_to_json(u), _id_to_json(v), torus_kappa(t, (u, v)))
            for u, v, _ in t.edges()
        )
    summary = {
        "command": "torus",
        "source": source,
        "mode": "exact" if t.mode.exact else "float",
        "vertices": t.vertex_count,
        "radius2_ball_gate": ball.ok,
        "edge_ball_gate": gate.ok,
        "cycle_sums": list(res.cycle_totals),
        "total": res.total,
        "decomposition_exact": res.decomposition_exact,
    }
    if not ball.ok:
        u, v, d_lat, d_tor = ball.witness
        summary["gate_witness"] = (
            f"lattice pair {u} - {v}: distance {d_lat} shrinks to {d_tor}"
        )
    _write_report(Report(summary, ("u", "v", "kappa"), rows), cfg)
    return EXIT_OK if gate.ok else EXIT_NEGATIVE


# -- salami extension / rigidity --------------------------------------------------


def cmd_salami_extend(args, cfg: RunConfig) -> int:
    data = _load_json(args.input)
    try:
        graph_data = data["graph"]
        part_data = data["partition"]
        f_data = data["f"]
    except (TypeError, KeyError) as exc:
        raise InputError(
            "extension input needs 'graph', 'partition', and 'f' fields"
        ) from exc
    g = graph_from_json(graph_data, mode=cfg.mode)
    try:
        part = make_partition(
            g,
            [_id_from_json(v) for v in part_data["x_side"]],
            [_id_from_json(v) for v in part_data["y_side"]],
            [_id_from_json(v) for v in part_data["separator"]],
        )
        f = {
            _id_from_json(entry["vertex"]): parse_weight(entry["value"], g.mode)
            for entry in f_data
        }
    except (TypeError, KeyError) as exc:
        raise InputError(f"bad partition or f table: {exc!r}") from exc
    interior = None
    if "interior" in data:
        interior = [_id_from_json(v) for v in data["interior"]]
    ext = extremal_extension(g, part, f)
    lip = is_lipschitz(g, ext)
    report = harmonicity_propagation_check(g, part, f, interior=interior)
    rows = tuple(
        (_id_to_json(v), part.side_of(v), ext[v])
        for v in g.vertices
    )
    summary = {
        "command": "salami-extend",
        "source": args.input,
        "mode": "exact" if g.mode.exact else "float",
        "lipschitz": lip.ok,
        "harmonic_on_separator": report.harmonic_on_separator,
        "propagates": report.propagates,
        "interior_violations": len(report.interior_violations),
        "artifact_violations": len(report.artifact_violations),
    }
    _write_report(Report(summary, ("vertex", "side", "Sf"), rows), cfg)
    return EXIT_NEGATIVE if report.propagates is False else EXIT_OK


def cmd_rigidity(args, cfg: RunConfig) -> int:
    afg = afg_from_json(_load_json(args.input), mode=cfg.mode)
    res = rigidity_check(
        afg, check_curvature=not args.skip_curvature, budget=cfg.budget
    )
    rows = tuple(
        (s.stage, s.level, s.passed, s.reason) for s in res.stages
    )
    summary = {
        "command": "rigidity",
        "source": args.input,
        "is_standard_grid": res.is_standard_grid,
        "failure_stage": None if res.failure is None else res.failure.stage,
    }
    _write_report(Report(summary, ("stage", "level", "passed", "reason"), rows), cfg)
    return EXIT_OK if res.is_standard_grid else EXIT_NEGATIVE


# -- examples / check --------------------------------------------------------------


def cmd_examples(args, cfg: RunConfig) -> int:
    if args.list:
        for name in instance_names():
            print(name)
        return EXIT_OK
    if args.name is None:
        raise InputError(f"give an instance name or --list; known: {', '.join(instance_names())}")
    params = {}
    for text in args.param:
        key, sep, value = text.partition("=")
        if not sep:
            raise InputError(f"--param needs key=value, got {text!r}")
        try:
            params[key] = int(value)
        except ValueError:
            try:
                params[key] = Fraction(value)
            except (ValueError, ZeroDivisionError):
                params[key] = value
    data = instance_json(args.name, **params)
    text = json.dumps(data, indent=2) + "\n"
    if cfg.out is None or cfg.out == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_check(args, cfg: RunConfig) -> int:
    numbers = args.only if args.only else None
    if numbers is not None:
        unknown = sorted(set(numbers) - set(CRITERIA))
        if unknown:
            raise InputError(f"unknown criteria {unknown}; have {list(CRITERIA)}")
    stream = sys.stdout

    def tick(line: str) -> None:
        if cfg.fmt != "json":
            stream.write(line + "\n")
            stream.flush()

    results = run_all(numbers, progress=tick)
    passed = sum(r.passed for r in results)
    if cfg.fmt == "json":
        data = [
            {
                "number": r.number,
                "title": r.title,
                "passed": r.passed,
                "elapsed": round(r.elapsed, 3),
                "budget": r.budget,
                "details": r.details,
            }
            for r in results
        ]
        stream.write(json.dumps(data, indent=2) + "\n")
    else:
        stream.write(f"passed {passed}/{len(results)}\n")
    if passed == len(results):
        return EXIT_OK
    over = any(
        not r.passed and r.budget is not None and r.elapsed > r.budget
        for r in results
    )
    return EXIT_BUDGET if over else EXIT_NEGATIVE


# -- argument parsing ---------------------------------------------------------------


def _add_common(sp, jobs: bool = False, seed: bool = False, budget: bool = False):
    sp.add_argument(
        "--numeric",
        choices=("exact", "float"),
        default=None,
        help="numeric mode; default: exact when the weights permit",
    )
    sp.add_argument(
        "--format",
        dest="fmt",
        choices=("json", "csv", "table"),
        default="table",
        help="output format (default table)",
    )
    sp.add_argument("--out", default=None, help="output file (default stdout)")
    if jobs:
        sp.add_argument(
            "--jobs", type=int, default=1, help="parallel workers for enumeration"
        )
    if seed:
        sp.add_argument("--seed", type=int, default=0, help="random seed")
    if budget:
        sp.add_argument(
            "--budget",
            type=int,
            default=DEFAULT_BUDGET,
            help="per-edge enumeration budget",
        )


def _add_field_flags(sp, with_grid: bool = True):
    if with_grid:
        sp.add_argument(
            "--grid", action="store_true", help="build a grid window instead of reading a file"
        )
    sp.add_argument(
        "--field",
        choices=("unit", "schwarzschild", "log-model"),
        default="unit",
        help="weight field for --grid (default unit)",
    )
    sp.add_argument("--n", type=int, default=None, help="dimension")
    sp.add_argument("--rho", type=int, default=None, help="window radius")
    sp.add_argument("--m", default=None, help="mass parameter for model fields")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridmass",
        description="Curvature, mass, and rigidity computations on weighted graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("curvature", help="per-edge curvature table")
    sp.add_argument("input", nargs="?", help="graph JSON file")
    _add_field_flags(sp)
    sp.add_argument("--edge", default=None, help='single edge, e.g. \'["a","b"]\'')
    sp.add_argument(
        "--witness", action="store_true", help="include an optimizing potential per edge"
    )
    _add_common(sp, jobs=True, budget=True)
    sp.set_defaults(func=cmd_curvature)

    sp = sub.add_parser("scalar", help="per-vertex scalar curvature table")
    sp.add_argument("input", nargs="?", help="graph JSON file")
    _add_field_flags(sp)
    sp.add_argument("--vertex", default=None, help='single vertex, e.g. \'[0,0]\'')
    _add_common(sp, jobs=True, budget=True)
    sp.set_defaults(func=cmd_scalar)

    sp = sub.add_parser("mass", help="partial mass sums and tail-corrected estimate")
    sp.add_argument("input", nargs="?", help="window JSON file")
    _add_field_flags(sp)
    sp.add_argument("--r-max", type=int, default=None, help="largest cube radius")
    sp.add_argument(
        "--tolerance", type=float, default=1e-3, help="stability tolerance for convergence"
    )
    _add_common(sp)
    sp.set_defaults(func=cmd_mass)

    sp = sub.add_parser("flatness", help="asymptotic-flatness decay diagnostics")
    sp.add_argument("input", nargs="?", help="window JSON file")
    _add_field_flags(sp)
    sp.add_argument("--p", type=float, required=True, help="claimed decay exponent")
    sp.add_argument("--slack", type=float, default=0.25, help="exponent slack")
    sp.add_argument(
        "--strong-decay",
        action="store_true",
        help="also run the strong-decay mass-vanishing check",
    )
    _add_common(sp)
    sp.set_defaults(func=cmd_flatness)

    sp = sub.add_parser("torus", help="torus curvature report")
    sp.add_argument("input", nargs="?", help="torus spec JSON file")
    sp.add_argument(
        "--identity", type=int, default=None, metavar="K", help="standard torus of side K"
    )
    sp.add_argument("--n", type=int, default=None, help="dimension for --identity")
    sp.add_argument(
        "--random-weights", action="store_true", help="draw rational weights from --seed"
    )
    _add_common(sp, seed=True)
    sp.set_defaults(func=cmd_torus)

    sp = sub.add_parser(
        "salami-extend", help="extremal Lipschitz extension from a separator"
    )
    sp.add_argument("input", help="JSON file with graph, partition, and f")
    _add_common(sp)
    sp.set_defaults(func=cmd_salami_extend)

    sp = sub.add_parser("rigidity", help="staged standard-grid rigidity check")
    sp.add_argument("input", help="asymptotically-flat-graph JSON file")
    sp.add_argument(
        "--skip-curvature",
        action="store_true",
        help="skip the brute-force curvature certificate stage",
    )
    _add_common(sp, budget=True)
    sp.set_defaults(func=cmd_rigidity)

    sp = sub.add_parser("examples", help="write a built-in instance as JSON")
    sp.add_argument("name", nargs="?", help="instance name")
    sp.add_argument("--list", action="store_true", help="list instance names")
    sp.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="builder parameter override (repeatable)",
    )
    _add_common(sp)
    sp.set_defaults(func=cmd_examples)

    sp = sub.add_parser("check", help="run the acceptance suite")
    sp.add_argument(
        "--only",
        type=int,
        action="append",
        default=[],
        metavar="N",
        help="run only criterion N (repeatable)",
    )
    _add_common(sp)
    sp.set_defaults(func=cmd_check)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GridmassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
