"""Batch command-line front end.

Subcommands: ``analyze`` runs the scenario file's analysis and prints a
table (optionally writing CSV), ``sweep`` evaluates it over a cross
product of field values into long-format CSV, ``validate`` parses and
checks only.  Exit codes: 0 success, 1 parse error, 2 validation error,
3 no intercept solution.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import itertools
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .advantage import (
    EngagementScenario,
    SeekerMode,
    ar_first_kill,
    duel_outcomes,
    sar_first_kill,
)
from .detection import classify
from .exchange import (
    DuelMode,
    DuelParams,
    NvnParams,
    SalvoParams,
    kill_salvo,
    nvn_survivors,
    sequential_duel,
    simultaneous_duel,
    survive_salvo,
)
from .geometry import NoInterceptSolution, TofConvention, post_intercept_separation, solve_intercept
from .montecarlo import (
    MAX_ENUMERATION_ROUNDS,
    McConfig,
    enumerate_duel,
    mc_discrete_duel,
    mc_range_advantage,
)
from .montecarlo.backend import BACKEND_NAME
from .montecarlo.rng import GENERATOR_ID
from .pursuit import pursuit_csv, run_pursuit
from .radar import (
    classify_band,
    doppler_shift,
    echo_delay,
    fold_doppler,
    max_unambiguous_doppler,
    range_bin,
    snr,
    unambiguous_range,
)
from .scenario import (
    DetectPlan,
    GeometryPlan,
    RadarPlan,
    Scenario,
    ScenarioParseError,
    ScenarioValidationError,
    TOF_TOKENS,
    build_scenario,
    load_scenario,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_NO_INTERCEPT = 3


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[list[object]]
    footer: list[tuple[str, str]]


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(table: ResultTable) -> str:
    lines = [",".join(table.columns)]
    lines += [",".join(_cell(v) for v in row) for row in table.rows]
    lines += [f"# {key}={value}" for key, value in table.footer]
    return "\n".join(lines) + "\n"


def render_text(table: ResultTable) -> str:
    cells = [table.columns] + [[_cell(v) for v in row] for row in table.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(table.columns))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
             for row in cells]
    lines += [f"# {key}={value}" for key, value in table.footer]
    return "\n".join(lines) + "\n"


def _footer(scenario: Scenario, mc: McConfig | None,
            extra: list[tuple[str, str]] | None = None) -> list[tuple[str, str]]:
    footer = [("input_sha256", scenario.sha256)]
    if mc is not None:
        footer.append(("samples", str(mc.samples)))
        footer.append(("seed", str(mc.seed)))
    footer.append(("generator", GENERATOR_ID))
    footer.append(("backend", BACKEND_NAME))
    if extra:
        footer.extend(extra)
    footer.append(("version", __version__))
    return footer


def _duel_closed(params: DuelParams):
    if params.mode is DuelMode.SEQUENTIAL:
        return sequential_duel(params)
    return simultaneous_duel(params)


_OUTCOME_FIELDS = (
    ("red_destroyed", "p_red_destroyed"),
    ("blue_destroyed", "p_blue_destroyed"),
    ("mutual_kill", "p_mutual"),
    ("both_survive", "p_both_survive"),
)


def _analyze_salvo(params: SalvoParams, mc: McConfig | None) -> ResultTable:
    return ResultTable(
        columns=["p_kill", "shots", "p_survive", "p_destroy"],
        rows=[[params.p_kill, params.shots, survive_salvo(params), kill_salvo(params)]],
        footer=[],
    )


def _analyze_duel(params: DuelParams, mc: McConfig | None) -> ResultTable:
    closed = _duel_closed(params)
    enum = enumerate_duel(params) if params.rounds <= MAX_ENUMERATION_ROUNDS else None
    estimates = None
    if mc is not None:
        result = mc_discrete_duel(params, mc)
        estimates = {
            "red_destroyed": result.red_destroyed,
            "blue_destroyed": result.blue_destroyed,
            "mutual_kill": result.mutual,
            "both_survive": result.both_survive,
        }
    columns = ["outcome", "closed_form", "enumeration"]
    if estimates is not None:
        columns += ["mc_estimate", "mc_std_error"]
    rows = []
    for label, field in _OUTCOME_FIELDS:
        row: list[object] = [label, getattr(closed, field),
                             getattr(enum, field) if enum is not None else None]
        if estimates is not None:
            row += [estimates[label].estimate, estimates[label].std_error]
        rows.append(row)
    return ResultTable(columns=columns, rows=rows, footer=[])


def _analyze_nvn(params: NvnParams, mc: McConfig | None) -> ResultTable:
    outcome = nvn_survivors(params)
    return ResultTable(
        columns=["p_kill", "weapons_per_attacker", "attackers", "targets",
                 "salvo_kill_prob", "survival_rate", "expected_survivors"],
        rows=[[params.p_kill, params.weapons_per_attacker, params.attackers,
               params.targets, outcome.salvo_kill_prob, outcome.survival_rate,
               outcome.expected_survivors]],
        footer=[],
    )


def _analyze_geometry(plan: GeometryPlan, mc: McConfig | None) -> ResultTable:
    solution = solve_intercept(plan.kinematics)
    separation = post_intercept_separation(
        plan.kinematics, plan.launch_range, plan.tof_convention
    )
    return ResultTable(
        columns=["lead_angle_deg", "collision_angle_deg", "closure_rate_m_s",
                 "missile_lead_angle_deg", "missile_closure_rate_m_s",
                 "sine_ratio", "flight_distance_m", "time_of_flight_s",
                 "separation_m"],
        rows=[[
            math.degrees(solution.lead_angle),
            math.degrees(solution.collision_angle),
            solution.closure_rate,
            math.degrees(solution.missile_lead_angle),
            solution.missile_closure_rate,
            solution.sine_ratio,
            solution.sine_ratio * plan.launch_range,
            separation.time_of_flight,
            separation.separation,
        ]],
        footer=[],
    )


def _analyze_range_advantage(scenario: EngagementScenario, mc: McConfig | None) -> ResultTable:
    blue_active = scenario.blue.seeker is SeekerMode.ACTIVE
    red_active = scenario.red.seeker is SeekerMode.ACTIVE
    sample = mc_range_advantage(scenario, mc) if mc is not None else None

    columns = ["metric", "closed_form"]
    if sample is not None:
        columns += ["mc_estimate", "mc_std_error"]

    def row(metric: str, closed: float | None, estimate) -> list[object]:
        out: list[object] = [metric, closed]
        if sample is not None:
            out += ([estimate.estimate, estimate.std_error]
                    if estimate is not None else [None, None])
        return out

    rows = [row("first_kill_blue_sar", sar_first_kill(scenario).probability,
                None if blue_active else (sample.first_kill_blue if sample else None))]
    if blue_active:
        rows.append(row("first_kill_blue_ar", ar_first_kill(scenario).probability,
                        sample.first_kill_blue if sample else None))
    if blue_active and red_active:
        duel = duel_outcomes(scenario)
        rows.append(row("duel_blue_win", duel.p_blue_win,
                        sample.p_blue_win if sample else None))
        rows.append(row("duel_red_win", duel.p_red_win,
                        sample.p_red_win if sample else None))
        rows.append(row("duel_mutual_kill", duel.p_mutual_kill,
                        sample.p_mutual if sample else None))
        rows.append(row("duel_win_overlap", None,
                        sample.overlap if sample else None))
    return ResultTable(columns=columns, rows=rows, footer=[])


def _analyze_radar(plan: RadarPlan, mc: McConfig | None) -> ResultTable:
    pulse = plan.pulse
    rows: list[list[object]] = [
        ["unambiguous_range_m", pulse.prf, unambiguous_range(pulse.prf), None],
        ["max_unambiguous_doppler_hz", pulse.prf,
         max_unambiguous_doppler(pulse.prf), None],
        ["band", pulse.f_tx, classify_band(pulse.f_tx).name, None],
    ]
    for r in plan.target_ranges:
        binned = range_bin(r, pulse)
        rows.append(["echo_delay_us", r, echo_delay(r) * 1e6, None])
        rows.append(["range_bin", r, binned.bin_index,
                     "aliased" if binned.aliased else None])
    for v in plan.range_velocities:
        shift = doppler_shift(pulse.f_tx, v)
        fold = fold_doppler(shift, pulse.prf)
        rows.append(["doppler_shift_hz", v, shift, None])
        rows.append(["doppler_fold_hz", v, fold.folded,
                     "aliased" if fold.aliased else None])
    if plan.snr_params is not None:
        result = snr(plan.snr_params)
        rows.append(["snr_linear", plan.snr_params.range_m, result.linear, None])
        rows.append(["snr_db", plan.snr_params.range_m, result.db, None])
    return ResultTable(columns=["metric", "input", "value", "note"],
                       rows=rows, footer=[])


def _analyze_detect(plan: DetectPlan, mc: McConfig | None) -> ResultTable:
    verdict = classify(
        list(plan.frames),
        max_range_cm=plan.max_range_cm,
        window_s=plan.window_s,
        smoke_threshold=plan.smoke_threshold,
    )
    return ResultTable(
        columns=["classification", "range_cm", "speed_cm_s", "heading_deg"],
        rows=[[verdict.classification.value, verdict.estimated_range,
               verdict.estimated_speed, verdict.estimated_heading]],
        footer=[],
    )


def _analyze_pursuit(scenario, mc: McConfig | None, full_precision: bool) -> tuple[str, list[tuple[str, str]]]:
    trace = run_pursuit(scenario)
    return pursuit_csv(trace, full_precision=full_precision), [
        ("verdict", trace.verdict.value),
        ("steps_used", str(trace.steps_used)),
    ]


def _headline(kind: str, payload, mc: McConfig | None) -> dict[str, object]:
    """Flat closed-form metrics of one analysis, for sweep rows."""
    if kind == "salvo":
        return {"p_survive": survive_salvo(payload), "p_destroy": kill_salvo(payload)}
    if kind == "duel":
        closed = _duel_closed(payload)
        return {f: getattr(closed, f) for _, f in _OUTCOME_FIELDS}
    if kind == "nvn":
        outcome = nvn_survivors(payload)
        return {
            "salvo_kill_prob": outcome.salvo_kill_prob,
            "survival_rate": outcome.survival_rate,
            "expected_survivors": outcome.expected_survivors,
        }
    if kind == "geometry":
        solution = solve_intercept(payload.kinematics)
        separation = post_intercept_separation(
            payload.kinematics, payload.launch_range, payload.tof_convention
        )
        return {
            "lead_angle_deg": math.degrees(solution.lead_angle),
            "closure_rate_m_s": solution.closure_rate,
            "flight_distance_m": solution.sine_ratio * payload.launch_range,
            "separation_m": separation.separation,
        }
    if kind == "range_advantage":
        metrics: dict[str, object] = {}
        if payload.blue.seeker is SeekerMode.ACTIVE:
            metrics["first_kill_blue"] = ar_first_kill(payload).probability
        else:
            metrics["first_kill_blue"] = sar_first_kill(payload).probability
        if (payload.blue.seeker is SeekerMode.ACTIVE
                and payload.red.seeker is SeekerMode.ACTIVE):
            duel = duel_outcomes(payload)
            metrics["duel_blue_win"] = duel.p_blue_win
            metrics["duel_red_win"] = duel.p_red_win
            metrics["duel_mutual_kill"] = duel.p_mutual_kill
        return metrics
    if kind == "pursuit":
        trace = run_pursuit(payload)
        return {"verdict": trace.verdict.value, "steps_used": trace.steps_used}
    if kind == "radar":
        metrics = {"unambiguous_range_m": unambiguous_range(payload.pulse.prf)}
        if payload.snr_params is not None:
            metrics["snr_db"] = snr(payload.snr_params).db
        return metrics
    if kind == "detect":
        verdict = classify(
            list(payload.frames),
            max_range_cm=payload.max_range_cm,
            window_s=payload.window_s,
            smoke_threshold=payload.smoke_threshold,
        )
        return {"classification": verdict.classification.value}
    raise AssertionError(f"unhandled kind {kind}")


_ANALYZERS = {
    "salvo": _analyze_salvo,
    "duel": _analyze_duel,
    "nvn": _analyze_nvn,
    "geometry": _analyze_geometry,
    "range_advantage": _analyze_range_advantage,
    "radar": _analyze_radar,
    "detect": _analyze_detect,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="engagekit",
        description="Engagement analytics: exchange models, intercept "
                    "geometry, radar timing, pursuit and detection "
                    "simulation, with seeded Monte Carlo verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("analyze", "run the scenario's analysis"),
        ("sweep", "evaluate the analysis over swept field values"),
        ("validate", "parse and check the scenario only"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--scenario", required=True, help="scenario JSON path")
        cmd.add_argument("--out", help="write CSV to this path")
        cmd.add_argument("--samples", type=int, help="Monte Carlo sample override")
        cmd.add_argument("--seed", type=int, help="Monte Carlo seed override")
        cmd.add_argument("--tof-convention", choices=sorted(TOF_TOKENS),
                         help="time-of-flight convention override")
        unit = cmd.add_mutually_exclusive_group()
        unit.add_argument("--degrees", dest="angles", action="store_const",
                          const="degrees", help="angles in the file are degrees (default)")
        unit.add_argument("--radians", dest="angles", action="store_const",
                          const="radians", help="angles in the file are radians")
        cmd.set_defaults(angles="degrees")
        if name == "analyze":
            cmd.add_argument("--full-precision", action="store_true",
                             help="full-precision floats in pursuit traces")
        if name == "sweep":
            cmd.add_argument("--sweep", action="append", default=[],
                             metavar="field=v1,v2,...",
                             help="field values to cross (repeatable)")
    return parser


def _resolve_mc(scenario: Scenario, args) -> McConfig | None:
    mc = scenario.monte_carlo
    if args.samples is None and args.seed is None:
        return mc
    samples = args.samples if args.samples is not None else (mc.samples if mc else None)
    if samples is None:
        raise ScenarioValidationError("--seed given without samples "
                                      "(set --samples or a monte_carlo block)")
    seed = args.seed if args.seed is not None else (mc.seed if mc else 0)
    try:
        return McConfig(samples=samples, seed=seed)
    except ValueError as exc:
        raise ScenarioValidationError(str(exc)) from exc


def _apply_tof_override(scenario: Scenario, token: str | None) -> Scenario:
    if token is None:
        return scenario
    convention = TOF_TOKENS[token]
    payload = scenario.payload
    if isinstance(payload, (GeometryPlan, EngagementScenario)):
        payload = dataclasses.replace(payload, tof_convention=convention)
    return dataclasses.replace(scenario, payload=payload)


def _emit(text: str, out_path: str | None, csv_text: str) -> None:
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(csv_text)


def _cmd_analyze(args) -> int:
    scenario = load_scenario(args.scenario, angles=args.angles)
    scenario = _apply_tof_override(scenario, args.tof_convention)
    mc = _resolve_mc(scenario, args)
    if scenario.kind == "pursuit":
        csv_body, extra = _analyze_pursuit(
            scenario.payload, mc, getattr(args, "full_precision", False)
        )
        footer_lines = "".join(
            f"# {k}={v}\n" for k, v in _footer(scenario, None, extra)
        )
        _emit(csv_body + footer_lines, args.out, csv_body + footer_lines)
        return EXIT_OK
    table = _ANALYZERS[scenario.kind](scenario.payload, mc)
    table.footer = _footer(scenario, mc, table.footer or None)
    _emit(render_text(table), args.out, render_csv(table))
    return EXIT_OK


def _parse_sweep_specs(specs: list[str]) -> list[tuple[str, list[object]]]:
    parsed = []
    for spec in specs:
        field, eq, values_text = spec.partition("=")
        if not eq or not field:
            raise ScenarioValidationError(f"--sweep {spec!r}: expected field=v1,v2,...")
        values = []
        for token in values_text.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                value = json.loads(token)
            except json.JSONDecodeError as exc:
                raise ScenarioValidationError(
                    f"--sweep {spec!r}: {token!r} is not a number"
                ) from exc
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ScenarioValidationError(
                    f"--sweep {spec!r}: {token!r} is not a number"
                )
            values.append(value)
        if values:
            parsed.append((field, values))
    return parsed


def _assign_path(section: dict, path: str, value: object) -> None:
    keys = path.split(".")
    node = section
    for key in keys[:-1]:
        if not isinstance(node, dict) or key not in node:
            raise ScenarioValidationError(f"sweep field {path!r} not found")
        node = node[key]
    leaf = keys[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise ScenarioValidationError(f"sweep field {path!r} not found")
    base = node[leaf]
    if isinstance(base, bool) or not isinstance(base, (int, float)):
        raise ScenarioValidationError(f"sweep field {path!r} is not numeric")
    node[leaf] = value


def _cmd_sweep(args) -> int:
    try:
        raw = Path(args.scenario).read_bytes()
        document = json.loads(raw.decode("utf-8"))
    except OSError as exc:
        raise ScenarioParseError(f"cannot read scenario file: {exc}") from exc
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ScenarioParseError(f"invalid scenario JSON: {exc}") from exc
    sha = hashlib.sha256(raw).hexdigest()
    base_dir = Path(args.scenario).resolve().parent

    base = build_scenario(document, sha, angles=args.angles, base_dir=base_dir)
    specs = _parse_sweep_specs(args.sweep)

    fields = [field for field, _ in specs]
    value_lists = [values for _, values in specs]
    combos = list(itertools.product(*value_lists)) if specs else [()]

    rows = []
    metric_names: list[str] | None = None
    for combo in combos:
        doc = json.loads(json.dumps(document))
        for field, value in zip(fields, combo):
            _assign_path(doc[base.kind], field, value)
        point = build_scenario(doc, sha, angles=args.angles, base_dir=base_dir)
        point = _apply_tof_override(point, args.tof_convention)
        metrics = _headline(point.kind, point.payload, None)
        if metric_names is None:
            metric_names = list(metrics)
        rows.append(list(combo) + [metrics[name] for name in metric_names])

    table = ResultTable(
        columns=fields + (metric_names or []),
        rows=rows,
        footer=_footer(base, None),
    )
    _emit(render_text(table), args.out, render_csv(table))
    return EXIT_OK


def _cmd_validate(args) -> int:
    scenario = load_scenario(args.scenario, angles=args.angles)
    _resolve_mc(scenario, args)
    sys.stdout.write(f"valid: {scenario.kind} scenario ({scenario.sha256[:12]})\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"analyze": _cmd_analyze, "sweep": _cmd_sweep, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NoInterceptSolution as exc:
        print(f"no intercept solution: {exc}", file=sys.stderr)
        return EXIT_NO_INTERCEPT
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
