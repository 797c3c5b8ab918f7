"""Batch experiment runner.

Subcommands: gait-dump, terrain-gen, model-sweep, validate, walk,
controller-compare.  Every output CSV starts with a comment line recording
the tool version and a hash of the loaded configuration, so re-running a
command with the same config and seeds is byte-identical.

Exit codes: 0 success, 1 usage/config error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path
from statistics import mean
from typing import List, Optional

import numpy as np

from . import __version__
from .config import ConfigError, FullConfig, load_config, _seeds
from .contact_sim import (
    SensorModel,
    WalkOffTerrainError,
    ideal_contact_map,
    simulate_walk,
)
from .control import ControllerConfig, Scenario, compare_controllers, run_trial
from .gait import sample_cycle
from .kinematics import slip_distribution
from .models import (
    distribution_speed_coeff,
    predict_gamma,
    predict_speed_band,
)
from .terrain import HeightDeltaModel, TerrainGrid, generate_terrain

PREDICT_M = 720          # retraction samples for analytic predictions


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2
    def error(self, message):
        raise UsageError(message)


def _stamp(fc: FullConfig) -> str:
    digest = hashlib.sha256(fc.raw_text.encode()).hexdigest()[:12]
    return f"# centiwalk v{__version__} config_hash={digest}\n"


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


class TerrainEntry:
    """One terrain in an experiment: a rugosity level or a terrain file."""

    def __init__(self, token: str):
        self.token = token
        try:
            self.r_g: Optional[float] = float(token)
            self.grid: Optional[TerrainGrid] = None
            self.label = f"rg={self.r_g:g}"
        except ValueError:
            path = Path(token)
            if not path.is_file():
                raise ConfigError(f"terrain file not found: {token}")
            self.grid = TerrainGrid.load(path)
            self.r_g = None
            self.label = path.stem

    def model(self) -> HeightDeltaModel:
        if self.grid is not None:
            return HeightDeltaModel.from_samples(self.grid.longitudinal_deltas())
        return HeightDeltaModel.from_rugosity(self.r_g)

    def terrain_for_seed(self, seed: int, rows: int, cols: int) -> TerrainGrid:
        if self.grid is not None:
            return self.grid
        return generate_terrain(self.r_g, rows=rows, cols=cols, seed=seed)


def _entries(fc: FullConfig) -> List[TerrainEntry]:
    return [TerrainEntry(tok) for tok in fc.experiment.terrains]


def cmd_gait_dump(fc: FullConfig, args) -> int:
    steps = args.steps or fc.experiment.steps
    if steps < 4:
        raise UsageError(f"--steps must be >= 4, got {steps}")
    out = _out_dir(args)
    cfg = fc.gait
    cmap = ideal_contact_map(cfg, steps)
    with open(out / "contact_map.csv", "w") as fh:
        fh.write(_stamp(fc))
        n = cfg.n_pairs
        names = [f"leg_l{i+1}" for i in range(n)] + [f"leg_r{i+1}" for i in range(n)]
        fh.write("step," + ",".join(names) + "\n")
        for k in range(steps):
            fh.write(f"{k}," + ",".join(str(int(b)) for b in cmap.bits[:, k]) + "\n")
    commands = sample_cycle(cfg, steps)
    with open(out / "joint_angles.csv", "w") as fh:
        fh.write(_stamp(fc))
        n = cfg.n_pairs
        cols = (
            [f"leg_l{i+1}_deg" for i in range(n)]
            + [f"leg_r{i+1}_deg" for i in range(n)]
            + [f"body_yaw{i+1}_deg" for i in range(n)]
            + [f"body_pitch{i+1}_deg" for i in range(n)]
        )
        fh.write("step," + ",".join(cols) + "\n")
        for k, cmd in enumerate(commands):
            vals = (cmd.leg_angles_left + cmd.leg_angles_right
                    + cmd.body_yaw + cmd.body_pitch)
            fh.write(f"{k}," + ",".join(f"{v:.6f}" for v in vals) + "\n")
    print(f"wrote {out / 'contact_map.csv'} and {out / 'joint_angles.csv'}")
    return 0


def cmd_terrain_gen(fc: FullConfig, args) -> int:
    out = _out_dir(args)
    exp = fc.experiment
    seed = args.seeds[0] if args.seeds else exp.seeds[0]
    grid = generate_terrain(args.r_g, rows=exp.terrain_rows,
                            cols=exp.terrain_cols, seed=seed)
    path = out / f"terrain_rg{args.r_g:g}_seed{seed}.txt"
    grid.save(path)
    print(f"wrote {path}")
    return 0


def cmd_model_sweep(fc: FullConfig, args) -> int:
    out = _out_dir(args)
    dist = slip_distribution(fc.gait, fc.geometry, bins=36)
    coeff = distribution_speed_coeff(dist)
    path = out / "model_sweep.csv"
    with open(path, "w") as fh:
        fh.write(_stamp(fc))
        fh.write("terrain,a_v_deg,p_loss1,p_loss2,gamma,gamma_ideal,p_e,"
                 "v_min,v_max\n")
        for entry in _entries(fc):
            model = entry.model()
            for a_v in fc.experiment.a_v_grid:
                o = predict_gamma(fc.geometry, fc.gait.with_a_v(a_v), model,
                                  PREDICT_M)
                band = predict_speed_band(dist, o.gamma, coeff=coeff)
                fh.write(
                    f"{entry.label},{a_v:g},{o.p_loss1:.6f},{o.p_loss2:.6f},"
                    f"{o.gamma:.6f},{o.gamma_ideal:.6f},{o.p_e:.6f},"
                    f"{band.v_ratio_min:.6f},{band.v_ratio_max:.6f}\n"
                )
    print(f"wrote {path}")
    return 0


def cmd_validate(fc: FullConfig, args) -> int:
    out = _out_dir(args)
    exp = fc.experiment
    seeds = args.seeds or exp.seeds
    cycles = args.cycles or exp.cycles
    steps = args.steps or exp.steps
    tolerance = args.tolerance if args.tolerance is not None else exp.tolerance
    rows = cycles + fc.gait.n_pairs + 2
    sensor = SensorModel(flip_prob=0.0)
    max_dev = 0.0
    lines = []
    for entry in _entries(fc):
        model = entry.model()
        for a_v in exp.a_v_grid:
            cfg = fc.gait.with_a_v(a_v)
            predicted = predict_gamma(fc.geometry, cfg, model, PREDICT_M).gamma
            sims = []
            for seed in seeds:
                terrain = entry.terrain_for_seed(seed, rows, exp.terrain_cols)
                res = simulate_walk(cfg, fc.geometry, terrain, cycles, steps,
                                    sensor, seed)
                sims.append(mean(res.gamma_per_cycle))
            simulated = mean(sims)
            dev = abs(simulated - predicted)
            max_dev = max(max_dev, dev)
            status = "pass" if dev <= tolerance else "FAIL"
            lines.append((entry.label, a_v, predicted, simulated, dev, status))
    path = out / "validation.csv"
    with open(path, "w") as fh:
        fh.write(_stamp(fc))
        fh.write("terrain,a_v_deg,gamma_predicted,gamma_simulated,deviation,"
                 "status\n")
        for label, a_v, pred, sim, dev, status in lines:
            fh.write(f"{label},{a_v:g},{pred:.6f},{sim:.6f},{dev:.6f},"
                     f"{status}\n")
    for label, a_v, pred, sim, dev, status in lines:
        print(f"{status}: {label} a_v={a_v:g} predicted={pred:.4f} "
              f"simulated={sim:.4f} dev={dev:.4f}")
    print(f"max deviation {max_dev:.4f} (tolerance {tolerance:g}); wrote {path}")
    return 0 if max_dev <= tolerance else 2


def cmd_walk(fc: FullConfig, args) -> int:
    out = _out_dir(args)
    exp = fc.experiment
    seeds = args.seeds or exp.seeds
    cycles = args.cycles or exp.cycles
    steps = args.steps or exp.steps
    rows = cycles + fc.gait.n_pairs + 2
    sensor = SensorModel(flip_prob=exp.sensor_flip_prob)
    path = out / "walk.csv"
    with open(path, "w") as fh:
        fh.write(_stamp(fc))
        fh.write("seed,terrain,a_v_deg,cycle,gamma,v_ratio\n")
        for entry in _entries(fc):
            for seed in seeds:
                terrain = entry.terrain_for_seed(seed, rows, exp.terrain_cols)
                res = simulate_walk(fc.gait, fc.geometry, terrain, cycles,
                                    steps, sensor, seed)
                for c, (g, v) in enumerate(zip(res.gamma_per_cycle,
                                               res.forward_speed_ratio)):
                    fh.write(f"{seed},{entry.label},{fc.gait.a_v:g},{c},"
                             f"{g:.6f},{v:.6f}\n")
                if seed == seeds[0]:
                    res.measured.to_csv(out / f"contact_{entry.label}.csv")
    print(f"wrote {path}")
    return 0


def cmd_controller_compare(fc: FullConfig, args) -> int:
    out = _out_dir(args)
    exp = fc.experiment
    seeds = args.seeds or exp.seeds
    cycles = args.cycles or exp.cycles
    steps = args.steps or exp.steps
    rough = max(e.r_g for e in _entries(fc) if e.r_g is not None)
    cc = fc.controller
    scenarios = [
        Scenario("open_loop", ControllerConfig(
            k_p=cc.k_p, gamma_set=cc.gamma_set, av_min=cc.av_min,
            av_max=cc.av_max, mode="open_loop", fixed_av=cc.fixed_av),
            rough, exp.sensor_flip_prob),
    ]
    for period in (1, 2, 3):
        scenarios.append(Scenario(f"feedback_every{period}", ControllerConfig(
            k_p=cc.k_p, gamma_set=cc.gamma_set, av_min=cc.av_min,
            av_max=cc.av_max, update_every=period, mode="feedback"),
            rough, exp.sensor_flip_prob))
    stats = compare_controllers(fc.gait, fc.geometry, scenarios, seeds,
                                cycles=cycles, steps=steps,
                                terrain_cols=exp.terrain_cols)
    path = out / "controller_summary.csv"
    with open(path, "w") as fh:
        fh.write(_stamp(fc))
        fh.write("scenario,mean_speed_ratio,speed_variance,mean_distance_cm\n")
        for name, st in stats.items():
            fh.write(f"{name},{st.mean_speed_ratio:.6f},"
                     f"{st.speed_variance:.6f},{st.mean_distance:.6f}\n")
    for sc in scenarios:
        terrain = generate_terrain(sc.r_g, rows=cycles + fc.gait.n_pairs + 2,
                                   cols=exp.terrain_cols, seed=seeds[0])
        rec = run_trial(fc.gait, fc.geometry, terrain, sc.controller, cycles,
                        steps, SensorModel(flip_prob=sc.flip_prob), seeds[0])
        rec.to_csv(out / f"trace_{sc.name}.csv")
    print(f"wrote {path}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="centiwalk",
                     description="Multi-legged locomotion experiment runner")
    parser.add_argument("--config", default=None, help="config file path")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seeds", type=_seeds, default=None,
                        help="seed list, e.g. '0..19' or '1,2,3'")
    parser.add_argument("--cycles", type=int, default=None)
    parser.add_argument("--steps", type=int, default=None)
    parser.add_argument("--tolerance", type=float, default=None)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gait-dump", help="dump ideal contact map and joint angles")
    tg = sub.add_parser("terrain-gen", help="generate a terrain file")
    tg.add_argument("--r-g", type=float, required=True, dest="r_g")
    sub.add_parser("model-sweep", help="evaluate the analytic models on a grid")
    sub.add_parser("validate", help="analytic vs Monte Carlo gamma agreement")
    sub.add_parser("walk", help="Monte Carlo walks, per-cycle gamma and speed")
    sub.add_parser("controller-compare",
                   help="open-loop vs feedback controller comparison")
    return parser


_COMMANDS = {
    "gait-dump": cmd_gait_dump,
    "terrain-gen": cmd_terrain_gen,
    "model-sweep": cmd_model_sweep,
    "validate": cmd_validate,
    "walk": cmd_walk,
    "controller-compare": cmd_controller_compare,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        fc = load_config(args.config)
        return _COMMANDS[args.command](fc, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except WalkOffTerrainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
