"""
Density experiments: how often random dense colourings of K_n contain an
(r,t)-unavoidable pattern.
"""
import math
import sys
import time
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Optional

import pandas as pd

from config import load_config
from errors import ConfigError
from graphs import EdgeColouring
from unavoidable import detect_unavoidable, unavoidable_family
from workers import parallel_map, trial_rng


@dataclass(frozen=True)
class DensityConfig:
    n: int
    r: int
    t: int
    min_edges: int
    trials: int
    seed: int = 0
    attempts: Optional[int] = None


@dataclass
class DensityReport:
    config: DensityConfig
    success_fraction: float
    trials: pd.DataFrame
    timing: dict

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "success_fraction": self.success_fraction,
            "trials": self.trials.to_dict(orient="records"),
        }


def density_threshold(n: int, t: int, constant: Optional[float] = None) -> int:
    """ceil(C * n^(2 - 1/t)), with C from config when not given."""
    constant = load_config()["drc_constant"] if constant is None else constant
    return math.ceil(round(constant * n ** (2 - 1 / t), 9))


def validate_density_config(cfg: DensityConfig):
    total = cfg.n * (cfg.n - 1) // 2
    if cfg.trials < 1:
        raise ConfigError(f"trials must be at least 1, got {cfg.trials}")
    if cfg.r < 1 or cfg.t < 2:
        raise ConfigError(f"need r >= 1 and t >= 2, got r={cfg.r}, t={cfg.t}")
    if cfg.n < 2 * cfg.r * cfg.t:
        raise ConfigError(f"n={cfg.n} is below 2rt={2 * cfg.r * cfg.t}")
    if cfg.min_edges > total:
        raise ConfigError(f"edge minimum {cfg.min_edges} exceeds the {total} edges of K_{cfg.n}")
    if cfg.min_edges * cfg.r > total:
        raise ConfigError(
            f"edge minimum {cfg.min_edges} per colour is infeasible: "
            f"K_{cfg.n} has {total} edges for {cfg.r} colours"
        )


def sample_dense_colouring(cfg: DensityConfig, trial: int):
    """
    Uniform r-colouring of K_n conditioned on every colour reaching min_edges.

    Returns:
        (colouring or None, replay key [seed, trial, attempt])
    """
    attempts = cfg.attempts if cfg.attempts is not None else load_config()["sampling_attempts"]
    pairs = list(combinations(range(cfg.n), 2))
    for attempt in range(attempts):
        rng = trial_rng(cfg.seed, trial, attempt)
        colours = rng.integers(0, cfg.r, size=len(pairs))
        counts = [int((colours == colour).sum()) for colour in range(cfg.r)]
        if min(counts) >= cfg.min_edges:
            assignment = {pair: int(colour) for pair, colour in zip(pairs, colours)}
            return EdgeColouring(cfg.r, assignment), [cfg.seed, trial, attempt]
    return None, [cfg.seed, trial, attempts - 1]


def density_experiment(cfg: DensityConfig, workers: int = 1) -> DensityReport:
    """
    Sample cfg.trials dense colourings and run detection on each.

    Trial streams depend only on (seed, trial, attempt), so the trials table
    is the same for any worker count. Detection times are kept apart in
    `timing`.
    """
    validate_density_config(cfg)
    family = unavoidable_family(cfg.r, cfg.t)
    print(f"🔍 Density experiment: {cfg.trials} trials on K_{cfg.n}, "
          f"r={cfg.r}, t={cfg.t}, min={cfg.min_edges}", file=sys.stderr)

    def run(trial: int) -> dict:
        c, replay = sample_dense_colouring(cfg, trial)
        if c is None:
            return {"trial": trial, "replay": replay, "sampled": False,
                    "found": False, "member_index": None, "elapsed_ms": 0.0}
        started = time.perf_counter()
        hit = detect_unavoidable(c, cfg.r, cfg.t, cfg.n, family=family)
        elapsed = (time.perf_counter() - started) * 1000
        return {"trial": trial, "replay": replay, "sampled": True, "found": hit is not None,
                "member_index": None if hit is None else hit.member_index, "elapsed_ms": elapsed}

    rows = parallel_map(run, range(cfg.trials), workers)
    frame = pd.DataFrame(rows)
    frame["member_index"] = pd.Series([row["member_index"] for row in rows], dtype="object")
    timing = {
        "mean_detection_ms": float(frame["elapsed_ms"].mean()),
        "per_trial_ms": [round(x, 3) for x in frame["elapsed_ms"]],
    }
    frame = frame.drop(columns=["elapsed_ms"])
    fraction = float(frame["found"].mean())

    unsampled = int((~frame["sampled"]).sum())
    if unsampled:
        print(f"⚠️  {unsampled} trials never met the edge minimum", file=sys.stderr)
    print(f"✅ Success fraction {fraction:.3f}", file=sys.stderr)
    return DensityReport(cfg, fraction, frame, timing)
