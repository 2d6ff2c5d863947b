"""Monte Carlo trials over random DFAs, with reproducible outputs."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .alpha import solve_alpha
from .errors import InvalidParameterError
from .minimize import state_complexity
from .random_gen import check_accept_prob, check_seed, sample_dfa, split_seed
from .reachability import dud_count, small_threshold, spectrum_census
from .stats import OBSERVABLES, RECORD_FIELDS, Summary, TrialRecord, deviation_band, summarize

DEFAULT_OBSERVABLES = ("r", "m", "excess")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    k: int
    trials: int
    master_seed: int
    accept_prob: float = 0.5
    observables: tuple[str, ...] = DEFAULT_OBSERVABLES
    small_c: float = 4.0
    output_format: str = "csv"
    output_path: Optional[str] = None
    parallel: Optional[int] = None

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.trials < 1:
            raise InvalidParameterError(
                f"need n, k, trials >= 1, got n={self.n}, k={self.k}, trials={self.trials}"
            )
        check_seed(self.master_seed)
        check_accept_prob(self.accept_prob)
        unknown = set(self.observables) - set(OBSERVABLES)
        if unknown:
            raise InvalidParameterError(f"unknown observables {sorted(unknown)}; choose from {OBSERVABLES}")
        if self.output_format not in FORMATS:
            raise InvalidParameterError(f"format must be one of {FORMATS}")
        if self.small_c <= 0:
            raise InvalidParameterError("small-spectrum constant must be positive")
        if self.parallel is not None and self.parallel < 1:
            raise InvalidParameterError("parallel must be >= 1")


def run_trial(config: ExperimentConfig, index: int) -> TrialRecord:
    seed = split_seed(config.master_seed, index)
    d = sample_dfa(config.n, config.k, config.accept_prob, seed)
    report = state_complexity(d)
    r = report.reachable_count
    obs = config.observables
    return TrialRecord(
        trial=index,
        seed=seed,
        n=config.n,
        k=config.k,
        r=r,
        m=report.minimal_size,
        excess=report.excess,
        # one exploration step per edge out of each reached state, plus the initial step
        tau=config.k * r + 1 if "tau" in obs else None,
        duds=dud_count(d.base) if "duds" in obs else None,
        small=(
            spectrum_census(d.base, small_threshold(config.n, config.small_c)).small_count
            if "small" in obs
            else None
        ),
    )


def run_trials(config: ExperimentConfig) -> list[TrialRecord]:
    workers = config.parallel or os.cpu_count() or 1
    indices = range(config.trials)
    if workers == 1:
        records = [run_trial(config, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda i: run_trial(config, i), indices, chunksize=8))
    records.sort(key=lambda rec: rec.trial)
    return records


def _center(config: ExperimentConfig, observable: str, records) -> tuple[float, float]:
    n, k = config.n, config.k
    band = deviation_band(n)
    if observable in ("r", "m", "tau") and k >= 2:
        alpha_n = solve_alpha(k).alpha * n
        if observable == "tau":
            return k * alpha_n + 1, k * band
        return alpha_n, band
    values = [getattr(rec, observable) for rec in records]
    return math.fsum(values) / len(values), band


def summaries(config: ExperimentConfig, records: Sequence[TrialRecord]) -> dict[str, Summary]:
    """Per observable. ``r``, ``m``, ``tau`` center on ``alpha_k n``, others on the sample mean."""
    out = {}
    for obs in config.observables:
        center, band = _center(config, obs, records)
        out[obs] = summarize(records, center, band, obs)
    return out


def notices(config: ExperimentConfig) -> list[str]:
    if config.k == 1 and any(o in ("r", "m", "tau") for o in config.observables):
        return ["k = 1: x = 1 - exp(-x) has no positive root; summaries centered at the empirical mean"]
    return []


def format_records(records: Sequence[TrialRecord], fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for rec in records:
            writer.writerow(["" if v is None else v for v in (getattr(rec, f) for f in RECORD_FIELDS)])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([rec.as_dict() for rec in records], indent=1) + "\n"
    raise InvalidParameterError(f"format must be one of {FORMATS}")


def parse_records(text: str, fmt: str = "csv") -> list[TrialRecord]:
    if fmt == "json":
        return [TrialRecord(**row) for row in json.loads(text)]
    rows = csv.DictReader(io.StringIO(text))
    return [TrialRecord(**{k: (int(v) if v != "" else None) for k, v in row.items()}) for row in rows]


def write_records(records: Sequence[TrialRecord], path: str, fmt: str = "csv") -> None:
    with open(path, "w", encoding="ascii", newline="") as fp:
        fp.write(format_records(records, fmt))


def run_experiment(config: ExperimentConfig) -> tuple[list[TrialRecord], dict[str, Summary]]:
    records = run_trials(config)
    if config.output_path:
        write_records(records, config.output_path, config.output_format)
    return records, summaries(config, records)
