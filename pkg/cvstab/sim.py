"""
Seeded Monte Carlo harness: sample a shift, measure its syndrome with optional
noise, decode, and tally the logical damage left behind.

Trial i draws everything from numpy.random.default_rng([seed, i]), so a
summary depends only on (code, basis, model, decoder, noise, trials, seed).
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, TextIO

import numpy as np
import pandas as pd

from cvstab import config
from cvstab.channel import FIXED, ErrorModel, MeasurementNoise, ShiftError, sample_error, trial_rng
from cvstab.code import LogicalBasis, StabilizerCode, logical_basis
from cvstab.decode import DECODERS, DecodeResult, Syndrome, decode, syndrome
from cvstab.errors import InvalidModel

logger = logging.getLogger(__name__)

SIGMA = "sigma"
SIGMA_M = "sigma_m"
SWEEP_PARAMETERS = (SIGMA, SIGMA_M)
CSV_COLUMNS = ["param", "trials", "failures", "failure_rate", "max_logical_disp", "rms_logical_disp", "seed"]
TRIAL_COLUMNS = ["trial", "success", "max_logical_disp", "mode", "error", "syndrome"]


@dataclass(eq=False)
class TrialRecord:
    index: int
    error: ShiftError
    syndrome: Syndrome
    result: DecodeResult

    @property
    def success(self) -> bool:
        return self.result.success


@dataclass
class SimSummary:
    trials: int
    failures: int
    max_logical_disp: float
    rms_logical_disp: float
    wall_time: float
    seed: int
    param: Optional[float] = None
    records: List[TrialRecord] = field(default_factory=list, repr=False)

    @property
    def successes(self) -> int:
        return self.trials - self.failures

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials

    def row(self) -> dict:
        return {
            "param": self.param,
            "trials": self.trials,
            "failures": self.failures,
            "failure_rate": self.failure_rate,
            "max_logical_disp": self.max_logical_disp,
            "rms_logical_disp": self.rms_logical_disp,
            "seed": self.seed,
        }


def _check_setup(code: StabilizerCode, model: ErrorModel, decoder: str, trials: int):
    if trials < 1:
        raise InvalidModel(f"trials must be >= 1, got {trials}")
    if decoder not in DECODERS:
        raise InvalidModel(f"unknown decoder '{decoder}'; choose one of: {', '.join(DECODERS)}")
    if model.kind == FIXED and any(mode >= code.n for mode in model.fixed):
        raise InvalidModel(f"fixed shift outside the code's {code.n} modes")
    if code.logical_modes == 0:
        raise InvalidModel(f"{code.name or 'code'} encodes no logical modes; there is nothing to protect")


def run_trial(
    code: StabilizerCode,
    basis: LogicalBasis,
    model: ErrorModel,
    decoder: str,
    noise: MeasurementNoise,
    seed: int,
    index: int,
    tol: float = config.TOLERANCE,
) -> TrialRecord:
    rng = trial_rng(seed, index)
    error = sample_error(model, code.n, rng)
    measured = Syndrome(code, noise.apply(syndrome(code, error).values, rng))
    result = decode(code, measured, decoder, basis, error, tol=tol)
    return TrialRecord(index, error, measured, result)


def run_trials(
    code: StabilizerCode,
    basis: Optional[LogicalBasis],
    model: ErrorModel,
    decoder: str = "single-mode",
    noise: MeasurementNoise = MeasurementNoise(),
    trials: int = 1000,
    seed: int = config.SEED,
    tol: float = config.TOLERANCE,
    keep_records: bool = False,
    param: Optional[float] = None,
) -> SimSummary:
    _check_setup(code, model, decoder, trials)
    basis = basis or logical_basis(code)
    start = time.perf_counter()

    failures = 0
    peak = 0.0
    square_sum = 0.0
    records = []
    for index in range(trials):
        record = run_trial(code, basis, model, decoder, noise, seed, index, tol)
        displacement = record.result.logical_displacement
        failures += not record.success
        peak = max(peak, record.result.max_logical_displacement)
        square_sum += float(np.sum(displacement ** 2))
        if keep_records:
            records.append(record)

    summary = SimSummary(
        trials=trials,
        failures=failures,
        max_logical_disp=peak,
        rms_logical_disp=float(np.sqrt(square_sum / trials)),
        wall_time=time.perf_counter() - start,
        seed=seed,
        param=param,
        records=records,
    )
    logger.info(
        f"{code.name}: {model.describe()}, {decoder}, sigma_m={noise.sigma_m:g}: "
        f"{failures}/{trials} failures in {summary.wall_time:.2f}s"
    )
    return summary


def sweep(
    code: StabilizerCode,
    basis: Optional[LogicalBasis],
    model: ErrorModel,
    parameter: str,
    grid: Sequence[float],
    decoder: str = "single-mode",
    noise: MeasurementNoise = MeasurementNoise(),
    trials: int = 1000,
    seed: int = config.SEED,
    tol: float = config.TOLERANCE,
) -> pd.DataFrame:
    """One run_trials per grid point, varying sigma of the model or sigma_m of the noise"""
    if not grid:
        raise InvalidModel("sweep grid is empty")
    if parameter not in SWEEP_PARAMETERS:
        raise InvalidModel(f"can only sweep {' or '.join(SWEEP_PARAMETERS)}, got '{parameter}'")
    if parameter == SIGMA and model.kind == FIXED:
        raise InvalidModel("a fixed error model has no sigma to sweep")
    basis = basis or logical_basis(code)

    rows = []
    for value in grid:
        point_model = model.with_sigma(value) if parameter == SIGMA else model
        point_noise = MeasurementNoise(value) if parameter == SIGMA_M else noise
        summary = run_trials(code, basis, point_model, decoder, point_noise, trials, seed, tol, param=value)
        rows.append(summary.row())
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def summary_frame(summaries: Sequence[SimSummary]) -> pd.DataFrame:
    return pd.DataFrame([s.row() for s in summaries], columns=CSV_COLUMNS)


def records_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    """Per-trial table; vectors are written space-separated"""
    return pd.DataFrame(
        [
            {
                "trial": r.index,
                "success": int(r.success),
                "max_logical_disp": r.result.max_logical_displacement,
                "mode": "" if r.result.mode is None else r.result.mode + 1,
                "error": " ".join(config.FLOAT_FORMAT % x for x in r.error.displacement),
                "syndrome": " ".join(config.FLOAT_FORMAT % x for x in r.syndrome.values),
            }
            for r in records
        ],
        columns=TRIAL_COLUMNS,
    )


def write_csv(frame: pd.DataFrame, out: TextIO):
    frame.to_csv(out, index=False, float_format=config.FLOAT_FORMAT, lineterminator="\n")
