"""
Shift-error models for simulation.

Errors are real displacement vectors e in (s|t) layout: a q-shift sits in the
s slot of its mode, a p-shift in the t slot. Samplers are stateless; every
trial gets its own numpy Generator derived from (seed, trial).
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from cvstab.errors import DimensionMismatch, InvalidModel

logger = logging.getLogger(__name__)

SINGLE_MODE = "single-mode-gaussian"
IID = "iid-gaussian"
FIXED = "fixed"
KINDS = (SINGLE_MODE, IID, FIXED)
RESTRICTIONS = ("q", "p", "both")


@dataclass(eq=False)
class ShiftError:
    n: int
    displacement: np.ndarray

    def __post_init__(self):
        self.displacement = np.asarray(self.displacement, dtype=float)
        if self.displacement.shape != (2 * self.n,):
            raise DimensionMismatch(2 * self.n, self.displacement.size)
        if not np.all(np.isfinite(self.displacement)):
            raise InvalidModel("shift error has non-finite entries")

    @classmethod
    def from_mode(cls, n: int, mode: int, q: float = 0.0, p: float = 0.0) -> "ShiftError":
        """Shift confined to a 0-based mode"""
        if not 0 <= mode < n:
            raise InvalidModel(f"mode {mode + 1} outside 1..{n}")
        e = np.zeros(2 * n)
        e[mode] = q
        e[n + mode] = p
        return cls(n, e)

    @classmethod
    def zero(cls, n: int) -> "ShiftError":
        return cls(n, np.zeros(2 * n))

    @property
    def s(self) -> np.ndarray:
        return self.displacement[: self.n]

    @property
    def t(self) -> np.ndarray:
        return self.displacement[self.n:]

    def support(self):
        """0-based modes carrying a nonzero shift"""
        return [i for i in range(self.n) if self.s[i] != 0 or self.t[i] != 0]

    def __sub__(self, other: "ShiftError") -> "ShiftError":
        if other.n != self.n:
            raise DimensionMismatch(self.n, other.n)
        return ShiftError(self.n, self.displacement - other.displacement)


@dataclass(frozen=True)
class ErrorModel:
    kind: str
    sigma: Optional[float] = None
    restrict: str = "both"
    fixed: Optional[Dict[int, tuple]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidModel(f"unknown error model '{self.kind}'; choose one of: {', '.join(KINDS)}")
        if self.kind in (SINGLE_MODE, IID):
            if self.sigma is None or not math.isfinite(self.sigma) or self.sigma <= 0:
                raise InvalidModel(f"{self.kind} needs a finite sigma > 0, got {self.sigma}")
        if self.restrict not in RESTRICTIONS:
            raise InvalidModel(f"restrict must be one of {', '.join(RESTRICTIONS)}, got '{self.restrict}'")
        if self.kind == FIXED and self.fixed is None:
            raise InvalidModel("fixed model needs a shift")

    def describe(self) -> str:
        if self.kind == SINGLE_MODE:
            return f"{self.kind}:sigma={self.sigma:g},restrict={self.restrict}"
        if self.kind == IID:
            return f"{self.kind}:sigma={self.sigma:g}"
        shifts = ";".join(f"mode={m + 1},q={q:g},p={p:g}" for m, (q, p) in sorted(self.fixed.items()))
        return f"{self.kind}:{shifts}"

    def with_sigma(self, sigma: float) -> "ErrorModel":
        return ErrorModel(self.kind, sigma, self.restrict, self.fixed)


@dataclass(frozen=True)
class MeasurementNoise:
    """Additive Normal(0, sigma_m^2) on each syndrome component"""

    sigma_m: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.sigma_m) or self.sigma_m < 0:
            raise InvalidModel(f"measurement noise needs a finite sigma_m >= 0, got {self.sigma_m}")

    def apply(self, values: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        if self.sigma_m == 0:
            return values.copy()
        return values + rng.normal(0.0, self.sigma_m, size=values.shape)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def parse_assignments(text: str) -> Dict[str, str]:
    """'a=1,b=x' -> {'a': '1', 'b': 'x'}"""
    out = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise InvalidModel(f"expected key=value, got '{item}'")
        if key.strip() in out:
            raise InvalidModel(f"'{key.strip()}' given twice")
        out[key.strip()] = value.strip()
    return out


def _float(value: str, key: str) -> float:
    try:
        number = float(value)
    except ValueError:
        raise InvalidModel(f"{key}='{value}' is not a number")
    if not math.isfinite(number):
        raise InvalidModel(f"{key}='{value}' is not finite")
    return number


def _shift_from_assignments(fields: Dict[str, str]) -> tuple:
    unknown = set(fields) - {"mode", "q", "p"}
    if unknown:
        raise InvalidModel(f"unknown error fields: {', '.join(sorted(unknown))}")
    if "mode" not in fields:
        raise InvalidModel("error literal needs mode=<1-based index>")
    try:
        mode = int(fields["mode"])
    except ValueError:
        raise InvalidModel(f"mode='{fields['mode']}' is not an integer")
    return mode - 1, _float(fields.get("q", "0"), "q"), _float(fields.get("p", "0"), "p")


def parse_error_literal(text: str, n: int) -> ShiftError:
    """
    'mode=2,q=0.3,p=-0.1' with a 1-based mode; several shifts may be joined
    with ';' and are summed.
    """
    e = np.zeros(2 * n)
    for part in filter(None, (chunk.strip() for chunk in text.split(";"))):
        mode, q, p = _shift_from_assignments(parse_assignments(part))
        e = e + ShiftError.from_mode(n, mode, q, p).displacement
    return ShiftError(n, e)


def parse_model(text: str) -> ErrorModel:
    """
    Model strings:

        single-mode-gaussian:sigma=0.5,restrict=q
        iid-gaussian:sigma=0.1
        fixed:mode=2,q=0.3,p=-0.1
    """
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip()
    if kind == FIXED:
        fixed = {}
        for part in filter(None, (chunk.strip() for chunk in rest.split(";"))):
            mode, q, p = _shift_from_assignments(parse_assignments(part))
            if mode < 0:
                raise InvalidModel(f"mode {mode + 1} must be >= 1")
            previous = fixed.get(mode, (0.0, 0.0))
            fixed[mode] = (previous[0] + q, previous[1] + p)
        return ErrorModel(FIXED, fixed=fixed)

    fields = parse_assignments(rest)
    allowed = {"sigma", "restrict"} if kind == SINGLE_MODE else {"sigma"}
    unknown = set(fields) - allowed
    if kind in KINDS and unknown:
        raise InvalidModel(f"unknown {kind} parameters: {', '.join(sorted(unknown))}")
    sigma = _float(fields["sigma"], "sigma") if "sigma" in fields else None
    return ErrorModel(kind, sigma, fields.get("restrict", "both"))


def sample_error(model: ErrorModel, n: int, rng: np.random.Generator) -> ShiftError:
    """
    single-mode-gaussian: uniform mode, then q (s slot) before p (t slot) on the
    allowed quadratures. iid-gaussian: all 2n components. fixed: verbatim.
    """
    if model.kind == FIXED:
        for mode in model.fixed:
            if mode >= n:
                raise InvalidModel(f"fixed shift on mode {mode + 1} but the code has {n} modes")
        e = np.zeros(2 * n)
        for mode, (q, p) in model.fixed.items():
            e[mode] += q
            e[n + mode] += p
        return ShiftError(n, e)
    if model.kind == IID:
        return ShiftError(n, rng.normal(0.0, model.sigma, size=2 * n))

    mode = int(rng.integers(n))
    q = rng.normal(0.0, model.sigma) if model.restrict in ("q", "both") else 0.0
    p = rng.normal(0.0, model.sigma) if model.restrict in ("p", "both") else 0.0
    return ShiftError.from_mode(n, mode, q, p)


def fixed_model(shifts: Sequence[tuple]) -> ErrorModel:
    """From (0-based mode, q, p) triples"""
    fixed = {}
    for mode, q, p in shifts:
        previous = fixed.get(mode, (0.0, 0.0))
        fixed[mode] = (previous[0] + q, previous[1] + p)
    return ErrorModel(FIXED, fixed=fixed)
