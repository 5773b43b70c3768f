#!/usr/bin/env python3
"""
Syndromes, shift-error decoders and single-mode correctability.

Syndrome component j is omega(u_j, e), generator first. As a linear map on
e = (s|t) its row is (-u_j.t | u_j.s).
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from cvstab import config
from cvstab.channel import ShiftError
from cvstab.code import LogicalBasis, StabilizerCode, logical_basis
from cvstab.errors import CvstabError, DimensionMismatch
from cvstab.symplectic import PauliVector, nullspace, rref, symplectic_form

logger = logging.getLogger(__name__)

MIN_NORM = "min-norm"
SINGLE_MODE = "single-mode"
DECODERS = (MIN_NORM, SINGLE_MODE)

FAMILIES = ("both", "q", "p")


@dataclass(eq=False)
class Syndrome:
    code: StabilizerCode
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float) + 0.0
        if self.values.shape != (self.code.k,):
            raise DimensionMismatch(self.code.k, self.values.size)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.values)


@dataclass(eq=False)
class DecodeResult:
    correction: ShiftError
    mode: Optional[int]
    syndrome_residual: float
    residual: Optional[ShiftError] = None
    logical_displacement: Optional[np.ndarray] = None
    success: bool = False

    @property
    def max_logical_displacement(self) -> Optional[float]:
        if self.logical_displacement is None:
            return None
        return float(np.max(np.abs(self.logical_displacement), initial=0.0))


@dataclass(frozen=True)
class PairFailure:
    """Shifts on modes (i, j), 0-based, whose difference is silent but acts logically"""

    modes: Tuple[int, ...]
    witness: PauliVector
    action: Tuple[Fraction, ...]


@dataclass
class CorrectabilityReport:
    families: Dict[str, bool] = field(default_factory=dict)
    failures: Dict[str, List[PairFailure]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.families["both"]


def syndrome_rows(code: StabilizerCode) -> List[List[Fraction]]:
    return [[-x for x in u.t] + list(u.s) for u in code.generators]


@lru_cache(maxsize=64)
def syndrome_matrix(code: StabilizerCode) -> np.ndarray:
    """Float syndrome map, cached per code and read-only"""
    h = np.array([[float(x) for x in row] for row in syndrome_rows(code)], dtype=float).reshape(code.k, 2 * code.n)
    h.setflags(write=False)
    return h


def syndrome(code: StabilizerCode, e: ShiftError) -> Syndrome:
    if e.n != code.n:
        raise DimensionMismatch(code.n, e.n)
    return Syndrome(code, syndrome_matrix(code) @ e.displacement)


def syndrome_exact(code: StabilizerCode, e: PauliVector) -> Tuple[Fraction, ...]:
    if e.n != code.n:
        raise DimensionMismatch(code.n, e.n)
    return tuple(symplectic_form(u, e) for u in code.generators)


def parse_syndrome_literal(text: str, code: StabilizerCode) -> Syndrome:
    """'0.3,0,-0.1' -> Syndrome"""
    try:
        values = [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise CvstabError(f"syndrome '{text}' is not a comma-separated list of numbers")
    return Syndrome(code, np.array(values))


def _omega_float(v: PauliVector, e: np.ndarray) -> float:
    n = v.n
    return float(np.dot(v.to_array()[:n], e[n:]) - np.dot(e[:n], v.to_array()[n:]))


def logical_action(code: StabilizerCode, basis: LogicalBasis, e: ShiftError) -> np.ndarray:
    """
    Induced logical displacement (a_1, b_1, ..., a_m, b_m) with
    e = sum a_i x_i + b_i z_i mod W, i.e. a_i = omega(e, z_i), b_i = omega(x_i, e).
    """
    if e.n != code.n:
        raise DimensionMismatch(code.n, e.n)
    out = []
    for x, z in basis.pairs:
        out.append(-_omega_float(z, e.displacement))
        out.append(_omega_float(x, e.displacement))
    return np.array(out, dtype=float) + 0.0


def logical_action_exact(code: StabilizerCode, basis: LogicalBasis, e: PauliVector) -> Tuple[Fraction, ...]:
    if e.n != code.n:
        raise DimensionMismatch(code.n, e.n)
    return tuple(c for x, z in basis.pairs for c in (symplectic_form(e, z), symplectic_form(x, e)))


def decode_min_norm(code: StabilizerCode, s: Syndrome) -> ShiftError:
    """Least-squares preimage of smallest Euclidean norm"""
    if s.is_zero:
        return ShiftError.zero(code.n)
    e = np.linalg.pinv(syndrome_matrix(code)) @ s.values
    return ShiftError(code.n, e + 0.0)


def decode_min_norm_exact(code: StabilizerCode, values: Sequence) -> PauliVector:
    """H^T (H H^T)^-1 s over the rationals; H has full row rank for a validated code"""
    values = [Fraction(v) for v in values]
    if len(values) != code.k:
        raise DimensionMismatch(code.k, len(values))
    h = syndrome_rows(code)
    gram = [[sum((a * b for a, b in zip(hi, hj)), Fraction(0)) for hj in h] for hi in h]
    reduced, pivots = rref([row + [v] for row, v in zip(gram, values)], code.k + 1)
    y = [Fraction(0)] * code.k
    for row, p in zip(reduced, pivots):
        y[p] = row[-1]
    coords = [sum((h[j][c] * y[j] for j in range(code.k)), Fraction(0)) for c in range(2 * code.n)]
    return PauliVector.from_coords(coords)


def _finish(
    code: StabilizerCode,
    s: Syndrome,
    correction: ShiftError,
    mode: Optional[int],
    basis: Optional[LogicalBasis],
    error: Optional[ShiftError],
    tol: float,
    syndrome_tol: float,
) -> DecodeResult:
    syndrome_residual = float(np.max(np.abs(syndrome(code, correction).values - s.values), initial=0.0))
    result = DecodeResult(correction, mode, syndrome_residual)
    result.success = syndrome_residual <= syndrome_tol
    if error is not None:
        basis = basis or logical_basis(code)
        result.residual = error - correction
        result.logical_displacement = logical_action(code, basis, result.residual)
        result.success = result.max_logical_displacement <= tol
    return result


def decode_single_mode(
    code: StabilizerCode,
    s: Syndrome,
    basis: Optional[LogicalBasis] = None,
    error: Optional[ShiftError] = None,
    tol: float = config.TOLERANCE,
    syndrome_tol: float = config.SYNDROME_TOLERANCE,
) -> DecodeResult:
    """
    Best shift confined to a single mode: a 2-parameter least-squares fit per
    mode, smallest residual wins, ties go to the lowest mode. A zero syndrome
    decodes to the identity.
    """
    n = code.n
    if s.is_zero:
        return _finish(code, s, ShiftError.zero(n), None, basis, error, tol, syndrome_tol)

    h = syndrome_matrix(code)
    tie = 1e-12 * max(1.0, float(np.linalg.norm(s.values)))
    best_mode, best_shift, best_norm = None, None, np.inf
    for mode in range(n):
        columns = h[:, [mode, n + mode]]
        shift, *_ = np.linalg.lstsq(columns, s.values, rcond=None)
        norm = float(np.linalg.norm(columns @ shift - s.values))
        logger.debug(f"mode {mode + 1}: shift {shift}, residual {norm:.3g}")
        if norm < best_norm - tie:
            best_mode, best_shift, best_norm = mode, shift, norm

    correction = ShiftError.from_mode(n, best_mode, best_shift[0] + 0.0, best_shift[1] + 0.0)
    result = _finish(code, s, correction, best_mode, basis, error, tol, syndrome_tol)
    if best_norm > syndrome_tol:
        logger.debug(f"no single-mode shift reproduces the syndrome; best residual {best_norm:.3g} on mode {best_mode + 1}")
    return result


def decode(
    code: StabilizerCode,
    s: Syndrome,
    decoder: str = SINGLE_MODE,
    basis: Optional[LogicalBasis] = None,
    error: Optional[ShiftError] = None,
    tol: float = config.TOLERANCE,
    syndrome_tol: float = config.SYNDROME_TOLERANCE,
) -> DecodeResult:
    if decoder == SINGLE_MODE:
        return decode_single_mode(code, s, basis, error, tol, syndrome_tol)
    if decoder == MIN_NORM:
        return _finish(code, s, decode_min_norm(code, s), None, basis, error, tol, syndrome_tol)
    raise CvstabError(f"unknown decoder '{decoder}'; choose one of: {', '.join(DECODERS)}")


def _columns(n: int, modes: Sequence[int], family: str) -> List[int]:
    columns = []
    for mode in modes:
        if family in ("q", "both"):
            columns.append(mode)
        if family in ("p", "both"):
            columns.append(n + mode)
    return columns


def restricted_kernel(code: StabilizerCode, modes: Sequence[int], family: str = "both") -> List[PauliVector]:
    """Exact kernel of the syndrome map on shifts supported on the given modes, embedded in Q^{2n}"""
    columns = _columns(code.n, modes, family)
    h = syndrome_rows(code)
    restricted = [[row[c] for c in columns] for row in h]
    kernel = []
    for vec in nullspace(restricted, len(columns)):
        coords = [Fraction(0)] * (2 * code.n)
        for c, x in zip(columns, vec):
            coords[c] = x
        kernel.append(PauliVector.from_coords(coords))
    return kernel


def check_single_mode_correctability(code: StabilizerCode, basis: Optional[LogicalBasis] = None) -> CorrectabilityReport:
    """
    Single-mode shifts are correctable iff for every pair of modes the silent
    shifts on those two modes all lie in the stabilizer. Checked per family:
    arbitrary shifts, q-only and p-only.
    """
    basis = basis or logical_basis(code)
    w = code.stabilizer_space()
    pairs = list(itertools.combinations(range(code.n), 2)) if code.n > 1 else [(0,)]
    report = CorrectabilityReport()
    for family in FAMILIES:
        failures = []
        for modes in pairs:
            for v in restricted_kernel(code, modes, family):
                if not w.contains(v):
                    failures.append(PairFailure(tuple(modes), v, logical_action_exact(code, basis, v)))
                    break
        report.families[family] = not failures
        report.failures[family] = failures
        logger.info(f"{code.name}: {family} shifts {'PASS' if not failures else 'FAIL'} ({len(failures)} failing pairs)")
    return report
