#!/usr/bin/env python3
"""
Exact symplectic linear algebra over Q^{2n}.

A vector v = (s_1..s_n | t_1..t_n) indexes the displacement operator
U(v) = exp(i*pi*sum(s_i p_i + t_i q_i)); s is the momentum-generator part
(position shifts) and t the position-generator part (momentum shifts).
All construction work is done with fractions.Fraction so that "omega == 0"
is a decidable test.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from cvstab.errors import CvstabError, DimensionMismatch, DimensionParity, NonIsotropic, NotInComplement

logger = logging.getLogger(__name__)

Scalar = Fraction
ScalarLike = Union[int, str, Fraction]

SYMPLECTIC = "symplectic"
SWAP = "swap"
CONVENTIONS = (SYMPLECTIC, SWAP)


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, a rational token like '3/2' or a Fraction to a canonical Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class PauliVector:
    """Vector (s | t) in Q^{2n} indexing the operator U(v)"""

    s: Tuple[Fraction, ...]
    t: Tuple[Fraction, ...]

    def __post_init__(self):
        s = tuple(to_scalar(x) for x in self.s)
        t = tuple(to_scalar(x) for x in self.t)
        if len(s) != len(t):
            raise DimensionMismatch(len(s), len(t))
        if len(s) < 1:
            raise CvstabError("a PauliVector needs at least one mode")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @classmethod
    def from_coords(cls, coords: Sequence[ScalarLike]) -> "PauliVector":
        if len(coords) % 2:
            raise CvstabError(f"coordinate list of odd length {len(coords)}")
        n = len(coords) // 2
        return cls(tuple(coords[:n]), tuple(coords[n:]))

    @classmethod
    def zero(cls, n: int) -> "PauliVector":
        return cls((0,) * n, (0,) * n)

    @classmethod
    def unit(cls, n: int, index: int) -> "PauliVector":
        """Standard basis vector; index runs over the 2n coordinates"""
        coords = [0] * (2 * n)
        coords[index] = 1
        return cls.from_coords(coords)

    @property
    def n(self) -> int:
        return len(self.s)

    @property
    def coords(self) -> Tuple[Fraction, ...]:
        return self.s + self.t

    def is_zero(self) -> bool:
        return not any(self.coords)

    def scale(self, c: ScalarLike) -> "PauliVector":
        c = to_scalar(c)
        return PauliVector(tuple(c * x for x in self.s), tuple(c * x for x in self.t))

    def __add__(self, other: "PauliVector") -> "PauliVector":
        _check_modes(self, other)
        return PauliVector(
            tuple(a + b for a, b in zip(self.s, other.s)),
            tuple(a + b for a, b in zip(self.t, other.t)),
        )

    def __sub__(self, other: "PauliVector") -> "PauliVector":
        return self + (-other)

    def __neg__(self) -> "PauliVector":
        return self.scale(-1)

    def to_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.coords], dtype=float)

    def __str__(self) -> str:
        s = ",".join(format_scalar(x) for x in self.s)
        t = ",".join(format_scalar(x) for x in self.t)
        return f"({s}|{t})"


@dataclass(frozen=True)
class HeisenbergWeylOp:
    """Operator e^{i*pi*phase} U(vector); phase kept in [0, 2)"""

    vector: PauliVector
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "phase", to_scalar(self.phase) % 2)

    @classmethod
    def X(cls, mode: int, amount: ScalarLike, n: int) -> "HeisenbergWeylOp":
        """Position shift X(amount) on a 0-based mode"""
        return cls(PauliVector.unit(n, mode).scale(amount))

    @classmethod
    def Z(cls, mode: int, amount: ScalarLike, n: int) -> "HeisenbergWeylOp":
        """Momentum shift Z(amount) on a 0-based mode"""
        return cls(PauliVector.unit(n, n + mode).scale(amount))

    @property
    def n(self) -> int:
        return self.vector.n


@dataclass(frozen=True)
class Subspace:
    """Span of rows over Q, stored in reduced row-echelon form"""

    n: int
    basis: Tuple[PauliVector, ...] = field(default_factory=tuple)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: PauliVector) -> bool:
        _check_n(self.n, v.n)
        return not any(_reduce_against(list(v.coords), self.basis))

    def rows(self) -> List[List[Fraction]]:
        return [list(b.coords) for b in self.basis]


def _check_n(expected: int, got: int):
    if expected != got:
        raise DimensionMismatch(expected, got)


def _check_modes(v: PauliVector, w: PauliVector):
    _check_n(v.n, w.n)


def _reduce_against(coords: List[Fraction], basis: Sequence[PauliVector]) -> List[Fraction]:
    """Remainder of coords after elimination by RREF rows"""
    for row in basis:
        rc = row.coords
        pivot = next(i for i, x in enumerate(rc) if x != 0)
        f = coords[pivot]
        if f:
            coords = [a - f * b for a, b in zip(coords, rc)]
    return coords


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """
    Reduced row-echelon form over the rationals.

    Returns the nonzero rows (pivots normalized to 1, zeros above and below
    every pivot) and the pivot column of each returned row.
    """
    m = [[to_scalar(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : A x = 0}, one vector per free column"""
    reduced, pivots = rref(rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[free]
        basis.append(vec)
    return basis


def symplectic_form(v: PauliVector, w: PauliVector) -> Fraction:
    """omega(v, w) = sum_i (v.s_i w.t_i - w.s_i v.t_i)"""
    _check_modes(v, w)
    return sum((a * d - b * c for a, b, c, d in zip(v.s, w.s, v.t, w.t)), Fraction(0))


def commutation_phase(a: HeisenbergWeylOp, b: HeisenbergWeylOp) -> Fraction:
    """Phase (units of pi, mod 2) picked up when swapping a and b; 0 means they commute"""
    return symplectic_form(a.vector, b.vector) % 2


def multiply(a: HeisenbergWeylOp, b: HeisenbergWeylOp) -> HeisenbergWeylOp:
    # phase(ab) = phase(a) + phase(b) + omega(a, b)/2 so that ab = e^{i pi omega} ba
    omega = symplectic_form(a.vector, b.vector)
    return HeisenbergWeylOp(a.vector + b.vector, a.phase + b.phase + omega / 2)


def power(op: HeisenbergWeylOp, r: ScalarLike) -> HeisenbergWeylOp:
    """U(v)^r = U(r v) along the one-parameter group, phase scaled alike"""
    r = to_scalar(r)
    return HeisenbergWeylOp(op.vector.scale(r), op.phase * r)


def span(rows: Iterable[PauliVector], n: Optional[int] = None) -> Subspace:
    rows = list(rows)
    if n is None:
        if not rows:
            raise CvstabError("cannot take the span of an empty list without a mode count")
        n = rows[0].n
    for row in rows:
        _check_n(n, row.n)
    reduced, _ = rref([r.coords for r in rows], 2 * n)
    return Subspace(n, tuple(PauliVector.from_coords(r) for r in reduced))


def symplectic_complement(w: Subspace) -> Subspace:
    """W^omega = {v : omega(v, u) = 0 for all u in W}, of dimension 2n - dim W"""
    # omega(v, u) = v.s . u.t - v.t . u.s, so each u contributes the row (u.t | -u.s)
    constraints = [list(u.t) + [-x for x in u.s] for u in w.basis]
    kernel = nullspace(constraints, 2 * w.n)
    return span((PauliVector.from_coords(v) for v in kernel), w.n)


def first_noncommuting_pair(rows: Sequence[PauliVector]) -> Optional[Tuple[int, int, Fraction]]:
    """First (i, j, omega) with i < j (0-based) and omega != 0, or None"""
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            value = symplectic_form(rows[i], rows[j])
            if value != 0:
                return i, j, value
    return None


def is_isotropic(w: Subspace) -> bool:
    return first_noncommuting_pair(w.basis) is None


def gram_matrix(vectors: Sequence[PauliVector]) -> List[List[Fraction]]:
    return [[symplectic_form(a, b) for b in vectors] for a in vectors]


def standard_gram(pairs: int) -> List[List[Fraction]]:
    """Gram matrix of (x_1, z_1, ..., x_m, z_m) for a hyperbolic basis"""
    g = [[Fraction(0)] * (2 * pairs) for _ in range(2 * pairs)]
    for i in range(pairs):
        g[2 * i][2 * i + 1] = Fraction(1)
        g[2 * i + 1][2 * i] = Fraction(-1)
    return g


def complement_within(outer: Subspace, inner: Subspace) -> List[PauliVector]:
    """Rows of outer, in order, that extend a basis of inner to a basis of outer"""
    chosen = []
    current = inner
    for v in outer.basis:
        if not current.contains(v):
            chosen.append(v)
            current = span(current.basis + (v,), outer.n)
    return chosen


def symplectic_gram_schmidt(w_omega: Subspace, w: Subspace) -> List[Tuple[PauliVector, PauliVector]]:
    """
    Hyperbolic basis (x_i, z_i) of w_omega / w with omega(x_i, z_j) = delta_ij.

    Pivoting is deterministic: the first remaining vector is paired with the
    first later vector it fails to commute with, z is normalized by 1/omega,
    and both are projected out of the rest.
    """
    _check_n(w_omega.n, w.n)
    bad = first_noncommuting_pair(w.basis)
    if bad is not None:
        i, j, value = bad
        raise NonIsotropic(i + 1, j + 1, value)
    for u in w.basis:
        if not w_omega.contains(u):
            raise NotInComplement(f"{u} lies in w but not in w_omega")
    gap = w_omega.dim - w.dim
    if gap % 2:
        raise DimensionParity(f"dim w_omega - dim w = {gap} is odd")

    pool = complement_within(w_omega, w)
    pairs = []
    while pool:
        x = pool[0]
        partner = next((j for j in range(1, len(pool)) if symplectic_form(x, pool[j]) != 0), None)
        if partner is None:
            raise DimensionParity(f"{x} pairs with nothing: the form is degenerate on w_omega / w")
        b = pool[partner]
        z = b.scale(1 / symplectic_form(x, b))
        rest = [p for idx, p in enumerate(pool) if idx not in (0, partner)]
        pool = [p - x.scale(symplectic_form(p, z)) + z.scale(symplectic_form(p, x)) for p in rest]
        pairs.append((x, z))
    logger.debug(f"symplectic Gram-Schmidt produced {len(pairs)} pairs")
    return pairs


def fourier_conjugate(v: PauliVector, convention: str = SYMPLECTIC) -> PauliVector:
    """
    Fourier transform on every mode.

    'symplectic' maps (s|t) to (-t|s) and preserves omega; 'swap' maps
    (s|t) to (t|s), which negates omega.
    """
    if convention == SYMPLECTIC:
        return PauliVector(tuple(-x for x in v.t), v.s)
    if convention == SWAP:
        return PauliVector(v.t, v.s)
    raise CvstabError(f"unknown Fourier convention '{convention}'; choose one of {', '.join(CONVENTIONS)}")
