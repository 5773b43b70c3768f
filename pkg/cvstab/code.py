#!/usr/bin/env python3
"""
Stabilizer codes over the continuous-variable Pauli group.

A code on n modes is given by k linearly independent, pairwise commuting
generator rows u_1..u_k (omega(u_i, u_j) = 0). Its normalizer corresponds to
the symplectic complement W^omega of W = span(u_j), and the logical Pauli
operators to a hyperbolic basis of W^omega / W.

-I never lies in the connected one-parameter groups U(a u), a real, so the
second stabilizer condition holds for every isotropic generator set and is
not checked at runtime.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from cvstab import config
from cvstab.errors import (
    CvstabError,
    DimensionMismatch,
    NonIsotropic,
    RankDeficient,
    UnknownCode,
    UnsupportedConcatenation,
)
from cvstab.symplectic import (
    PauliVector,
    Subspace,
    first_noncommuting_pair,
    format_scalar,
    span,
    symplectic_complement,
    symplectic_form,
    symplectic_gram_schmidt,
)
from cvstab.textformat import CODE_MAGIC, format_document, parse_document, parse_vector

logger = logging.getLogger(__name__)

STABILIZER = "stabilizer"
LOGICAL = "logical"
OUTSIDE = "outside"

Pair = Tuple[PauliVector, PauliVector]


@dataclass(frozen=True)
class StabilizerCode:
    """Validated generator matrix; build instances through validate()"""

    n: int
    generators: Tuple[PauliVector, ...]
    name: Optional[str] = None

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def logical_modes(self) -> int:
        return self.n - self.k

    def stabilizer_space(self) -> Subspace:
        return span(self.generators, self.n)

    def normalizer_space(self) -> Subspace:
        return symplectic_complement(self.stabilizer_space())


@dataclass(frozen=True)
class LogicalBasis:
    pairs: Tuple[Pair, ...]
    derived: bool = True

    @property
    def xs(self) -> Tuple[PauliVector, ...]:
        return tuple(x for x, _ in self.pairs)

    @property
    def zs(self) -> Tuple[PauliVector, ...]:
        return tuple(z for _, z in self.pairs)

    def vectors(self) -> List[PauliVector]:
        """(x_1, z_1, ..., x_m, z_m)"""
        return [v for pair in self.pairs for v in pair]


@dataclass(frozen=True)
class SyndromeObservable:
    """m_j = sum_i (s_ij p_i + t_ij q_i), zero on the code space"""

    index: int
    coefficients: PauliVector

    def expression(self) -> str:
        terms = [(c, f"p{i + 1}") for i, c in enumerate(self.coefficients.s) if c]
        terms += [(c, f"q{i + 1}") for i, c in enumerate(self.coefficients.t) if c]
        if not terms:
            return "0"
        out = []
        for position, (c, symbol) in enumerate(terms):
            sign = "-" if c < 0 else "+"
            magnitude = "" if abs(c) == 1 else f"{format_scalar(abs(c))} "
            if position == 0:
                out.append(f"{'-' if c < 0 else ''}{magnitude}{symbol}")
            else:
                out.append(f" {sign} {magnitude}{symbol}")
        return "".join(out)

    def __str__(self) -> str:
        return f"m{self.index} = {self.expression()}"


@dataclass(frozen=True)
class Classification:
    """Where a vector sits relative to W and W^omega; coefficients are (a_i, b_i) with v = sum a_i x_i + b_i z_i mod W"""

    kind: str
    coefficients: Optional[Tuple[Tuple[Fraction, Fraction], ...]] = None


@dataclass(frozen=True)
class EncodingMap:
    """Logical position eigenstates as U(sum q_i x_i) applied to the stabilizer-averaged zero state"""

    code: StabilizerCode
    basis: LogicalBasis

    def displacement(self, q: Sequence) -> PauliVector:
        if len(q) != len(self.basis.pairs):
            raise DimensionMismatch(len(self.basis.pairs), len(q))
        total = PauliVector.zero(self.code.n)
        for value, x in zip(q, self.basis.xs):
            total = total + x.scale(value)
        return total

    def describe(self) -> List[str]:
        average = " ".join(f"int dt{j + 1} U(t{j + 1} u{j + 1})" for j in range(self.code.k))
        qs = ",".join(f"q{i + 1}" for i in range(self.code.logical_modes))
        xs = " + ".join(f"q{i + 1} x{i + 1}" for i in range(self.code.logical_modes)) or "0"
        return [
            f"|0bar> = {average} |0...0>" if average else "|0bar> = |0...0>",
            f"|{qs}bar> = U({xs}) |0bar>",
        ]


def operator_string(v: PauliVector) -> str:
    """Tensor-product rendering, e.g. X(t) ⊗ X(-t) ⊗ Z(t)"""

    def amount(c: Fraction) -> str:
        if c == 1:
            return "t"
        if c == -1:
            return "-t"
        return f"{format_scalar(c)}t"

    factors = []
    for s, t in zip(v.s, v.t):
        factor = (f"X({amount(s)})" if s else "") + (f"Z({amount(t)})" if t else "")
        factors.append(factor or "I")
    return " ⊗ ".join(factors)


def validate(generators: Sequence[PauliVector], n: Optional[int] = None, name: Optional[str] = None) -> StabilizerCode:
    """Check isotropy and rank exactly; raises NonIsotropic or RankDeficient with 1-based rows"""
    generators = tuple(generators)
    if n is None:
        if not generators:
            raise CvstabError("an empty generator list needs an explicit mode count")
        n = generators[0].n
    for u in generators:
        if u.n != n:
            raise DimensionMismatch(n, u.n)

    bad = first_noncommuting_pair(generators)
    if bad is not None:
        i, j, value = bad
        raise NonIsotropic(i + 1, j + 1, value)

    so_far = Subspace(n)
    for index, u in enumerate(generators):
        if so_far.contains(u):
            raise RankDeficient(index + 1)
        so_far = span(so_far.basis + (u,), n)

    code = StabilizerCode(n, generators, name)
    logger.info(f"validated code {name or '<anonymous>'}: n={n}, k={code.k}, logical modes={code.logical_modes}")
    return code


def logical_basis(code: StabilizerCode) -> LogicalBasis:
    w = code.stabilizer_space()
    pairs = symplectic_gram_schmidt(symplectic_complement(w), w)
    return LogicalBasis(tuple(pairs), derived=True)


def normalize_pair(x: PauliVector, z: PauliVector) -> Pair:
    """Rescale z so that omega(x, z) = 1"""
    c = symplectic_form(x, z)
    if c == 0:
        raise CvstabError(f"logical pair {x}, {z} commutes; it cannot be normalized")
    return x, (z if c == 1 else z.scale(1 / c))


def check_logical_basis(code: StabilizerCode, basis: LogicalBasis):
    """Raise unless the basis lies in W^omega, avoids W and has Gram matrix delta_ij"""
    w = code.stabilizer_space()
    vectors = basis.vectors()
    if len(basis.pairs) != code.logical_modes:
        raise CvstabError(f"expected {code.logical_modes} logical pairs, got {len(basis.pairs)}")
    for v in vectors:
        if v.n != code.n:
            raise DimensionMismatch(code.n, v.n)
        for j, u in enumerate(code.generators):
            if symplectic_form(v, u) != 0:
                raise CvstabError(f"logical {v} does not commute with generator {j + 1}")
        if w.contains(v):
            raise CvstabError(f"logical {v} lies in the stabilizer")
    for a in range(len(vectors)):
        for b in range(len(vectors)):
            expected = 1 if (a % 2 == 0 and b == a + 1) else (-1 if (a % 2 == 1 and b == a - 1) else 0)
            if symplectic_form(vectors[a], vectors[b]) != expected:
                raise CvstabError(f"logical basis violates omega(v{a + 1}, v{b + 1}) = {expected}")


def contains_logical(code: StabilizerCode, basis: LogicalBasis, v: PauliVector) -> Classification:
    if v.n != code.n:
        raise DimensionMismatch(code.n, v.n)
    if code.stabilizer_space().contains(v):
        return Classification(STABILIZER)
    if any(symplectic_form(v, u) != 0 for u in code.generators):
        return Classification(OUTSIDE)
    # v = a x + b z mod W  =>  a = omega(v, z), b = omega(x, v)
    coefficients = tuple((symplectic_form(v, z), symplectic_form(x, v)) for x, z in basis.pairs)
    return Classification(LOGICAL, coefficients)


def _embed(v: PauliVector, block: int, blocks: int) -> PauliVector:
    m = v.n
    s = [Fraction(0)] * (m * blocks)
    t = [Fraction(0)] * (m * blocks)
    s[block * m:(block + 1) * m] = v.s
    t[block * m:(block + 1) * m] = v.t
    return PauliVector(tuple(s), tuple(t))


def _substitute(v: PauliVector, x_in: PauliVector, z_in: PauliVector) -> PauliVector:
    """Replace mode b's (s, t) by s*x_in + t*z_in on block b"""
    total = PauliVector.zero(v.n * x_in.n)
    for block, (s, t) in enumerate(zip(v.s, v.t)):
        if s or t:
            total = total + _embed(x_in.scale(s) + z_in.scale(t), block, v.n)
    return total


def concatenate(
    outer: StabilizerCode,
    inner: StabilizerCode,
    outer_basis: Optional[LogicalBasis] = None,
    inner_basis: Optional[LogicalBasis] = None,
) -> Tuple[StabilizerCode, LogicalBasis]:
    """
    Encode every physical mode of outer with inner.

    Generators are the inner generators on each block plus the outer
    generators pushed through the inner logical pair; logicals are the
    outer logicals pushed through the same substitution.
    """
    if inner.logical_modes != 1:
        raise UnsupportedConcatenation(f"inner code encodes {inner.logical_modes} logical modes; exactly 1 is supported")
    inner_basis = inner_basis or logical_basis(inner)
    outer_basis = outer_basis or logical_basis(outer)
    (x_in, z_in), = inner_basis.pairs

    generators = [_embed(g, block, outer.n) for block in range(outer.n) for g in inner.generators]
    generators += [_substitute(u, x_in, z_in) for u in outer.generators]
    name = f"{outer.name or 'outer'}*{inner.name or 'inner'}"
    code = validate(generators, n=outer.n * inner.n, name=name)
    pairs = tuple((_substitute(x, x_in, z_in), _substitute(z, x_in, z_in)) for x, z in outer_basis.pairs)
    logger.info(f"concatenated {outer.name} with {inner.name}: n={code.n}, k={code.k}")
    return code, LogicalBasis(pairs, derived=True)


def syndrome_observables(code: StabilizerCode) -> List[SyndromeObservable]:
    return [SyndromeObservable(j + 1, u) for j, u in enumerate(code.generators)]


def encoding_map(code: StabilizerCode, basis: Optional[LogicalBasis] = None) -> EncodingMap:
    return EncodingMap(code, basis or logical_basis(code))


@lru_cache(maxsize=None)
def _load_catalog(catalog_path: str) -> Dict[str, dict]:
    with open(catalog_path) as f:
        return json.load(f)


def builtin_names(catalog_path: str = config.CATALOG_PATH) -> List[str]:
    return list(_load_catalog(catalog_path))


def builtin_entry(name: str, catalog_path: str = config.CATALOG_PATH) -> dict:
    catalog = _load_catalog(catalog_path)
    if name not in catalog:
        raise UnknownCode(name, list(catalog))
    return catalog[name]


def builtin(name: str, catalog_path: str = config.CATALOG_PATH) -> Tuple[StabilizerCode, LogicalBasis]:
    """Catalog code with its printed logicals (z rescaled to omega = 1), or a derived basis when none is printed"""
    entry = builtin_entry(name, catalog_path)
    n = entry["n"]
    rows = [PauliVector.from_coords(parse_vector(r.split(), n, None)) for r in entry["rows"]]
    code = validate(rows, n=n, name=name)
    if "logicals" not in entry:
        return code, logical_basis(code)
    pairs = []
    for x_text, z_text in entry["logicals"]:
        x = PauliVector.from_coords(parse_vector(x_text.split(), n, None))
        z = PauliVector.from_coords(parse_vector(z_text.split(), n, None))
        pairs.append(normalize_pair(x, z))
    basis = LogicalBasis(tuple(pairs), derived=False)
    check_logical_basis(code, basis)
    return code, basis


def load_code(text: str, name: Optional[str] = None) -> Tuple[StabilizerCode, Optional[LogicalBasis]]:
    """Parse cvstab text and validate it; logical lines, when present, are normalized and checked"""
    document = parse_document(text, magic=CODE_MAGIC)
    rows = [PauliVector.from_coords(r) for r in document.rows]
    code = validate(rows, n=document.n, name=name)
    if not document.logicals:
        return code, None
    pairs = tuple(normalize_pair(PauliVector.from_coords(x), PauliVector.from_coords(z)) for x, z in document.logicals)
    basis = LogicalBasis(pairs, derived=False)
    check_logical_basis(code, basis)
    return code, basis


def dump_code(code: StabilizerCode, basis: Optional[LogicalBasis] = None, comments: Sequence[str] = ()) -> str:
    logicals = [(x.coords, z.coords) for x, z in basis.pairs] if basis else []
    return format_document(code.n, [u.coords for u in code.generators], logicals, CODE_MAGIC, comments)
