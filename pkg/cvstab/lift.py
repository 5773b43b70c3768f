#!/usr/bin/env python3
"""
Lifting qubit stabilizer codes to continuous-variable codes.

A binary check matrix is read over the reals and entries are flipped from
+1 to -1 until every pair of rows is exactly symplectically orthogonal.
GF(2) orthogonality makes each real pairwise form even, so the search only
has to balance sums of +-1 terms to zero.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from cvstab import config
from cvstab.code import StabilizerCode, validate
from cvstab.errors import (
    BudgetExceeded,
    CvstabError,
    DimensionMismatch,
    NotCommuting,
    PauliStringError,
    RankDeficient,
    Unsatisfiable,
)
from cvstab.symplectic import PauliVector, rank
from cvstab.textformat import BITS_MAGIC, parse_document

logger = logging.getLogger(__name__)

PAULI_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
LOGICAL_PREFIXES = ("LX:", "LZ:")

Bits = Tuple[int, ...]


def gf2_form(a: Sequence[int], b: Sequence[int]) -> int:
    n = len(a) // 2
    return int(sum(a[i] * b[n + i] + b[i] * a[n + i] for i in range(n)) % 2)


def gf2_rank(rows: Sequence[Sequence[int]]) -> int:
    m = np.array(rows, dtype=np.uint8) % 2
    if m.size == 0:
        return 0
    r = 0
    for c in range(m.shape[1]):
        pivot = next((i for i in range(r, m.shape[0]) if m[i, c]), None)
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for i in range(m.shape[0]):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
        if r == m.shape[0]:
            break
    return r


@dataclass(frozen=True)
class BinaryCheckMatrix:
    """Rows in (X-part | Z-part) layout, pairwise commuting over GF(2)"""

    n: int
    rows: Tuple[Bits, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(b) for b in r) for r in self.rows)
        for index, r in enumerate(rows):
            if len(r) != 2 * self.n:
                raise DimensionMismatch(2 * self.n, len(r))
            if any(b not in (0, 1) for b in r):
                raise CvstabError(f"row {index + 1} has entries outside {{0, 1}}")
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                if gf2_form(rows[i], rows[j]):
                    raise NotCommuting(i + 1, j + 1)
        object.__setattr__(self, "rows", rows)
        if gf2_rank(rows) < len(rows):
            logger.warning(f"binary check matrix has GF(2) rank {gf2_rank(rows)} < {len(rows)} rows")

    @property
    def k(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class SignAssignment:
    """Entries in {-1, 0, +1}, zero exactly where the binary matrix is zero"""

    rows: Tuple[Tuple[int, ...], ...]

    def matches(self, h: BinaryCheckMatrix) -> bool:
        if len(self.rows) != h.k:
            return False
        return all(
            len(a) == len(b) and all(abs(x) == y for x, y in zip(a, b))
            for a, b in zip(self.rows, h.rows)
        )


@dataclass
class BinaryDocument:
    """Parsed binary input: check matrix plus optional binary logical pairs"""

    h: BinaryCheckMatrix
    logicals: List[Tuple[Bits, Bits]]


def _pauli_bits(text: str, line: Optional[int]) -> Bits:
    s, t = [], []
    for ch in text.upper():
        if ch not in PAULI_BITS:
            raise PauliStringError(line, f"bad character '{ch}' in Pauli string '{text}'")
        a, b = PAULI_BITS[ch]
        s.append(a)
        t.append(b)
    return tuple(s + t)


def parse_pauli_strings(lines: Sequence[str]) -> BinaryCheckMatrix:
    """One I/X/Y/Z string per stabilizer generator; blank lines and '#' comments are skipped"""
    rows = []
    width = None
    for number, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        if width is not None and len(text) != width:
            raise PauliStringError(number, f"expected {width} characters, got {len(text)}")
        width = len(text)
        rows.append(_pauli_bits(text, number))
    if width is None:
        raise PauliStringError(None, "no Pauli strings found")
    return BinaryCheckMatrix(width, tuple(rows))


def parse_binary_text(text: str) -> BinaryDocument:
    """Either a 'bits 1' block or Pauli strings, with logicals as LX:/LZ: lines"""
    first = next((line.split("#", 1)[0].strip() for line in text.splitlines() if line.split("#", 1)[0].strip()), "")
    if first.split()[:1] == [BITS_MAGIC]:
        document = parse_document(text, magic=BITS_MAGIC)
        h = BinaryCheckMatrix(document.n, tuple(tuple(int(b) for b in r) for r in document.rows))
        logicals = [(tuple(int(b) for b in x), tuple(int(b) for b in z)) for x, z in document.logicals]
        return BinaryDocument(h, logicals)

    stabilizers, xs, zs = [], [], []
    for raw in text.splitlines():
        text_line = raw.split("#", 1)[0].strip()
        if text_line.upper().startswith(LOGICAL_PREFIXES[0]):
            xs.append(text_line[3:].strip())
            stabilizers.append("")
        elif text_line.upper().startswith(LOGICAL_PREFIXES[1]):
            zs.append(text_line[3:].strip())
            stabilizers.append("")
        else:
            stabilizers.append(raw)
    h = parse_pauli_strings(stabilizers)
    if len(xs) != len(zs):
        raise PauliStringError(None, f"{len(xs)} LX lines but {len(zs)} LZ lines")
    logicals = []
    for x, z in zip(xs, zs):
        if len(x) != h.n or len(z) != h.n:
            raise PauliStringError(None, f"logical strings must have {h.n} characters")
        logicals.append((_pauli_bits(x, None), _pauli_bits(z, None)))
    return BinaryDocument(h, logicals)


# A contribution (constraint, partner, factor) adds factor * value * values[partner]
# to the constraint's running sum; partner None means the factor stands alone.
Contribution = Tuple[int, Optional[int], Fraction]


def _backtrack(
    domains: Sequence[Tuple[int, ...]],
    contributions: Sequence[Sequence[Contribution]],
    n_constraints: int,
    budget: int,
    accept: Optional[Callable[[List[int]], bool]] = None,
) -> List[int]:
    """
    Depth-first search over sign variables in the given order, trying +1 first.

    Each constraint tracks its partial sum and the total magnitude still
    unassigned; a branch is cut as soon as |partial| exceeds what the
    remaining terms can cancel. Partners always precede the variable they
    multiply.
    """
    size = len(domains)
    values = [0] * size
    partial = [Fraction(0)] * n_constraints
    remaining = [Fraction(0)] * n_constraints
    for contribs in contributions:
        for constraint, _, factor in contribs:
            remaining[constraint] += abs(factor)

    def apply(depth: int, direction: int) -> bool:
        feasible = True
        for constraint, partner, factor in contributions[depth]:
            other = values[partner] if partner is not None else 1
            partial[constraint] += direction * factor * values[depth] * other
            remaining[constraint] -= direction * abs(factor)
            if abs(partial[constraint]) > remaining[constraint]:
                feasible = False
        return feasible

    choice = [0] * size
    nodes = 0
    depth = 0
    while depth >= 0:
        if depth == size:
            if accept is None or accept(values):
                logger.info(f"sign search succeeded after {nodes} nodes")
                return list(values)
            if size == 0:
                break
            depth -= 1
            apply(depth, -1)
            continue
        if choice[depth] >= len(domains[depth]):
            choice[depth] = 0
            depth -= 1
            if depth >= 0:
                apply(depth, -1)
            continue
        values[depth] = domains[depth][choice[depth]]
        choice[depth] += 1
        nodes += 1
        if nodes > budget:
            logger.warning(f"sign search hit its budget of {budget} nodes")
            raise BudgetExceeded(budget)
        if apply(depth, +1):
            depth += 1
        else:
            apply(depth, -1)
    raise Unsatisfiable(nodes)


def _signed_rows(h: BinaryCheckMatrix, positions: Sequence[Tuple[int, int]], values: Sequence[int]) -> List[List[int]]:
    rows = [[0] * (2 * h.n) for _ in h.rows]
    for (j, c), v in zip(positions, values):
        rows[j][c] = v
    return rows


def lift_signs(h: BinaryCheckMatrix, budget: int = config.MAX_NODES) -> SignAssignment:
    """
    First sign assignment (row-major order, +1 before -1) making the real
    rows pairwise symplectically orthogonal and linearly independent.

    The first nonzero entry of each row is fixed to +1; negating a whole row
    does not change the stabilizer.
    """
    for index, r in enumerate(h.rows):
        if not any(r):
            raise RankDeficient(index + 1)

    n = h.n
    positions = [(j, c) for j, r in enumerate(h.rows) for c in range(2 * n) if r[c]]
    index_of = {p: i for i, p in enumerate(positions)}
    domains = []
    seen_rows = set()
    for j, _ in positions:
        domains.append((1,) if j not in seen_rows else (1, -1))
        seen_rows.add(j)

    # pair (i, j), i < j, gets one term per row-j entry whose partner in row i is nonzero:
    # t-column m contributes +a_i.s_m a_j.t_m, s-column m contributes -a_j.s_m a_i.t_m
    pair_id = {}
    contributions = []
    for j, c in positions:
        contribs = []
        partner_col, factor = (c - n, 1) if c >= n else (c + n, -1)
        for i in range(j):
            if h.rows[i][partner_col]:
                key = pair_id.setdefault((i, j), len(pair_id))
                contribs.append((key, index_of[(i, partner_col)], Fraction(factor)))
        contributions.append(contribs)

    def full_rank(values: List[int]) -> bool:
        return rank(_signed_rows(h, positions, values), 2 * n) == h.k

    logger.info(f"lifting {h.k}x{2 * n} check matrix: {len(positions) - h.k} free signs, budget {budget}")
    values = _backtrack(domains, contributions, len(pair_id), budget, full_rank)
    return SignAssignment(tuple(tuple(r) for r in _signed_rows(h, positions, values)))


def verify_lift(h: BinaryCheckMatrix, a: SignAssignment, name: Optional[str] = None) -> StabilizerCode:
    if not a.matches(h):
        raise CvstabError("sign assignment does not match the binary matrix elementwise")
    rows = [PauliVector.from_coords([b * x for b, x in zip(bits, signs)]) for bits, signs in zip(h.rows, a.rows)]
    return validate(rows, n=h.n, name=name)


def lift_logicals(
    logicals: Sequence[Bits],
    code: StabilizerCode,
    budget: int = config.MAX_NODES,
) -> List[PauliVector]:
    """Sign each binary logical so that it commutes exactly with every generator of code"""
    lifted = []
    for index, bits in enumerate(logicals):
        if len(bits) != 2 * code.n:
            raise DimensionMismatch(2 * code.n, len(bits))
        for j, u in enumerate(code.generators):
            support = tuple(int(x != 0) for x in u.coords)
            if gf2_form(bits, support):
                raise NotCommuting(index + 1, j + 1)
        positions = [c for c in range(2 * code.n) if bits[c]]
        if not positions:
            lifted.append(PauliVector.zero(code.n))
            continue
        domains = [(1,)] + [(1, -1)] * (len(positions) - 1)
        # omega(v, u) = v.s . u.t - v.t . u.s
        contributions = []
        for c in positions:
            contribs = []
            for j, u in enumerate(code.generators):
                factor = u.t[c] if c < code.n else -u.s[c - code.n]
                if factor:
                    contribs.append((j, None, Fraction(factor)))
            contributions.append(contribs)
        values = _backtrack(domains, contributions, code.k, budget)
        coords = [0] * (2 * code.n)
        for c, v in zip(positions, values):
            coords[c] = v
        lifted.append(PauliVector.from_coords(coords))
    return lifted
