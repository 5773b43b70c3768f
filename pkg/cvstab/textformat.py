"""
Reader and writer for the line-oriented cvstab grammar.

    cvstab 1
    n 3
    k 2
    row 0 0 0 | 1 -1 0
    row 0 0 0 | 0 1 -1
    logical x 1 1 1 | 0 0 0
    logical z 0 0 0 | 1 0 0

'#' starts a comment. Binary inputs for lifting use the same layout with the
header 'bits 1' and entries restricted to 0/1.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from cvstab.errors import ParseError
from cvstab.symplectic import format_scalar

CODE_MAGIC = "cvstab"
BITS_MAGIC = "bits"
VERSION = "1"

Row = List[Fraction]


@dataclass
class CodeDocument:
    magic: str
    n: int
    rows: List[Row] = field(default_factory=list)
    logicals: List[Tuple[Row, Row]] = field(default_factory=list)


def _meaningful_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content.split()))
    return lines


def parse_vector(tokens: Sequence[str], n: int, line: Optional[int], binary: bool = False) -> Row:
    """Parse 's_1 .. s_n | t_1 .. t_n' into 2n Fractions"""
    if tokens.count("|") != 1:
        raise ParseError(line, "expected exactly one '|' separating the s and t parts")
    bar = list(tokens).index("|")
    s_tokens, t_tokens = tokens[:bar], tokens[bar + 1:]
    if len(s_tokens) != n or len(t_tokens) != n:
        raise ParseError(line, f"expected {n} entries on each side of '|', got {len(s_tokens)} and {len(t_tokens)}")
    values = []
    for token in list(s_tokens) + list(t_tokens):
        try:
            value = Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError(line, f"'{token}' is not a rational number")
        if binary and value not in (0, 1):
            raise ParseError(line, f"'{token}' is not a bit")
        values.append(value)
    return values


def _parse_int(tokens: List[str], keyword: str, line: int) -> int:
    if len(tokens) != 2 or tokens[0] != keyword:
        raise ParseError(line, f"expected '{keyword} <int>'")
    try:
        value = int(tokens[1])
    except ValueError:
        raise ParseError(line, f"'{tokens[1]}' is not an integer")
    if value < 0 or (keyword == "n" and value < 1):
        raise ParseError(line, f"{keyword} out of range: {value}")
    return value


def parse_document(text: str, magic: Optional[str] = None) -> CodeDocument:
    lines = _meaningful_lines(text)
    if not lines:
        raise ParseError(None, "empty input")
    if len(lines) < 3:
        raise ParseError(lines[-1][0], "truncated header; expected magic, 'n' and 'k' lines")

    number, tokens = lines[0]
    allowed = (magic,) if magic else (CODE_MAGIC, BITS_MAGIC)
    if len(tokens) != 2 or tokens[0] not in allowed or tokens[1] != VERSION:
        raise ParseError(number, f"expected header '{allowed[0]} {VERSION}'")
    document = CodeDocument(magic=tokens[0], n=_parse_int(lines[1][1], "n", lines[1][0]))
    k = _parse_int(lines[2][1], "k", lines[2][0])
    binary = document.magic == BITS_MAGIC

    body = lines[3:]
    if len(body) < k:
        raise ParseError(lines[-1][0], f"expected {k} 'row' lines, found {len(body)}")
    for number, tokens in body[:k]:
        if tokens[0] != "row":
            raise ParseError(number, f"expected 'row', got '{tokens[0]}'")
        document.rows.append(parse_vector(tokens[1:], document.n, number, binary))

    pending = None
    for number, tokens in body[k:]:
        if tokens[0] != "logical" or len(tokens) < 2 or tokens[1] not in ("x", "z"):
            raise ParseError(number, "expected 'logical x ...' or 'logical z ...'")
        vector = parse_vector(tokens[2:], document.n, number, binary)
        if tokens[1] == "x":
            if pending is not None:
                raise ParseError(number, "'logical x' must be followed by its 'logical z'")
            pending = vector
        else:
            if pending is None:
                raise ParseError(number, "'logical z' without a preceding 'logical x'")
            document.logicals.append((pending, vector))
            pending = None
    if pending is not None:
        raise ParseError(body[-1][0], "unpaired 'logical x' at end of input")
    return document


def format_vector(coords: Sequence[Fraction]) -> str:
    n = len(coords) // 2
    s = " ".join(format_scalar(Fraction(x)) for x in coords[:n])
    t = " ".join(format_scalar(Fraction(x)) for x in coords[n:])
    return f"{s} | {t}"


def format_document(
    n: int,
    rows: Sequence[Sequence[Fraction]],
    logicals: Sequence[Tuple[Sequence[Fraction], Sequence[Fraction]]] = (),
    magic: str = CODE_MAGIC,
    comments: Iterable[str] = (),
) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    lines += [f"{magic} {VERSION}", f"n {n}", f"k {len(rows)}"]
    lines += [f"row {format_vector(r)}" for r in rows]
    for x, z in logicals:
        lines.append(f"logical x {format_vector(x)}")
        lines.append(f"logical z {format_vector(z)}")
    return "\n".join(lines) + "\n"
