"""
Exception hierarchy for cvstab.

Library code raises these; the CLI maps them onto exit codes.
"""

from typing import List, Optional


class CvstabError(ValueError):
    """Base class for every domain error raised by cvstab"""


class DimensionMismatch(CvstabError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"incompatible mode counts: expected n={expected}, got n={got}")


class NonIsotropic(CvstabError):
    """Two generator rows do not commute; indices are 1-based"""

    def __init__(self, i: int, j: int, value):
        self.i = i
        self.j = j
        self.value = value
        super().__init__(f"NonIsotropic({i},{j},{value})")


class RankDeficient(CvstabError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"RankDeficient: row {row} depends on the rows before it")


class NotInComplement(CvstabError):
    pass


class DimensionParity(CvstabError):
    pass


class UnsupportedConcatenation(CvstabError):
    pass


class UnknownCode(CvstabError):
    def __init__(self, name: str, known: List[str]):
        self.name = name
        self.known = known
        super().__init__(f"unknown builtin code '{name}'; choose one of: {', '.join(known)}")


class ParseError(CvstabError):
    def __init__(self, line: Optional[int], message: str):
        self.line = line
        self.message = message
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class PauliStringError(ParseError):
    pass


class NotCommuting(ParseError):
    """Two binary rows anticommute under the GF(2) symplectic form; 1-based"""

    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(None, f"rows {i} and {j} do not commute over GF(2)")


class Unsatisfiable(CvstabError):
    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"UNSAT: no sign assignment exists ({nodes} nodes searched)")


class BudgetExceeded(CvstabError):
    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"BUDGET: search stopped after {nodes} nodes")


class InvalidModel(CvstabError):
    pass
