"""Goeritz matrices and closed-form link determinants for two twist-region
block families.

Two constructions live here:

- generic Goeritz matrices from checkerboard diagram data (region/crossing
  lists), reduced by dropping the unbounded region;
- the block families A(t; *, *, *) and L(l; *, *, *): block-tridiagonal
  matrices over 3x3 blocks (-2I runs, one S/P block, for L a final Q block,
  for A a rank-one border row/column with corner -3).

Alongside the matrices, the determinant tables for all tabulated resolutions
of A, B (= L at l = 1) and L are stored as exact polynomials in (q, s, t, l),
with the additivity and substitution identity suites checked symbolically.

Layout note: the block displays do not pin down the run lengths; the frozen
choice here is

    A: (t-1) blocks of -2I, then S, then (q-1) blocks of -2I, then the border
       (dimension 3(q+t-1) + 1);
    L: (q-1) blocks of -2I, then P, then (t-1) blocks of -2I, then Q
       (dimension 3(q+t)).

This choice reproduces the tabulated star determinants exactly over the full
acceptance grids, which is the construction's contract.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .intlinalg import IntMatrix, det_bareiss
from .multipoly import MultiPoly


class GoeritzError(ValueError):
    """Invalid diagram data or unsupported parameter regime."""


class UnsupportedRegimeError(GoeritzError):
    """Matrix construction requested outside the positive-parameter family."""


class NotTabulatedError(KeyError):
    """No determinant formula is tabulated for this (family, resolution)."""


# ---------------------------------------------------------------------------
# Checkerboard diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckerboardDiagram:
    """White-region/crossing data of a checkerboard-colored diagram.

    Regions are indexed 0..white_region_count-1 with region 0 unbounded;
    crossings are (i, j, sign) triples joining white regions i != j.
    """

    white_region_count: int
    crossings: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        if self.white_region_count < 1:
            raise GoeritzError("need at least one white region")
        for i, j, sign in self.crossings:
            if not (0 <= i < self.white_region_count
                    and 0 <= j < self.white_region_count):
                raise GoeritzError(f"region index out of range in ({i}, {j}, {sign})")
            if i == j:
                raise GoeritzError(f"crossing joins region {i} to itself")
            if sign not in (1, -1):
                raise GoeritzError(f"crossing sign must be +-1, got {sign}")


class GoeritzMatrix:
    """A square integer matrix with a record of where it came from."""

    def __init__(self, entries: Sequence[Sequence[int]], provenance: str):
        self.entries: IntMatrix = [list(row) for row in entries]
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise GoeritzError("Goeritz matrix must be square")
        self.provenance = provenance

    @property
    def size(self) -> int:
        return len(self.entries)

    def det(self) -> int:
        return det_bareiss(self.entries)

    def to_csv(self) -> str:
        return "\n".join(",".join(str(x) for x in row) for row in self.entries) + "\n"

    def __repr__(self):
        return f"GoeritzMatrix({self.size}x{self.size}, {self.provenance})"


def goeritz_from_diagram(d: CheckerboardDiagram) -> GoeritzMatrix:
    """Reduced Goeritz matrix: off-diagonal entries are minus the signed
    crossing counts between white regions, diagonals force zero row sums,
    and the row/column of the unbounded region 0 is removed."""
    n = d.white_region_count
    h = [[0] * n for _ in range(n)]
    for i, j, sign in d.crossings:
        h[i][j] -= sign
        h[j][i] -= sign
    for i in range(n):
        h[i][i] = -sum(h[i][j] for j in range(n) if j != i)
    reduced = [[h[i][j] for j in range(1, n)] for i in range(1, n)]
    return GoeritzMatrix(reduced, "diagram")


def det_exact(m: Union[GoeritzMatrix, Sequence[Sequence[int]]]) -> int:
    """Signed determinant (exact); the link determinant is its absolute value."""
    if isinstance(m, GoeritzMatrix):
        return m.det()
    return det_bareiss(m)


# ---------------------------------------------------------------------------
# Block families
# ---------------------------------------------------------------------------

def _family_blocks(diag_blocks: List[List[List[int]]]) -> IntMatrix:
    """Assemble a block-tridiagonal matrix with identity off-diagonal blocks."""
    nb = len(diag_blocks)
    size = 3 * nb
    m = [[0] * size for _ in range(size)]
    for b, block in enumerate(diag_blocks):
        for i in range(3):
            for j in range(3):
                m[3 * b + i][3 * b + j] = block[i][j]
        if b + 1 < nb:
            for i in range(3):
                m[3 * b + i][3 * (b + 1) + i] = 1
                m[3 * (b + 1) + i][3 * b + i] = 1
    return m


def _s_block(s: int) -> List[List[int]]:
    return [[2 * s - 2 if i == j else -s for j in range(3)] for i in range(3)]


def _q_block(l: int) -> List[List[int]]:
    return [[2 * l - 1 if i == j else -l for j in range(3)] for i in range(3)]


_MINUS_2I = [[-2 if i == j else 0 for j in range(3)] for i in range(3)]


def build_A_star(q: int, s: int, t: int) -> GoeritzMatrix:
    """Goeritz matrix of A(t; *, *, *) for positive parameters.

    (t-1) runs of -2I, the S block, (q-1) runs of -2I, then a border: ones
    column on the last block row, ones row on the last block column, corner
    entry -3.  Other sign regimes are handled by mirroring at the table
    level, not by building matrices.
    """
    if q < 1 or s < 1 or t < 1:
        raise UnsupportedRegimeError(
            f"A-family matrices need q, s, t >= 1, got ({q}, {s}, {t})")
    blocks = [_MINUS_2I] * (t - 1) + [_s_block(s)] + [_MINUS_2I] * (q - 1)
    core = _family_blocks(blocks)
    size = len(core) + 1
    m = [[0] * size for _ in range(size)]
    for i, row in enumerate(core):
        for j, val in enumerate(row):
            m[i][j] = val
    for i in range(3):
        m[size - 4 + i][size - 1] = 1   # E: ones against the last block row
        m[size - 1][size - 4 + i] = 1   # D: ones against the last block column
    m[size - 1][size - 1] = -3
    return GoeritzMatrix(m, f"A(t; *, *, *) q={q} s={s} t={t}")


def build_L_star(q: int, s: int, t: int, l: int) -> GoeritzMatrix:
    """Goeritz matrix of L(l; *, *, *) for positive parameters.

    (q-1) runs of -2I, the P block (= S), (t-1) runs of -2I, then the Q
    block; no border.
    """
    if q < 1 or s < 1 or t < 1 or l < 1:
        raise UnsupportedRegimeError(
            f"L-family matrices need q, s, t, l >= 1, got ({q}, {s}, {t}, {l})")
    blocks = ([_MINUS_2I] * (q - 1) + [_s_block(s)] + [_MINUS_2I] * (t - 1)
              + [_q_block(l)])
    return GoeritzMatrix(_family_blocks(blocks),
                         f"L(l; *, *, *) q={q} s={s} t={t} l={l}")


# ---------------------------------------------------------------------------
# Determinant tables
# ---------------------------------------------------------------------------

class Slot(str, Enum):
    STAR = "*"
    ZERO = "0"
    INF = "inf"


class Resolution(Tuple[Slot, Slot, Slot]):
    """Three resolution slots (left, middle, right twist regions)."""

    def __new__(cls, slots):
        slots = tuple(Slot(s) for s in slots)
        if len(slots) != 3:
            raise GoeritzError(f"resolution needs exactly 3 slots, got {slots}")
        return super().__new__(cls, slots)

    @staticmethod
    def parse(text: str) -> "Resolution":
        return Resolution(tuple(part.strip() for part in text.split(",")))

    def __str__(self):
        return ",".join(s.value for s in self)

    def __repr__(self):
        return f"Resolution({self})"


STAR_RES = Resolution(("*", "*", "*"))

_Q = MultiPoly.var("q")
_S = MultiPoly.var("s")
_T = MultiPoly.var("t")
_L = MultiPoly.var("l")

# Recurring factors.
_DA = 3 * _Q * _S * _T - _Q - _T                      # A-family discriminant
_FB = 1 - 3 * _Q - 3 * _Q * _S - 3 * _T + 9 * _Q * _S * _T
_FL = 1 - 3 * _Q * _L - 3 * _Q * _S - 3 * _L * _T + 9 * _L * _Q * _S * _T
_GA = 1 - _Q - 3 * _Q * _S - _T + 3 * _Q * _S * _T    # = A-star factor at t-1
_GL = (1 + 3 * _Q - 3 * _L * _Q - 3 * _Q * _S + 3 * _T - 3 * _L * _T
       - 9 * _Q * _S * _T + 9 * _L * _Q * _S * _T)    # = L-star factor at l-1
_HL = (1 + _Q - 3 * _L * _Q - 3 * _Q * _S + _T - 3 * _L * _T
       - 3 * _Q * _S * _T + 9 * _L * _Q * _S * _T)


@dataclass(frozen=True)
class TableRow:
    family: str
    resolution: Resolution
    poly: MultiPoly
    source: str
    validity: str
    identified_via: Optional[str] = None


def _rows(family: str, source: str, validity: str,
          data: Dict[str, MultiPoly],
          identified: Dict[str, Tuple[str, str]]) -> Dict[Resolution, TableRow]:
    table: Dict[Resolution, TableRow] = {}
    for res_text, poly in data.items():
        res = Resolution.parse(res_text)
        table[res] = TableRow(family, res, poly, source, validity)
    for res_text, (target_text, lemma) in identified.items():
        res = Resolution.parse(res_text)
        target = Resolution.parse(target_text)
        table[res] = TableRow(family, res, table[target].poly, source, validity,
                              identified_via=lemma)
    return table


# Table 2: A at t = 1, in (q, s).
_TABLE2 = _rows("A(t=1)", "Table 2", "s > 1", {
    "*,*,*":   3 * (3 * _Q * _S - _Q - 1) ** 2,
    "0,*,*":   2 * (3 * _Q * _S - _Q - 1) * (3 * _Q * _S - 1),
    "inf,*,*": (3 * _Q * _S - _Q - 1) * (3 * _Q * _S - 3 * _Q - 1),
    "0,inf,*": (3 * _Q * _S - 1) * (3 * _Q * _S - 2 * _Q - 1),
    "0,0,*":   (3 * _Q * _S - 1) ** 2,
}, {})

# Table 3: A(t), in (q, s, t).  The two extra resolutions are identified
# links, not separate table rows.
_TABLE3 = _rows("A", "Table 3", "t > 1", {
    "*,*,*":     3 * _DA ** 2,
    "0,*,*":     2 * _DA * (3 * _Q * _S - 1),
    "inf,*,*":   _DA * (2 - 3 * _Q - 6 * _Q * _S - 3 * _T + 9 * _Q * _S * _T),
    "0,inf,*":   (3 * _Q * _S - 1) * (1 - 2 * _Q - 3 * _Q * _S - 2 * _T + 6 * _Q * _S * _T),
    "inf,0,*":   (3 * _Q * _S - 1) * (1 - 2 * _Q - 3 * _Q * _S - 2 * _T + 6 * _Q * _S * _T),
    "0,0,*":     (3 * _Q * _S - 1) ** 2,
    "inf,inf,*": _GA * _FB,
    "inf,inf,inf": 3 * _GA ** 2,
    "0,inf,inf": 2 * (3 * _Q * _S - 1) * _GA,
}, {
    "inf,0,0":   ("0,0,*", "Lemma 5.3(1)"),
    "0,inf,0":   ("0,0,*", "Lemma 5.3(1)"),
    "inf,0,inf": ("0,inf,inf", "Lemma 5.3(2)"),
    "inf,inf,0": ("0,inf,inf", "Lemma 5.3(2)"),
})

# Table 4: B = L(l=1), in (q, s, t).
_TABLE4 = _rows("B", "Table 4", "t > 1", {
    "*,*,*":   _FB ** 2,
    "0,*,*":   2 * _DA * _FB,
    "inf,*,*": _FB * _GA,
    "0,inf,*": _DA * (2 - 3 * _Q - 3 * _T - 6 * _Q * _S + 9 * _Q * _S * _T),
    "0,0,*":   3 * _DA ** 2,
}, {})

# Table 5: L(l), in (q, s, t, l).
_TABLE5 = _rows("L", "Table 5", "l > 1", {
    "*,*,*":     _FL ** 2,
    "0,*,*":     2 * _DA * _FL,
    "inf,*,*":   _FL * (1 + 2 * _Q - 3 * _L * _Q - 3 * _Q * _S + 2 * _T
                        - 3 * _L * _T - 6 * _Q * _S * _T + 9 * _L * _Q * _S * _T),
    "0,inf,*":   _DA * (2 + 3 * _Q - 6 * _L * _Q - 6 * _Q * _S + 3 * _T
                        - 6 * _L * _T - 9 * _Q * _S * _T + 18 * _L * _Q * _S * _T),
    "inf,0,*":   _DA * (2 + 3 * _Q - 6 * _L * _Q - 6 * _Q * _S + 3 * _T
                        - 6 * _L * _T - 9 * _Q * _S * _T + 18 * _L * _Q * _S * _T),
    "0,0,*":     3 * _DA ** 2,
    "inf,inf,*": _GL * _HL,
    "inf,inf,inf": _GL ** 2,
    "0,inf,inf": 2 * _DA * _GL,
}, {
    "inf,0,0":   ("0,0,*", "Lemma 5.11(1)"),
    "0,inf,0":   ("0,0,*", "Lemma 5.11(1)"),
    "inf,0,inf": ("0,inf,inf", "Lemma 5.11(2)"),
    "inf,inf,0": ("0,inf,inf", "Lemma 5.11(2)"),
})

_TABLES: Dict[str, Dict[Resolution, TableRow]] = {
    "A": _TABLE3,
    "A(t=1)": _TABLE2,
    "B": _TABLE4,
    "L": _TABLE5,
}


def table_row(family: str, resolution: Union[Resolution, str, Sequence[str]]) -> TableRow:
    """The tabulated (or link-identified) determinant row, as a polynomial.

    B rows missing from Table 4 fall back to Table 5 specialized at l = 1.
    """
    if not isinstance(resolution, Resolution):
        resolution = (Resolution.parse(resolution) if isinstance(resolution, str)
                      else Resolution(resolution))
    if family not in _TABLES:
        raise NotTabulatedError(f"unknown family {family!r}")
    row = _TABLES[family].get(resolution)
    if row is None and family == "B":
        l_row = _TABLE5.get(resolution)
        if l_row is not None:
            return TableRow("B", resolution,
                            l_row.poly.substitute({"l": MultiPoly.const(1)}),
                            "Table 5 at l=1", l_row.validity,
                            identified_via=l_row.identified_via)
    if row is None:
        raise NotTabulatedError(
            f"no tabulated determinant for {family}({resolution})")
    return row


def table_formula(family: str, resolution: Union[Resolution, str, Sequence[str]],
                  params: Mapping[str, int]) -> int:
    """Exact evaluation of the tabulated determinant formula."""
    row = table_row(family, resolution)
    values = dict(params)
    if family == "B":
        values.setdefault("l", 1)
    if family == "A(t=1)":
        values.setdefault("t", 1)
    return row.poly.evaluate(values)


def table_resolutions(family: str) -> List[Resolution]:
    return list(_TABLES[family].keys())


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------

@dataclass
class IdentityCheck:
    name: str
    statement: str
    residual: MultiPoly

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()


@dataclass
class IdentityReport:
    checks: List[IdentityCheck]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.ok else f"FAIL residual {c.residual}"
            lines.append(f"{c.name}: {c.statement} ... {status}")
        return "\n".join(lines) + "\n"


_ADDITIVITY = [
    ("(1)", "*,*,*", "0,*,*", "inf,*,*"),
    ("(2)", "0,*,*", "0,inf,*", "0,0,*"),
    ("(3)", "inf,*,*", "inf,0,*", "inf,inf,*"),
    ("(4)", "0,inf,*", "0,inf,0", "0,inf,inf"),
    ("(5)", "inf,0,*", "0,inf,0", "0,inf,inf"),
    ("(6)", "inf,inf,*", "0,inf,inf", "inf,inf,inf"),
]


def verify_additivity(family: str,
                      grid: Optional[Sequence[Mapping[str, int]]] = None) -> IdentityReport:
    """The six skein-additivity identities det(star) = det(0) + det(inf),
    as exact polynomial identities (Lemma 5.4 for A, Lemma 5.12 for L).

    Resolutions (0,inf,0) enter through their link identifications (Lemma
    5.3(1) / 5.11(1)).  An optional grid of parameter points adds numeric
    spot checks of the same identities.
    """
    if family not in ("A", "L"):
        raise NotTabulatedError(f"additivity suite defined for A and L, not {family!r}")
    lemma = "Lemma 5.4" if family == "A" else "Lemma 5.12"
    checks = []
    for tag, whole, zero, inf in _ADDITIVITY:
        residual = (table_row(family, whole).poly
                    - table_row(family, zero).poly
                    - table_row(family, inf).poly)
        statement = f"det {family}({whole}) = det {family}({zero}) + det {family}({inf})"
        checks.append(IdentityCheck(f"{lemma}{tag}", statement, residual))
        if grid:
            for point in grid:
                lhs = table_formula(family, whole, point)
                rhs = table_formula(family, zero, point) + table_formula(family, inf, point)
                if lhs != rhs:
                    checks.append(IdentityCheck(
                        f"{lemma}{tag} at {dict(point)}", statement,
                        MultiPoly.const(lhs - rhs)))
    return IdentityReport(checks)


def verify_substitution_identities() -> IdentityReport:
    """Consistency of the tables under parameter shifts (Lemmas 5.3(3)-(5)
    and 5.11(3)-(5)), plus the boundary specializations Table 2 = Table 3 at
    t = 1 and Table 4 = Table 5 at l = 1."""
    checks = []
    t_minus_1 = {"t": MultiPoly.var("t") - 1}
    l_minus_1 = {"l": MultiPoly.var("l") - 1}

    pairs = [
        ("Lemma 5.3(3)", "A", "inf,inf,inf", "*,*,*", t_minus_1, "t-1"),
        ("Lemma 5.3(4)", "A", "0,inf,inf", "0,*,*", t_minus_1, "t-1"),
        ("Lemma 5.11(3)", "L", "inf,inf,inf", "*,*,*", l_minus_1, "l-1"),
        ("Lemma 5.11(4)", "L", "0,inf,inf", "0,*,*", l_minus_1, "l-1"),
    ]
    for name, family, lhs_res, rhs_res, shift, shift_text in pairs:
        lhs = table_row(family, lhs_res).poly
        rhs = table_row(family, rhs_res).poly.substitute(shift)
        checks.append(IdentityCheck(
            name, f"det {family}({lhs_res}) = det {family}({rhs_res}) at {shift_text}",
            lhs - rhs))

    for name, family, res, var in [("Lemma 5.3(5)", "A", "0,0,*", "t"),
                                   ("Lemma 5.11(5)", "L", "0,0,*", "l")]:
        poly = table_row(family, res).poly
        residual = (MultiPoly.const(0) if var not in poly.variables()
                    else MultiPoly.var(var))
        checks.append(IdentityCheck(
            name, f"det {family}({res}) does not involve {var}", residual))

    for res, row in _TABLE2.items():
        specialized = table_row("A", res).poly.substitute({"t": MultiPoly.const(1)})
        checks.append(IdentityCheck(
            "Table2=Table3@t=1", f"A(t=1)({res})", row.poly - specialized))
    for res, row in _TABLE4.items():
        specialized = _TABLE5[res].poly.substitute({"l": MultiPoly.const(1)})
        checks.append(IdentityCheck(
            "Table4=Table5@l=1", f"B({res})", row.poly - specialized))
    return IdentityReport(checks)


# ---------------------------------------------------------------------------
# Symmetries used by the certificate layer
# ---------------------------------------------------------------------------

def mirror_params(params: Mapping[str, int]) -> Dict[str, int]:
    """Parameter map of the mirror image: negate every twist parameter."""
    return {k: -v for k, v in params.items()}


def double_swap_params(params: Mapping[str, int]) -> Dict[str, int]:
    """The L-family symmetry swapping q with l and s with t simultaneously."""
    swapped = dict(params)
    swapped["q"], swapped["l"] = params["l"], params["q"]
    swapped["s"], swapped["t"] = params["t"], params["s"]
    return swapped


def qt_swap_params(params: Mapping[str, int]) -> Dict[str, int]:
    """The A-family symmetry swapping q with t (valid on symmetric rows)."""
    swapped = dict(params)
    swapped["q"], swapped["t"] = params["t"], params["q"]
    return swapped
