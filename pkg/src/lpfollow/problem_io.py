"""Problem ingestion: coordinate files, an MPS subset, standard-form
conversion, and seeded right-hand-side noise.

Coordinate format (one value per token, ASCII decimal, zero-based
indices, '#' starts a comment anywhere on a line):

    # name: optional-label
    m n
    k
    row col value        (k triplet lines; duplicates are summed)
    b_0 ... b_{m-1}      (m lines)
    c_0 ... c_{n-1}      (n lines)

MPS subset: sections NAME, ROWS (N/L/G/E), COLUMNS, RHS, BOUNDS
(UP/LO/FX/FR) and ENDATA, whitespace-delimited. RANGES and integer
markers are rejected loudly.
"""

import io
from dataclasses import dataclass, field

import numpy as np

from .model import StandardFormLP
from .rng import SplitMix64

__all__ = [
    "CoordinateLP",
    "GeneralFormLP",
    "ParseError",
    "StandardFormMap",
    "UnsupportedFeatureError",
    "inject_noise",
    "read_coordinate_lp",
    "read_mps",
    "to_standard_form",
    "write_coordinate_lp",
]


class ParseError(ValueError):
    """Malformed input; carries the 1-based source line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class UnsupportedFeatureError(ValueError):
    """Input uses a declared-out-of-scope feature (e.g. MPS RANGES)."""


@dataclass
class CoordinateLP:
    """Sparse triplet carrier for the coordinate format."""

    m: int
    n: int
    triplets: list[tuple[int, int, float]]
    b: np.ndarray
    c: np.ndarray
    name: str = "coordinate-lp"

    def densify(self) -> StandardFormLP:
        a = np.zeros((self.m, self.n))
        for i, j, v in self.triplets:
            a[i, j] += v  # duplicates sum
        return StandardFormLP(a, self.b, self.c, name=self.name)


def _text_lines(source) -> list[str]:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    return source.splitlines()


def read_coordinate_lp(source) -> StandardFormLP:
    """Parse the coordinate format and densify to a StandardFormLP."""
    name = "coordinate-lp"
    tokens: list[tuple[int, list[str]]] = []
    for line_no, raw in enumerate(_text_lines(source), start=1):
        comment = raw.find("#")
        if comment >= 0:
            body = raw[comment + 1 :].strip()
            if body.startswith("name:"):
                name = body[len("name:") :].strip() or name
            raw = raw[:comment]
        parts = raw.split()
        if parts:
            tokens.append((line_no, parts))

    pos = 0

    def next_line(what, count):
        nonlocal pos
        if pos >= len(tokens):
            last = tokens[-1][0] if tokens else 1
            raise ParseError(last, f"unexpected end of input, expected {what}")
        line_no, parts = tokens[pos]
        pos += 1
        if len(parts) != count:
            raise ParseError(line_no, f"expected {what} ({count} fields), got {len(parts)}")
        return line_no, parts

    def parse_int(line_no, text, what):
        try:
            return int(text)
        except ValueError:
            raise ParseError(line_no, f"bad integer for {what}: {text!r}") from None

    def parse_float(line_no, text, what):
        try:
            return float(text)
        except ValueError:
            raise ParseError(line_no, f"bad number for {what}: {text!r}") from None

    line_no, parts = next_line("header 'm n'", 2)
    m = parse_int(line_no, parts[0], "m")
    n = parse_int(line_no, parts[1], "n")
    if m < 1 or n < 1:
        raise ParseError(line_no, f"dimensions must be positive, got {m} {n}")

    line_no, parts = next_line("triplet count", 1)
    k = parse_int(line_no, parts[0], "triplet count")
    if k < 0:
        raise ParseError(line_no, f"triplet count must be nonnegative, got {k}")

    triplets = []
    for _ in range(k):
        line_no, parts = next_line("triplet 'row col value'", 3)
        i = parse_int(line_no, parts[0], "row")
        j = parse_int(line_no, parts[1], "col")
        v = parse_float(line_no, parts[2], "value")
        if not 0 <= i < m:
            raise ParseError(line_no, f"row index {i} out of range [0, {m})")
        if not 0 <= j < n:
            raise ParseError(line_no, f"col index {j} out of range [0, {n})")
        triplets.append((i, j, v))

    b = np.empty(m)
    for i in range(m):
        line_no, parts = next_line(f"b[{i}]", 1)
        b[i] = parse_float(line_no, parts[0], f"b[{i}]")
    c = np.empty(n)
    for j in range(n):
        line_no, parts = next_line(f"c[{j}]", 1)
        c[j] = parse_float(line_no, parts[0], f"c[{j}]")

    if pos != len(tokens):
        raise ParseError(tokens[pos][0], "trailing content after c entries")
    return CoordinateLP(m, n, triplets, b, c, name=name).densify()


def write_coordinate_lp(lp: StandardFormLP) -> str:
    """Emit the coordinate format; read_coordinate_lp round-trips it exactly."""
    out = io.StringIO()
    out.write(f"# name: {lp.name}\n")
    out.write(f"{lp.m} {lp.n}\n")
    rows, cols = np.nonzero(lp.a)
    out.write(f"{len(rows)}\n")
    for i, j in zip(rows, cols):
        out.write(f"{i} {j} {float(lp.a[i, j])!r}\n")
    for v in lp.b:
        out.write(f"{float(v)!r}\n")
    for v in lp.c:
        out.write(f"{float(v)!r}\n")
    return out.getvalue()


@dataclass
class GeneralFormLP:
    """General-form problem: rows tagged <=, =, >= plus variable bounds.

    Lower bounds default to 0, upper bounds to +inf; FR variables carry
    lo = -inf. objective_constant records any RHS entry on the
    objective row.
    """

    name: str
    objective: np.ndarray
    rows: np.ndarray
    senses: list[str]
    rhs: np.ndarray
    lo: np.ndarray
    up: np.ndarray
    col_names: list[str]
    row_names: list[str]
    objective_constant: float = 0.0

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    @property
    def n_cols(self) -> int:
        return self.rows.shape[1] if self.rows.ndim == 2 else 0


def read_mps(source) -> GeneralFormLP:
    """Parse the MPS subset into a general-form problem."""
    name = "mps-lp"
    section = None
    objective_row = None
    row_senses: dict[str, str] = {}
    row_order: list[str] = []
    col_order: list[str] = []
    col_entries: dict[str, dict[str, float]] = {}
    obj_entries: dict[str, float] = {}
    rhs_entries: dict[str, float] = {}
    obj_rhs = 0.0
    bounds: dict[str, dict[str, float]] = {}
    saw_endata = False
    line_no = 0

    for line_no, raw in enumerate(_text_lines(source), start=1):
        if raw.startswith("*") or not raw.strip():
            continue
        parts = raw.split()
        head = parts[0].upper()

        if not raw[0].isspace():
            if head == "NAME":
                name = parts[1] if len(parts) > 1 else name
                continue
            if head in ("ROWS", "COLUMNS", "RHS", "BOUNDS"):
                section = head
                continue
            if head == "RANGES":
                raise UnsupportedFeatureError(
                    f"line {line_no}: RANGES sections are not supported"
                )
            if head == "ENDATA":
                saw_endata = True
                break
            raise ParseError(line_no, f"unknown section {parts[0]!r}")

        if section == "ROWS":
            if len(parts) != 2:
                raise ParseError(line_no, "ROWS entries need 'type name'")
            sense, row = parts[0].upper(), parts[1]
            if sense == "N":
                if objective_row is None:
                    objective_row = row
                else:
                    raise ParseError(line_no, f"second objective row {row!r}")
            elif sense in ("L", "G", "E"):
                row_senses[row] = sense
                row_order.append(row)
            else:
                raise ParseError(line_no, f"unknown row type {parts[0]!r}")
        elif section == "COLUMNS":
            if len(parts) >= 2 and parts[1] == "'MARKER'":
                raise UnsupportedFeatureError(
                    f"line {line_no}: integer markers are not supported"
                )
            if len(parts) not in (3, 5):
                raise ParseError(line_no, "COLUMNS entries need 'col row value [row value]'")
            col = parts[0]
            if col not in col_entries:
                col_entries[col] = {}
                col_order.append(col)
            for off in range(1, len(parts), 2):
                row, text = parts[off], parts[off + 1]
                try:
                    value = float(text)
                except ValueError:
                    raise ParseError(line_no, f"bad number {text!r}") from None
                if row == objective_row:
                    obj_entries[col] = obj_entries.get(col, 0.0) + value
                elif row in row_senses:
                    col_entries[col][row] = col_entries[col].get(row, 0.0) + value
                else:
                    raise ParseError(line_no, f"unknown row {row!r}")
        elif section == "RHS":
            if len(parts) not in (3, 5):
                raise ParseError(line_no, "RHS entries need 'set row value [row value]'")
            for off in range(1, len(parts), 2):
                row, text = parts[off], parts[off + 1]
                try:
                    value = float(text)
                except ValueError:
                    raise ParseError(line_no, f"bad number {text!r}") from None
                if row == objective_row:
                    # convention: RHS on the objective row is a negated constant
                    obj_rhs -= value
                elif row in row_senses:
                    rhs_entries[row] = value
                else:
                    raise ParseError(line_no, f"unknown row {row!r}")
        elif section == "BOUNDS":
            kind = parts[0].upper()
            if kind in ("UP", "LO", "FX"):
                if len(parts) != 4:
                    raise ParseError(line_no, f"{kind} bound needs 'type set col value'")
                col, text = parts[2], parts[3]
                try:
                    value = float(text)
                except ValueError:
                    raise ParseError(line_no, f"bad number {text!r}") from None
                bounds.setdefault(col, {})[kind] = value
            elif kind == "FR":
                if len(parts) != 3:
                    raise ParseError(line_no, "FR bound needs 'type set col'")
                bounds.setdefault(parts[2], {})["FR"] = 0.0
            else:
                raise ParseError(line_no, f"unknown bound type {parts[0]!r}")
        else:
            raise ParseError(line_no, "data before any section header")

    if not saw_endata:
        raise ParseError(max(line_no, 1), "missing ENDATA")
    if objective_row is None:
        raise ParseError(1, "missing objective row (type N)")
    if not col_order:
        raise ParseError(1, "no columns")
    if not row_order:
        raise ParseError(1, "no constraint rows")

    n_rows, n_cols = len(row_order), len(col_order)
    rows = np.zeros((n_rows, n_cols))
    objective = np.zeros(n_cols)
    rhs = np.zeros(n_rows)
    lo = np.zeros(n_cols)
    up = np.full(n_cols, np.inf)
    row_index = {r: i for i, r in enumerate(row_order)}
    for j, col in enumerate(col_order):
        objective[j] = obj_entries.get(col, 0.0)
        for row, value in col_entries[col].items():
            rows[row_index[row], j] = value
    for row, value in rhs_entries.items():
        rhs[row_index[row]] = value
    col_index = {col: j for j, col in enumerate(col_order)}
    for col, kinds in bounds.items():
        if col not in col_index:
            raise ParseError(1, f"bound on unknown column {col!r}")
        j = col_index[col]
        if "FR" in kinds:
            lo[j] = -np.inf
        if "LO" in kinds:
            lo[j] = kinds["LO"]
        if "UP" in kinds:
            up[j] = kinds["UP"]
        if "FX" in kinds:
            lo[j] = up[j] = kinds["FX"]

    return GeneralFormLP(
        name=name,
        objective=objective,
        rows=rows,
        senses=[row_senses[r] for r in row_order],
        rhs=rhs,
        lo=lo,
        up=up,
        col_names=col_order,
        row_names=row_order,
        objective_constant=obj_rhs,
    )


@dataclass
class StandardFormMap:
    """Column bookkeeping from to_standard_form.

    entries[j] describes original variable j: ("fixed", value),
    ("shift", std_col, lo) or ("split", plus_col, minus_col).
    """

    entries: list[tuple]
    objective_constant: float
    n_standard: int

    def original_x(self, x_std: np.ndarray) -> np.ndarray:
        out = np.empty(len(self.entries))
        for j, entry in enumerate(self.entries):
            if entry[0] == "fixed":
                out[j] = entry[1]
            elif entry[0] == "shift":
                out[j] = x_std[entry[1]] + entry[2]
            else:
                out[j] = x_std[entry[1]] - x_std[entry[2]]
        return out


def to_standard_form(g: GeneralFormLP) -> tuple[StandardFormLP, StandardFormMap]:
    """Convert a general-form problem to min c^T x, a x = b, x >= 0.

    Finite lower bounds shift, free variables split into differences,
    inequality rows gain slack/surplus columns, finite upper bounds
    become extra rows with slacks. Fixed variables (lo == up) are
    substituted out so the standard form keeps a nonempty strict
    interior.
    """
    entries: list[tuple] = []
    constant = g.objective_constant
    rhs = g.rhs.astype(float).copy()
    upper_rows: list[tuple[int, float]] = []  # (original var, shifted bound)

    col_blocks: list[np.ndarray] = []
    costs: list[float] = []
    next_col = 0
    for j in range(g.n_cols):
        lo, up = g.lo[j], g.up[j]
        col = g.rows[:, j]
        if np.isfinite(lo) and np.isfinite(up) and lo == up:
            rhs -= col * lo
            constant += g.objective[j] * lo
            entries.append(("fixed", lo))
            continue
        if np.isfinite(lo):
            if lo != 0.0:
                rhs -= col * lo
                constant += g.objective[j] * lo
            entries.append(("shift", next_col, lo))
            col_blocks.append(col)
            costs.append(g.objective[j])
            if np.isfinite(up):
                upper_rows.append((j, up - lo))
            next_col += 1
        else:
            entries.append(("split", next_col, next_col + 1))
            col_blocks.append(col)
            col_blocks.append(-col)
            costs.append(g.objective[j])
            costs.append(-g.objective[j])
            if np.isfinite(up):
                upper_rows.append((j, up))
            next_col += 2

    if not col_blocks:
        raise ValueError("conversion removed every variable (all bounds fixed)")

    n_struct = next_col
    n_rows = g.n_rows
    a_struct = np.column_stack(col_blocks)
    senses = list(g.senses)

    slack_cols = []
    for i, sense in enumerate(senses):
        if sense == "L":
            slack_cols.append((i, 1.0))
        elif sense == "G":
            slack_cols.append((i, -1.0))

    n_upper = len(upper_rows)
    n_slack = len(slack_cols)
    m_std = n_rows + n_upper
    n_std = n_struct + n_slack + n_upper

    a = np.zeros((m_std, n_std))
    a[:n_rows, :n_struct] = a_struct
    b = np.concatenate([rhs, np.zeros(n_upper)])
    c = np.concatenate([np.array(costs), np.zeros(n_slack + n_upper)])

    for k, (i, sign) in enumerate(slack_cols):
        a[i, n_struct + k] = sign

    for k, (j, bound) in enumerate(upper_rows):
        row = n_rows + k
        entry = entries[j]
        if entry[0] == "shift":
            a[row, entry[1]] = 1.0
        else:
            a[row, entry[1]] = 1.0
            a[row, entry[2]] = -1.0
        a[row, n_struct + n_slack + k] = 1.0
        b[row] = bound

    lp = StandardFormLP(a, b, c, name=g.name)
    return lp, StandardFormMap(entries=entries, objective_constant=constant, n_standard=n_std)


def inject_noise(lp: StandardFormLP, eps: float, seed: int) -> StandardFormLP:
    """Perturb b by eps * uniform[0,1) draws from SplitMix64(seed).

    eps = 0 returns lp unchanged (bit-identical); a and c are never
    touched.
    """
    if eps < 0.0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if eps == 0.0:
        return lp
    rng = SplitMix64(seed)
    noise = np.array([rng.uniform() for _ in range(lp.m)])
    return StandardFormLP(lp.a, lp.b + eps * noise, lp.c, name=lp.name)
