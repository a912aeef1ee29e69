"""Parser and printer for the .onl optical-circuit description language.

The language is line-oriented; ``#`` starts a comment and blank lines are
ignored. Each statement is a keyword followed by positional words or
``key=value`` pairs. Dimensioned values carry a required unit suffix:
angles ``deg``/``rad``, lengths ``nm|um|mm|m``, frequencies
``Hz|kHz|MHz|GHz``.

Statements::

    source pol=<H|V|D|A> wavelength=<len> linewidth=<freq> [lineshape=<lorentzian|gaussian>]
    prep diag
    prep qwp axis=<angle>
    split pbs | split bs
    hwp path=<1|2> (axis=<angle> | rot=<angle>)
    phase path=<1|2> phi=<angle|PHI>
    pathdiff length=<len>
    merge pbs | merge bs
    pol port=<A|B> angle=<angle>

``rot`` is the polarization-rotation angle the plate produces (compiled
to a rotation matrix); ``axis`` is the physical fast-axis angle (compiled
to the half-wave reflection), with rotation = 2 x axis. The literal
``PHI`` declares the circuit's single sweep symbol.

Validation rules: exactly one source; at most one sweep symbol; path
references in {1, 2} and ports in {A, B}; a merge must precede any
``pol port=`` statement. Parsing never raises on malformed text content;
all diagnosable errors are collected and reported together.

The topology is the fixed two-path interferometer: the source is
injected on rail 2 and prep/split/merge act on the rail pair. Port A is
the rail-2 output of the merge, port B the rail-1 output.

``format`` emits the canonical form: comments dropped, statement order
preserved, LF line endings, angles normalized to ``deg`` at 6
significant digits (lossy for finer values), lengths and frequencies
re-emitted in their original unit.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from . import engine, jones
from .coherence import GAUSSIAN, LINESHAPES, LORENTZIAN, SourceSpec

# ParseError codes (closed list)
UNKNOWN_KEYWORD = "UnknownKeyword"
BAD_ANGLE_UNIT = "BadAngleUnit"
DUPLICATE_SOURCE = "DuplicateSource"
MISSING_MERGE = "MissingMerge"
BAD_REFERENCE = "BadReference"
MISSING_VALUE = "MissingValue"
RANGE_ERROR = "RangeError"

ANGLE_UNITS = {"deg": math.pi / 180.0, "rad": 1.0}
LENGTH_UNITS = {"nm": 1e-9, "um": 1e-6, "mm": 1e-3, "m": 1.0}
FREQUENCY_UNITS = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}

SWEEP_SYMBOL = "PHI"

POL_ANGLES = {"H": 0.0, "V": math.pi / 2.0, "D": math.pi / 4.0, "A": -math.pi / 4.0}
POL_VECTORS = {"H": jones.H, "V": jones.V, "D": jones.D, "A": jones.A}

_NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    code: str
    message: str

    def render(self, filename: str = "<netlist>") -> str:
        return f"{filename}:{self.line}:{self.column}: {self.code} {self.message}"


class NetlistParseError(Exception):
    """Raised by parse(); carries every diagnosable error."""

    def __init__(self, errors: list[ParseError]):
        self.errors = list(errors)
        summary = "; ".join(e.render() for e in self.errors[:3])
        if len(self.errors) > 3:
            summary += f"; (+{len(self.errors) - 3} more)"
        super().__init__(summary)


@dataclass(frozen=True)
class Quantity:
    """A dimensioned value: SI magnitude plus the unit it was written in."""

    si: float
    unit: str


@dataclass(frozen=True)
class Statement:
    kind: str
    line: int
    args: dict
    meta: dict = field(default_factory=dict)  # source positions, not semantic

    def __eq__(self, other):
        if not isinstance(other, Statement):
            return NotImplemented
        return self.kind == other.kind and self.args == other.args


@dataclass
class Circuit:
    """A validated circuit: source, ordered statements, compiled pipeline."""

    source: SourceSpec
    statements: list[Statement]
    elements: list[engine.Element]
    sweep_symbol: str | None = None
    port_map: dict[str, int] | None = None
    path_difference: float = 0.0
    pol_angles: dict[str, float] = field(default_factory=dict)

    @property
    def has_polarizer(self) -> bool:
        return bool(self.pol_angles)

    def initial_state(self) -> np.ndarray:
        state = np.zeros(4, dtype=complex)
        state[2:4] = self.source.polarization * math.sqrt(self.source.intensity)
        return state

    def structurally_equal(self, other: "Circuit") -> bool:
        return self.statements == other.statements


class _LineParser:
    """Tokenizes one statement line and accumulates errors."""

    def __init__(self, line_no: int, text: str, errors: list[ParseError]):
        self.line_no = line_no
        self.errors = errors
        self.tokens = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", text)]

    def error(self, column: int, code: str, message: str) -> None:
        self.errors.append(ParseError(self.line_no, column, code, message))

    def split_pairs(self):
        """Split tokens after the head into positional words and key=value pairs."""
        words, pairs = [], []
        for tok, col in self.tokens[1:]:
            if "=" in tok:
                key, value = tok.split("=", 1)
                pairs.append((key, value, col, col + len(key) + 1))
            else:
                words.append((tok, col))
        return words, pairs


def _parse_quantity(value: str, units: dict):
    """Split a number+unit token; returns (magnitude, unit) or None."""
    m = _NUMBER_RE.match(value)
    if m:
        unit = value[m.end():]
        if unit in units:
            return float(m.group(0)), unit
    return None


def _collect_keys(lp: _LineParser, pairs, allowed: set[str]) -> dict:
    """Key=value pairs into a dict; flags unknown and repeated keys."""
    out = {}
    for key, value, kcol, vcol in pairs:
        if key not in allowed:
            lp.error(kcol, UNKNOWN_KEYWORD, f"unknown key {key!r}")
        elif key in out:
            lp.error(kcol, UNKNOWN_KEYWORD, f"repeated key {key!r}")
        else:
            out[key] = (value, vcol)
    return out


def _angle_value(lp: _LineParser, key: str, seen: dict) -> float | None:
    value, vcol = seen[key]
    q = _parse_quantity(value, ANGLE_UNITS)
    if q is None:
        lp.error(vcol, BAD_ANGLE_UNIT, f"{key} expects an angle like 45deg or 0.5rad")
        return None
    mag, unit = q
    return mag * ANGLE_UNITS[unit]


def _dimension_value(lp, key, seen, units, kind_name) -> Quantity | None:
    value, vcol = seen[key]
    q = _parse_quantity(value, units)
    if q is None:
        expected = "|".join(units)
        lp.error(vcol, BAD_ANGLE_UNIT, f"{key} expects a {kind_name} with unit {expected}")
        return None
    mag, unit = q
    return Quantity(mag * units[unit], unit)


def _require(lp: _LineParser, seen: dict, keys: list[str]) -> bool:
    head_col = lp.tokens[0][1]
    ok = True
    for key in keys:
        if key not in seen:
            lp.error(head_col, MISSING_VALUE, f"{lp.tokens[0][0]} requires {key}=")
            ok = False
    return ok


def _stmt_source(lp: _LineParser) -> Statement | None:
    words, pairs = lp.split_pairs()
    for tok, col in words:
        lp.error(col, UNKNOWN_KEYWORD, f"unexpected word {tok!r}")
    seen = _collect_keys(lp, pairs, {"pol", "wavelength", "linewidth", "lineshape"})
    ok = _require(lp, seen, ["pol", "wavelength", "linewidth"])
    args: dict = {"lineshape": LORENTZIAN}
    if "pol" in seen:
        value, vcol = seen["pol"]
        if value not in POL_VECTORS:
            lp.error(vcol, BAD_REFERENCE, "pol must be one of H, V, D, A")
            ok = False
        else:
            args["pol"] = value
    if "wavelength" in seen:
        wl = _dimension_value(lp, "wavelength", seen, LENGTH_UNITS, "length")
        if wl is None:
            ok = False
        elif wl.si <= 0.0:
            lp.error(seen["wavelength"][1], RANGE_ERROR, "wavelength must be positive")
            ok = False
        else:
            args["wavelength"] = wl
    if "linewidth" in seen:
        lw = _dimension_value(lp, "linewidth", seen, FREQUENCY_UNITS, "frequency")
        if lw is None:
            ok = False
        elif lw.si <= 0.0:
            lp.error(seen["linewidth"][1], RANGE_ERROR, "linewidth must be positive")
            ok = False
        else:
            args["linewidth"] = lw
    if "lineshape" in seen:
        value, vcol = seen["lineshape"]
        if value not in LINESHAPES:
            lp.error(vcol, BAD_REFERENCE, f"lineshape must be {LORENTZIAN} or {GAUSSIAN}")
            ok = False
        else:
            args["lineshape"] = value
    return Statement("source", lp.line_no, args) if ok else None


def _stmt_prep(lp: _LineParser) -> Statement | None:
    words, pairs = lp.split_pairs()
    head_col = lp.tokens[0][1]
    if not words:
        lp.error(head_col, MISSING_VALUE, "prep requires diag or qwp")
        return None
    mode, mcol = words[0]
    for tok, col in words[1:]:
        lp.error(col, UNKNOWN_KEYWORD, f"unexpected word {tok!r}")
    if mode == "diag":
        if pairs:
            lp.error(pairs[0][2], UNKNOWN_KEYWORD, "prep diag takes no keys")
            return None
        return Statement("prep", lp.line_no, {"mode": "diag"})
    if mode == "qwp":
        seen = _collect_keys(lp, pairs, {"axis"})
        if not _require(lp, seen, ["axis"]):
            return None
        axis = _angle_value(lp, "axis", seen)
        if axis is None:
            return None
        return Statement("prep", lp.line_no, {"mode": "qwp", "axis": axis})
    lp.error(mcol, UNKNOWN_KEYWORD, f"prep mode must be diag or qwp, got {mode!r}")
    return None


def _stmt_splitter(lp: _LineParser) -> Statement | None:
    kind = lp.tokens[0][0]
    words, pairs = lp.split_pairs()
    head_col = lp.tokens[0][1]
    if pairs:
        lp.error(pairs[0][2], UNKNOWN_KEYWORD, f"{kind} takes no keys")
        return None
    if not words:
        lp.error(head_col, MISSING_VALUE, f"{kind} requires pbs or bs")
        return None
    arm, acol = words[0]
    for tok, col in words[1:]:
        lp.error(col, UNKNOWN_KEYWORD, f"unexpected word {tok!r}")
    if arm not in ("pbs", "bs"):
        lp.error(acol, UNKNOWN_KEYWORD, f"{kind} element must be pbs or bs, got {arm!r}")
        return None
    return Statement(kind, lp.line_no, {"element": arm})


def _path_value(lp: _LineParser, seen: dict) -> int | None:
    value, vcol = seen["path"]
    if value not in ("1", "2"):
        lp.error(vcol, BAD_REFERENCE, f"paths are 1|2, got {value!r}")
        return None
    return int(value)


def _stmt_hwp(lp: _LineParser) -> Statement | None:
    words, pairs = lp.split_pairs()
    for tok, col in words:
        lp.error(col, UNKNOWN_KEYWORD, f"unexpected word {tok!r}")
    seen = _collect_keys(lp, pairs, {"path", "axis", "rot"})
    ok = _require(lp, seen, ["path"])
    path = _path_value(lp, seen) if "path" in seen else None
    ok = ok and path is not None
    given = [k for k in ("axis", "rot") if k in seen]
    if len(given) != 1:
        lp.error(lp.tokens[0][1], MISSING_VALUE, "hwp requires exactly one of axis= or rot=")
        ok = False
    angle = None
    for key in given:
        angle = _angle_value(lp, key, seen)
        ok = ok and angle is not None
    if not ok:
        return None
    return Statement("hwp", lp.line_no, {"path": path, given[0]: angle})


def _stmt_phase(lp: _LineParser) -> Statement | None:
    words, pairs = lp.split_pairs()
    for tok, col in words:
        lp.error(col, UNKNOWN_KEYWORD, f"unexpected word {tok!r}")
    seen = _collect_keys(lp, pairs, {"path", "phi"})
    ok = _require(lp, seen, ["path", "phi"])
    path = _path_value(lp, seen) if "path" in seen else None
    ok = ok and path is not None
    symbolic = False
    angle = None
    vcol = 1
    if "phi" in seen:
        value, vcol = seen["phi"]
        if value == SWEEP_SYMBOL:
            symbolic = True
        else:
            angle = _angle_value(lp, "phi", seen)
            ok = ok and angle is not None
    if not ok:
        return None
    if symbolic:
        return Statement("phase", lp.line_no, {"path": path, "symbol": SWEEP_SYMBOL},
                         meta={"symbol_column": vcol})
    return Statement("phase", lp.line_no, {"path": path, "phi": angle})


def _stmt_pathdiff(lp: _LineParser) -> Statement | None:
    words, pairs = lp.split_pairs()
    for tok, col in words:
        lp.error(col, UNKNOWN_KEYWORD, f"unexpected word {tok!r}")
    seen = _collect_keys(lp, pairs, {"length"})
    if not _require(lp, seen, ["length"]):
        return None
    q = _dimension_value(lp, "length", seen, LENGTH_UNITS, "length")
    if q is None:
        return None
    if q.si < 0.0:
        lp.error(seen["length"][1], RANGE_ERROR, "path difference must be non-negative")
        return None
    return Statement("pathdiff", lp.line_no, {"length": q})


def _stmt_pol(lp: _LineParser) -> Statement | None:
    words, pairs = lp.split_pairs()
    for tok, col in words:
        lp.error(col, UNKNOWN_KEYWORD, f"unexpected word {tok!r}")
    seen = _collect_keys(lp, pairs, {"port", "angle"})
    ok = _require(lp, seen, ["port", "angle"])
    port = None
    if "port" in seen:
        value, vcol = seen["port"]
        if value not in ("A", "B"):
            lp.error(vcol, BAD_REFERENCE, f"ports are A|B, got {value!r}")
            ok = False
        else:
            port = value
    angle = None
    if "angle" in seen:
        angle = _angle_value(lp, "angle", seen)
        ok = ok and angle is not None
    if not ok:
        return None
    return Statement("pol", lp.line_no, {"port": port, "angle": angle})


_STATEMENT_PARSERS = {
    "source": _stmt_source,
    "prep": _stmt_prep,
    "split": _stmt_splitter,
    "merge": _stmt_splitter,
    "hwp": _stmt_hwp,
    "phase": _stmt_phase,
    "pathdiff": _stmt_pathdiff,
    "pol": _stmt_pol,
}


def _scan(text: str):
    """First pass: statements, errors, and the recognized statement heads.

    Heads are tracked separately so structural validation (source present,
    merge ordering) still works for lines whose body failed to parse.
    """
    errors: list[ParseError] = []
    statements: list[Statement] = []
    heads: list[tuple[str, int]] = []
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        hash_idx = line.find("#")
        if hash_idx >= 0:
            line = line[:hash_idx]
        if not line.strip():
            continue
        lp = _LineParser(line_no, line, errors)
        head, head_col = lp.tokens[0]
        handler = _STATEMENT_PARSERS.get(head)
        if handler is None:
            lp.error(head_col, UNKNOWN_KEYWORD, f"unknown statement {head!r}")
            continue
        heads.append((head, line_no))
        stmt = handler(lp)
        if stmt is not None:
            statements.append(stmt)
    return statements, heads, errors


def _validate(statements, heads, errors) -> None:
    source_lines = [line for kind, line in heads if kind == "source"]
    if not source_lines:
        errors.append(ParseError(1, 1, MISSING_VALUE, "a source statement is required"))
    for line in source_lines[1:]:
        errors.append(ParseError(line, 1, DUPLICATE_SOURCE,
                                 "only one source statement is allowed"))
    merge_seen = False
    for kind, line in heads:
        if kind == "merge":
            merge_seen = True
        elif kind == "pol" and not merge_seen:
            errors.append(ParseError(line, 1, MISSING_MERGE,
                                     "pol port= requires a preceding merge"))
    sweep_seen = False
    for s in statements:
        if s.kind == "phase" and "symbol" in s.args:
            if sweep_seen:
                errors.append(ParseError(s.line, s.meta.get("symbol_column", 1),
                                         BAD_REFERENCE,
                                         "only one PHI sweep symbol is allowed"))
            sweep_seen = True


def _compile(statements: list[Statement]) -> Circuit:
    source_stmt = next(s for s in statements if s.kind == "source")
    pol_name = source_stmt.args["pol"]
    source = SourceSpec(
        wavelength=source_stmt.args["wavelength"].si,
        linewidth=source_stmt.args["linewidth"].si,
        lineshape=source_stmt.args["lineshape"],
        polarization=POL_VECTORS[pol_name],
        intensity=1.0,
    )
    circuit = Circuit(source=source, statements=statements, elements=[])
    identity = np.eye(4, dtype=complex)
    for s in statements:
        if s.kind == "source":
            el = engine.Element("SOURCE", identity, dict(s.args), s.line)
        elif s.kind == "prep":
            if s.args["mode"] == "diag":
                u = jones.rotation_matrix(math.pi / 4.0 - POL_ANGLES[pol_name])
            else:
                u = jones.qwp_matrix(s.args["axis"])
            el = engine.lift_to_path(u, 2, "PREP", dict(s.args), s.line)
        elif s.kind in ("split", "merge"):
            if s.args["element"] == "pbs":
                base = engine.pbs_element(location=s.line)
            else:
                base = engine.bs_element(location=s.line)
            el = engine.Element(base.kind, base.matrix, dict(s.args), s.line)
            if s.kind == "merge":
                circuit.port_map = dict(engine.PORT_RAILS)
        elif s.kind == "hwp":
            if "rot" in s.args:
                u = jones.rotation_matrix(s.args["rot"])
            else:
                u = jones.hwp_matrix(s.args["axis"])
            el = engine.lift_to_path(u, s.args["path"], "HWP", dict(s.args), s.line)
        elif s.kind == "phase":
            if "symbol" in s.args:
                circuit.sweep_symbol = s.args["symbol"]
                el = engine.Element("PHASE", identity,
                                    {"path": s.args["path"], "symbol": SWEEP_SYMBOL},
                                    s.line)
            else:
                el = engine.phase_element(s.args["phi"], s.args["path"], s.line)
        elif s.kind == "pathdiff":
            circuit.path_difference = s.args["length"].si
            el = engine.Element("PATHDIFF", identity, dict(s.args), s.line)
        elif s.kind == "pol":
            port = s.args["port"]
            rail = engine.PORT_RAILS[port]
            el = engine.lift_to_path(jones.polarizer_matrix(s.args["angle"]), rail,
                                     "POL", dict(s.args), s.line)
            circuit.pol_angles[port] = s.args["angle"]
        else:  # pragma: no cover - parser emits only the kinds above
            raise AssertionError(s.kind)
        circuit.elements.append(el)
    return circuit


def parse(text: str) -> Circuit:
    """Parse netlist source into a validated Circuit.

    Raises NetlistParseError carrying every diagnosable ParseError.
    """
    statements, heads, errors = _scan(text)
    _validate(statements, heads, errors)
    if errors:
        raise NetlistParseError(errors)
    return _compile(statements)


def parse_errors(text: str) -> list[ParseError]:
    """All diagnostics for ``text``; empty when it parses cleanly."""
    try:
        parse(text)
    except NetlistParseError as exc:
        return exc.errors
    return []


def _fmt_number(value: float) -> str:
    return f"{value:.6g}"


def _fmt_angle(rad: float) -> str:
    return f"{_fmt_number(math.degrees(rad))}deg"


def _fmt_quantity(q: Quantity, units: dict) -> str:
    return f"{_fmt_number(q.si / units[q.unit])}{q.unit}"


def format(circuit: Circuit) -> str:
    """Canonical text for a circuit; parse(format(c)) is structurally equal
    to c for canonically-representable values."""
    lines = []
    for s in circuit.statements:
        if s.kind == "source":
            lines.append(
                "source pol={} wavelength={} linewidth={} lineshape={}".format(
                    s.args["pol"],
                    _fmt_quantity(s.args["wavelength"], LENGTH_UNITS),
                    _fmt_quantity(s.args["linewidth"], FREQUENCY_UNITS),
                    s.args["lineshape"],
                )
            )
        elif s.kind == "prep":
            if s.args["mode"] == "diag":
                lines.append("prep diag")
            else:
                lines.append(f"prep qwp axis={_fmt_angle(s.args['axis'])}")
        elif s.kind in ("split", "merge"):
            lines.append(f"{s.kind} {s.args['element']}")
        elif s.kind == "hwp":
            key = "rot" if "rot" in s.args else "axis"
            lines.append(f"hwp path={s.args['path']} {key}={_fmt_angle(s.args[key])}")
        elif s.kind == "phase":
            if "symbol" in s.args:
                lines.append(f"phase path={s.args['path']} phi={SWEEP_SYMBOL}")
            else:
                lines.append(f"phase path={s.args['path']} phi={_fmt_angle(s.args['phi'])}")
        elif s.kind == "pathdiff":
            lines.append(f"pathdiff length={_fmt_quantity(s.args['length'], LENGTH_UNITS)}")
        elif s.kind == "pol":
            lines.append(f"pol port={s.args['port']} angle={_fmt_angle(s.args['angle'])}")
    return "\n".join(lines) + "\n"
