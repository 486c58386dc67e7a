"""Exact data types for the DEA laboratory.

Everything downstream (solvers, production-possibility constructions, models)
works on the types defined here: arbitrary-precision rationals, named
activities (DMUs), immutable datasets, candidate points and integer bounding
boxes.  No floating-point value ever enters solver arithmetic; floats are
confined to rendering code.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Rational",
    "RationalLike",
    "rational",
    "DimensionError",
    "IntegralityError",
    "DatasetError",
    "BoxError",
    "Point",
    "DMU",
    "Dataset",
    "BoundingBox",
    "dominates",
    "parse_csv",
    "load_csv",
]

# The scalar type of all exact arithmetic.  ``fractions.Fraction`` already
# guarantees canonical reduced form with a positive denominator, which is
# exactly the invariant the laboratory relies on.
Rational = Fraction

RationalLike = Union[int, str, Fraction]


class DimensionError(ValueError):
    """Vector lengths disagree (inputs/outputs/box of different arity)."""


class IntegralityError(ValueError):
    """An integer-only operation received non-integer data."""


class DatasetError(ValueError):
    """A dataset or CSV file violates the expected format."""


class BoxError(ValueError):
    """A point or dataset falls outside the required bounding box."""


def rational(numerator: RationalLike, denominator: int = 1) -> Rational:
    """Build an exact rational in canonical reduced form.

    Accepts an integer pair, a decimal string such as ``"0.15"``, or a
    fraction string such as ``"4/9"``.  A zero denominator raises
    ``ZeroDivisionError`` like any exact division by zero would.
    """
    if isinstance(numerator, str):
        value = Fraction(numerator)
        if denominator != 1:
            value /= denominator
        return value
    return Fraction(numerator, denominator)


def _vector(values: Iterable[RationalLike], *, what: str) -> tuple[Rational, ...]:
    """Coerce an iterable to a tuple of non-negative rationals."""
    out = []
    for pos, raw in enumerate(values, start=1):
        try:
            value = Fraction(raw)
        except (ValueError, TypeError) as exc:
            raise DatasetError(f"{what} component {pos} is not rational: {raw!r}") from exc
        if value < 0:
            raise DatasetError(f"{what} component {pos} is negative: {raw!r}")
        out.append(value)
    return tuple(out)


def _is_integer_vector(values: Sequence[Rational]) -> bool:
    return all(v.denominator == 1 for v in values)


@dataclass(frozen=True, order=True)
class Point:
    """A candidate activity: an input vector paired with an output vector.

    Points are ordered lexicographically on (inputs, outputs) so that point
    sets can be reported deterministically.
    """

    inputs: tuple[Rational, ...]
    outputs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", _vector(self.inputs, what="input"))
        object.__setattr__(self, "outputs", _vector(self.outputs, what="output"))

    @property
    def is_integer(self) -> bool:
        """True when every component is an integer."""
        return _is_integer_vector(self.inputs) and _is_integer_vector(self.outputs)

    def coordinates(self) -> tuple[Rational, ...]:
        return self.inputs + self.outputs

    def as_int_tuples(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Integer view of the point; raises when a component is fractional."""
        if not self.is_integer:
            raise IntegralityError(f"point {self} has non-integer components")
        return (
            tuple(int(v) for v in self.inputs),
            tuple(int(v) for v in self.outputs),
        )

    def __str__(self) -> str:
        ins = ",".join(str(v) for v in self.inputs)
        outs = ",".join(str(v) for v in self.outputs)
        return f"({ins};{outs})"


@dataclass(frozen=True)
class DMU:
    """A named observed activity."""

    name: str
    inputs: tuple[Rational, ...]
    outputs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if not self.name or not str(self.name).strip():
            raise DatasetError("DMU name must be a non-empty string")
        object.__setattr__(self, "name", str(self.name))
        object.__setattr__(self, "inputs", _vector(self.inputs, what=f"DMU {self.name} input"))
        object.__setattr__(self, "outputs", _vector(self.outputs, what=f"DMU {self.name} output"))
        if not self.inputs or not self.outputs:
            raise DimensionError(f"DMU {self.name} needs at least one input and one output")

    @property
    def point(self) -> Point:
        return Point(self.inputs, self.outputs)

    @property
    def is_integer(self) -> bool:
        return self.point.is_integer


@dataclass(frozen=True)
class Dataset:
    """An immutable collection of DMUs sharing the same dimensions."""

    dmus: tuple[DMU, ...]

    def __post_init__(self) -> None:
        dmus = tuple(self.dmus)
        object.__setattr__(self, "dmus", dmus)
        if not dmus:
            raise DatasetError("a dataset needs at least one DMU")
        m, p = len(dmus[0].inputs), len(dmus[0].outputs)
        names = set()
        for dmu in dmus:
            if len(dmu.inputs) != m or len(dmu.outputs) != p:
                raise DimensionError(
                    f"DMU {dmu.name} has {len(dmu.inputs)} inputs / {len(dmu.outputs)} outputs,"
                    f" expected {m} / {p}"
                )
            if dmu.name in names:
                raise DatasetError(f"duplicate DMU name: {dmu.name}")
            names.add(dmu.name)

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[tuple[str, Sequence[RationalLike], Sequence[RationalLike]]],
    ) -> "Dataset":
        return cls(tuple(DMU(name, tuple(ins), tuple(outs)) for name, ins, outs in rows))

    @property
    def n(self) -> int:
        return len(self.dmus)

    @property
    def m(self) -> int:
        return len(self.dmus[0].inputs)

    @property
    def p(self) -> int:
        return len(self.dmus[0].outputs)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(dmu.name for dmu in self.dmus)

    @property
    def is_integer(self) -> bool:
        return all(dmu.is_integer for dmu in self.dmus)

    def __iter__(self) -> Iterator[DMU]:
        return iter(self.dmus)

    def __len__(self) -> int:
        return len(self.dmus)

    def __getitem__(self, name: str) -> DMU:
        for dmu in self.dmus:
            if dmu.name == name:
                return dmu
        raise KeyError(name)

    def index(self, name: str) -> int:
        for pos, dmu in enumerate(self.dmus):
            if dmu.name == name:
                return pos
        raise KeyError(name)

    def max_inputs(self) -> tuple[Rational, ...]:
        return tuple(max(dmu.inputs[j] for dmu in self.dmus) for j in range(self.m))

    def max_outputs(self) -> tuple[Rational, ...]:
        return tuple(max(dmu.outputs[r] for dmu in self.dmus) for r in range(self.p))

    def require_integer(self) -> None:
        """Raise unless every observed value is an integer."""
        for dmu in self.dmus:
            for label, vector in (("input", dmu.inputs), ("output", dmu.outputs)):
                for pos, value in enumerate(vector, start=1):
                    if value.denominator != 1:
                        raise IntegralityError(
                            f"DMU {dmu.name} {label} {pos} is not an integer: {value}"
                        )

    def zero_input_cells(self) -> tuple[tuple[str, int], ...]:
        """(name, 1-based input index) pairs where an observed input is zero.

        Zero inputs are legal but worth flagging in reports: radial input
        contraction leaves a zero input at zero, so the score never reflects
        that coordinate.
        """
        cells = []
        for dmu in self.dmus:
            for j, value in enumerate(dmu.inputs, start=1):
                if value == 0:
                    cells.append((dmu.name, j))
        return tuple(cells)


def _ceil(value: Rational) -> int:
    return -((-value.numerator) // value.denominator)


@dataclass(frozen=True)
class BoundingBox:
    """Componentwise integer caps for grid scans and disposal generation."""

    input_max: tuple[int, ...]
    output_max: tuple[int, ...]

    def __post_init__(self) -> None:
        for label, vector in (("input_max", self.input_max), ("output_max", self.output_max)):
            coerced = []
            for value in vector:
                as_frac = Fraction(value)
                if as_frac.denominator != 1:
                    raise IntegralityError(f"box {label} entries must be integers: {value!r}")
                if as_frac < 0:
                    raise BoxError(f"box {label} entries must be non-negative: {value!r}")
                coerced.append(int(as_frac))
            object.__setattr__(self, label, tuple(coerced))
        if not self.input_max or not self.output_max:
            raise DimensionError("a bounding box needs at least one input and one output cap")

    @classmethod
    def from_dataset(cls, data: Dataset) -> "BoundingBox":
        """The default box: componentwise maxima of the observed data."""
        return cls(
            tuple(_ceil(v) for v in data.max_inputs()),
            tuple(_ceil(v) for v in data.max_outputs()),
        )

    @property
    def m(self) -> int:
        return len(self.input_max)

    @property
    def p(self) -> int:
        return len(self.output_max)

    def contains(self, point: Point) -> bool:
        if len(point.inputs) != self.m or len(point.outputs) != self.p:
            raise DimensionError(
                f"point {point} does not match box dimensions {self.m}/{self.p}"
            )
        return all(v <= cap for v, cap in zip(point.inputs, self.input_max)) and all(
            v <= cap for v, cap in zip(point.outputs, self.output_max)
        )

    def contains_dataset(self, data: Dataset) -> bool:
        return all(self.contains(dmu.point) for dmu in data)

    def grid_size(self) -> int:
        size = 1
        for cap in self.input_max + self.output_max:
            size *= cap + 1
        return size

    def grid(self) -> Iterator[Point]:
        """All integer points inside the box, in lexicographic order."""
        input_ranges = [range(cap + 1) for cap in self.input_max]
        output_ranges = [range(cap + 1) for cap in self.output_max]
        for ins in product(*input_ranges):
            for outs in product(*output_ranges):
                yield Point(ins, outs)


def dominates(a: Point, b: Point) -> bool:
    """True when ``a`` weakly improves on ``b`` and differs from it.

    Domination means componentwise: no larger inputs, no smaller outputs.
    """
    if len(a.inputs) != len(b.inputs) or len(a.outputs) != len(b.outputs):
        raise DimensionError(f"cannot compare {a} with {b}: dimensions differ")
    if a == b:
        return False
    return all(ax <= bx for ax, bx in zip(a.inputs, b.inputs)) and all(
        ay >= by for ay, by in zip(a.outputs, b.outputs)
    )


_INPUT_COL = re.compile(r"x(\d+)$")
_OUTPUT_COL = re.compile(r"y(\d+)$")


def _parse_header(header: Sequence[str]) -> tuple[int, int]:
    """Validate ``dmu,x1,...,xm,y1,...,yp`` and return (m, p)."""
    cells = [cell.strip() for cell in header]
    if not cells or cells[0].lower() != "dmu":
        raise DatasetError("CSV header must start with a 'dmu' column")
    m = 0
    pos = 1
    while pos < len(cells):
        match = _INPUT_COL.fullmatch(cells[pos].lower())
        if not match:
            break
        m += 1
        if int(match.group(1)) != m:
            raise DatasetError(f"input columns must be x1..xm in order, got {cells[pos]!r}")
        pos += 1
    p = 0
    while pos < len(cells):
        match = _OUTPUT_COL.fullmatch(cells[pos].lower())
        if not match:
            raise DatasetError(f"unexpected CSV column {cells[pos]!r}")
        p += 1
        if int(match.group(1)) != p:
            raise DatasetError(f"output columns must be y1..yp in order, got {cells[pos]!r}")
        pos += 1
    if m == 0 or p == 0:
        raise DatasetError("CSV needs at least one x column and one y column")
    return m, p


def parse_csv(text: str, *, require_integer: bool = False) -> Dataset:
    """Parse ``dmu,x1,...,xm,y1,...,yp`` rows into a dataset.

    Cells may be integers, decimal strings or fraction strings; they are read
    exactly.  With ``require_integer`` every cell must be an integer, and a
    violation is reported with its row and column so the offending cell is
    easy to find.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if any(cell.strip() for cell in row)]
    if not rows:
        raise DatasetError("CSV file is empty")
    m, p = _parse_header(rows[0])
    columns = rows[0]
    dmus = []
    for line_no, row in enumerate(rows[1:], start=2):
        cells = [cell.strip() for cell in row]
        if len(cells) != 1 + m + p:
            raise DatasetError(
                f"row {line_no}: expected {1 + m + p} cells, got {len(cells)}"
            )
        name = cells[0]
        values = []
        for offset, cell in enumerate(cells[1:], start=1):
            column = columns[offset].strip()
            try:
                value = Fraction(cell)
            except (ValueError, ZeroDivisionError) as exc:
                raise DatasetError(
                    f"row {line_no}, column {column}: not a rational value: {cell!r}"
                ) from exc
            if value < 0:
                raise DatasetError(
                    f"row {line_no}, column {column}: negative value: {cell!r}"
                )
            if require_integer and value.denominator != 1:
                raise DatasetError(
                    f"row {line_no}, column {column}: integer required, got {cell!r}"
                )
            values.append(value)
        dmus.append(DMU(name, tuple(values[:m]), tuple(values[m:])))
    return Dataset(tuple(dmus))


def load_csv(path: str | Path, *, require_integer: bool = False) -> Dataset:
    """Read a dataset from a CSV file; see :func:`parse_csv` for the format."""
    return parse_csv(Path(path).read_text(encoding="utf-8"), require_integer=require_integer)
