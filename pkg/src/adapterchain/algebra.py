"""Core algebra for lossy interface adaptation.

An interface adapter translates calls against a target interface into calls
against a source interface. Two matrices summarize how lossy that
translation is:

* a boolean *method dependency matrix*: cell ``[j][i]`` is True when target
  method ``j`` can only be provided if source method ``i`` is available, and
* a *conversion probability matrix* of the same shape: cell ``[j][i]`` is the
  probability that the adapter converts an argument for target method ``j``
  into one for source method ``i`` (and converts the result back).

Every interface carries a synthetic **dummy method at index 0**. The dummy
removes the ambiguity of an all-false dependency row:

* a row with no true cells means the target method can always be provided
  (an empty product of probabilities is 1),
* a row that depends on the dummy means the method can never be provided,
  because the dummy is never available.

The dummy row itself depends only on the dummy. Conversion matrices keep
column 0 and row 0 at zero so these conventions survive every operation.
They are also kept *canonical*: cells outside the dependency support are
stored as 0.0 since no operation ever reads them, which makes structural
equality meaningful.

All types are immutable values; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class ShapeMismatchError(ValueError):
    """Raised when operand dimensions do not line up."""


def _bool_rows(rows: Iterable[Iterable[bool]]) -> tuple[tuple[bool, ...], ...]:
    cells = tuple(tuple(bool(c) for c in row) for row in rows)
    if not cells or not cells[0]:
        raise ValueError("matrix needs at least one row and one column")
    width = len(cells[0])
    if any(len(row) != width for row in cells):
        raise ValueError("ragged rows: all rows must have the same length")
    return cells


def _float_rows(rows: Iterable[Iterable[float]]) -> tuple[tuple[float, ...], ...]:
    cells = tuple(tuple(float(c) for c in row) for row in rows)
    if not cells or not cells[0]:
        raise ValueError("matrix needs at least one row and one column")
    width = len(cells[0])
    if any(len(row) != width for row in cells):
        raise ValueError("ragged rows: all rows must have the same length")
    return cells


@dataclass(frozen=True)
class MethodDependencyMatrix:
    """Boolean matrix: cell[j][i] is True when target method j needs source method i.

    Row and column 0 belong to the dummy method.
    """

    cells: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[bool]]) -> "MethodDependencyMatrix":
        return cls(_bool_rows(rows))

    @classmethod
    def identity(cls, n: int) -> "MethodDependencyMatrix":
        if n < 1:
            raise ValueError("method count must be at least 1")
        return cls(tuple(tuple(j == i for i in range(n)) for j in range(n)))

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])


@dataclass(frozen=True)
class ConversionProbabilityMatrix:
    """Per-dependency success probabilities, same shape as the paired dependency matrix."""

    cells: tuple[tuple[float, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[float]]) -> "ConversionProbabilityMatrix":
        return cls(_float_rows(rows))

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])


@dataclass(frozen=True)
class ProbabilisticAdaptationFactor:
    """The (dependency, conversion) pair that characterizes one adapter's loss."""

    dep: MethodDependencyMatrix
    conv: ConversionProbabilityMatrix

    @classmethod
    def of(
        cls,
        dep_rows: Iterable[Iterable[bool]],
        conv_rows: Iterable[Iterable[float]],
    ) -> "ProbabilisticAdaptationFactor":
        return cls(
            MethodDependencyMatrix.from_rows(dep_rows),
            ConversionProbabilityMatrix.from_rows(conv_rows),
        )


@dataclass(frozen=True)
class MethodAvailabilityVector:
    """Per-method probability that the (adapted) method can handle its argument.

    Index 0 is the dummy slot and is always 0.
    """

    entries: tuple[float, ...]

    @classmethod
    def of(cls, *entries: float) -> "MethodAvailabilityVector":
        values = tuple(float(e) for e in entries)
        if not values:
            raise ValueError("availability vector needs at least the dummy slot")
        if values[0] != 0.0:
            raise ValueError("dummy slot (index 0) must be 0")
        if any(not 0.0 <= v <= 1.0 for v in values):
            raise ValueError("availability entries must lie in [0, 1]")
        return cls(values)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> float:
        return self.entries[index]

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class DiscreteAvailabilityVector:
    """Boolean availability per method; index 0 is the dummy slot and is always False."""

    entries: tuple[bool, ...]

    @classmethod
    def of(cls, *entries: bool) -> "DiscreteAvailabilityVector":
        values = tuple(bool(e) for e in entries)
        if not values:
            raise ValueError("availability vector needs at least the dummy slot")
        if values[0]:
            raise ValueError("dummy slot (index 0) must be False")
        return cls(values)

    @classmethod
    def full(cls, n: int) -> "DiscreteAvailabilityVector":
        """All methods available except the dummy."""
        if n < 1:
            raise ValueError("method count must be at least 1")
        return cls((False,) + (True,) * (n - 1))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> bool:
        return self.entries[index]

    def __iter__(self):
        return iter(self.entries)


def discrete_compose(
    b: MethodDependencyMatrix, a: MethodDependencyMatrix
) -> MethodDependencyMatrix:
    """Merge two dependency matrices; ``b`` sits on the target side of ``a``.

    result[k][i] is True when some intermediate method j links them:
    b[k][j] and a[j][i].
    """
    if b.cols != a.rows:
        raise ShapeMismatchError(
            f"cannot compose: left matrix has {b.cols} columns, right has {a.rows} rows"
        )
    mid = a.rows
    cells = tuple(
        tuple(
            any(b.cells[k][j] and a.cells[j][i] for j in range(mid))
            for i in range(a.cols)
        )
        for k in range(b.rows)
    )
    return MethodDependencyMatrix(cells)


def discrete_adapt(
    a: MethodDependencyMatrix, p: DiscreteAvailabilityVector
) -> DiscreteAvailabilityVector:
    """All-or-nothing adaptation: target method j works iff every dependency does.

    An empty dependency row yields True (empty conjunction); the dummy row
    yields False because the dummy is never available.
    """
    if a.cols != len(p):
        raise ShapeMismatchError(
            f"matrix has {a.cols} columns but vector has {len(p)} entries"
        )
    entries = tuple(
        all(p.entries[i] for i in range(a.cols) if row[i]) for row in a.cells
    )
    return DiscreteAvailabilityVector(entries)


def prob_adapt(
    f: ProbabilisticAdaptationFactor, p: MethodAvailabilityVector
) -> MethodAvailabilityVector:
    """Apply an adapter to an availability vector.

    result[j] is the product of conv[j][i] * p[i] over the dependencies of
    target method j; an empty product is 1. The dummy slot of the result is
    0 because the dummy row depends on the dummy, whose conversion
    probability is 0.
    """
    if f.dep.cols != len(p):
        raise ShapeMismatchError(
            f"factor has {f.dep.cols} columns but vector has {len(p)} entries"
        )
    out = []
    for dep_row, conv_row in zip(f.dep.cells, f.conv.cells):
        value = 1.0
        for i, needed in enumerate(dep_row):
            if needed:
                value *= conv_row[i] * p.entries[i]
        out.append(value)
    return MethodAvailabilityVector(tuple(out))


def prob_compose(
    g: ProbabilisticAdaptationFactor, f: ProbabilisticAdaptationFactor
) -> ProbabilisticAdaptationFactor:
    """Fuse two factors into one; ``g`` adapts the interface that ``f`` produces.

    The dependency part is ``discrete_compose(g.dep, f.dep)``. Where the
    composed dependency holds, the conversion cell is the product of
    g.conv[k][j] * f.conv[j][i] over every linking j; elsewhere it is
    stored as 0 (canonical form).
    """
    if g.dep.cols != f.dep.rows:
        raise ShapeMismatchError(
            f"cannot compose: left factor has {g.dep.cols} columns, right has {f.dep.rows} rows"
        )
    mid = f.dep.rows
    dep_cells = []
    conv_cells = []
    for k in range(g.dep.rows):
        g_dep = g.dep.cells[k]
        g_conv = g.conv.cells[k]
        dep_row = []
        conv_row = []
        for i in range(f.dep.cols):
            links = [j for j in range(mid) if g_dep[j] and f.dep.cells[j][i]]
            if links:
                value = 1.0
                for j in links:
                    value *= g_conv[j] * f.conv.cells[j][i]
                dep_row.append(True)
                conv_row.append(value)
            else:
                dep_row.append(False)
                conv_row.append(0.0)
        dep_cells.append(tuple(dep_row))
        conv_cells.append(tuple(conv_row))
    return ProbabilisticAdaptationFactor(
        MethodDependencyMatrix(tuple(dep_cells)),
        ConversionProbabilityMatrix(tuple(conv_cells)),
    )


def identity_factor(n: int) -> ProbabilisticAdaptationFactor:
    """Lossless factor on an interface with ``n`` method slots (dummy included).

    Applying it leaves any valid availability vector unchanged.
    """
    if n < 1:
        raise ValueError("method count must be at least 1")
    dep = MethodDependencyMatrix.identity(n)
    conv = ConversionProbabilityMatrix(
        tuple(
            tuple(1.0 if j == i and j != 0 else 0.0 for i in range(n))
            for j in range(n)
        )
    )
    return ProbabilisticAdaptationFactor(dep, conv)


def full_availability(n: int) -> MethodAvailabilityVector:
    """Availability of a fully functional service: every method 1 except the dummy."""
    if n < 1:
        raise ValueError("method count must be at least 1")
    return MethodAvailabilityVector((0.0,) + (1.0,) * (n - 1))


def dependency_violations(dep: MethodDependencyMatrix) -> list[str]:
    """Check the dummy-row rule and basic shape of a dependency matrix."""
    problems: list[str] = []
    widths = {len(row) for row in dep.cells}
    if len(widths) > 1:
        problems.append("dep has ragged rows")
        return problems
    if not dep.cells[0][0]:
        problems.append("dep[0][0] must be True (dummy depends on dummy)")
    for i in range(1, dep.cols):
        if dep.cells[0][i]:
            problems.append(f"dep[0][{i}] must be False (dummy row admits only the dummy)")
    return problems


def conversion_violations(
    conv: ConversionProbabilityMatrix, dep: MethodDependencyMatrix
) -> list[str]:
    """Check range, dummy-zero and canonical-form rules of a conversion matrix."""
    problems: list[str] = []
    widths = {len(row) for row in conv.cells}
    if len(widths) > 1:
        problems.append("conv has ragged rows")
        return problems
    if (conv.rows, conv.cols) != (dep.rows, dep.cols):
        problems.append(
            f"shape mismatch: dep is {dep.rows}x{dep.cols}, conv is {conv.rows}x{conv.cols}"
        )
        return problems
    for j in range(conv.rows):
        for i in range(conv.cols):
            value = conv.cells[j][i]
            if not 0.0 <= value <= 1.0:
                problems.append(f"conv[{j}][{i}] = {value} outside [0, 1]")
            if j == 0 and value != 0.0:
                problems.append(f"conv[0][{i}] must be 0 (dummy row)")
            elif i == 0 and value != 0.0:
                problems.append(f"conv[{j}][0] must be 0 (dummy column)")
            elif not dep.cells[j][i] and value != 0.0:
                problems.append(
                    f"conv[{j}][{i}] must be 0 where dep[{j}][{i}] is False"
                )
    return problems


def validate_factor(f: ProbabilisticAdaptationFactor) -> list[str]:
    """Report every violated factor invariant; an empty report means valid."""
    return dependency_violations(f.dep) + conversion_violations(f.conv, f.dep)
