"""Bipartite binary no-signaling boxes.

A box is the 4x4 table of conditional probabilities P(ab|XY) for two
parties with binary inputs X, Y and binary outcomes a, b.  Rows are input
pairs XY in the order 00, 01, 10, 11; columns are outcome pairs ab in the
same order.  All operations here are pure functions over immutable values.
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9

ROW_OF = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}


class BoxError(ValueError):
    """Base class for box-level failures."""


class MalformedBoxError(BoxError):
    """Non-finite or wrongly shaped probability table."""


class InvalidBoxError(BoxError):
    """A box violated positivity, normalization or no-signaling."""


class SignalingError(BoxError):
    """A marginal depends on the remote input."""

    def __init__(self, party: str, inp: int, values: tuple[float, float]):
        self.party = party
        self.input = inp
        self.values = values
        super().__init__(
            f"marginal of party {party}, input {inp} is ambiguous: "
            f"{values[0]!r} vs {values[1]!r}"
        )


class InfeasibleCorrelatorError(BoxError):
    """Correlators that reconstruct to a negative probability."""


def _as_table(p) -> np.ndarray:
    arr = np.array(p, dtype=float)
    if arr.shape != (4, 4):
        raise MalformedBoxError(f"expected a 4x4 table, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MalformedBoxError("probability table contains non-finite entries")
    return arr


@dataclass(frozen=True)
class Box:
    """Immutable 4x4 joint-distribution table P(ab|XY)."""

    p: np.ndarray

    def __post_init__(self):
        arr = _as_table(self.p)
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)

    def prob(self, a: int, b: int, x: int, y: int) -> float:
        return float(self.p[ROW_OF[(x, y)], ROW_OF[(a, b)]])

    def __eq__(self, other) -> bool:
        return isinstance(other, Box) and np.array_equal(self.p, other.p)

    def to_json(self) -> str:
        return json.dumps({"p": self.p.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "Box":
        data = json.loads(text)
        return cls(data["p"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("XY,ab,prob\n")
        for (x, y), row in ROW_OF.items():
            for (a, b), col in ROW_OF.items():
                buf.write(f"{x}{y},{a}{b},{self.p[row, col]!r}\n")
        return buf.getvalue()


@dataclass(frozen=True)
class CorrelatorForm:
    """Correlator/marginal representation (C_X, C_Y, C_XY)."""

    c_x: tuple[float, float]
    c_y: tuple[float, float]
    c_xy: tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True)
class Violation:
    kind: str  # positivity | normalization | no-signaling
    location: str
    magnitude: float


def validate_box(box: Box, tol: float = DEFAULT_TOL) -> list[Violation]:
    """Check positivity, normalization and no-signaling; empty list if valid."""
    p = box.p
    out: list[Violation] = []
    for (x, y), row in ROW_OF.items():
        for (a, b), col in ROW_OF.items():
            if p[row, col] < -tol:
                out.append(
                    Violation("positivity", f"P({a}{b}|{x}{y})", float(-p[row, col]))
                )
        gap = abs(p[row].sum() - 1.0)
        if gap > tol:
            out.append(Violation("normalization", f"row XY={x}{y}", float(gap)))
    for inp in (0, 1):
        m0, m1 = _marginal_pair(box, "A", inp)
        if abs(m0 - m1) > tol:
            out.append(Violation("no-signaling", f"party A, input {inp}", abs(m0 - m1)))
        m0, m1 = _marginal_pair(box, "B", inp)
        if abs(m0 - m1) > tol:
            out.append(Violation("no-signaling", f"party B, input {inp}", abs(m0 - m1)))
    return out


def require_valid(box: Box, tol: float = DEFAULT_TOL) -> None:
    report = validate_box(box, tol)
    if report:
        raise InvalidBoxError("; ".join(f"{v.kind} at {v.location}" for v in report))


def _marginal_pair(box: Box, party: str, inp: int) -> tuple[float, float]:
    """P(outcome 0 | input) computed once per choice of the remote input."""
    p = box.p
    if party == "A":
        rows = (ROW_OF[(inp, 0)], ROW_OF[(inp, 1)])
        cols = (0, 1)  # a = 0
    elif party == "B":
        rows = (ROW_OF[(0, inp)], ROW_OF[(1, inp)])
        cols = (0, 2)  # b = 0
    else:
        raise ValueError(f"unknown party {party!r}")
    return (
        float(p[rows[0], cols[0]] + p[rows[0], cols[1]]),
        float(p[rows[1], cols[0]] + p[rows[1], cols[1]]),
    )


def marginal(box: Box, party: str, inp: int, tol: float = DEFAULT_TOL) -> float:
    """Probability of outcome 0 for the given party/input of a no-signaling box."""
    m0, m1 = _marginal_pair(box, party, inp)
    if abs(m0 - m1) > tol:
        raise SignalingError(party, inp, (m0, m1))
    return 0.5 * (m0 + m1)


def to_correlators(box: Box, tol: float = DEFAULT_TOL) -> CorrelatorForm:
    """C_X = P(a=0|X) - P(a=1|X), likewise C_Y; C_XY = P(a=b|XY) - P(a!=b|XY)."""
    require_valid(box, tol)
    p = box.p
    c_x = tuple(2.0 * marginal(box, "A", x, tol) - 1.0 for x in (0, 1))
    c_y = tuple(2.0 * marginal(box, "B", y, tol) - 1.0 for y in (0, 1))
    c_xy = tuple(
        tuple(
            float(p[ROW_OF[(x, y)], 0] + p[ROW_OF[(x, y)], 3]
                  - p[ROW_OF[(x, y)], 1] - p[ROW_OF[(x, y)], 2])
            for y in (0, 1)
        )
        for x in (0, 1)
    )
    return CorrelatorForm(c_x, c_y, c_xy)


def from_correlators(corr: CorrelatorForm, tol: float = DEFAULT_TOL) -> Box:
    """Invert to the probability table; raise if any entry leaves [0, 1]."""
    p = np.empty((4, 4))
    for (x, y), row in ROW_OF.items():
        for (a, b), col in ROW_OF.items():
            p[row, col] = 0.25 * (
                1.0
                + (-1.0) ** a * corr.c_x[x]
                + (-1.0) ** b * corr.c_y[y]
                + (-1.0) ** (a ^ b) * corr.c_xy[x][y]
            )
    if p.min() < -tol or p.max() > 1.0 + tol:
        raise InfeasibleCorrelatorError(
            f"reconstructed entries span [{p.min()}, {p.max()}]"
        )
    return Box(np.clip(p, 0.0, 1.0))


def local_vertex(alpha: int, beta: int, gamma: int, delta: int) -> Box:
    """Deterministic vertex: a = alpha*X xor beta, b = gamma*Y xor delta."""
    p = np.zeros((4, 4))
    for (x, y), row in ROW_OF.items():
        a = (alpha & x) ^ beta
        b = (gamma & y) ^ delta
        p[row, ROW_OF[(a, b)]] = 1.0
    return Box(p)


def nonlocal_vertex(alpha: int, beta: int, gamma: int) -> Box:
    """PR-type vertex: a xor b = X*Y xor alpha*X xor beta*Y xor gamma."""
    p = np.zeros((4, 4))
    for (x, y), row in ROW_OF.items():
        parity = (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma
        for (a, b), col in ROW_OF.items():
            if (a ^ b) == parity:
                p[row, col] = 0.5
    return Box(p)


def pr_box() -> Box:
    return nonlocal_vertex(0, 0, 0)


def uniform_box() -> Box:
    return Box(np.full((4, 4), 0.25))


def all_local_vertices() -> list[Box]:
    return [
        local_vertex(a, b, g, d)
        for a in (0, 1) for b in (0, 1) for g in (0, 1) for d in (0, 1)
    ]


def all_nonlocal_vertices() -> list[Box]:
    return [
        nonlocal_vertex(a, b, g) for a in (0, 1) for b in (0, 1) for g in (0, 1)
    ]


def mix(boxes: Sequence[Box], weights: Iterable[float], tol: float = DEFAULT_TOL) -> Box:
    """Entrywise convex combination of boxes."""
    w = np.array(list(weights), dtype=float)
    if len(boxes) != len(w):
        raise ValueError(f"{len(boxes)} boxes but {len(w)} weights")
    if w.min() < -tol:
        raise ValueError(f"negative weight {w.min()}")
    if abs(w.sum() - 1.0) > tol:
        raise ValueError(f"weights sum to {w.sum()}, not 1")
    p = np.zeros((4, 4))
    for box, wi in zip(boxes, w):
        p += wi * box.p
    return Box(p)


def chsh_value(box: Box, x: int, y: int, tol: float = DEFAULT_TOL) -> float:
    """B_XY = |sum of the four correlators - 2*C_XY|."""
    corr = to_correlators(box, tol)
    total = sum(corr.c_xy[xx][yy] for xx in (0, 1) for yy in (0, 1))
    return abs(total - 2.0 * corr.c_xy[x][y])
