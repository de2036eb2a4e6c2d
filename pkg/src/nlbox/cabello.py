"""Hardy and Cabello box families over the no-signaling polytope.

The canonical form puts the four distinguished cells at
q1 = P(00|00), q2 = P(11|01), q3 = P(11|10), q4 = P(11|11); the argument
runs when q2 = q3 = 0 and q4 > q1.  Hardy boxes mix five local vertices
with the nonlocal vertex (0,0,1); Cabello boxes add four more local
vertices and the nonlocal vertex (1,1,0), with weights c1..c11 on the
simplex.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import boxes
from .boxes import Box, DEFAULT_TOL
from .search import SearchConfig, SearchDomain, maximize


class CoefficientError(ValueError):
    """Weights off the probability simplex."""


# vertex order matches the coefficient order c1..c11
HARDY_VERTICES = (
    boxes.local_vertex(0, 0, 0, 1),
    boxes.local_vertex(0, 0, 1, 1),
    boxes.local_vertex(0, 1, 0, 0),
    boxes.local_vertex(1, 1, 0, 0),
    boxes.local_vertex(1, 1, 1, 1),
    boxes.nonlocal_vertex(0, 0, 1),
)
CABELLO_VERTICES = HARDY_VERTICES + (
    boxes.local_vertex(0, 0, 0, 0),
    boxes.local_vertex(0, 0, 1, 0),
    boxes.local_vertex(1, 0, 0, 0),
    boxes.local_vertex(1, 0, 1, 0),
    boxes.nonlocal_vertex(1, 1, 0),
)


def check_coefficients(c: Sequence[float], n: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    arr = np.asarray(c, dtype=float)
    if arr.shape != (n,):
        raise CoefficientError(f"expected {n} coefficients, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise CoefficientError("non-finite coefficient")
    if arr.min() < -tol:
        raise CoefficientError(f"negative coefficient {arr.min()}")
    if abs(arr.sum() - 1.0) > tol:
        raise CoefficientError(f"coefficients sum to {arr.sum()}, not 1")
    return arr


def coefficients_from_json(text: str) -> np.ndarray:
    """Parse {"c": [...]} with 6 (Hardy) or 11 (Cabello) entries."""
    c = np.asarray(json.loads(text)["c"], dtype=float)
    if c.shape == (6,):
        c = np.concatenate([c, np.zeros(5)])
    return check_coefficients(c, 11)


@dataclass(frozen=True)
class SuccessMetrics:
    q1: float
    q2: float
    q3: float
    q4: float

    @property
    def success(self) -> float:
        return self.q4 - self.q1


def hardy_box(c: Sequence[float], tol: float = DEFAULT_TOL) -> Box:
    """Mixture of the six Hardy vertices with weights c1..c6."""
    arr = check_coefficients(c, 6, tol)
    return boxes.mix(HARDY_VERTICES, arr, tol)


def cabello_box(c: Sequence[float], tol: float = DEFAULT_TOL) -> Box:
    """Mixture of the eleven Cabello vertices with weights c1..c11."""
    arr = check_coefficients(c, 11, tol)
    return boxes.mix(CABELLO_VERTICES, arr, tol)


def cabello_matrix_closed_form(c: Sequence[float], tol: float = DEFAULT_TOL) -> Box:
    """Closed-form table for the Cabello mixture; equals cabello_box entrywise."""
    c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11 = check_coefficients(c, 11, tol)
    local_part = np.array([
        [c7 + c8 + c9 + c10, c1 + c2,        c3 + c4,        c5],
        [c2 + c7 + c9,       c1 + c8 + c10,  c3 + c4 + c5,   0.0],
        [c4 + c7 + c8,       c1 + c2 + c5,   c3 + c9 + c10,  0.0],
        [c2 + c4 + c5 + c7,  c1 + c8,        c3 + c9,        c10],
    ])
    nonlocal_part = 0.5 * np.array([
        [c11, c6,       c6,       c11],
        [0.0, c6 + c11, c6 + c11, 0.0],
        [0.0, c6 + c11, c6 + c11, 0.0],
        [c6,  c11,      c11,      c6],
    ])
    return Box(local_part + nonlocal_part)


def extract_q(box: Box) -> SuccessMetrics:
    return SuccessMetrics(
        q1=box.prob(0, 0, 0, 0),
        q2=box.prob(1, 1, 0, 1),
        q3=box.prob(1, 1, 1, 0),
        q4=box.prob(1, 1, 1, 1),
    )


def success_closed_form(c: Sequence[float]) -> float:
    """q4 - q1 = c6/2 + c10 - (c7 + c8 + c9 + c10 + c11/2)."""
    c = np.asarray(c, dtype=float)
    return float(0.5 * c[5] + c[9] - (c[6] + c[7] + c[8] + c[9] + 0.5 * c[10]))


def check_cabello_conditions(
    box: Box, tol: float = DEFAULT_TOL
) -> tuple[bool, SuccessMetrics]:
    """True iff q2, q3 vanish and q4 exceeds q1 beyond tol."""
    q = extract_q(box)
    ok = q.q2 <= tol and q.q3 <= tol and q.q4 - q.q1 > tol
    return ok, q


def ns_max_success(
    argument: str = "cabello", restarts: int = 8, seed: int = 0
) -> tuple[float, np.ndarray]:
    """No-signaling maximum of the success probability with its witness.

    The maximum is 0.5 at c6 = 1 for both arguments; a search over the
    coefficient simplex must agree within 1e-6 before the exact value is
    returned.
    """
    if argument not in ("hardy", "cabello"):
        raise ValueError(f"unknown argument {argument!r}")
    dim = 6 if argument == "hardy" else 11
    if argument == "hardy":
        objective = lambda c: 0.5 * c[5]  # q4 = c6/2, q1 = 0
    else:
        objective = success_closed_form
    result = maximize(
        objective,
        SearchDomain(simplex_dim=dim),
        SearchConfig(restarts=restarts, seed=seed, max_evals=16000, tol=1e-7),
    )
    if abs(result.value - 0.5) > 1e-6:
        raise RuntimeError(
            f"simplex search found {result.value}, expected 0.5 within 1e-6"
        )
    witness = np.zeros(dim)
    witness[5] = 1.0
    return 0.5, witness
