"""Initial-condition grammar and grid realization.

Textual form: term ("," term)* with term = field ":" mode ":" amplitude
[":" phase].  Fields are u, p, or s; modes are positive integers below half
the grid size; phases are radians and default to zero.  Each term contributes
amplitude * sin(mode * x + phase) to its field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ICParseError", "ICSpec", "ICTerm", "parse_initial_condition", "realize"]

FIELDS = ("u", "p", "s")


class ICParseError(ValueError):
    """Initial-condition text that does not match the grammar.

    Carries the character offset of the offending token in `position`.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class ICTerm:
    field: str
    mode: int
    amplitude: float
    phase: float = 0.0


@dataclass(frozen=True)
class ICSpec:
    terms: tuple[ICTerm, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("initial condition needs at least one term")


def parse_initial_condition(text: str, grid_size: int | None = None) -> ICSpec:
    """Parse the term grammar; whitespace is ignored everywhere.

    When grid_size is given, modes at or above grid_size/2 are rejected here;
    otherwise that check happens at realization time.
    """
    if not text or not text.strip():
        raise ICParseError("empty initial-condition string", 0)
    terms: list[ICTerm] = []
    offset = 0
    for chunk in text.split(","):
        position = offset
        offset += len(chunk) + 1
        piece = chunk.strip()
        if not piece:
            raise ICParseError("empty term", position)
        parts = [part.strip() for part in piece.split(":")]
        if len(parts) not in (3, 4):
            raise ICParseError(
                f"term '{piece}' must be field:mode:amplitude[:phase]", position
            )
        field = parts[0]
        if field not in FIELDS:
            raise ICParseError(f"unknown field '{field}'", position)
        try:
            mode = int(parts[1])
        except ValueError:
            raise ICParseError(f"mode '{parts[1]}' is not an integer", position) from None
        if mode < 1:
            raise ICParseError(f"mode must be positive, got {mode}", position)
        if grid_size is not None and mode >= grid_size // 2:
            raise ICParseError(
                f"mode {mode} is not resolvable on a grid of size {grid_size}", position
            )
        try:
            amplitude = float(parts[2])
        except ValueError:
            raise ICParseError(f"amplitude '{parts[2]}' is not a number", position) from None
        phase = 0.0
        if len(parts) == 4:
            try:
                phase = float(parts[3])
            except ValueError:
                raise ICParseError(f"phase '{parts[3]}' is not a number", position) from None
        terms.append(ICTerm(field=field, mode=mode, amplitude=amplitude, phase=phase))
    return ICSpec(terms=tuple(terms))


def realize(spec: ICSpec, grid_size: int) -> dict[str, np.ndarray]:
    """Sample the initial condition on the grid x_j = 2*pi*j/grid_size."""
    if grid_size < 8:
        raise ValueError(f"grid size must be at least 8, got {grid_size}")
    x = 2.0 * np.pi * np.arange(grid_size) / grid_size
    fields = {name: np.zeros(grid_size) for name in FIELDS}
    for term in spec.terms:
        if term.mode >= grid_size // 2:
            raise ValueError(
                f"mode {term.mode} is not resolvable on a grid of size {grid_size}"
            )
        fields[term.field] += term.amplitude * np.sin(term.mode * x + term.phase)
    return fields
