import csv
import io
import json
from typing import Self

from pydantic import model_validator

from bettilab.enums import CellStatus, ModuleKind, Twist
from bettilab.models.base import BettilabFrozenModel
from bettilab.types import TypeCount, TypeDimension, TypeFieldSpec, TypeSeed

__all__ = [
    "BettiTable",
]

ZERO_GLYPH = "."
UNDETERMINED_GLYPH = "?"


class BettiTable(BettilabFrozenModel):
    """Dimensions k_{p,q} of the Koszul cohomology of a graded module, 0 ≤ p ≤ p_max and 0 ≤ q ≤ q_max.

    Attributes:
        model: Descriptor of the model the table belongs to.
        twist: The twist B of the section module.
        kind: Section module or homogeneous coordinate ring.
        field: Field of the computation (`q` or `fp:<p>`).
        dim_space: Dimension of the space V the module is taken over.
        p_max: Largest homological index p.
        q_max: Largest weight q.
        entries: The values, `entries[q][p]` = k_{p,q}.
        seed_chain: Seeds of the randomized constructions behind the model.
        undetermined: Cells shown as undetermined in the grid (display only).
    """

    model: str
    twist: Twist = Twist.zero
    kind: ModuleKind = ModuleKind.section
    field: TypeFieldSpec
    dim_space: TypeDimension
    p_max: TypeDimension
    q_max: TypeDimension
    entries: list[list[TypeCount]]
    seed_chain: list[TypeSeed] = []
    undetermined: list[tuple[int, int]] = []

    @model_validator(mode="after")
    def entries_match_window(self) -> Self:
        if len(self.entries) != self.q_max + 1 or any(len(row) != self.p_max + 1 for row in self.entries):
            raise ValueError(f"entries must form a {self.q_max + 1}×{self.p_max + 1} grid")
        return self

    def __getitem__(self, cell: tuple[int, int]) -> int:
        """k_{p,q}; cells with p < 0 or q < 0 are zero.

        Raises:
            IndexError: If the cell lies beyond the computed window.
        """
        p, q = cell
        if p < 0 or q < 0:
            return 0
        if p > self.p_max or q > self.q_max:
            raise IndexError(f"cell ({p}, {q}) outside of the table")
        return self.entries[q][p]

    def __contains__(self, cell: object) -> bool:
        if not isinstance(cell, tuple) or len(cell) != 2:
            return False
        p, q = cell
        return 0 <= p <= self.p_max and 0 <= q <= self.q_max

    def status(self, p: int, q: int) -> CellStatus:
        return CellStatus.of(self[p, q])

    def cells(self) -> list[tuple[int, int, int]]:
        """All (p, q, k_{p,q}) triples, row by row."""
        return [(p, q, value) for q, row in enumerate(self.entries) for p, value in enumerate(row)]

    def row_is_zero(self, q: int) -> bool:
        return not any(self.entries[q])

    @property
    def last_nonzero_row(self) -> int:
        """Largest q with some k_{p,q} ≠ 0, -1 for the zero table."""
        return max((q for q in range(self.q_max + 1) if not self.row_is_zero(q)), default=-1)

    def same_values(self, other: "BettiTable") -> bool:
        """Cellwise equality on the common window, ignoring provenance."""
        p_max, q_max = min(self.p_max, other.p_max), min(self.q_max, other.q_max)
        return all(self[p, q] == other[p, q] for p in range(p_max + 1) for q in range(q_max + 1))

    def differences(self, other: "BettiTable") -> list[tuple[int, int]]:
        p_max, q_max = min(self.p_max, other.p_max), min(self.q_max, other.q_max)
        return [(p, q) for q in range(q_max + 1) for p in range(p_max + 1) if self[p, q] != other[p, q]]

    def with_undetermined(self, cells: list[tuple[int, int]]) -> "BettiTable":
        return self.model_copy(update={"undetermined": [c for c in cells if c in self]})

    def grid(self) -> str:
        """Text grid with rows q and columns p: "." for zero, "?" for undetermined, the dimension otherwise."""
        undetermined = set(self.undetermined)
        glyphs = [
            [
                UNDETERMINED_GLYPH if (p, q) in undetermined else (str(value) if value else ZERO_GLYPH)
                for p, value in enumerate(row)
            ]
            for q, row in enumerate(self.entries)
        ]
        width = max([len(str(self.p_max)), *(len(g) for row in glyphs for g in row)])
        label = len(str(self.q_max)) + 1
        lines = [" " * label + " " + " ".join(str(p).rjust(width) for p in range(self.p_max + 1))]
        for q, row in enumerate(glyphs):
            lines.append(f"{q}:".rjust(label) + " " + " ".join(g.rjust(width) for g in row))
        return "\n".join(lines)

    def header(self) -> str:
        return (
            f"{self.model}  [{self.kind.value}, B={self.twist.value}, dim V={self.dim_space}, field={self.field}, "
            f"seeds={self.seed_chain}]"
        )

    def to_json(self) -> str:
        """JSON document with the provenance and the cells as {p, q, dim} triples."""
        document = {
            "model": self.model,
            "twist": self.twist.value,
            "kind": self.kind.value,
            "field": self.field,
            "dim_space": self.dim_space,
            "seed_chain": self.seed_chain,
            "cells": [{"p": p, "q": q, "dim": value} for p, q, value in self.cells()],
        }
        return json.dumps(document, indent=2)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["model", "twist", "kind", "field", "p", "q", "dim"])
        for p, q, value in self.cells():
            writer.writerow([self.model, self.twist.value, self.kind.value, self.field, p, q, value])
        return buffer.getvalue()
