from pydantic import Field

from bettilab.enums import CellStatus, Rule, Twist
from bettilab.models.base import BettilabFrozenModel
from bettilab.types import TypeCount, TypeDimension, TypeSeed

__all__ = [
    "CellPrediction",
    "LesViolation",
    "ProjectionRecord",
    "ProjectionTrace",
]


class ProjectionRecord(BettilabFrozenModel):
    """One isomorphic projection from a point.

    Attributes:
        step: Position of the step in the projection chain (0 based).
        seed: Seed that produced the accepted center.
        center: The point P = [v] as integer coordinates in the variables of the model being projected.
        attempts: Number of centers tried before the guard accepted one.
    """

    step: TypeDimension
    seed: TypeSeed
    center: list[int]
    attempts: int = Field(ge=1)


class CellPrediction(BettilabFrozenModel):
    """Predicted and directly computed status of one Koszul cohomology cell of a projected model.

    Attributes:
        cell: The indices (p, q); q = 0 with `twist` canonical denotes the twisted row used through duality.
        twist: Twist of the section module the cell belongs to.
        predicted: The prediction (`no-prediction` if no rule applies).
        computed: Status read off the directly computed table.
        rule: The rule that produced the prediction.
        step: Index of the projection step.
        seed: Seed of the projection step.
    """

    cell: tuple[int, int]
    twist: Twist = Twist.zero
    predicted: CellStatus
    computed: CellStatus | None = None
    rule: Rule | None = None
    step: TypeDimension = 0
    seed: TypeSeed | None = None

    @property
    def decided(self) -> bool:
        return self.predicted in (CellStatus.zero, CellStatus.nonzero)

    @property
    def agrees(self) -> bool:
        return not self.decided or self.computed is None or self.predicted == self.computed


class LesViolation(BettilabFrozenModel):
    """A rank inequality implied by the long exact sequence of a projection that does not hold.

    Attributes:
        cell: The cell (p, q) of the middle term.
        inequality: The violated inequality, written out with the cell values.
    """

    cell: tuple[int, int]
    inequality: str


class ProjectionTrace(BettilabFrozenModel):
    """Outcome of the step-by-step vanishing and nonvanishing procedure.

    Attributes:
        steps: The projection steps performed.
        predictions: Every prediction with the direct computation it was checked against.
        undecided: Cells of the final model no rule decided.
        rejected_seeds: Seeds whose center failed the generality check.
        unexpected: Number of cells whose direct computation contradicts a prediction.
        violations: Rank inequalities of the long exact sequences that failed.
    """

    steps: list[ProjectionRecord]
    predictions: list[CellPrediction]
    undecided: list[tuple[int, int]]
    rejected_seeds: list[TypeSeed] = []
    unexpected: TypeCount = 0
    violations: list[LesViolation] = []
