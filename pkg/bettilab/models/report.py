import json
from typing import Self

from pydantic import Field, model_validator

from bettilab.enums import Provenance, Theorem, VerificationStatus
from bettilab.models.base import BettilabFrozenModel
from bettilab.types import TypeSeed

__all__ = [
    "CheckItem",
    "VerificationReport",
    "overall_status",
]


class CheckItem(BettilabFrozenModel):
    """One hypothesis or conclusion of a verification, with the evidence behind its truth value.

    Attributes:
        description: What is checked, e.g. `e ≥ g + k` or `K_{2,2} ≠ 0`.
        value: Truth value on the instance.
        evidence: The numbers the value was decided from.
        provenance: `computed`, or `catalog-asserted` for facts taken from catalog metadata.
    """

    description: str
    value: bool
    evidence: str = ""
    provenance: Provenance = Provenance.computed


def overall_status(
    hypotheses: list[CheckItem], conclusions: list[CheckItem], inconclusive: bool = False
) -> VerificationStatus:
    """Pass needs every item true, fail needs true hypotheses and a false conclusion; inconclusive is never a pass."""
    if inconclusive:
        return VerificationStatus.inconclusive
    if not all(item.value for item in hypotheses):
        return VerificationStatus.hypothesis_not_met
    if all(item.value for item in conclusions):
        return VerificationStatus.passed
    return VerificationStatus.failed


class VerificationReport(BettilabFrozenModel):
    """Outcome of one theorem check on one model.

    Attributes:
        theorem: Which check was run.
        model: Descriptor of the model.
        seed_chain: Seeds of the randomized constructions behind the model.
        hypotheses: Hypothesis checklist.
        conclusions: Conclusion checklist (may be empty when the hypotheses fail).
        status: Overall status.
        notes: Side remarks, e.g. facts verified outside the hypotheses.
        timing: Wall clock seconds, excluded from comparisons.
    """

    theorem: Theorem
    model: str
    seed_chain: list[TypeSeed] = []
    hypotheses: list[CheckItem] = []
    conclusions: list[CheckItem] = []
    status: VerificationStatus
    notes: list[str] = []
    timing: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def status_matches_items(self) -> Self:
        if self.status == VerificationStatus.inconclusive:
            return self
        if self.status != overall_status(self.hypotheses, self.conclusions, inconclusive=False):
            raise ValueError(f"status {self.status.value} does not match the checklists")
        return self

    @classmethod
    def build(
        cls,
        theorem: Theorem,
        model: str,
        seed_chain: list[int],
        hypotheses: list[CheckItem],
        conclusions: list[CheckItem],
        notes: list[str] | None = None,
        inconclusive: bool = False,
        timing: float = 0.0,
    ) -> Self:
        return cls(
            theorem=theorem,
            model=model,
            seed_chain=seed_chain,
            hypotheses=hypotheses,
            conclusions=conclusions,
            status=overall_status(hypotheses, conclusions, inconclusive),
            notes=notes or [],
            timing=timing,
        )

    @property
    def exit_code(self) -> int:
        return int(self.status.exit_code())

    @property
    def failed_items(self) -> list[CheckItem]:
        return [item for item in self.hypotheses + self.conclusions if not item.value]

    def to_json(self, with_timing: bool = True) -> str:
        """JSON document {theorem, model, seed_chain, hypotheses, conclusions, status, notes, timing}."""
        document = self.model_dump(mode="json", exclude=None if with_timing else {"timing"})
        return json.dumps(document, indent=2, ensure_ascii=False)

    def same_outcome(self, other: "VerificationReport") -> bool:
        """Equality of everything but the timing."""
        return self.to_json(with_timing=False) == other.to_json(with_timing=False)
