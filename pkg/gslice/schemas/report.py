# gslice/schemas/report.py
"""Report documents printed by the commands.

Every report renders deterministically as text (``to_text``) and as JSON
through pydantic (``model_dump_json``).
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field


class DegreeReport(BaseModel):
    degree: int = Field(..., ge=0)
    dim: int = Field(..., ge=0)
    basis: List[str] = Field(default_factory=list)

    def to_text(self, with_basis: bool = False) -> str:
        line = f"d={self.degree} dim={self.dim}"
        if with_basis:
            line += f" basis=[{', '.join(self.basis)}]"
        return line


class InvariantReport(BaseModel):
    model: str
    field: str
    sliced: bool
    components: List[str] = Field(default_factory=list)
    degrees: List[DegreeReport] = Field(default_factory=list)
    with_basis: bool = False

    @computed_field
    @property
    def hilbert_function(self) -> List[int]:
        return [d.dim for d in self.degrees]

    def to_text(self) -> str:
        return "\n".join(d.to_text(self.with_basis) for d in self.degrees)


class CheckResult(BaseModel):
    check: str
    name: str
    passed: bool
    witness: Optional[str] = Field(None, description="Polynomial or value explaining a failure")

    def to_text(self) -> str:
        line = f"{'PASS' if self.passed else 'FAIL'} [{self.check}] {self.name}"
        if not self.passed and self.witness:
            line += f": {self.witness}"
        return line


class VerifyReport(BaseModel):
    checks: List[str]
    results: List[CheckResult] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_text(self) -> str:
        lines = [r.to_text() for r in self.results]
        lines.append(f"verdict: {'PASS' if self.passed else 'FAIL'} ({sum(r.passed for r in self.results)}/{len(self.results)})")
        return "\n".join(lines)


class ClassificationReport(BaseModel):
    s1: str
    s2: str
    characteristic: int
    label: str
    values: Dict[str, str] = Field(default_factory=dict)
    zero_pair: bool = False

    def to_text(self) -> str:
        lines = [self.label]
        lines += [f"  {name} = {value}" for name, value in self.values.items()]
        if self.zero_pair:
            lines.append("  note: both sections are zero")
        return "\n".join(lines)


class GaleReport(BaseModel):
    matrix: List[List[str]]
    dual: List[List[str]]
    pluecker: Dict[str, str]
    dual_pluecker: Dict[str, str]
    holds: bool
    scale: Optional[str] = None
    mismatches: List[str] = Field(default_factory=list)

    def to_text(self) -> str:
        lines = ["matrix:"]
        lines += ["  " + " ".join(row) for row in self.matrix]
        lines.append("gale dual:")
        lines += ["  " + " ".join(row) for row in self.dual]
        lines.append("pluecker: " + " ".join(f"p{k}={v}" for k, v in self.pluecker.items()))
        lines.append("dual pluecker: " + " ".join(f"q{k}={v}" for k, v in self.dual_pluecker.items()))
        if self.holds:
            lines.append(f"complementarity: PASS (λ={self.scale})")
        else:
            lines.append(f"complementarity: FAIL at {', '.join(self.mismatches) or 'all indices'}")
        return "\n".join(lines)


class ImageRow(BaseModel):
    variable: str
    image: str


class ComponentTable(BaseModel):
    label: str
    relations: List[str]
    images: List[ImageRow]


class TablesReport(BaseModel):
    model: str
    field: str
    components: List[ComponentTable]

    def to_text(self) -> str:
        lines = []
        for table in self.components:
            lines.append(f"{table.label}: V({', '.join(table.relations) or '0'})")
            lines += [f"  {row.variable} -> {row.image}" for row in table.images]
        return "\n".join(lines)


class HmsvRow(BaseModel):
    degree: int
    invariants: int
    quotient: int
    image: int

    @computed_field
    @property
    def agrees(self) -> bool:
        return self.invariants == self.quotient == self.image


class ConstraintRow(BaseModel):
    constraint: str
    holds: bool


class HmsvReport(BaseModel):
    description: str
    n: int
    generators: List[str]
    relations: List[str]
    failing_relations: List[str] = Field(default_factory=list)
    constraints: List[ConstraintRow] = Field(default_factory=list)
    rows: List[HmsvRow] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return (not self.failing_relations and all(r.agrees for r in self.rows)
                and all(c.holds for c in self.constraints))

    def to_text(self) -> str:
        lines = [f"description: {self.description} (n={self.n})",
                 f"generators: {', '.join(self.generators)}",
                 f"relations: {len(self.relations)}"]
        lines += [f"  {r}" for r in self.relations]
        for c in self.constraints:
            lines.append(f"constraint {c.constraint}: {'holds' if c.holds else 'fails'}")
        for row in self.rows:
            lines.append(f"d={row.degree} invariants={row.invariants} quotient={row.quotient} image={row.image}")
        lines += [f"note: {note}" for note in self.notes]
        lines.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
