from collections import Counter
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator

from gslice.core.errors import DegreeConditionError
from gslice.ring.poly import IDENTIFIER


class SliceSpec(BaseModel):
    """A slice: variables set to zero, open conditions, and the groupoid components over it"""

    vanish: List[str] = Field(default_factory=list, description="Source variables set to zero")
    avoid: List[List[str]] = Field(
        default_factory=list,
        description="Open conditions: each set of variables is not simultaneously zero"
    )
    components: List[List[str]] = Field(
        default_factory=list,
        description="Relations per component, written 'poly' or 'poly @ lead'"
    )
    labels: List[str] = Field(default_factory=list)
    codimension: Optional[str] = Field(None, description="Recorded codimension claim for the slice image")

    @field_validator('vanish')
    @classmethod
    def validate_vanish(cls, v):
        for name in v:
            if not IDENTIFIER.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(v)) != len(v):
            raise ValueError("vanish lists a variable twice")
        return v

    @field_validator('avoid')
    @classmethod
    def validate_avoid(cls, v):
        for group in v:
            if not group:
                raise ValueError("empty open condition")
            for name in group:
                if not IDENTIFIER.match(name):
                    raise ValueError(f"invalid variable name {name!r}")
        return v

    @model_validator(mode='after')
    def validate_labels(self):
        if self.labels and len(self.labels) != len(self.components):
            raise ValueError("one label per component is required")
        return self

    def component_labels(self) -> List[str]:
        return self.labels or [f"R{i + 1}" for i in range(len(self.components))]


class GraphInvariantSpec(BaseModel):
    """A multigraph on n points, every vertex of the same degree"""

    n: int = Field(..., ge=2)
    edges: List[Tuple[int, int]] = Field(..., min_length=1)

    @model_validator(mode='after')
    def validate_degrees(self):
        for i, j in self.edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
                raise DegreeConditionError(f"edge ({i},{j}) is not a pair of distinct points in 1..{self.n}")
        counts = Counter()
        for i, j in self.edges:
            counts[i] += 1
            counts[j] += 1
        degrees = {counts[v] for v in range(1, self.n + 1)}
        if len(degrees) != 1:
            raise DegreeConditionError(f"vertex degrees differ: {dict(sorted(counts.items()))}")
        return self

    @computed_field
    @property
    def degree(self) -> int:
        return 2 * len(self.edges) // self.n
