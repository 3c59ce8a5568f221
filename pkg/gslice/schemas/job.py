# gslice/schemas/job.py
import re
from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from gslice.core.errors import UnknownModelError
from gslice.ring.coeffs import CoeffRing

MODEL_PATTERN = re.compile(r"^(kontsevich|ordered-points:(\d+))$")


class JobConfig(BaseModel):
    """One command invocation: what to compute, over which field, up to which degree"""

    command: str
    model: Optional[str] = Field(None, description="kontsevich or ordered-points:<n>")
    field_tag: str = Field("Q", description="Z, Q, F2 or Fp:<p>")
    max_degree: int = Field(4, ge=0)
    action_file: Optional[str] = None
    slice_file: Optional[str] = None
    out: Optional[str] = None
    verbosity: int = Field(0, ge=0)
    workers: int = Field(1, ge=1, le=64)
    sliced: bool = True

    @field_validator('field_tag')
    @classmethod
    def validate_field_tag(cls, v):
        CoeffRing.from_tag(v)
        return v

    @model_validator(mode='after')
    def validate_model(self):
        if self.action_file:
            return self
        if self.model is None:
            raise UnknownModelError("either --model or --action-file is required")
        match = MODEL_PATTERN.match(self.model)
        if not match:
            raise UnknownModelError(f"unknown model {self.model!r} (expected kontsevich or ordered-points:<n>)")
        if match.group(2) is not None and int(match.group(2)) < 2:
            raise UnknownModelError("ordered-points needs at least two points")
        return self

    @property
    def coeff(self) -> CoeffRing:
        return CoeffRing.from_tag(self.field_tag)

    @property
    def points(self) -> Optional[int]:
        """Number of points for ordered-points models"""
        if self.model and self.model.startswith("ordered-points:"):
            return int(self.model.split(":", 1)[1])
        return None
