# gslice/commands/hmsv.py
import logging
import sys
from typing import Optional

import click

from gslice.commands.common import EXIT_FAIL, emit, handle_errors, json_option, out_option
from gslice.core.errors import DegreeCapError
from gslice.models.ordered_points import constraint_report, hmsv_first_slice, hmsv_second_slice
from gslice.ring.coeffs import CoeffRing
from gslice.schemas.report import ConstraintRow, HmsvReport, HmsvRow

logger = logging.getLogger(__name__)

# highest degree the command accepts
HMSV_CAP = 6


# 6. Slice descriptions of n ordered points
@click.command("hmsv")
@click.option("--description", type=click.Choice(["first", "second"]), default="first", show_default=True)
@click.option("-n", "--points", "n", type=int, required=True, help="Number of points (even, at least 4)")
@click.option("--max-degree", type=int, default=4, show_default=True)
@click.option("--field", "field_tag", default="Q", show_default=True, help="Q, F2 or Fp:<p>")
@json_option
@out_option
@handle_errors
def hmsv(description: str, n: int, max_degree: int, field_tag: str, as_json: bool, out: Optional[str]):
    """Compare torus-chart invariants with the presentation degree by degree"""
    if max_degree > HMSV_CAP or max_degree < 0:
        raise DegreeCapError(f"max degree must lie in 0..{HMSV_CAP}")
    coeff = CoeffRing.from_tag(field_tag)
    build = hmsv_first_slice if description == "first" else hmsv_second_slice
    desc = build(n, coeff if coeff.is_field else CoeffRing.rationals())
    presentation = desc.presentation
    report = HmsvReport(
        description=desc.label, n=n,
        generators=[g.name for g in presentation.generators],
        relations=[str(r) for r in presentation.relations],
        failing_relations=[str(r) for r in presentation.failing_relations()],
        constraints=[ConstraintRow(constraint=c, holds=ok) for c, ok in constraint_report(desc)],
        rows=[HmsvRow(degree=d, invariants=a, quotient=b, image=c) for d, a, b, c in desc.table(max_degree)],
        notes=desc.notes,
    )
    emit(report, as_json, out)
    if not report.passed:
        sys.exit(EXIT_FAIL)
