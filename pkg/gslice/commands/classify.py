# gslice/commands/classify.py
import logging
from typing import Optional

import click

from gslice.commands.common import emit, handle_errors, json_option, out_option
from gslice.models.kontsevich import SectionPair, classify_point
from gslice.schemas.report import ClassificationReport

logger = logging.getLogger(__name__)


# 3. Semistability of a pair of quadratic forms
@click.command("classify")
@click.option("--s1", required=True, help="First quadratic form in x, y")
@click.option("--s2", required=True, help="Second quadratic form in x, y")
@click.option("--char", "characteristic", type=click.Choice(["0", "2"]), default="0", show_default=True)
@json_option
@out_option
@handle_errors
def classify(s1: str, s2: str, characteristic: str, as_json: bool, out: Optional[str]):
    """Classify (s1, s2) as unstable, strictly semistable or properly stable"""
    pair = SectionPair.parse(s1, s2, int(characteristic))
    result = classify_point(pair)
    report = ClassificationReport(
        s1=str(pair.s1), s2=str(pair.s2), characteristic=result.characteristic, label=result.label.value,
        values={name: str(value) for name, value in result.values.items()}, zero_pair=result.zero_pair,
    )
    emit(report, as_json, out)
