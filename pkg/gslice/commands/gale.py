# gslice/commands/gale.py
import logging
import sys
from pathlib import Path
from typing import Optional

import click

from gslice.commands.common import EXIT_FAIL, emit, handle_errors, json_option, out_option
from gslice.core.errors import SpecFileError
from gslice.models.grassmann import (
    ConfigMatrix,
    complementarity,
    gale_transform,
    index_label,
    pluecker,
    pluecker_indices,
)
from gslice.schemas.report import GaleReport

logger = logging.getLogger(__name__)


def _rows(matrix: ConfigMatrix):
    return [line.split() for line in matrix.to_text().splitlines()]


def _minors(matrix: ConfigMatrix):
    return {index_label(index): str(value)
            for index, value in zip(pluecker_indices(matrix.n, matrix.m), pluecker(matrix))}


GALE_EPILOG = """\b
Sign convention, with 1-based column indices in I:
  p_I = (-1)^(sum of I) * lambda * q_(complement of I)
lambda is one scale for every I, printed as λ (JSON key "scale")."""


# 4. Gale transform and Pluecker complementarity
@click.command("gale", epilog=GALE_EPILOG)
@click.option("--matrix", "matrix_path", required=True, type=click.Path(dir_okay=False),
              help="Rows of rationals, one row per line")
@json_option
@out_option
@handle_errors
def gale(matrix_path: str, as_json: bool, out: Optional[str]):
    """Print the Gale dual, both Pluecker vectors and the complementarity verdict"""
    try:
        text = Path(matrix_path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecFileError(f"cannot read {matrix_path}: {e.strerror}")
    matrix = ConfigMatrix.from_text(text)
    dual = gale_transform(matrix)
    check = complementarity(matrix, dual)
    report = GaleReport(
        matrix=_rows(matrix), dual=_rows(dual), pluecker=_minors(matrix), dual_pluecker=_minors(dual),
        holds=check.holds, scale=None if check.scale is None else str(check.scale), mismatches=check.mismatches,
    )
    emit(report, as_json, out)
    if not check.holds:
        sys.exit(EXIT_FAIL)
