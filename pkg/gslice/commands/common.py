# gslice/commands/common.py
"""Shared plumbing for the commands: error mapping, report output, model lookup."""
import functools
import logging
import sys
from pathlib import Path
from typing import Dict, Optional

import click
from pydantic import BaseModel, ValidationError

from gslice.core.config import get_settings
from gslice.core.errors import DegreeCapError, GslError
from gslice.models import kontsevich, ordered_points
from gslice.ring.coeffs import CoeffRing
from gslice.ring.poly import MultiPoly
from gslice.schemas.job import JobConfig
from gslice.schemas.slice import SliceSpec
from gslice.services.action import ActionMap
from gslice.services.invariants import working_field
from gslice.services.specfiles import load_action, load_slice

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def json_option(fn):
    return click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")(fn)


def out_option(fn):
    return click.option("--out", type=click.Path(dir_okay=False), help="Also write the report to this file")(fn)


def handle_errors(fn):
    """Map GslError and schema validation failures to exit code 2"""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GslError as e:
            logger.error(f"{fn.__name__}: {e.detail}")
            click.echo(f"error: {e.detail}", err=True)
            sys.exit(e.exit_code)
        except ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(part) for part in first["loc"])
            detail = f"{location}: {first['msg']}" if location else first["msg"]
            logger.error(f"{fn.__name__}: invalid input {detail}")
            click.echo(f"error: {detail}", err=True)
            sys.exit(EXIT_USAGE)
    return wrapper


def emit(report: BaseModel, as_json: bool, out: Optional[str]) -> None:
    text = report.model_dump_json(indent=2) if as_json else report.to_text()
    click.echo(text)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")


def check_cap(max_degree: int, sliced: bool) -> None:
    cap = get_settings().cap(sliced)
    if max_degree > cap:
        kind = "sliced" if sliced else "unsliced"
        raise DegreeCapError(f"max degree {max_degree} exceeds the {kind} cap {cap} (raise it with GSL_MAX_DEGREE)")


def resolve_action(job: JobConfig) -> ActionMap:
    """The action over the working field (Q for integer jobs)"""
    coeff = working_field(job.coeff)
    if job.action_file:
        return load_action(job.action_file, coeff)
    if job.points is not None:
        return ordered_points.ordered_points_action(job.points, coeff)
    return kontsevich.kontsevich_action(coeff)


def resolve_slice(job: JobConfig) -> SliceSpec:
    if job.slice_file:
        return load_slice(job.slice_file)
    if job.action_file:
        return SliceSpec()
    if job.points is not None:
        return ordered_points.first_slice_spec(job.points)
    return kontsevich.SLICE


def catalog(job: JobConfig, coeff: CoeffRing, sliced: bool) -> Dict[str, MultiPoly]:
    """Named polynomials used to label basis elements"""
    if job.model != "kontsevich" or job.action_file:
        return {}
    if sliced:
        return kontsevich.slice_restrictions(coeff)
    return kontsevich.classical_invariants(coeff)
