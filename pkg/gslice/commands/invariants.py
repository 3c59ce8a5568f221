# gslice/commands/invariants.py
import logging
from typing import Optional, Tuple

import click

from gslice.commands.common import (
    catalog,
    check_cap,
    emit,
    handle_errors,
    json_option,
    out_option,
    resolve_action,
    resolve_slice,
)
from gslice.core.config import get_settings
from gslice.schemas.job import JobConfig
from gslice.schemas.report import DegreeReport, InvariantReport
from gslice.services.invariants import hilbert_function, invariant_basis
from gslice.services.slicing import build_slice, intersect_equalizers, sliced_hilbert_function

logger = logging.getLogger(__name__)


# 1. Invariant dimensions (and bases) per degree
@click.command("invariants")
@click.option("--model", help="kontsevich or ordered-points:<n>")
@click.option("--action-file", type=click.Path(exists=True, dir_okay=False), help="Action specification file")
@click.option("--slice-file", type=click.Path(exists=True, dir_okay=False), help="Slice specification file")
@click.option("--field", "field_tag", default="Q", show_default=True, help="Z, Q, F2 or Fp:<p>")
@click.option("--max-degree", type=int, default=4, show_default=True)
@click.option("--sliced/--unsliced", default=True, show_default=True)
@click.option("--component", "components", multiple=True, help="Restrict to these components (sliced mode)")
@click.option("--basis", "with_basis", is_flag=True, help="Print a basis in every degree")
@click.option("--workers", type=int, default=None, help="Process pool size for independent degrees")
@json_option
@out_option
@handle_errors
def invariants(model: Optional[str], action_file: Optional[str], slice_file: Optional[str], field_tag: str,
               max_degree: int, sliced: bool, components: Tuple[str, ...], with_basis: bool,
               workers: Optional[int], as_json: bool, out: Optional[str]):
    """Compute the graded invariant ring degree by degree"""
    job = JobConfig(command="invariants", model=model, field_tag=field_tag, max_degree=max_degree,
                    action_file=action_file, slice_file=slice_file, out=out, sliced=sliced,
                    workers=workers or get_settings().workers)
    check_cap(job.max_degree, job.sliced)
    coeff = job.coeff
    action = resolve_action(job)
    labels = list(components) or None
    names = catalog(job, coeff, job.sliced)

    degrees = []
    if job.sliced:
        groupoid = build_slice(action, resolve_slice(job))
        if labels:
            groupoid.select(labels)
        if with_basis or job.workers == 1:
            for d in range(job.max_degree + 1):
                basis = intersect_equalizers(groupoid, d, coeff, labels)
                degrees.append(DegreeReport(degree=d, dim=basis.dim, basis=basis.names(names) if with_basis else []))
        else:
            dims = sliced_hilbert_function(groupoid, job.max_degree, coeff, job.workers, labels)
            degrees = [DegreeReport(degree=d, dim=dim) for d, dim in enumerate(dims)]
        component_labels = labels or [c.label for c in groupoid.components]
    else:
        if with_basis or job.workers == 1:
            for d in range(job.max_degree + 1):
                basis = invariant_basis(action, d, coeff)
                degrees.append(DegreeReport(degree=d, dim=basis.dim, basis=basis.names(names) if with_basis else []))
        else:
            dims = hilbert_function(action, job.max_degree, coeff, job.workers)
            degrees = [DegreeReport(degree=d, dim=dim) for d, dim in enumerate(dims)]
        component_labels = []

    report = InvariantReport(model=job.model or action.label or job.action_file, field=coeff.tag,
                             sliced=job.sliced, components=component_labels, degrees=degrees,
                             with_basis=with_basis)
    emit(report, as_json, out)
