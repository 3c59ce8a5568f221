# gslice/commands/tables.py
import logging
from typing import Optional

import click

from gslice.commands.common import emit, handle_errors, json_option, out_option, resolve_action, resolve_slice
from gslice.schemas.job import JobConfig
from gslice.schemas.report import ComponentTable, ImageRow, TablesReport
from gslice.services.slicing import build_slice

logger = logging.getLogger(__name__)


# 5. Restricted actions on every component of the slice
@click.command("tables")
@click.option("--model", default="kontsevich", show_default=True, help="kontsevich or ordered-points:<n>")
@click.option("--action-file", type=click.Path(exists=True, dir_okay=False))
@click.option("--slice-file", type=click.Path(exists=True, dir_okay=False))
@click.option("--field", "field_tag", default="Q", show_default=True, help="Z, Q, F2 or Fp:<p>")
@json_option
@out_option
@handle_errors
def tables(model: str, action_file: Optional[str], slice_file: Optional[str], field_tag: str,
           as_json: bool, out: Optional[str]):
    """Print the image of every slice variable on every component"""
    job = JobConfig(command="tables", model=model, field_tag=field_tag, action_file=action_file,
                    slice_file=slice_file, out=out)
    groupoid = build_slice(resolve_action(job), resolve_slice(job))
    components = []
    for component in groupoid.components:
        rows = [ImageRow(variable=v, image=image) for v, image in component.image_table()]
        components.append(ComponentTable(label=component.label, relations=[str(r) for r in component.relations],
                                         images=rows))
    report = TablesReport(model=job.model or job.action_file, field=groupoid.ring.coeff.tag, components=components)
    emit(report, as_json, out)
