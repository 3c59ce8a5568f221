# gslice/main.py
import sys

import click

from gslice import __version__
from gslice.commands import classify, gale, hmsv, invariants, tables, verify
from gslice.core.config import get_settings
from gslice.core.errors import GslError
from gslice.core.log import configure_logging


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG (logs go to stderr)")
@click.version_option(__version__, prog_name="gslice")
def cli(verbose: int):
    """Invariant rings by slicing groupoids"""
    try:
        settings = get_settings()
    except GslError as e:
        click.echo(f"error: {e.detail}", err=True)
        sys.exit(e.exit_code)
    configure_logging(settings.log_level, verbose)


# Include commands
cli.add_command(invariants.invariants)
cli.add_command(verify.verify)
cli.add_command(classify.classify)
cli.add_command(gale.gale)
cli.add_command(tables.tables)
cli.add_command(hmsv.hmsv)


def main():
    cli()
