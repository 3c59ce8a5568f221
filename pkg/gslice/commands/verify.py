# gslice/commands/verify.py
import logging
import sys
from typing import Optional, Tuple

import click

from gslice.commands.common import EXIT_FAIL, check_cap, emit, handle_errors, json_option, out_option
from gslice.core.config import get_settings
from gslice.schemas.report import VerifyReport
from gslice.services.verify import CHECKS, resolve_checks, run_checks

logger = logging.getLogger(__name__)


# 2. Theorem and identity checks
@click.command("verify")
@click.option("--check", "checks", multiple=True, default=("all",), show_default=True,
              help=f"One of {', '.join(list(CHECKS) + ['all'])}; repeatable")
@click.option("--max-degree", type=int, default=None, help="Highest degree for dimension checks (default: sliced cap)")
@json_option
@out_option
@handle_errors
def verify(checks: Tuple[str, ...], max_degree: Optional[int], as_json: bool, out: Optional[str]):
    """Run verification checks; exit 1 if any fails"""
    names = resolve_checks(checks)
    d_max = get_settings().sliced_cap if max_degree is None else max_degree
    check_cap(d_max, sliced=True)
    report = VerifyReport(checks=names, results=run_checks(names, d_max))
    emit(report, as_json, out)
    if not report.passed:
        logger.error(f"verification failed: {[r.name for r in report.results if not r.passed]}")
        sys.exit(EXIT_FAIL)
