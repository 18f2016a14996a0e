"""
Shared plumbing of the management commands: common flags, error mapping, output.
"""
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, Optional

import pandas as pd
from django.core.management.base import BaseCommand, CommandError

from powerseries.series import TruncatedSeries, coefficients
from powerseries.specs import SeriesKind, SeriesSpec
from zetacoeffs.tables import ZetaCoefficientTable, gamma_table

from .config import ExitCode, OutputFormat, RunConfig, exit_code_for
from .exceptions import BrenkeError
from .expressions import parse_series
from .output import emit

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    payload: Dict[str, Any]
    frame: Optional[pd.DataFrame] = None
    exit_code: ExitCode = ExitCode.OK
    summary: str = ""


class BrenkeCommand(BaseCommand):
    """
    Base class of the lab commands.

    Subclasses implement ``run(config) -> CommandResult``. Results go to stdout
    (or --output) before a nonzero exit status is raised, so falsified and
    inconclusive runs still print their report.
    """

    command = ""
    n_max_default = 10

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def usage_error(message):
            if self._called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(ExitCode.USAGE, f"{parser.prog}: error: {message}\n")
            raise CommandError(f"Error: {message}", returncode=ExitCode.USAGE)

        parser.error = usage_error
        return parser

    def add_arguments(self, parser):
        parser.add_argument("--format", choices=OutputFormat.values, default=OutputFormat.JSON)
        parser.add_argument("--output", help="Write the result to this file instead of stdout")
        parser.add_argument("--bits", type=int, help="Working precision in bits")
        parser.add_argument("--jobs", type=int, help="Worker processes")
        parser.add_argument("--seed", type=int, help="Seed of randomized checks")
        parser.add_argument("--cache", help="Gamma cache path (overrides BRENKE_CACHE)")

    def add_series_arguments(self, parser, names=("A", "B")):
        for name in names:
            parser.add_argument(f"--{name}", dest=name, help=f"Series {name}: a name, [c0, c1, ...] or a polynomial in z")
        parser.add_argument("--phi", help="0Fq parameters, comma separated")
        parser.add_argument("--mu", help="Dunkl parameter")
        parser.add_argument("--q", help="q of bq")
        parser.add_argument("--a", help="a of the partial theta series")
        parser.add_argument("--s", type=int, help="Shift or derivative order")

    def default_bits(self) -> Optional[int]:
        return None

    def run(self, config: RunConfig) -> CommandResult:
        raise NotImplementedError

    def series(self, config: RunConfig, name: str) -> SeriesSpec:
        return parse_series(config.param(name), config.params)

    def gamma_table(self, config: RunConfig, max_n: int) -> ZetaCoefficientTable:
        return gamma_table(max_n, config.bits, path=config.cache, jobs=config.jobs)

    def zeta_order(self, n_max: int, *specs: Optional[SeriesSpec]) -> Optional[int]:
        """Gamma index read by the top-level xi-derived series among ``specs``, or None."""
        shifts = [spec.s for spec in specs if spec is not None and spec.kind == SeriesKind.ZETA_RELATIVE]
        return n_max + max(shifts) if shifts else None

    def truncate(self, config: RunConfig, spec: SeriesSpec, n_max: int) -> TruncatedSeries:
        order = self.zeta_order(n_max, spec)
        table = self.gamma_table(config, order) if order is not None else None
        return coefficients(spec, n_max, config.bits, table)

    def handle(self, *args, **options):
        try:
            config = RunConfig.from_options(self.command, options, self.n_max_default, self.default_bits())
            result = self.run(config)
            written = emit(config, result.payload, result.frame, self.stdout)
        except BrenkeError as exc:
            code = exit_code_for(exc)
            logger.error("%s failed (%s): %s", self.command, ExitCode(code).label, exc)
            raise CommandError(str(exc), returncode=code) from exc
        if written is not None:
            self.stderr.write(self.style.SUCCESS(f"Wrote {written}"))
        if result.exit_code != ExitCode.OK:
            raise CommandError(result.summary or ExitCode(result.exit_code).label, returncode=result.exit_code)
