import pandas as pd

from cli.base import BrenkeCommand, CommandResult
from cli.config import ExitCode
from cli.exceptions import ConfigError
from cli.experiments import EXPERIMENTS, USES_GAMMA, overall_verdict, run_experiments, table_order
from lpdiag.batteries import Verdict
from zetacoeffs.tables import gamma_bits

EXIT_CODES = {Verdict.PASS: ExitCode.OK, Verdict.FAIL: ExitCode.FALSIFIED, Verdict.INCONCLUSIVE: ExitCode.INCONCLUSIVE}


class Command(BrenkeCommand):
    help = "Run the named finite experiments and emit one JSON document of verdicts"
    command = "report"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("experiments", nargs="*", help=f"Subset of: {', '.join(EXPERIMENTS)} (default: all)")
        parser.add_argument("--quick", action="store_true", help="Smaller index ranges")

    def default_bits(self):
        return gamma_bits()

    def handle(self, *args, **options):
        self.names = list(dict.fromkeys(options["experiments"] or EXPERIMENTS))
        self.quick = options["quick"]
        return super().handle(*args, **options)

    def run(self, config):
        unknown = [name for name in self.names if name not in EXPERIMENTS]
        if unknown:
            raise ConfigError(f"unknown experiments {', '.join(unknown)}; expected {', '.join(EXPERIMENTS)}")
        table = None
        if any(name in USES_GAMMA for name in self.names):
            table = self.gamma_table(config, table_order(self.quick))

        results = run_experiments(self.names, self.quick, table, config.seed)
        verdict = overall_verdict(result.verdict for result in results)
        payload = {
            "quick": self.quick,
            "gamma_bits": table.bits if table is not None else None,
            "verdict": verdict.value,
            "experiments": [result.to_dict() for result in results],
        }
        frame = pd.DataFrame([{"experiment": r.name, "verdict": r.verdict.value} for r in results])
        failed = [r.name for r in results if r.verdict != Verdict.PASS]
        return CommandResult(payload, frame, EXIT_CODES[verdict], f"not passed: {', '.join(failed)}")
