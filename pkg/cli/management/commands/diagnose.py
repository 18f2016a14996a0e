from cli.base import BrenkeCommand, CommandResult
from cli.config import ExitCode
from lpdiag.batteries import Verdict, necessary_battery
from lpdiag.diagnostics import diagnose, rho_convergence_report
from lpdiag.export import diagnostics_frame

RHO_REPORT_MIN_N = 6


class Command(BrenkeCommand):
    help = "Laguerre-Polya diagnostics and the necessary-condition battery of a series B"
    command = "diagnose"
    n_max_default = 12

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_series_arguments(parser, names=("B",))
        parser.add_argument("--n-max", dest="n_max", type=int, help="Truncation order and battery degree")
        parser.add_argument("--no-battery", action="store_true")

    def handle(self, *args, **options):
        self.battery = not options["no_battery"]
        return super().handle(*args, **options)

    def run(self, config):
        B = self.truncate(config, self.series(config, "B"), config.n_max)
        diagnostics = diagnose(B)
        payload = {"series": B.spec.describe(), "diagnostics": diagnostics.to_dict()}
        if config.n_max >= RHO_REPORT_MIN_N:
            payload["rho_convergence"] = rho_convergence_report(B).to_dict()
        if not self.battery:
            return CommandResult(payload, diagnostics_frame(diagnostics, B))

        battery = necessary_battery(B, config.n_max, config.jobs)
        payload["battery"] = battery.to_dict()
        code = {Verdict.FAIL: ExitCode.FALSIFIED, Verdict.INCONCLUSIVE: ExitCode.INCONCLUSIVE}.get(
            battery.verdict, ExitCode.OK
        )
        return CommandResult(payload, diagnostics_frame(diagnostics, B, battery), code, f"battery {battery.verdict}")
