from cli.base import BrenkeCommand, CommandResult
from cli.config import ExitCode
from families.asymptotics import CHECKS, default_check, verify_scaled_limit
from families.export import deviation_frame

GAMMA_CHECKS = ("gorz", "p-alpha", "q-alpha")


class Command(BrenkeCommand):
    help = (
        "Sup deviation of a rescaled family from its limit, per index. "
        "Exits 0 only when the deviations decrease and the last is below factor times the first."
    )
    command = "asympt"
    n_max_default = 30

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--check", required=True, choices=sorted(CHECKS))
        parser.add_argument("--n", dest="n", type=int, default=3, help="Fixed degree of the s-indexed checks")
        parser.add_argument("--s-max", dest="s_max", type=int, default=20)
        parser.add_argument("--n-max", dest="n_max", type=int, help="Largest degree of the n-indexed checks")
        parser.add_argument("--alpha", help="Laguerre parameter of the alpha checks")
        parser.add_argument("--factor", type=float, help="Convergence factor (overrides BRENKE_CONVERGENCE_FACTOR)")

    def handle(self, *args, **options):
        self.check, self.factor = options["check"], options["factor"]
        return super().handle(*args, **options)

    def run(self, config):
        n = config.param("n", 3)
        table = self.gamma_table(config, n + config.s_max + 1) if self.check in GAMMA_CHECKS else None
        check = default_check(self.check, n, config.s_max, config.n_max, table, config.param("alpha", 0))
        report = verify_scaled_limit(check, factor=self.factor)
        payload = {
            "family": check.family.describe(),
            "target": check.target_label,
            "scaling": check.scaling,
            **report.to_dict(),
        }
        code = ExitCode.OK if report.converged else ExitCode.INCONCLUSIVE
        summary = "convergence not verified: " + (
            "deviations are not decreasing" if not report.monotone_tail else f"final/initial ratio {report.final_ratio:.3g}"
        )
        return CommandResult(payload, deviation_frame(report), code, summary)
