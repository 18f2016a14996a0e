from cli.base import BrenkeCommand, CommandResult
from cli.config import exit_code_for_statuses
from cli.exceptions import ConfigError
from families.export import sweep_frame
from families.specs import SHIFTED_KINDS, appell_dunkl, brenke, jensen, jensen_shifted, p_alpha, q_alpha, qhat
from families.sweeps import certify_family

FAMILIES = ("jensen", "jensen-shifted", "qhat", "p-alpha", "q-alpha", "dunkl", "brenke")


class Command(BrenkeCommand):
    help = "Certify real-rootedness of a polynomial family for n <= n_max (and s <= s_max)"
    command = "certify"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_series_arguments(parser)
        parser.add_argument("--family", choices=FAMILIES)
        parser.add_argument("--brenke", action="store_true", help="Same as --family brenke")
        parser.add_argument("--n-max", dest="n_max", type=int)
        parser.add_argument("--s-max", dest="s_max", type=int, help="Sweep shifts s ... s_max")
        parser.add_argument("--N", dest="N", help="Exponent N of q-hat")
        parser.add_argument("--alpha", help="Laguerre parameter alpha")

    def handle(self, *args, **options):
        self.family_flag = options["family"]
        self.brenke_flag = options["brenke"]
        return super().handle(*args, **options)

    def family(self) -> str:
        if self.brenke_flag:
            if self.family_flag not in (None, "brenke"):
                raise ConfigError(f"--brenke conflicts with --family {self.family_flag}")
            return "brenke"
        if self.family_flag is None:
            raise ConfigError("one of --family or --brenke is required")
        return self.family_flag

    def family_spec(self, family, config):
        n_max, s = config.n_max, config.param("s", 0)
        if family == "jensen":
            return jensen(n_max, self.series(config, "A") if config.param("A") else None)
        if family == "jensen-shifted":
            return jensen_shifted(s, n_max)
        if family == "qhat":
            return qhat(self.required(config, "N"), n_max)
        if family == "p-alpha":
            return p_alpha(self.required(config, "alpha"), s, n_max)
        if family == "q-alpha":
            return q_alpha(self.required(config, "alpha"), s, n_max)
        if family == "dunkl":
            return appell_dunkl(self.series(config, "A"), self.required(config, "mu"), n_max)
        return brenke(self.series(config, "A"), self.series(config, "B"), n_max)

    @staticmethod
    def required(config, name):
        value = config.param(name)
        if value is None:
            raise ConfigError(f"this family needs --{name}")
        return value

    def run(self, config):
        family = self.family()
        spec = self.family_spec(family, config)
        shifts = None
        if config.s_max is not None:
            if spec.kind not in SHIFTED_KINDS:
                raise ConfigError(f"--s-max applies to shifted families only, not {family}")
            if config.s_max < spec.s:
                raise ConfigError(f"--s-max {config.s_max} is below --s {spec.s}")
            shifts = range(spec.s, config.s_max + 1)
        gammas = None
        if spec.uses_gamma:
            gammas = self.gamma_table(config, spec.with_shift(max(config.s_max or 0, spec.s)).gamma_order)
        elif (order := self.zeta_order(spec.n_max, spec.A, spec.B)) is not None:
            gammas = self.gamma_table(config, order)
        sweep = certify_family(spec, shifts, gammas, config.bits, config.jobs, config.progress)

        payload = sweep.to_dict()
        payload["witnesses"] = [{"n": cell.n, "s": cell.s} for cell in sweep.failures]
        summary = f"{spec}: {sweep.status}"
        if sweep.failures:
            summary += f", first failure at n = {sweep.failures[0].n}, s = {sweep.failures[0].s}"
        return CommandResult(payload, sweep_frame(sweep), exit_code_for_statuses(c.status for c in sweep.cells), summary)
