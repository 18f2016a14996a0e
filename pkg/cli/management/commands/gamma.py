import pandas as pd

from cli.base import BrenkeCommand, CommandResult
from zetacoeffs.tables import compute_table, gamma_bits, gamma_max_n


class Command(BrenkeCommand):
    help = "Compute, cache and print the xi coefficients gamma_0 ... gamma_N"
    command = "gamma"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--max-n", dest="n_max", type=int, help="Largest index N")
        parser.add_argument("--no-cache", action="store_true", help="Compute without reading or writing the cache")

    def default_bits(self):
        return gamma_bits()

    def handle(self, *args, **options):
        self.use_cache = not options["no_cache"]
        if options["n_max"] is None:
            options["n_max"] = gamma_max_n()
        return super().handle(*args, **options)

    def run(self, config):
        N = config.n_max
        if self.use_cache:
            table = self.gamma_table(config, N).truncated(N)
        else:
            table = compute_table(N, config.bits, jobs=config.jobs)
        rows = [{"n": n, **gamma.to_dict()} for n, gamma in enumerate(table.gammas)]
        payload = {
            "bits": table.bits,
            "max_n": table.max_n,
            "quadrature": table.params.to_dict(),
            "xi_half": table.xi_half.to_dict(),
            "rows": rows,
        }
        self.stderr.write(f"gamma_0 ... gamma_{table.max_n} at {table.bits} bits")
        return CommandResult(payload, pd.DataFrame(rows))
