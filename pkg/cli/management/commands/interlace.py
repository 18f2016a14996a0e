import pandas as pd

from cli.base import BrenkeCommand, CommandResult
from cli.config import ExitCode
from operators.brenke import brenke_polynomials
from realroots.certificates import InterlacingRelation
from realroots.exceptions import NotRealRooted
from realroots.interlacing import check_interlacing, obreshkov_check


class Command(BrenkeCommand):
    help = "Interlacing of the zeros of consecutive Brenke polynomials p_{n-1}, p_n"
    command = "interlace"
    n_max_default = 15

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_series_arguments(parser)
        parser.add_argument("--n-max", dest="n_max", type=int)
        parser.add_argument("--trials", type=int, default=0, help="Obreshkov combinations per pair")

    def handle(self, *args, **options):
        self.trials = options["trials"]
        return super().handle(*args, **options)

    def run(self, config):
        A = self.truncate(config, self.series(config, "A"), config.n_max)
        B = self.truncate(config, self.series(config, "B"), config.n_max)
        family = brenke_polynomials(A, B, config.n_max)
        pairs = []
        for n in range(1, config.n_max + 1):
            q, p = family[n - 1], family[n]
            row = {"n": n}
            try:
                report = check_interlacing(q, p, config.bits)
            except NotRealRooted as exc:
                row.update(relation=InterlacingRelation.FAILS.value, note=str(exc))
                pairs.append(row)
                continue
            row.update(report.to_dict())
            if self.trials:
                row["obreshkov"] = obreshkov_check(q, p, self.trials, config.seed + n).to_dict()
            pairs.append(row)

        relations = {row["relation"] for row in pairs}
        inconsistent = [row["n"] for row in pairs if not row.get("obreshkov", {}).get("consistent", True)]
        if InterlacingRelation.FAILS.value in relations or inconsistent:
            code = ExitCode.FALSIFIED
        elif InterlacingRelation.UNKNOWN.value in relations:
            code = ExitCode.INCONCLUSIVE
        else:
            code = ExitCode.OK
        payload = {"A": A.spec.describe(), "B": B.spec.describe(), "n_max": config.n_max, "pairs": pairs}
        frame = pd.DataFrame([{"n": row["n"], "relation": row["relation"]} for row in pairs])
        return CommandResult(payload, frame, code, f"interlacing relations: {', '.join(sorted(relations))}")
