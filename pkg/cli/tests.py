import json
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.apps import apps
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from cli.config import ExitCode, OutputFormat, RunConfig, exit_code_for, exit_code_for_statuses
from cli.exceptions import CacheCorrupt, ConfigError, ExpressionError, InvalidParameter, PrecisionExhausted
from cli.experiments import appell, counterexamples, discriminants, overall_verdict, thresholds
from cli.expressions import parse_series, polynomial_coefficients
from cli.output import render
from lpdiag.batteries import Verdict
from numerics.balls import BallReal
from powerseries.series import coefficients
from powerseries.specs import SeriesKind
from realroots.certificates import RootStatus


class ExpressionTests(SimpleTestCase):
    def test_named(self):
        self.assertEqual(parse_series("exp").kind, SeriesKind.EXP)
        self.assertEqual(parse_series("0f1", {"phi": (Fraction(2),)}).phi, (Fraction(2),))
        self.assertEqual(parse_series("0F1").phi, (Fraction(1),))
        self.assertEqual(parse_series("bq", {"q": Fraction(2)}).q, 2)
        self.assertEqual(parse_series("zeta", {"s": 2}).s, 2)

    def test_polynomials(self):
        self.assertEqual(polynomial_coefficients("(z-1)^2"), [1, -2, 1])
        self.assertEqual(polynomial_coefficients("1 - z^2/2"), [1, 0, Fraction(-1, 2)])
        self.assertEqual(polynomial_coefficients("(z+1)**3"), [1, 3, 3, 1])
        series = coefficients(parse_series("2 + 4*z"), 2)
        self.assertEqual(series.coeffs, (1, 2, 0))

    def test_coefficient_list(self):
        self.assertEqual(coefficients(parse_series("[1, 1/2, 1/6]"), 2).coeffs, (1, Fraction(1, 2), Fraction(1, 6)))

    def test_rejected(self):
        for text in ("sin(z)", "z^(1/2)", "1/z", "__import__('os')", "1.5*z + 1", "", "x + 1"):
            with self.assertRaises(ExpressionError, msg=text):
                parse_series(text)

    def test_missing_parameter(self):
        with self.assertRaises(ExpressionError):
            parse_series("bq")
        with self.assertRaises(ExpressionError):
            parse_series("dunkl-e")

    def test_zero_constant_term(self):
        with self.assertRaises(ExpressionError):
            parse_series("z^2")


class ProjectTests(SimpleTestCase):
    def test_apps_define_no_models(self):
        for config in apps.get_app_configs():
            self.assertEqual(list(config.get_models()), [], config.name)
            self.assertNotIn("default_auto_field", vars(type(config)), config.name)


class ConfigTests(SimpleTestCase):
    def test_exit_codes(self):
        self.assertEqual(exit_code_for(PrecisionExhausted("x")), ExitCode.PRECISION)
        self.assertEqual(exit_code_for(CacheCorrupt("x")), ExitCode.CACHE)
        self.assertEqual(exit_code_for(InvalidParameter("x")), 64)
        self.assertEqual(exit_code_for(ExpressionError("x")), 64)

    def test_status_codes(self):
        self.assertEqual(exit_code_for_statuses([RootStatus.REAL_ROOTED]), ExitCode.OK)
        self.assertEqual(exit_code_for_statuses([RootStatus.INCONCLUSIVE, RootStatus.REAL_ROOTED]), 4)
        self.assertEqual(exit_code_for_statuses([RootStatus.INCONCLUSIVE, RootStatus.NOT_REAL_ROOTED]), 1)

    def test_validation(self):
        with self.assertRaises(ConfigError):
            RunConfig("gamma", n_max=-1)
        with self.assertRaises(ConfigError):
            RunConfig("gamma", n_max=3, bits=8)
        with self.assertRaises(ConfigError):
            RunConfig.from_options("certify", {"mu": "one third"})
        config = RunConfig.from_options("certify", {"mu": "1/3", "phi": "1, 3/2", "n_max": 4})
        self.assertEqual(config.param("mu"), Fraction(1, 3))
        self.assertEqual(config.param("phi"), (1, Fraction(3, 2)))
        self.assertEqual(config.output_format, OutputFormat.JSON)

    def test_render(self):
        text = render({"b": 1, "a": [1, 2]}, None, OutputFormat.JSON)
        self.assertTrue(text.startswith('{\n  "a"'))
        self.assertEqual(text, render({"a": [1, 2], "b": 1}, None, OutputFormat.JSON))
        with self.assertRaises(ConfigError):
            render({}, None, OutputFormat.CSV)


class ExperimentTests(SimpleTestCase):
    def test_exact_experiments_pass(self):
        for run in (counterexamples, discriminants, thresholds):
            result = run(quick=True)
            self.assertEqual(result.verdict, Verdict.PASS, result.to_dict())

    def test_counterexample_details(self):
        details = counterexamples(quick=True).details
        self.assertEqual(set(details["log_like_non_real"].values()), {2})
        self.assertEqual(details["bq2_coti_first_failure"], 2)

    def test_appell_experiment(self):
        result = appell(quick=True, seed=5)
        self.assertEqual(result.verdict, Verdict.PASS, result.to_dict())
        self.assertEqual(len(result.details["samples"]), 6)
        self.assertEqual(result.to_dict()["name"], "appell")

    def test_overall_verdict(self):
        self.assertEqual(overall_verdict([Verdict.PASS, Verdict.INCONCLUSIVE]), Verdict.INCONCLUSIVE)
        self.assertEqual(overall_verdict([Verdict.FAIL, Verdict.INCONCLUSIVE]), Verdict.FAIL)
        self.assertEqual(overall_verdict([]), Verdict.PASS)


class CommandTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.cache = str(Path(self.directory.name) / "gamma_cache.json")

    def tearDown(self):
        self.directory.cleanup()

    def call(self, *args, **options):
        stdout = StringIO()
        call_command(*args, stdout=stdout, stderr=StringIO(), **options)
        return stdout.getvalue()

    def failing_call(self, *args, **options):
        stdout = StringIO()
        with self.assertRaises(CommandError) as context:
            call_command(*args, stdout=stdout, stderr=StringIO(), **options)
        return context.exception.returncode, stdout.getvalue()

    def test_gamma(self):
        text = self.call("gamma", "--max-n", "3", "--bits", "64", "--cache", self.cache)
        data = json.loads(text)
        self.assertEqual(len(data["rows"]), 4)
        self.assertTrue(BallReal.from_dict(data["rows"][0]).contains(1))
        self.assertEqual(self.call("gamma", "--max-n", "3", "--bits", "64", "--cache", self.cache), text)

    def test_gamma_usage_error(self):
        code, _ = self.failing_call("gamma", "--max-n", "-1", "--cache", self.cache)
        self.assertEqual(code, 64)
        code, _ = self.failing_call("gamma", "--max-n", "three")
        self.assertEqual(code, 64)

    def test_gamma_corrupt_cache(self):
        Path(self.cache).write_text("{not json", encoding="utf-8")
        code, _ = self.failing_call("gamma", "--max-n", "2", "--bits", "64", "--cache", self.cache)
        self.assertEqual(code, ExitCode.CACHE)

    def test_certify_counterexample(self):
        code, text = self.failing_call("certify", "--brenke", "--A", "(z-1)^2", "--B", "log-like", "--n-max", "6")
        self.assertEqual(code, ExitCode.FALSIFIED)
        data = json.loads(text)
        self.assertEqual(data["witnesses"][0]["n"], 3)
        self.assertEqual(data["status"], RootStatus.NOT_REAL_ROOTED)

    def test_certify_dunkl(self):
        code, _ = self.failing_call("certify", "--family", "dunkl", "--mu", "1/3", "--A", "(z+1)^3", "--n-max", "12")
        self.assertEqual(code, ExitCode.FALSIFIED)

    def test_certify_real_rooted(self):
        data = json.loads(self.call("certify", "--brenke", "--A", "exp", "--B", "0f1", "--phi", "2", "--n-max", "8"))
        self.assertEqual(data["status"], RootStatus.REAL_ROOTED)
        self.assertEqual(data["witnesses"], [])

    def test_certify_shifted_jensen(self):
        text = self.call(
            "certify", "--family", "jensen-shifted", "--n-max", "3", "--s-max", "4",
            "--bits", "128", "--cache", self.cache, "--format", "csv",
        )
        lines = text.strip().splitlines()
        self.assertEqual(len(lines), 1 + 4 * 5)
        self.assertTrue(lines[0].startswith("family,n,s,status"))

    def test_certify_usage_errors(self):
        for args in (
            ("certify", "--n-max", "3"),
            ("certify", "--family", "qhat", "--n-max", "3"),
            ("certify", "--brenke", "--family", "qhat", "--A", "exp", "--B", "exp"),
            ("certify", "--brenke", "--A", "exp", "--B", "exp", "--s-max", "3"),
            ("certify", "--brenke", "--A", "exp", "--B", "bq"),
        ):
            code, _ = self.failing_call(*args)
            self.assertEqual(code, ExitCode.USAGE, args)

    def test_diagnose_bq(self):
        code, text = self.failing_call("diagnose", "--B", "bq", "--q", "2", "--n-max", "6")
        self.assertEqual(code, ExitCode.FALSIFIED)
        data = json.loads(text)
        self.assertEqual(data["diagnostics"]["log_concave_up_to"], 1)
        self.assertEqual(data["battery"]["verdict"], Verdict.FAIL)

    def test_diagnose_csv(self):
        text = self.call("diagnose", "--B", "exp", "--n-max", "8", "--format", "csv")
        self.assertTrue(text.startswith("n,rho,one_minus_rho,tau,coti_margin"))

    def test_asympt(self):
        data = json.loads(self.call("asympt", "--check", "jensen-classical", "--n-max", "20", "--factor", "0.9"))
        errors = [error for _, error in data["errors_by_index"]]
        self.assertEqual([index for index, _ in data["errors_by_index"]], [6, 13, 20])
        self.assertLess(errors[-1], errors[0])
        self.assertTrue(data["monotone_tail"])
        self.assertTrue(data["converged"])

    def test_asympt_monotone_but_not_converged(self):
        code, text = self.failing_call("asympt", "--check", "jensen-classical", "--n-max", "20")
        self.assertEqual(code, ExitCode.INCONCLUSIVE)
        data = json.loads(text)
        self.assertTrue(data["monotone_tail"])
        self.assertFalse(data["converged"])

    def test_interlace(self):
        data = json.loads(
            self.call("interlace", "--A", "exp", "--B", "0f1", "--phi", "1", "--n-max", "6", "--trials", "5")
        )
        self.assertEqual({pair["relation"] for pair in data["pairs"]}, {"STRICT"})
        self.assertTrue(all(pair["obreshkov"]["consistent"] for pair in data["pairs"]))

    def test_report(self):
        data = json.loads(self.call("report", "counterexamples", "discriminants", "--quick"))
        self.assertEqual(data["verdict"], Verdict.PASS)
        self.assertEqual([e["name"] for e in data["experiments"]], ["counterexamples", "discriminants"])
        self.assertIsNone(data["gamma_bits"])

    def test_report_lambda_zeta(self):
        data = json.loads(self.call("report", "lambda-zeta", "--quick", "--bits", "128", "--cache", self.cache))
        self.assertEqual(data["experiments"][0]["verdict"], Verdict.PASS)
        self.assertEqual(data["experiments"][0]["certificate"]["real_root_count"], 1)
        self.assertLessEqual(data["experiments"][0]["certificate"]["precision_used"], 512)

    def test_report_unknown_experiment(self):
        code, _ = self.failing_call("report", "everything")
        self.assertEqual(code, ExitCode.USAGE)

    def test_output_file(self):
        path = Path(self.directory.name) / "out" / "report.json"
        text = self.call("report", "thresholds", "--output", str(path))
        self.assertEqual(text, "")
        self.assertEqual(json.loads(path.read_text())["experiments"][0]["name"], "thresholds")
