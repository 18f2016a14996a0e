"""Flat tables of diagnostics and reports, one row per index n."""
from pathlib import Path
from typing import Any, Optional, Union

import mpmath
import pandas as pd

from numerics.balls import BallReal
from numerics.coefficients import Coefficient, rational_to_string

from .batteries import BatteryReport
from .diagnostics import LPDiagnostics, RhoConvergenceReport, coti_margin


def cell(value: Optional[Union[Coefficient, mpmath.mpf]]) -> Any:
    """CSV text of a coefficient: p/q for rationals, the midpoint for balls."""
    if value is None:
        return ""
    if isinstance(value, BallReal):
        return mpmath.nstr(value.mid, 20)
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, 15)
    return rational_to_string(value)


def diagnostics_frame(diagnostics: LPDiagnostics, B=None, battery: Optional[BatteryReport] = None) -> pd.DataFrame:
    """rho_n, 1 - rho_n, tau_n, the coti margin (when B is given) and the battery verdicts."""
    rows = []
    for n in range(2, diagnostics.truncation_order + 1):
        value = diagnostics.rho.get(n)
        row = {
            "n": n,
            "rho": cell(value),
            "one_minus_rho": cell(1 - value) if value is not None else "",
            "tau": cell(diagnostics.tau.get(n)),
        }
        if B is not None:
            row["coti_margin"] = cell(coti_margin(B, n))
        if battery is not None:
            for test in battery.tests:
                failed = test.first_failure is not None and test.first_failure <= n
                row[test.name] = "FAIL" if failed else ("?" if n in test.inconclusive_at else "ok")
        rows.append(row)
    return pd.DataFrame(rows)


def rho_frame(report: RhoConvergenceReport) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "n": row.n,
                "rho": cell(row.rho),
                "one_minus_rho": cell(row.gap),
                "one_minus_rho_log_n": cell(row.gap_log),
                "grosswald": cell(row.grosswald),
                "grosswald_log_n": cell(row.grosswald_log),
            }
            for row in report.rows
        ]
    )


def write_csv(frame: pd.DataFrame, path: Union[str, Path, None] = None) -> str:
    """Write ``frame`` to ``path`` (or return the text when path is None)."""
    if path is None:
        return frame.to_csv(index=False)
    frame.to_csv(path, index=False)
    return str(path)
