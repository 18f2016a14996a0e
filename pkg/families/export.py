"""Flat tables of family sweeps and checks."""
from typing import Sequence

import pandas as pd

from numerics.coefficients import rational_to_string

from .asymptotics import AsymptoticReport
from .dunkl import DunklDiscriminantReport
from .sweeps import FamilySweep, ZeroSignRow


def sweep_frame(sweep: FamilySweep) -> pd.DataFrame:
    return pd.DataFrame(sweep.to_dict()["cells"]).drop(columns=["params"])


def deviation_frame(report: AsymptoticReport) -> pd.DataFrame:
    return pd.DataFrame(
        [{report.index_name: index, "sup_deviation": error} for index, error in report.errors_by_index]
    )


def discriminant_frame(report: DunklDiscriminantReport) -> pd.DataFrame:
    frame = pd.DataFrame([row.to_dict() for row in report.rows])
    frame["limit"] = rational_to_string(report.limit)
    return frame


def zero_sign_frame(rows: Sequence[ZeroSignRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "phi": rational_to_string(row.phi),
                "n": row.n,
                "positive": row.positive,
                "negative": row.negative,
                "at_zero": row.at_zero,
                "non_real": row.non_real,
            }
            for row in rows
        ]
    )
