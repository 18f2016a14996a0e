"""
Validated run configuration and the exit-code contract of the commands.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Tuple

from django.db import models

from numerics.coefficients import parse_rational
from numerics.precision import default_bits, default_jobs, default_seed
from realroots.certificates import RootStatus
from zetacoeffs.tables import cache_path

from .exceptions import (
    BrenkeError,
    CacheCorrupt,
    CacheWriteError,
    ConfigError,
    PrecisionExhausted,
)

MIN_BITS = 32
MAX_BITS = 65536


class ExitCode(models.IntegerChoices):
    OK = 0, "ok"
    FALSIFIED = 1, "falsified"
    PRECISION = 2, "precision exhausted"
    CACHE = 3, "cache error"
    INCONCLUSIVE = 4, "inconclusive"
    USAGE = 64, "usage error"


class OutputFormat(models.TextChoices):
    JSON = "json", "JSON"
    CSV = "csv", "CSV"


def exit_code_for(exc: BrenkeError) -> ExitCode:
    if isinstance(exc, PrecisionExhausted):
        return ExitCode.PRECISION
    if isinstance(exc, (CacheCorrupt, CacheWriteError)):
        return ExitCode.CACHE
    # ConfigError, ExpressionError, InvalidParameter and the other input errors
    return ExitCode.USAGE


def exit_code_for_statuses(statuses: Iterable[RootStatus]) -> ExitCode:
    statuses = set(statuses)
    if RootStatus.NOT_REAL_ROOTED in statuses:
        return ExitCode.FALSIFIED
    if RootStatus.INCONCLUSIVE in statuses:
        return ExitCode.INCONCLUSIVE
    return ExitCode.OK


def parse_fraction(name: str, text: Optional[str]) -> Optional[Fraction]:
    if text is None:
        return None
    try:
        return parse_rational(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"--{name} expects a rational such as 3 or 1/2, got {text!r}") from exc


def parse_fraction_list(name: str, text: Optional[str]) -> Tuple[Fraction, ...]:
    if not text:
        return ()
    return tuple(parse_fraction(name, part.strip()) for part in str(text).split(","))


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_max: int
    s_max: Optional[int] = None
    bits: int = 128
    cache: Path = field(default_factory=cache_path)
    output_format: OutputFormat = OutputFormat.JSON
    output: Optional[Path] = None
    jobs: int = 1
    seed: int = 0
    progress: bool = False
    # series and family parameters, keyed by flag name
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.n_max < 0:
            raise ConfigError(f"--n-max must be >= 0, got {self.n_max}")
        if self.s_max is not None and self.s_max < 0:
            raise ConfigError(f"--s-max must be >= 0, got {self.s_max}")
        if not MIN_BITS <= self.bits <= MAX_BITS:
            raise ConfigError(f"--bits must lie in [{MIN_BITS}, {MAX_BITS}], got {self.bits}")
        if self.jobs < 1:
            raise ConfigError(f"--jobs must be >= 1, got {self.jobs}")

    def param(self, name: str, default=None):
        value = self.params.get(name)
        return default if value is None else value

    @classmethod
    def from_options(
        cls, command: str, options: Dict[str, Any], n_max_default: int = 10, bits_default: Optional[int] = None
    ) -> "RunConfig":
        """Build the config from parsed command options; raises ConfigError on bad values."""
        fmt = options.get("format") or OutputFormat.JSON
        if fmt not in OutputFormat.values:
            raise ConfigError(f"--format must be one of {', '.join(OutputFormat.values)}, got {fmt!r}")
        n_max = options.get("n_max")
        params = {
            "A": options.get("A"),
            "B": options.get("B"),
            "phi": parse_fraction_list("phi", options.get("phi")),
            "mu": parse_fraction("mu", options.get("mu")),
            "q": parse_fraction("q", options.get("q")),
            "a": parse_fraction("a", options.get("a")),
            "N": parse_fraction("N", options.get("N")),
            "alpha": parse_fraction("alpha", options.get("alpha")),
            "s": options.get("s"),
            "n": options.get("n"),
        }
        return cls(
            command=command,
            n_max=n_max_default if n_max is None else n_max,
            s_max=options.get("s_max"),
            bits=options.get("bits") or bits_default or default_bits(),
            cache=Path(options["cache"]) if options.get("cache") else cache_path(),
            output_format=OutputFormat(fmt),
            output=Path(options["output"]) if options.get("output") else None,
            jobs=options.get("jobs") or default_jobs(),
            seed=default_seed() if options.get("seed") is None else options["seed"],
            progress=int(options.get("verbosity", 1)) >= 2,
            params=params,
        )
