"""Rendering of command results as JSON or CSV."""
import json
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd

from lpdiag.export import write_csv

from .config import OutputFormat, RunConfig
from .exceptions import ConfigError


def render(payload: Dict[str, Any], frame: Optional[pd.DataFrame], output_format: OutputFormat) -> str:
    """
    JSON of ``payload`` with sorted keys, or CSV of ``frame``.

    Identical payloads render to identical text.
    """
    if output_format == OutputFormat.CSV:
        if frame is None:
            raise ConfigError("this command has no tabular output; use --format json")
        return write_csv(frame)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit(config: RunConfig, payload: Dict[str, Any], frame: Optional[pd.DataFrame], stdout) -> Optional[Path]:
    """Write the rendered result to --output, or to ``stdout`` when no path is given."""
    text = render(payload, frame, config.output_format)
    if config.output is None:
        stdout.write(text, ending="")
        return None
    try:
        config.output.parent.mkdir(parents=True, exist_ok=True)
        config.output.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot write {config.output}: {exc}") from exc
    return config.output
