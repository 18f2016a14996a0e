"""
Working-precision defaults, the escalation ladder and other run-wide knobs.

Settings are read lazily so that library code also works in worker
processes and scripts where Django settings are not configured.
"""
from typing import Iterator, Optional

from django.conf import settings

FALLBACK_DEFAULT_BITS = 128
FALLBACK_MAX_BITS = 4096
FALLBACK_SEED = 20240611


def setting(name: str, fallback):
    if not settings.configured:
        return fallback
    return getattr(settings, name, fallback)


def default_bits() -> int:
    """Working precision used when the caller does not pass one."""
    return int(setting("BRENKE_DEFAULT_BITS", FALLBACK_DEFAULT_BITS))


def max_bits() -> int:
    """Upper bound of precision escalation."""
    return int(setting("BRENKE_MAX_BITS", FALLBACK_MAX_BITS))


def escalation_ladder(start: Optional[int] = None, cap: Optional[int] = None) -> Iterator[int]:
    """
    Yield start, 2*start, 4*start, ... up to and including the cap.

    Args:
        start: First precision in bits (defaults to ``default_bits()``)
        cap: Largest precision in bits (defaults to ``max_bits()``)

    Returns:
        Iterator over precisions in bits
    """
    bits = start or default_bits()
    cap = cap or max_bits()
    if bits > cap:
        yield bits
        return
    while bits <= cap:
        yield bits
        bits *= 2


def default_seed() -> int:
    """Seed of randomized checks when the caller does not pass one."""
    return int(setting("BRENKE_SEED", FALLBACK_SEED))


def default_jobs() -> int:
    """Worker processes of parallel sweeps."""
    return max(1, int(setting("BRENKE_JOBS", 1)))
