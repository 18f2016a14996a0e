"""
Tables of gamma_n = n! xi^(2n)(1/2) / ((2n)! xi(1/2)) and their JSON cache.

The cache is a single versioned JSON file guarded by an advisory lock on a
sibling ``.lock`` file: one writer at a time, readers wait for the writer.
"""
import fcntl
import hashlib
import json
import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass
from math import factorial
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from mpmath import iv

from numerics.balls import BallReal
from numerics.precision import setting

from .exceptions import CacheCorrupt, CacheWriteError, GammaTableTooShort, InvalidParameter, PrecisionExhausted
from .quadrature import QuadratureParams, ball_to_interval, interval_precision, interval_to_ball, moment_intervals

logger = logging.getLogger(__name__)

CACHE_VERSION = 1
MIN_BITS = 64


def gamma_bits() -> int:
    return int(setting("BRENKE_GAMMA_BITS", 256))


def gamma_max_n() -> int:
    return int(setting("BRENKE_GAMMA_MAX_N", 50))


def cache_path() -> Path:
    default = Path(__file__).resolve().parent.parent / "var" / "gamma_cache.json"
    return Path(setting("BRENKE_CACHE", str(default)))


@dataclass(frozen=True)
class ZetaCoefficientTable:
    """gamma_0 ... gamma_N as positive balls, with the quadrature that produced them."""

    gammas: Tuple[BallReal, ...]
    bits: int
    params: QuadratureParams
    xi_half: BallReal

    @property
    def max_n(self) -> int:
        return len(self.gammas) - 1

    def gamma(self, n: int) -> BallReal:
        if n < 0:
            raise InvalidParameter("gamma_n is defined for n >= 0")
        if n > self.max_n:
            raise GammaTableTooShort(f"gamma_{n} requested, table ends at {self.max_n}")
        return self.gammas[n]

    def truncated(self, max_n: int) -> "ZetaCoefficientTable":
        return ZetaCoefficientTable(self.gammas[: max_n + 1], self.bits, self.params, self.xi_half)

    def body(self) -> Dict[str, Any]:
        data = {
            "version": CACHE_VERSION,
            "bits": self.bits,
            "gammas": [{"n": n, **_ball_entry(g)} for n, g in enumerate(self.gammas)],
            "xi_half": self.xi_half.to_dict(),
        }
        data.update(self.params.to_dict())
        return data

    def to_dict(self) -> Dict[str, Any]:
        data = self.body()
        data["checksum"] = checksum(data)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ZetaCoefficientTable":
        bits = int(data["bits"])
        gammas = []
        for expected, entry in enumerate(data["gammas"]):
            if int(entry["n"]) != expected:
                raise CacheCorrupt("gamma indices are not contiguous from 0")
            gammas.append(BallReal.from_dict({"mid": entry["mid"], "rad": entry["rad"], "bits": bits}))
        return cls(tuple(gammas), bits, QuadratureParams.from_dict(data), BallReal.from_dict(data["xi_half"]))


def _ball_entry(ball: BallReal) -> Dict[str, str]:
    data = ball.to_dict()
    return {"mid": data["mid"], "rad": data["rad"]}


def checksum(body: Dict[str, Any]) -> str:
    canonical = {k: v for k, v in body.items() if k != "checksum"}
    text = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# ----------------------------------------------------------------------
# Computation
# ----------------------------------------------------------------------


def compute_table(
    N: int,
    bits: int,
    params: Optional[QuadratureParams] = None,
    jobs: Optional[int] = None,
    head: Optional[ZetaCoefficientTable] = None,
) -> ZetaCoefficientTable:
    """
    gamma_0 ... gamma_N from the Phi moments.

    With ``head`` only the entries past head.max_n are computed, using the
    head's xi(1/2) enclosure; the head's entries are kept unchanged.

    Raises:
        PrecisionExhausted: when some gamma_n is not certified positive
    """
    if N < 0 or bits < MIN_BITS:
        raise InvalidParameter(f"need N >= 0 and bits >= {MIN_BITS}")
    params = (params or QuadratureParams.from_settings()).resolved(bits)
    start = 0 if head is None else head.max_n + 1
    orders = [2 * n for n in range(start, N + 1)]
    if head is None:
        orders = sorted(set([0] + orders))
    if not orders:
        return head.truncated(N)

    moments = dict(zip(orders, moment_intervals(orders, params, bits, jobs)))
    work = bits + params.guard_bits
    with interval_precision(work):
        xi_half = moments[0] if head is None else ball_to_interval(head.xi_half)
        gammas: List[BallReal] = [] if head is None else list(head.gammas)
        for n in range(start, N + 1):
            value = iv.mpf(factorial(n)) / factorial(2 * n) * moments[2 * n] / xi_half
            if not value.a > 0:
                raise PrecisionExhausted(f"gamma_{n} is not certified positive at {bits} bits")
            gammas.append(interval_to_ball(value, bits))
        xi_ball = head.xi_half if head is not None else interval_to_ball(xi_half, bits)
    logger.info("Computed gamma_%d ... gamma_%d at %d bits", start, N, bits)
    return ZetaCoefficientTable(tuple(gammas), bits, params, xi_ball)


def gamma_table(
    N: int,
    bits: Optional[int] = None,
    params: Optional[QuadratureParams] = None,
    jobs: Optional[int] = None,
    path: Optional[Path] = None,
    use_cache: bool = True,
) -> ZetaCoefficientTable:
    """gamma_0 ... gamma_N at ``bits``; persisted to the cache unless ``use_cache`` is False."""
    bits = bits or gamma_bits()
    if not use_cache:
        return compute_table(N, bits, params, jobs)
    return load_or_extend_cache(path or cache_path(), N, bits, params, jobs)


_loaded: Dict[str, ZetaCoefficientTable] = {}


def default_table(max_n: int, bits: Optional[int] = None) -> ZetaCoefficientTable:
    """Cached table reaching at least ``max_n``, used by ZETA_RELATIVE series."""
    bits = bits or gamma_bits()
    key = str(cache_path())
    table = _loaded.get(key)
    if table is None or table.max_n < max_n or table.bits < bits:
        table = load_or_extend_cache(cache_path(), max_n, bits)
        _loaded[key] = table
    return table


# ----------------------------------------------------------------------
# Cache
# ----------------------------------------------------------------------


@contextmanager
def cache_lock(path: Path):
    lock_path = Path(str(path) + ".lock")
    try:
        lock_path.parent.mkdir(parents=True, exist_ok=True)
        handle = open(lock_path, "a")
    except OSError as exc:
        raise CacheWriteError(f"cannot open cache lock {lock_path}: {exc}") from exc
    with handle:
        try:
            fcntl.flock(handle, fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError:
            logger.info("Waiting for the gamma cache lock %s", lock_path)
            fcntl.flock(handle, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(handle, fcntl.LOCK_UN)


def read_cache(path: Path) -> Optional[ZetaCoefficientTable]:
    """
    Table stored at ``path``, or None when there is no cache file.

    Raises:
        CacheCorrupt: on unreadable JSON, an unknown version or a checksum mismatch
    """
    path = Path(path)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise CacheCorrupt(f"cannot parse {path}: {exc}") from exc
    if data.get("version") != CACHE_VERSION:
        raise CacheCorrupt(f"unsupported cache version {data.get('version')!r}")
    if data.get("checksum") != checksum(data):
        raise CacheCorrupt(f"checksum mismatch in {path}")
    try:
        return ZetaCoefficientTable.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheCorrupt(f"malformed cache {path}: {exc}") from exc


def write_cache(path: Path, table: ZetaCoefficientTable) -> None:
    path = Path(path)
    temporary = path.with_name(path.name + ".tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        temporary.write_text(json.dumps(table.to_dict(), indent=1, sort_keys=True), encoding="utf-8")
        os.replace(temporary, path)
    except OSError as exc:
        raise CacheWriteError(f"cannot write {path}: {exc}") from exc


def _compatible(cached: QuadratureParams, requested: QuadratureParams) -> bool:
    return (
        cached.cutoff == requested.cutoff
        and cached.step == requested.step
        and cached.guard_bits == requested.guard_bits
        and requested.order in (0, cached.order)
        and requested.terms in (0, cached.terms)
    )


def load_or_extend_cache(
    path: Path,
    N: int,
    bits: int,
    params: Optional[QuadratureParams] = None,
    jobs: Optional[int] = None,
) -> ZetaCoefficientTable:
    """
    Reuse, extend or recompute the cached table.

    A cached table computed with the same quadrature at >= ``bits`` is reused;
    if it is too short it is extended at its own precision, keeping earlier
    entries bit-identical. Otherwise the table is recomputed at ``bits`` and
    the cache is overwritten.
    """
    requested = params or QuadratureParams.from_settings()
    with cache_lock(path):
        cached = read_cache(path)
        if cached is not None and cached.bits >= bits and _compatible(cached.params, requested):
            if cached.max_n >= N:
                logger.info("Reusing cached gamma table (N = %d, %d bits)", cached.max_n, cached.bits)
                return cached
            logger.info("Extending cached gamma table from N = %d to N = %d", cached.max_n, N)
            table = compute_table(N, cached.bits, cached.params, jobs, head=cached)
        else:
            if cached is not None:
                logger.info("Recomputing gamma table: cache has %d bits, %d requested", cached.bits, bits)
            N = max(N, cached.max_n if cached is not None else 0)
            table = compute_table(N, bits, requested, jobs)
        write_cache(path, table)
        return table
