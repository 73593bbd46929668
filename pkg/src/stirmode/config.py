import os

from .errors import SizeLimitError

DEFAULT_MAX_N = 5000
ENV_MAX_N = "STIRMODE_MAX_N"


def max_n() -> int:
    """Largest row index callers may request; ``STIRMODE_MAX_N`` overrides."""
    raw = os.environ.get(ENV_MAX_N)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise SizeLimitError(f"{ENV_MAX_N}={raw!r} is not an integer") from None
    if value < 1:
        raise SizeLimitError(f"{ENV_MAX_N} must be positive, got {value}")
    return value
