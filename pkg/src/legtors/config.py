"""Runtime knobs read from the environment."""

import os

DEFAULT_PRECISION_BITS = 200
DEFAULT_MEMO_CAP = 256
DEFAULT_SEED = 20240601


def precision_bits() -> int:
    raw = os.environ.get("LEGTORS_PRECISION_BITS")
    if not raw:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError("LEGTORS_PRECISION_BITS must be at least 53")
    return bits
