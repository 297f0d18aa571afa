"""Deterministic, named random number streams.

Every source of randomness in a run is a separate stream derived from the
run seed and a name, e.g. ``(seed, "replica", 3)`` or ``(seed, "data", 17)``.
Streams are backed by numpy's counter-based :py:class:`numpy.random.Philox`
bit generator keyed with a SHA-256 digest of the name, so the numbers a
stream produces depend only on the seed and the name, never on the order in
which streams are created or on which thread consumes them.
"""

import hashlib
from typing import Union

import numpy as np

__all__ = ["stream_key", "stream"]

StreamName = Union[str, int]


def stream_key(seed: int, *names: StreamName) -> int:
    """Map a seed and a stream name to a 128-bit Philox key.

    Args:
        seed: The run seed. Must be non-negative.
        names: One or more name components identifying the stream.
    Returns:
        An integer key in ``[0, 2**128)``.
    """
    if seed < 0:
        raise ValueError(f"seed must be non-negative, was {seed}")
    if not names:
        raise ValueError("stream name must be non-empty")
    text = ":".join(str(part) for part in (seed, *names))
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:16], "big", signed=False)


def stream(seed: int, *names: StreamName) -> np.random.Generator:
    """Create the generator for a named stream.

    Two calls with the same arguments return generators that produce
    identical sequences.

    Args:
        seed: The run seed.
        names: One or more name components identifying the stream.
    Returns:
        A fresh generator positioned at the start of the stream.
    """
    return np.random.Generator(np.random.Philox(key=stream_key(seed, *names)))
