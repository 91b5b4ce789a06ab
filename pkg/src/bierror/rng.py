"""Counter-based, splittable random streams.

A stream is identified by ``(seed, stream)`` where ``stream`` is a tuple of
non-negative integers. Its key is obtained by folding the indices through the
SplitMix64 finaliser::

    key = mix64(seed)
    for i in stream:
        key = mix64(key + (i + 1) * 0x9E3779B97F4A7C15)

and the j-th 64-bit output (j = 0, 1, ...) is ``mix64(key + (j + 1) *
0x9E3779B97F4A7C15)``, i.e. SplitMix64 started from ``key``. Outputs are
mapped to doubles in the open interval (0, 1) by ``((bits >> 11) + 0.5) *
2**-53``. Since every variate is a pure function of (seed, stream, j), results
do not depend on execution order or thread count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _numpy_kernels as _nk

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64_int(z: int) -> int:
    """SplitMix64 finaliser on a Python int (mod 2**64)."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_key(seed: int, stream: tuple[int, ...] = ()) -> int:
    key = mix64_int(seed)
    for i in stream:
        key = mix64_int(key + ((i + 1) * _GOLDEN & _MASK))
    return key


@dataclass(frozen=True)
class RngState:
    """An immutable handle on one random stream."""

    seed: int
    stream: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        stream = tuple(int(i) for i in self.stream)
        if any(not 0 <= i <= _MASK for i in stream):
            raise ValueError("stream indices must be 64-bit unsigned integers")
        object.__setattr__(self, "stream", stream)

    @property
    def key(self) -> int:
        return derive_key(self.seed, self.stream)

    def substream(self, *indices: int) -> "RngState":
        return RngState(self.seed, self.stream + tuple(indices))

    def bits(self, k: int, offset: int = 0) -> np.ndarray:
        counters = np.arange(offset + 1, offset + k + 1, dtype=np.uint64) * np.uint64(_GOLDEN)
        return _nk.mix64(np.uint64(self.key) + counters)

    def uniforms(self, k: int, offset: int = 0) -> np.ndarray:
        """``k`` doubles in (0, 1), starting at counter ``offset``."""
        return _nk.unit_from_bits(self.bits(k, offset))

    def normals(self, k: int, offset: int = 0) -> np.ndarray:
        """Standard normal variates by inverse CDF (AS241) of :meth:`uniforms`."""
        return _nk.ndtri(self.uniforms(k, offset))
