"""Counter-based random streams.

Every stream is Philox4x64-10 (numpy's ``Philox`` bit generator) keyed by the
128-bit pair ``(seed, stream)`` with the counter starting at zero. Only the raw
64-bit outputs are used; doubles and Gaussians are derived here with fixed
transforms so that streams are identical across platforms and numpy versions:

* uniform in [0, 1): ``(u >> 11) * 2**-53``
* standard normal: Marsaglia's polar method on consecutive uniform pairs.
  Pairs are drawn in fixed-size batches (``n // 2 + 8`` pairs for ``n``
  outstanding values); accepted values beyond the request are dropped.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def derive_seed(master: int, *indices: int) -> int:
    """Deterministic child seed for a work item such as (template, sample)."""
    if len(indices) > 4:
        raise ValueError("at most 4 indices")
    counter = [int(i) & MASK64 for i in indices] + [0] * (4 - len(indices))
    bg = np.random.Philox(key=int(master) & MASK64, counter=counter)
    return int(bg.random_raw(1)[0])


class CounterRNG:
    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed) & MASK64
        self.stream = int(stream) & MASK64
        self._bg = np.random.Philox(key=self.seed | (self.stream << 64))

    def raw(self, n: int) -> np.ndarray:
        return np.asarray(self._bg.random_raw(n), dtype=np.uint64)

    def uniform(self, n: int) -> np.ndarray:
        return (self.raw(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def normal(self, n: int) -> np.ndarray:
        out = np.empty(n)
        filled = 0
        while filled < n:
            need = n - filled
            # acceptance rate is pi/4; draw a few extra pairs
            pairs = self.uniform(2 * (need // 2 + 8)).reshape(-1, 2) * 2.0 - 1.0
            s = pairs[:, 0] ** 2 + pairs[:, 1] ** 2
            ok = (s > 0.0) & (s < 1.0)
            v, s = pairs[ok], s[ok]
            z = (v * np.sqrt(-2.0 * np.log(s) / s)[:, None]).ravel()
            take = min(need, z.size)
            out[filled:filled + take] = z[:take]
            filled += take
        return out

    def complex_normal(self, shape) -> np.ndarray:
        """Standard complex Gaussian entries, E|z|^2 = 1."""
        shape = tuple(np.atleast_1d(shape)) if not isinstance(shape, tuple) else shape
        size = int(np.prod(shape))
        g = self.normal(2 * size).reshape(size, 2)
        return ((g[:, 0] + 1j * g[:, 1]) / np.sqrt(2.0)).reshape(shape)
