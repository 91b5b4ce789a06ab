"""Vectorised numpy versions of the hot kernels.

Used when numba is disabled (``BIERR_NUMBA=0``) and as a cross-check of the
compiled path in the test suite. Results match :mod:`bierror._kernels` to the
last bit for the RNG and to a few ulps for floating-point reductions.
"""

from __future__ import annotations

import numpy as np

from ._kernels import GOLDEN

_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _horner(coefs, r):
    out = np.full_like(r, coefs[-1])
    for c in coefs[-2::-1]:
        out = out * r + c
    return out


def mix64(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def child_keys(keys: np.ndarray, index) -> np.ndarray:
    # ndmin=1 keeps the arithmetic on arrays, which wrap silently mod 2**64
    idx = np.array(index, dtype=np.uint64, ndmin=1) + np.uint64(1)
    return mix64(np.array(keys, dtype=np.uint64, ndmin=1) + idx * GOLDEN)


def unit_from_bits(z: np.ndarray) -> np.ndarray:
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def ndtri(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    q = p - 0.5
    out = np.empty_like(p)
    central = np.abs(q) <= 0.425
    if central.any():
        qc = q[central]
        r = 0.180625 - qc * qc
        out[central] = qc * _horner(_A, r) / _horner(_B, r)
    tail = ~central
    if tail.any():
        qt = q[tail]
        r = np.where(qt < 0.0, p[tail], 1.0 - p[tail])
        with np.errstate(divide="ignore"):
            r = np.sqrt(-np.log(r))
        near = r <= 5.0
        val = np.empty_like(r)
        rn = r[near] - 1.6
        val[near] = _horner(_C, rn) / _horner(_D, rn)
        rf = r[~near] - 5.0
        val[~near] = _horner(_E, rf) / _horner(_F, rf)
        out[tail] = np.where(qt < 0.0, -val, val)
    return out


def _draw(keys: np.ndarray, n: int, mu: float) -> np.ndarray:
    counters = np.arange(1, n + 1, dtype=np.uint64) * GOLDEN
    bits = mix64(keys[:, None] + counters[None, :])
    return mu + ndtri(unit_from_bits(bits))


def simulate_cell(cell_key, n, mu, reps, delta_hat, log_odds, nhst_cv, as_stated):
    """numpy twin of :func:`bierror._kernels.simulate_cell`."""
    rkeys = child_keys(np.uint64(cell_key), np.arange(reps, dtype=np.uint64))
    xs = _draw(child_keys(rkeys, 0), n, mu)
    mean = xs.mean(axis=1)
    sd = xs.std(axis=1, ddof=1)
    redraws = 0
    for r in np.flatnonzero(sd <= 0.0):
        attempt = 0
        while sd[r] <= 0.0:
            attempt += 1
            row = _draw(child_keys(rkeys[r:r + 1], attempt), n, mu)[0]
            mean[r] = row.mean()
            sd[r] = row.std(ddof=1)
        redraws += attempt
    t_stat = mean * np.sqrt(n) / sd
    if as_stated:
        bi = mean > 0.5 * delta_hat
    else:
        bi = t_stat > 0.5 * delta_hat + sd * sd * log_odds / delta_hat
    nh = t_stat > nhst_cv
    return int(bi.sum()), int(nh.sum()), redraws
