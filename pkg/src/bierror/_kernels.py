"""Scalar and array kernels compiled with numba when available.

Everything here is written against ``math`` and plain numpy arrays so that the
identical source runs uncompiled when numba is disabled. Distributions are
passed around as a packed float64 array ``s = [kind, loc, scale, df1, df2,
ncp]`` (see :func:`bierror.distributions.DistributionSpec.packed`).
"""

from __future__ import annotations

import math

import numpy as np

from ._jit import jit, prange

NORMAL = 0
STUDENT_T = 1
FISHER_F = 2
CAUCHY = 3
LAPLACE = 4
LOGISTIC = 5

_SQRT2 = math.sqrt(2.0)
_FPMIN = 1e-300
_CF_EPS = 1e-15
_CF_MAXIT = 10000
_POISSON_TAIL = 1e-13

# SplitMix64 constants.
GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_TWO_M53 = 2.0**-53


# ---------------------------------------------------------------------------
# special functions


@jit
def betacf(a, b, x):
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            break
    return h


@jit
def incbeta2(a, b, x, y):
    """I_x(a, b) given both ``x`` and ``y = 1 - x`` (callers often know ``y`` exactly)."""
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    lbt = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log(y)
    bt = math.exp(lbt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * betacf(a, b, x) / a
    return 1.0 - bt * betacf(b, a, y) / b


@jit
def ndtri(p):
    """Standard normal quantile, Wichura's AS241 (PPND16)."""
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                    + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
                  + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
                + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                    + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
                  + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
                + 4.2313330701600911252e1) * r + 1.0)
        return q * num / den
    r = p if q < 0.0 else 1.0 - p
    if r <= 0.0:
        return -math.inf if q < 0.0 else math.inf
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
                  + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
                + 4.63033784615654529590e0) * r + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
                + 2.05319162663775882187e0) * r + 1.0)
    else:
        r -= 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
                + 5.46378491116411436990e0) * r + 6.65790464350110377720e0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
    val = num / den
    return -val if q < 0.0 else val


# ---------------------------------------------------------------------------
# distributions


@jit
def _beta_logpdf(a, b, x, y):
    out = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    out = -out
    if a != 1.0:
        out += (a - 1.0) * math.log(x)
    if b != 1.0:
        out += (b - 1.0) * math.log(y)
    return out


@jit
def _f_pdf(d1, d2, ncp, x):
    if x < 0.0:
        return 0.0
    a = 0.5 * d1
    b = 0.5 * d2
    den = d1 * x + d2
    y = d1 * x / den
    yc = d2 / den
    jac = d1 * d2 / (den * den)
    h = 0.5 * ncp
    w = math.exp(-h)
    cum = 0.0
    total = 0.0
    j = 0
    while True:
        aj = a + j
        if x == 0.0:
            if aj < 1.0:
                return math.inf
            term = math.exp(_beta_logpdf(aj, b, 1.0, 1.0)) if aj == 1.0 else 0.0
        else:
            term = math.exp(_beta_logpdf(aj, b, y, yc))
        total += w * term
        cum += w
        if ncp == 0.0 or cum > 1.0 - _POISSON_TAIL or j > 100000:
            break
        j += 1
        w *= h / j
    return total * jac


@jit
def _f_cdf(d1, d2, ncp, x):
    if x <= 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    a = 0.5 * d1
    b = 0.5 * d2
    den = d1 * x + d2
    y = d1 * x / den
    yc = d2 / den
    if ncp == 0.0:
        return incbeta2(a, b, y, yc)
    h = 0.5 * ncp
    w = math.exp(-h)
    cum = 0.0
    total = 0.0
    j = 0
    while True:
        total += w * incbeta2(a + j, b, y, yc)
        cum += w
        if cum > 1.0 - _POISSON_TAIL or j > 100000:
            break
        j += 1
        w *= h / j
    return total


@jit
def _f_sf(d1, d2, ncp, x):
    if x <= 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    a = 0.5 * d1
    b = 0.5 * d2
    den = d1 * x + d2
    y = d1 * x / den
    yc = d2 / den
    if ncp == 0.0:
        return incbeta2(b, a, yc, y)
    h = 0.5 * ncp
    w = math.exp(-h)
    total = 0.0
    j = 0
    while True:
        total += w * incbeta2(b, a + j, yc, y)
        # each beta term is at most one, so the Poisson weight left over
        # (bounded by a geometric series once past the mode) bounds the rest
        if j + 2.0 > h:
            rest = w * h / (j + 1.0) / (1.0 - h / (j + 2.0))
            if rest <= 1e-16 * total or rest < 1e-300 or j > 100000:
                break
        j += 1
        w *= h / j
    return min(total, 1.0)


@jit
def pdf(s, x):
    kind = int(s[0])
    if kind == FISHER_F:
        return _f_pdf(s[3], s[4], s[5], x)
    loc = s[1]
    scale = s[2]
    z = (x - loc) / scale
    if kind == NORMAL:
        return math.exp(-0.5 * z * z) / (scale * math.sqrt(2.0 * math.pi))
    if kind == STUDENT_T:
        nu = s[3]
        lg = math.lgamma(0.5 * (nu + 1.0)) - math.lgamma(0.5 * nu) - 0.5 * math.log(nu * math.pi)
        return math.exp(lg - 0.5 * (nu + 1.0) * math.log1p(z * z / nu)) / scale
    if kind == CAUCHY:
        return 1.0 / (math.pi * scale * (1.0 + z * z))
    if kind == LAPLACE:
        return 0.5 * math.exp(-abs(z)) / scale
    # logistic
    e = math.exp(-abs(z))
    return e / (scale * (1.0 + e) * (1.0 + e))


@jit
def _std_cdf(kind, nu, z):
    """CDF of the standardised symmetric family at z."""
    if kind == NORMAL:
        return 0.5 * math.erfc(-z / _SQRT2)
    if kind == STUDENT_T:
        if math.isinf(z):
            return 1.0 if z > 0 else 0.0
        t2 = z * z
        tail = 0.5 * incbeta2(0.5 * nu, 0.5, nu / (nu + t2), t2 / (nu + t2))
        return 1.0 - tail if z > 0.0 else tail
    if kind == CAUCHY:
        # atan(-1/z) branch keeps relative accuracy deep in the left tail
        if z < -1.0:
            return math.atan(-1.0 / z) / math.pi
        return 0.5 + math.atan(z) / math.pi
    if kind == LAPLACE:
        if z < 0.0:
            return 0.5 * math.exp(z)
        return 1.0 - 0.5 * math.exp(-z)
    # logistic
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


@jit
def cdf(s, x):
    kind = int(s[0])
    if kind == FISHER_F:
        return _f_cdf(s[3], s[4], s[5], x)
    return _std_cdf(kind, s[3], (x - s[1]) / s[2])


@jit
def sf(s, x):
    """1 - CDF without cancellation: reflection for the symmetric families,
    the complementary beta series for F."""
    kind = int(s[0])
    if kind == FISHER_F:
        return _f_sf(s[3], s[4], s[5], x)
    return _std_cdf(kind, s[3], -(x - s[1]) / s[2])


@jit
def _initial_guess(s, p):
    kind = int(s[0])
    loc = s[1]
    scale = s[2]
    if kind == NORMAL or kind == STUDENT_T:
        return loc + scale * ndtri(p)
    if kind == CAUCHY:
        return loc + scale * math.tan(math.pi * (p - 0.5))
    if kind == LAPLACE:
        if p < 0.5:
            return loc + scale * math.log(2.0 * p)
        return loc - scale * math.log(2.0 * (1.0 - p))
    if kind == LOGISTIC:
        return loc + scale * math.log(p / (1.0 - p))
    return 1.0


@jit
def quantile(s, p):
    """Safeguarded Newton/bisection on the CDF, started from a family-specific guess."""
    kind = int(s[0])
    g = _initial_guess(s, p)
    if kind == FISHER_F:
        lo = 0.0
        hi = 1.0
        while cdf(s, hi) < p and hi < 1e300:
            lo = hi
            hi *= 2.0
        if not (lo < g < hi):
            g = 0.5 * (lo + hi)
    else:
        step = s[2]
        lo = g - step
        while cdf(s, lo) > p:
            step *= 2.0
            lo = g - step
        step = s[2]
        hi = g + step
        while cdf(s, hi) < p:
            step *= 2.0
            hi = g + step
    x = g
    for _ in range(400):
        fx = cdf(s, x) - p
        if fx == 0.0:
            return x
        if fx < 0.0:
            lo = x
        else:
            hi = x
        if hi - lo <= 4e-16 * max(abs(lo), abs(hi)) or hi - lo < 1e-300:
            return 0.5 * (lo + hi)
        d = pdf(s, x)
        xn = math.nan
        if d > 0.0 and math.isfinite(d):
            xn = x - fx / d
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 2e-16 * abs(x):
            return xn
        x = xn
    return x


@jit
def pdf_array(s, xs):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = pdf(s, xs[i])
    return out


@jit
def cdf_array(s, xs):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = cdf(s, xs[i])
    return out


@jit
def sf_array(s, xs):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = sf(s, xs[i])
    return out


@jit
def quantile_array(s, ps):
    out = np.empty(ps.shape[0])
    for i in range(ps.shape[0]):
        out[i] = quantile(s, ps[i])
    return out


@jit
def error_rates(s0, sa, upper, c):
    """(alpha, beta) of the rule "reject when the statistic is beyond c"."""
    if upper:
        return sf(s0, c), cdf(sa, c)
    return cdf(s0, c), sf(sa, c)


@jit
def error_rates_array(s0, sa, upper, cs):
    alpha = np.empty(cs.shape[0])
    beta = np.empty(cs.shape[0])
    for i in range(cs.shape[0]):
        a, b = error_rates(s0, sa, upper, cs[i])
        alpha[i] = a
        beta[i] = b
    return alpha, beta


# ---------------------------------------------------------------------------
# counter-based RNG (SplitMix64 finaliser over a 64-bit counter)


@jit
def mix64(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@jit
def unit_from_bits(z):
    """Map 64 random bits to the open interval (0, 1)."""
    return (float(z >> _S11) + 0.5) * _TWO_M53


@jit
def child_key(key, index):
    return mix64(key + np.uint64(index + 1) * GOLDEN)


# ---------------------------------------------------------------------------
# Monte Carlo cell


@jit
def replicate(rkey, n, mu, delta_hat, log_odds, nhst_cv, as_stated, buf):
    """Judge one sample; returns (bi_error_reject, nhst_reject, redraws)."""
    attempt = 0
    mean = 0.0
    sd = 0.0
    while True:
        key = child_key(rkey, attempt)
        total = 0.0
        for j in range(n):
            v = mu + ndtri(unit_from_bits(child_key(key, j)))
            buf[j] = v
            total += v
        mean = total / n
        ss = 0.0
        for j in range(n):
            dev = buf[j] - mean
            ss += dev * dev
        sd = math.sqrt(ss / (n - 1))
        if sd > 0.0:
            break
        attempt += 1
    t_stat = mean * math.sqrt(n) / sd
    if as_stated:
        bi = mean > 0.5 * delta_hat
    else:
        bi = t_stat > 0.5 * delta_hat + sd * sd * log_odds / delta_hat
    return (1 if bi else 0), (1 if t_stat > nhst_cv else 0), attempt


@jit(parallel=True)
def simulate_cell(cell_key, n, mu, reps, delta_hat, log_odds, nhst_cv, as_stated):
    """Count rejections of both rules over ``reps`` normal(mu, 1) samples of size n.

    Replication ``r`` uses the stream ``child(child(cell_key, r), attempt)``;
    ``attempt`` only advances when a sample has zero standard deviation.
    Returns (bi_error_rejections, nhst_rejections, redraws).
    """
    bi = np.zeros(reps, np.int64)
    nh = np.zeros(reps, np.int64)
    redraws = np.zeros(reps, np.int64)
    for r in prange(reps):
        buf = np.empty(n)
        b, h, a = replicate(child_key(cell_key, r), n, mu, delta_hat, log_odds, nhst_cv, as_stated, buf)
        bi[r] = b
        nh[r] = h
        redraws[r] = a
    return bi.sum(), nh.sum(), redraws.sum()
