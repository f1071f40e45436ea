"""Wright and Mainardi functions on the negative real axis, with the
discrete fractional-calculus operators used by the diffusion solvers.

The Wright function

    W(z; rho, beta) = sum_{k>=0} z^k / (k! Gamma(rho*k + beta))

is evaluated here for z <= 0 and -1 < rho < 0, the regime in which it
decays like a stretched exponential and the Taylor series suffers
catastrophic cancellation.  Three evaluation routes are combined:

* a compensated-summation double-precision series for small and moderate
  arguments,
* the same series re-summed in escalated working precision when the
  cancellation ratio (largest summand over result) exceeds what double
  precision can absorb,
* the stretched-exponential asymptotic profile for the three parameter
  families the diffusion kernels use (beta = 1 - nu, 1, 1 - 2*nu with
  nu = -rho), once the required working precision would exceed the
  escalation ceiling.  The asymptotic branch is calibrated against the
  escalated series at the hand-off point, so the two routes join without
  a jump at the seam.

The Mainardi function is the Wright instance M_nu(x) = W(-x; -nu, 1-nu);
this sign convention makes M_{1/2}(x) = exp(-x^2/4)/sqrt(pi) and
W(-x, -1/2, 1) = erfc(x/2), which the tests pin down.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy import special as _sc
from scipy.special import erf, erfc  # re-exported: accurate to ~1 ulp

__all__ = [
    "AccuracyError",
    "AsymptoticParams",
    "EvalPolicy",
    "FractionalOrder",
    "WrightIndex",
    "caputo_l1",
    "erf",
    "erfc",
    "l1_weights",
    "mainardi",
    "mainardi_deriv",
    "recip_gamma",
    "rl_integral",
    "wright",
]

_EPS = float(np.finfo(float).eps)
_TINY = float(np.finfo(float).tiny)
_LN10 = math.log(10.0)

# The escalated series needs roughly 2*Y/ln(10) digits at stretched decay
# exponent Y (the cancellation ratio is ~e^{2Y}).  Beyond _Y_SEAM the
# asymptotic profile takes over; _DPS_CAP bounds the working precision so
# a prediction miss cannot run away.
_Y_SEAM = 113.0
_DPS_CAP = 160
_SERIES_WINDOW = 8  # convergence is judged on max |term| over this window


class AccuracyError(ArithmeticError):
    """Requested accuracy cannot be certified for these parameters.

    Raised when series cancellation exceeds the working-precision ceiling
    and no asymptotic profile applies to the given (rho, beta), or when
    the series fails to converge within ``EvalPolicy.max_terms``.
    """


@dataclass(frozen=True)
class FractionalOrder:
    """Time-fractional order ``alpha`` with similarity index ``nu = alpha/2``."""

    alpha: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        if not (0.0 < alpha <= 1.0) or not math.isfinite(alpha):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def nu(self) -> float:
        return 0.5 * self.alpha


@dataclass(frozen=True)
class WrightIndex:
    """Parameter pair (rho, beta) of a Wright function, with rho in (-1, 0)."""

    rho: float
    beta: float

    def __post_init__(self) -> None:
        rho = float(self.rho)
        beta = float(self.beta)
        if not (-1.0 < rho < 0.0):
            raise ValueError(f"rho must lie in (-1, 0), got {self.rho!r}")
        if not math.isfinite(beta):
            raise ValueError(f"beta must be finite, got {self.beta!r}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "beta", beta)

    @property
    def family(self) -> str | None:
        """Which kernel family this index belongs to, if any.

        ``"mainardi"`` for beta = 1 + rho (the function M_nu itself),
        ``"integral"`` for beta = 1 (the tail mass of M_nu), and
        ``"derivative"`` for beta = 1 + 2*rho (minus the M_nu derivative).
        Only these families have an asymptotic evaluation route.
        """
        tol = 1e-12
        if abs(self.beta - 1.0) <= tol:
            return "integral"
        if abs(self.beta - (1.0 + self.rho)) <= tol:
            return "mainardi"
        if abs(self.beta - (1.0 + 2.0 * self.rho)) <= tol:
            return "derivative"
        return None


@dataclass(frozen=True)
class EvalPolicy:
    """Accuracy/effort budget for Wright-function evaluation.

    Parameters
    ----------
    rel_tol:
        Target relative accuracy of the returned value.
    max_terms:
        Hard cap on the number of series terms per evaluation.
    cancellation_limit:
        Largest admissible ratio of the biggest summand magnitude to the
        result magnitude before the double-precision series result is
        rejected and the evaluation escalates.
    crossover:
        ``"auto"`` (series, escalated series, asymptotic profile in that
        order), ``"series-only"`` (never use the asymptotic branch), or
        ``"asymptotic-only"`` (diagnostic: always use the raw profile).
    """

    rel_tol: float = 1e-12
    max_terms: int = 20000
    cancellation_limit: float = 1e12
    crossover: str = "auto"

    def __post_init__(self) -> None:
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if not self.cancellation_limit >= 1.0:
            raise ValueError("cancellation_limit must be at least 1")
        if self.crossover not in ("auto", "series-only", "asymptotic-only"):
            raise ValueError(f"unknown crossover strategy {self.crossover!r}")


DEFAULT_POLICY = EvalPolicy()


@dataclass(frozen=True)
class AsymptoticParams:
    """Constants of the large-argument behavior at index nu in (0, 1).

    ``a_nu`` and ``b_nu`` are the prefactor and rate of the Mainardi
    stretched exponential

        M_nu(r) ~ a_nu * (nu*r)^p * exp(-b_nu * (nu*r)^q),
        q = 1/(1-nu),  p = (nu - 1/2)/(1-nu),

    and ``exp_rate`` is the rate of the plain exponential envelope
    |W(-x, -nu, 1)| < K*exp(-exp_rate*x) of the tail-mass family.
    """

    nu: float
    a_nu: float
    b_nu: float
    exp_rate: float

    @classmethod
    def for_nu(cls, nu: float) -> "AsymptoticParams":
        nu = float(nu)
        if not (0.0 < nu < 1.0):
            raise ValueError(f"nu must lie in (0, 1), got {nu!r}")
        a = 1.0 / math.sqrt(2.0 * math.pi * (1.0 - nu))
        b = (1.0 - nu) / nu
        rate = (1.0 - nu) * nu ** (nu / (1.0 - nu))
        return cls(nu=nu, a_nu=a, b_nu=b, exp_rate=rate)

    @property
    def stretch_power(self) -> float:
        """Exponent q of the stretched exponential."""
        return 1.0 / (1.0 - self.nu)

    @property
    def algebraic_power(self) -> float:
        """Exponent p of the algebraic prefactor."""
        return (self.nu - 0.5) / (1.0 - self.nu)

    def decay_exponent(self, x):
        """Stretched decay exponent Y(x) = b_nu * (nu*x)^q, overflow-safe."""
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            lny = np.log(self.b_nu) + self.stretch_power * np.log(self.nu * x)
            return np.where(x > 0.0, np.exp(lny), 0.0)


def recip_gamma(x):
    """Reciprocal gamma function 1/Gamma(x), exactly 0 at the poles."""
    x = np.asarray(x, dtype=float)
    out = _sc.rgamma(x)
    return out if out.ndim else float(out)


# --------------------------------------------------------------------------
# series evaluation
# --------------------------------------------------------------------------


def _series_double(z: np.ndarray, rho: float, beta: float, max_terms: int):
    """Compensated double-precision Taylor series, vectorized over z.

    Returns ``(value, err_bound, max_term, converged)``.  ``err_bound`` is a
    conservative absolute-error bound built from the largest summand; lanes
    whose window of recent terms never fell below the rounding floor of that
    bound (or that ran into term magnitudes outside double range) come back
    with ``converged`` False and must escalate.
    """
    s = np.zeros_like(z)
    comp = np.zeros_like(z)
    p = np.ones_like(z)  # z^k / k!
    maxt = np.zeros_like(z)
    wmax = np.zeros_like(z)
    done = np.zeros(z.shape, dtype=bool)
    k = 0
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        while k < max_terms and not done.all():
            rg = float(_sc.rgamma(rho * k + beta))
            if not math.isfinite(rg):
                # 1/Gamma grows without bound along the negative axis; any
                # lane still running here has terms outside double range.
                break
            t = p * rg
            t[done] = 0.0
            at = np.abs(t)
            np.maximum(maxt, at, out=maxt)
            np.maximum(wmax, at, out=wmax)
            tmp = s + t
            comp += np.where(np.abs(s) >= at, (s - tmp) + t, (t - tmp) + s)
            s = tmp
            k += 1
            if k % _SERIES_WINDOW == 0 and k > _SERIES_WINDOW:
                # a whole window of terms below the rounding floor of the
                # sum means the tail, which decays faster than geometrically
                # from here on, is numerically spent
                done |= wmax <= 0.05 * _EPS * np.maximum(maxt, _TINY)
                done |= p == 0.0  # underflowed: later terms are exactly 0
                wmax[:] = 0.0
            p = p * (z / k)
    value = s + comp
    err = maxt * _EPS * (4.0 + k / 8.0)
    converged = done & np.isfinite(value)
    return value, err, maxt, converged


class _RgammaTables:
    """Per-(rho, beta) tables of 1/Gamma(rho*k + beta) in working precision.

    The argument is formed in arbitrary precision: rho*k rounded in double
    would shift near-pole arguments by enough to poison the escalated sum.
    Tables are keyed by a precision band so one table serves all requests
    at or below its band.
    """

    _BAND = 40

    def __init__(self) -> None:
        self._tables: dict[tuple[float, float, int], list] = {}
        self._lock = threading.Lock()

    def get(self, rho: float, beta: float, n: int, dps: int) -> list:
        band = ((dps + self._BAND - 1) // self._BAND) * self._BAND
        key = (rho, beta, band)
        with self._lock:
            if len(self._tables) > 256:
                self._tables.clear()
            table = self._tables.setdefault(key, [])
            if len(table) < n:
                with mpmath.workdps(band + 10):
                    r = mpmath.mpf(rho)
                    b = mpmath.mpf(beta)
                    for k in range(len(table), n):
                        table.append(mpmath.rgamma(r * k + b))
            return table


_RGAMMA_TABLES = _RgammaTables()


def _series_mp(z: float, rho: float, beta: float, dps: int, max_terms: int):
    """Escalated series at ``dps`` working digits.

    Returns ``(value, log10_ratio, converged)`` where ``log10_ratio`` is the
    observed cancellation ratio; the caller re-runs at higher precision when
    ``dps`` turns out to be short of it.
    """
    table = _RGAMMA_TABLES.get(rho, beta, min(256, max_terms), dps)
    with mpmath.workdps(dps):
        s = mpmath.mpf(0)
        p = mpmath.mpf(1)
        maxt = mpmath.mpf(0)
        zz = mpmath.mpf(z)
        floor_scale = mpmath.mpf(10) ** (-dps - 8)
        wmax = mpmath.mpf(0)
        k = 0
        converged = False
        while k < max_terms:
            if k >= len(table):
                table = _RGAMMA_TABLES.get(
                    rho, beta, min(max_terms, 2 * len(table)), dps
                )
            t = p * table[k]
            at = abs(t)
            if at > maxt:
                maxt = at
            if at > wmax:
                wmax = at
            s += t
            k += 1
            if k % _SERIES_WINDOW == 0 and k > _SERIES_WINDOW:
                if wmax <= floor_scale * max(maxt, abs(s)):
                    converged = True
                    break
                wmax = mpmath.mpf(0)
            p *= zz / k
        if maxt > 0 and s != 0:
            log10_ratio = float(mpmath.log10(maxt / abs(s)))
        else:
            log10_ratio = 0.0 if maxt == 0 else float("inf")
        return float(s), log10_ratio, converged


def _escalated_scalar(
    z: float, rho: float, beta: float, policy: EvalPolicy, y_pred: float
) -> float:
    """Escalate one point through rising working precision."""
    tol_digits = max(1, int(math.ceil(-math.log10(policy.rel_tol))))
    dps = int(2.0 * min(y_pred, _Y_SEAM + 40.0) / _LN10) + tol_digits + 12
    dps = max(dps, 25)
    for _ in range(3):
        dps = min(dps, _DPS_CAP)
        value, log10_ratio, converged = _series_mp(
            z, rho, beta, dps, policy.max_terms
        )
        if not converged:
            raise AccuracyError(
                f"series for W({z!r}; {rho!r}, {beta!r}) did not converge "
                f"within {policy.max_terms} terms"
            )
        needed = int(log10_ratio) + tol_digits + 6
        if dps >= needed:
            return value
        if needed > _DPS_CAP:
            raise AccuracyError(
                f"cancellation ratio ~1e{int(log10_ratio)} for "
                f"W({z!r}; {rho!r}, {beta!r}) exceeds the working-precision "
                "ceiling and no asymptotic profile applies"
            )
        dps = needed + 10
    raise AccuracyError(
        f"working precision failed to settle for W({z!r}; {rho!r}, {beta!r})"
    )


# --------------------------------------------------------------------------
# asymptotic branch
# --------------------------------------------------------------------------


def _asym_raw(x: np.ndarray, rho: float, beta: float, family: str) -> np.ndarray:
    """Leading-order large-x profile for the three kernel families.

    Computed in log space; values beyond double range underflow to exact 0,
    which is below any absolute tolerance the caller can express.
    """
    nu = -rho
    par = AsymptoticParams.for_nu(nu)
    q = par.stretch_power
    palg = par.algebraic_power
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        lnw = np.log(nu * x)
        lny = math.log(par.b_nu) + q * lnw
        y = np.exp(lny)
        if family == "integral":
            # tail mass of the profile: integrates the stretched exponential
            # exactly because (p+1)/q = 1/2 for every nu
            c = par.a_nu * (1.0 - nu) / (nu * math.sqrt(par.b_nu)) * math.sqrt(math.pi)
            root = np.sqrt(y)
            val = c * _sc.erfcx(root) * np.exp(-y)
        elif family == "mainardi":
            val = np.exp(math.log(par.a_nu) + palg * lnw - y)
        elif family == "derivative":
            # minus the derivative of the mainardi profile
            factor = nu * (par.b_nu * q * np.exp((q - 1.0) * lnw) - palg * np.exp(-lnw))
            val = factor * np.exp(math.log(par.a_nu) + palg * lnw - y)
        else:  # pragma: no cover - guarded by callers
            raise AccuracyError(f"no asymptotic profile for beta={beta!r}")
    return np.where(np.isfinite(val), val, 0.0)


@lru_cache(maxsize=512)
def _seam_factor(rho: float, beta: float, family: str) -> float:
    """Ratio exact/asymptotic at the series-to-profile hand-off point.

    Multiplying the profile by this constant removes the O(1/Y) offset at
    the seam, so the two branches agree there to escalated-series accuracy
    and the evaluated function stays monotone across the hand-off.
    """
    nu = -rho
    par = AsymptoticParams.for_nu(nu)
    x_seam = (_Y_SEAM / par.b_nu) ** (1.0 - nu) / nu
    policy = EvalPolicy(rel_tol=1e-13, max_terms=200000)
    exact = _escalated_scalar(-x_seam, rho, beta, policy, _Y_SEAM)
    approx = float(_asym_raw(np.asarray(x_seam), rho, beta, family))
    if not (math.isfinite(exact) and approx > 0.0):
        return 1.0
    return exact / approx


# --------------------------------------------------------------------------
# public evaluators
# --------------------------------------------------------------------------


def _predict_decay(x: np.ndarray, rho: float) -> np.ndarray:
    """Stretched decay exponent Y(x) predicted from rho alone (any beta)."""
    return AsymptoticParams.for_nu(-rho).decay_exponent(x)


def _coerce_index(idx) -> WrightIndex:
    if isinstance(idx, WrightIndex):
        return idx
    rho, beta = idx
    return WrightIndex(float(rho), float(beta))


def wright(z, idx, policy: EvalPolicy | None = None):
    """Wright function W(z; rho, beta) on the non-positive real axis.

    Parameters
    ----------
    z:
        Scalar or array, every entry <= 0.
    idx:
        ``WrightIndex`` or ``(rho, beta)`` pair with rho in (-1, 0).
    policy:
        Evaluation budget; defaults to ``EvalPolicy()``.

    Returns
    -------
    float or ndarray shaped like ``z``.

    Raises
    ------
    ValueError
        If any z is positive or the index is out of range.
    AccuracyError
        If the accuracy target cannot be certified (see ``EvalPolicy``).
    """
    index = _coerce_index(idx)
    policy = policy or DEFAULT_POLICY
    rho, beta = index.rho, index.beta
    z_arr = np.asarray(z, dtype=float)
    scalar = z_arr.ndim == 0
    flat = np.atleast_1d(z_arr).ravel().copy()
    if flat.size and np.nanmax(flat) > 0.0:
        raise ValueError("wright is defined here for z <= 0 only")
    if np.isnan(flat).any():
        raise ValueError("z contains NaN")

    out = np.empty_like(flat)
    family = index.family

    if policy.crossover == "asymptotic-only":
        if family is None:
            raise AccuracyError(
                f"no asymptotic profile applies to (rho, beta)=({rho}, {beta})"
            )
        out[:] = _asym_raw(-flat, rho, beta, family)
        if scalar:
            return float(out[0])
        return out.reshape(z_arr.shape)

    y_pred = _predict_decay(-flat, rho)
    far = y_pred > _Y_SEAM
    if policy.crossover == "series-only":
        far[:] = False

    near = ~far
    if near.any():
        zn = flat[near]
        value, err, maxt, converged = _series_double(zn, rho, beta, policy.max_terms)
        scale = np.maximum(np.abs(value), _TINY)
        accept = (
            converged
            & (err <= policy.rel_tol * scale)
            & (maxt <= policy.cancellation_limit * scale)
        )
        if not accept.all():
            idx_bad = np.flatnonzero(~accept)
            yn = y_pred[near]
            for j in idx_bad:
                value[j] = _escalated_scalar(
                    float(zn[j]), rho, beta, policy, float(yn[j])
                )
        out[near] = value

    if far.any():
        if family is None:
            raise AccuracyError(
                "cancellation beyond the working-precision ceiling and no "
                f"asymptotic profile applies to (rho, beta)=({rho}, {beta})"
            )
        kappa = _seam_factor(rho, beta, family)
        out[far] = kappa * _asym_raw(-flat[far], rho, beta, family)

    if scalar:
        return float(out[0])
    return out.reshape(z_arr.shape)


def mainardi(x, nu: float, policy: EvalPolicy | None = None):
    """Mainardi function M_nu(x) = W(-x; -nu, 1-nu) for x >= 0, nu in (0, 1)."""
    nu = float(nu)
    if not (0.0 < nu < 1.0):
        raise ValueError(f"nu must lie in (0, 1), got {nu!r}")
    x_arr = np.asarray(x, dtype=float)
    if x_arr.size and np.nanmin(x_arr) < 0.0:
        raise ValueError("mainardi is defined for x >= 0")
    return wright(-x_arr if x_arr.ndim else -float(x_arr), (-nu, 1.0 - nu), policy)


def mainardi_deriv(x, nu: float, policy: EvalPolicy | None = None):
    """Derivative dM_nu/dx, via the index-shift identity: -W(-x; -nu, 1-2nu)."""
    nu = float(nu)
    if not (0.0 < nu < 1.0):
        raise ValueError(f"nu must lie in (0, 1), got {nu!r}")
    x_arr = np.asarray(x, dtype=float)
    if x_arr.size and np.nanmin(x_arr) < 0.0:
        raise ValueError("mainardi_deriv is defined for x >= 0")
    val = wright(-x_arr if x_arr.ndim else -float(x_arr), (-nu, 1.0 - 2.0 * nu), policy)
    return -val


# --------------------------------------------------------------------------
# discrete fractional operators
# --------------------------------------------------------------------------


def l1_weights(alpha: float, n: int) -> np.ndarray:
    """First ``n`` L1 history weights b_k = (k+1)^(1-alpha) - k^(1-alpha)."""
    k = np.arange(n, dtype=float)
    return (k + 1.0) ** (1.0 - alpha) - k ** (1.0 - alpha)


def caputo_l1(samples, alpha: float, dt: float) -> np.ndarray:
    """L1 discretization of the Caputo derivative of order alpha in (0, 1).

    ``samples`` holds u(t_m) on the uniform grid t_m = m*dt along axis 0
    (extra axes ride along).  Entry m of the result approximates
    (D^alpha u)(t_m) with the piecewise-linear quadrature of the defining
    integral, accurate to O(dt^(2-alpha)) for smooth u; entry 0 is 0 by
    convention.
    """
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"invalid alpha for caputo_l1: {alpha!r} not in (0, 1)")
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    u = np.asarray(samples, dtype=float)
    if u.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    m_levels = u.shape[0] - 1
    du = np.diff(u, axis=0)
    b = l1_weights(alpha, m_levels)
    c = dt ** (-alpha) / math.gamma(2.0 - alpha)
    out = np.zeros_like(u)
    for m in range(1, m_levels + 1):
        out[m] = c * np.tensordot(b[:m][::-1], du[:m], axes=(0, 0))
    return out


def rl_integral(samples, order: float, dt: float) -> np.ndarray:
    """Riemann-Liouville fractional integral I^order on uniform samples.

    Product-trapezoid rule: the integrand u is replaced by its piecewise
    linear interpolant and the convolution with (t-tau)^(order-1)/Gamma(order)
    is integrated exactly on each cell.  Entry 0 is 0.
    """
    order = float(order)
    if not (0.0 < order < 1.0):
        raise ValueError(f"invalid order for rl_integral: {order!r} not in (0, 1)")
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    u = np.asarray(samples, dtype=float)
    if u.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    n = u.shape[0] - 1
    out = np.zeros_like(u)
    inv_gamma = 1.0 / math.gamma(order)
    mu = order
    for m in range(1, n + 1):
        j = np.arange(m, dtype=float)
        s1 = (m - j) * dt  # t_m - t_j
        s2 = (m - j - 1.0) * dt
        a_mom = (s1**mu - s2**mu) / mu
        b_mom = (s1 ** (mu + 1.0) - s2 ** (mu + 1.0)) / (mu + 1.0)
        w_right = (s1 * a_mom - b_mom) / dt
        w_left = a_mom - w_right
        out[m] = inv_gamma * (
            np.tensordot(w_left, u[:m], axes=(0, 0))
            + np.tensordot(w_right, u[1 : m + 1], axes=(0, 0))
        )
    return out
