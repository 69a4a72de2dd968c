"""Real-valued special functions used by the ring model and its integrands.

All functions are pure and accept either scalars or numpy arrays in their
real argument; scalar input yields a Python float.  The gamma-family wrappers
exist so that every closed form in the package goes through a single audited
surface with explicit domain checks.
"""

import numpy as np
from scipy import special as _sp

__all__ = [
    "ln_gamma",
    "digamma",
    "polygamma1",
    "laguerre",
    "bessel_j",
    "bessel_j_prime",
]


def _check_positive(x, name):
    if np.any(np.asarray(x) <= 0.0):
        raise ValueError(f"{name} requires a strictly positive argument, got {x!r}")


def _maybe_scalar(x, out):
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def ln_gamma(x):
    """Natural log of the Gamma function, ln Γ(x), for x > 0."""
    _check_positive(x, "ln_gamma")
    return _maybe_scalar(x, _sp.gammaln(x))


def digamma(x):
    """Digamma function ψ(x) = d ln Γ(x)/dx for x > 0."""
    _check_positive(x, "digamma")
    return _maybe_scalar(x, _sp.psi(x))


def polygamma1(x):
    """Trigamma function ψ'(x) for x > 0."""
    _check_positive(x, "polygamma1")
    # scipy.polygamma returns 0-d arrays; normalize shape handling here.
    return _maybe_scalar(x, np.asarray(_sp.polygamma(1, x)))


def laguerre(n, lam, z):
    """Generalized Laguerre polynomial L_n^lam(z).

    Evaluated by the stable three-term upward recurrence in the degree,

        (k+1) L_{k+1} = (2k + lam + 1 - z) L_k - (k + lam) L_{k-1},

    which is well conditioned for the moderate degrees and non-negative
    arguments used throughout this package.

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    lam : float
        Order, lam > -1 (non-integer values are fine).
    z : float or ndarray
        Argument(s).
    """
    if n < 0 or n != int(n):
        raise ValueError(f"laguerre degree must be a non-negative integer, got {n}")
    if lam <= -1.0:
        raise ValueError(f"laguerre order must exceed -1, got {lam}")
    z_arr = np.asarray(z, dtype=float)
    prev = np.zeros_like(z_arr)
    cur = np.ones_like(z_arr)
    for k in range(int(n)):
        prev, cur = cur, ((2 * k + lam + 1 - z_arr) * cur - (k + lam) * prev) / (k + 1)
    return _maybe_scalar(z, cur)


def bessel_j(m, x):
    """Bessel function of the first kind J_m(x) for integer order m >= 0."""
    if m < 0 or m != int(m):
        raise ValueError(f"bessel_j order must be a non-negative integer, got {m}")
    return _maybe_scalar(x, _sp.jv(int(m), x))


def bessel_j_prime(m, x):
    """Derivative J'_m(x) via the two-term identity J'_m = (J_{m-1} - J_{m+1})/2.

    The identity form (with J_{-1} = -J_1) is used instead of numerical
    differencing so the result stays accurate inside oscillatory quadrature.
    """
    if m < 0 or m != int(m):
        raise ValueError(f"bessel_j_prime order must be a non-negative integer, got {m}")
    m = int(m)
    if m == 0:
        out = -_sp.jv(1, np.asarray(x, dtype=float))
    else:
        out = 0.5 * (_sp.jv(m - 1, x) - _sp.jv(m + 1, x))
    return _maybe_scalar(x, out)
