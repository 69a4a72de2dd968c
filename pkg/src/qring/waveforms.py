"""Position and momentum radial waveforms of the ring orbitals.

The position waveform is the closed Laguerre-Gaussian form

    R_nm(r) = (1/r_eff) sqrt(n!/Gamma(n+lam+1)) e^{-z/2} z^{lam/2} L_n^lam(z),
    z = r**2 / (2 r_eff**2),

and the momentum waveform is its order-|m| Hankel transform, which has no
closed form for general ``lam`` and is evaluated by oscillation-aware
quadrature.  All momentum-space machinery works in the scale-free variable
``xi = r_eff * k`` through the kernel

    Ktil(xi) = int_0^inf e^{-z/2} z^{lam/2} L_n^lam(z) J_|m|(sqrt(2) xi sqrt(z)) dz

so that K_nm(k) = r_eff * sqrt(n!/Gamma(n+lam+1)) * Ktil(r_eff k).  The
angular factors and the constant (-i)^m phase carry no weight in any measure
computed here and are dropped throughout.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as _sp

from .model import RingParams, QuantumState, derive_scales
from .quadrature import QuadConfig, QuadratureError, _XK, _WK, _WG
from .special import laguerre

__all__ = [
    "GridDump",
    "radial_position",
    "radial_momentum",
    "qd_ground_momentum",
    "dump_grid",
    "momentum_kernel",
    "kernel_tail_coeffs",
]

_SQRT2 = math.sqrt(2.0)


def log_norm(n, lam):
    """ln of the normalization ratio N = n! / Gamma(n + lam + 1)."""
    return _sp.gammaln(n + 1) - _sp.gammaln(n + lam + 1)


def radial_position(params: RingParams, state: QuantumState, r):
    """Radial position waveform R_nm(r); accepts scalar or array r >= 0."""
    s = derive_scales(params, state)
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("radius must be non-negative")
    z = r_arr * r_arr / (2.0 * s.r_eff**2)
    half_log_n = 0.5 * log_norm(state.n, s.lam)
    with np.errstate(divide="ignore", invalid="ignore"):
        logz = np.where(z > 0, np.log(np.where(z > 0, z, 1.0)), 0.0)
        out = (
            np.exp(half_log_n - 0.5 * z + 0.5 * s.lam * logz)
            * laguerre(state.n, s.lam, z)
            / s.r_eff
        )
    if s.lam > 0:
        out = np.where(z > 0, out, 0.0)
    return float(out) if np.ndim(r) == 0 else out


def _envelope_cutoff(p, tiny=1e-18, side="high"):
    """Edge of the support of the integrand envelope u**p * exp(-u**2/2).

    Finds (coarse scan + bisection) the point beyond/below the peak where
    the envelope has dropped below ``tiny`` times its maximum, which puts
    the truncation error far below quadrature tolerance.
    """
    p = max(p, 1e-12)
    u_peak = math.sqrt(p)
    log_peak = 0.5 * p * math.log(p) - 0.5 * p
    target = log_peak + math.log(tiny)

    def logg(u):
        return p * math.log(u) - 0.5 * u * u

    if side == "high":
        hi = u_peak + 0.5
        while logg(hi) > target:
            hi += 0.5
        lo = max(u_peak, hi - 0.5)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if logg(mid) > target:
                lo = mid
            else:
                hi = mid
        return hi
    # low side: the envelope also vanishes toward u = 0
    lo, hi = 0.0, u_peak
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if logg(mid) > target:
            hi = mid
        else:
            lo = mid
    return lo


def momentum_kernel(lam, n, m_abs, xi, cfg=QuadConfig(), want_prime=False, log_scale=0.0):
    """Scale-free momentum kernel Ktil (and optionally its J'-kernel) at xi.

    Substituting u = sqrt(z) makes the Bessel argument linear in u; the
    u-axis is partitioned into panels no wider than a half oscillation
    pi / (sqrt(2) * max(xi)), each integrated with G7/K15, and the panel
    count is doubled until the summed |K-G| estimate meets tolerance.

    Parameters
    ----------
    lam, n, m_abs : radial order, principal number and |m|.
    xi : array-like of non-negative scale-free wave numbers.
    want_prime : also return the J'-kernel needed for momentum Fisher
        information, sharing the same nodes.
    log_scale : log of a constant prefactor folded into the integrand, so
        callers can keep exp(log_norm/2)-scaled kernels inside float range
        at large ``lam``.

    Returns
    -------
    (ktil, dtil, evaluations) where dtil is None unless ``want_prime``.
    """
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    p_env = lam + 2 * n + (2 if want_prime else 1)
    u_max = _envelope_cutoff(p_env)
    # The envelope also vanishes toward u = 0 (as u**(lam+1)); for large lam
    # the support detaches from the origin and panels below it are dead mass.
    u_lo = _envelope_cutoff(lam + 1.0, side="low")
    if u_lo < 0.01:
        u_lo = 0.0
    xi_max = float(xi_arr.max()) if xi_arr.size else 0.0
    width = (u_max - u_lo) / 8.0
    if xi_max > 0:
        width = min(width, math.pi / (_SQRT2 * xi_max))
    npan = max(8, int(math.ceil((u_max - u_lo) / width)))
    m_abs = int(m_abs)
    neval = 0
    for _ in range(12):
        uniform = np.linspace(u_lo, u_max, npan + 1)
        if u_lo == 0.0:
            # u**(lam+1) has a non-integer-power endpoint at u=0 that uniform
            # panels resolve only algebraically; grade the first panel
            # geometrically so its share of the error estimate is negligible.
            graded = uniform[1] * 2.0 ** np.arange(-48, 0)
            edges = np.concatenate([uniform[:1], graded, uniform[1:]])
        else:
            edges = uniform
        c = 0.5 * (edges[:-1] + edges[1:])
        h = 0.5 * (edges[1:] - edges[:-1])
        u = c[:, None] + h[:, None] * _XK  # (npan, 15), all interior so u > 0
        base = (
            2.0
            * np.exp(log_scale - 0.5 * u * u + (lam + 1.0) * np.log(u))
            * laguerre(n, lam, u * u)
        )
        arg = _SQRT2 * u[:, :, None] * xi_arr  # (npan, 15, nxi)
        jm = _sp.jv(m_abs, arg)
        neval += arg.size
        yk = base[:, :, None] * jm
        vk = h[:, None] * np.einsum("k,pkx->px", _WK, yk)
        vg = h[:, None] * np.einsum("k,pkx->px", _WG, yk[:, 1::2, :])
        err = np.abs(vk - vg).sum(axis=0)
        # The per-panel |K-G| estimates bottom out at the roundoff of the
        # weighted sums, which scales with the L1 quadrature mass of the
        # integrand; floor the convergence target accordingly.
        l1 = (h[:, None] * np.einsum("k,pkx->px", _WK, np.abs(yk))).sum(axis=0).max()
        ktil = vk.sum(axis=0)
        dtil = None
        if want_prime:
            if m_abs == 0:
                jprime = -_sp.jv(1, arg)
            else:
                jprime = 0.5 * (_sp.jv(m_abs - 1, arg) - _sp.jv(m_abs + 1, arg))
            neval += arg.size
            yd = (u * base)[:, :, None] * jprime
            dk = h[:, None] * np.einsum("k,pkx->px", _WK, yd)
            dg = h[:, None] * np.einsum("k,pkx->px", _WG, yd[:, 1::2, :])
            err = err + np.abs(dk - dg).sum(axis=0)
            l1 = max(
                l1,
                (h[:, None] * np.einsum("k,pkx->px", _WK, np.abs(yd))).sum(axis=0).max(),
            )
            dtil = dk.sum(axis=0)
        scale = max(float(np.max(np.abs(ktil))), 1e-3)
        floor = 256.0 * np.finfo(float).eps * float(l1)
        if float(err.max()) <= max(cfg.abs_tol * scale, cfg.rel_tol * scale, floor):
            if np.ndim(xi) == 0:
                return float(ktil[0]), (None if dtil is None else float(dtil[0])), neval
            return ktil, dtil, neval
        npan *= 2
    raise QuadratureError(
        f"momentum kernel not converged (lam={lam}, n={n}, |m|={m_abs}, "
        f"max xi={xi_max:g}, panels={npan})"
    )


def _log_rgamma(x):
    """(sign, log magnitude) of 1/Gamma(x) for any real x, poles giving sign 0."""
    if x > 0:
        return 1.0, -float(_sp.gammaln(x))
    # Reflection: 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi.
    if x == round(x):  # exact pole
        return 0.0, -math.inf
    s = math.sin(math.pi * x)
    return math.copysign(1.0, s), float(_sp.gammaln(1.0 - x)) + math.log(abs(s)) - math.log(math.pi)


def kernel_tail_coeffs(lam, n, m_abs, prime=False, log_scale=0.0):
    """Leading algebraic large-xi tail of the momentum kernel.

    For non-integer lam the kernel decays algebraically,
    Ktil(xi) ~ A0 * xi**(-mu) + A1 * xi**(-mu-2) with mu = lam + 2 (one order
    higher for the J'-kernel); both coefficients vanish identically in the
    Gaussian (lam = |m| + even) cases, via the reciprocal-gamma poles.  All
    gamma algebra is done in log space so large ``lam`` stays in range;
    ``log_scale`` matches the kernel's folded prefactor.

    Returns (A0, A1, mu).
    """
    m_abs = int(m_abs)
    log_binom0 = float(_sp.gammaln(n + lam + 1) - _sp.gammaln(n + 1) - _sp.gammaln(lam + 1))
    c0_sign, c0_log = 1.0, math.log(2.0) + log_binom0
    # c1 = 2 * (-binom0/2 - binom1) with binom1 = C(n+lam, n-1); both terms negative.
    binom1_rel = n / (lam + 1.0) if n >= 1 else 0.0  # binom1 / binom0
    c1_sign, c1_log = -1.0, math.log(2.0) + log_binom0 + math.log(0.5 + binom1_rel)

    def hankel_power(order, mu):
        # int_0^inf t**(mu-1) J_order(s t) dt = 2**(mu-1) s**(-mu)
        #   * Gamma((order+mu)/2) / Gamma((order-mu)/2 + 1), as (sign, log).
        rs, rl = _log_rgamma(0.5 * (order - mu) + 1.0)
        lg = (
            (mu - 1.0) * math.log(2.0)
            - mu * 0.5 * math.log(2.0)
            + float(_sp.gammaln(0.5 * (order + mu)))
            + rl
        )
        return rs, lg

    def combine(sign_c, log_c, terms):
        # terms: list of (coeff, sign, log) combined linearly, then scaled.
        acc = 0.0
        ref = max((lg for _, s, lg in terms if s != 0.0), default=-math.inf)
        if ref == -math.inf:
            return 0.0
        for coeff, s, lg in terms:
            if s != 0.0:
                acc += coeff * s * math.exp(lg - ref)
        if acc == 0.0:
            return 0.0
        return sign_c * math.copysign(1.0, acc) * math.exp(
            log_c + ref + math.log(abs(acc)) + log_scale
        )

    if not prime:
        mu = lam + 2.0
        a0 = combine(c0_sign, c0_log, [(1.0, *hankel_power(m_abs, mu))])
        a1 = combine(c1_sign, c1_log, [(1.0, *hankel_power(m_abs, mu + 2.0))])
    else:
        mu = lam + 3.0
        if m_abs == 0:
            a0 = combine(-c0_sign, c0_log, [(1.0, *hankel_power(1, mu))])
            a1 = combine(-c1_sign, c1_log, [(1.0, *hankel_power(1, mu + 2.0))])
        else:
            a0 = combine(
                0.5 * c0_sign,
                c0_log,
                [(1.0, *hankel_power(m_abs - 1, mu)), (-1.0, *hankel_power(m_abs + 1, mu))],
            )
            a1 = combine(
                0.5 * c1_sign,
                c1_log,
                [
                    (1.0, *hankel_power(m_abs - 1, mu + 2.0)),
                    (-1.0, *hankel_power(m_abs + 1, mu + 2.0)),
                ],
            )
    return a0, a1, mu


def radial_momentum(params: RingParams, state: QuantumState, k, cfg=QuadConfig()):
    """Radial momentum waveform K_nm(k) by oscillatory quadrature."""
    s = derive_scales(params, state)
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 0):
        raise ValueError("wave number must be non-negative")
    ktil, _, _ = momentum_kernel(
        s.lam,
        state.n,
        abs(state.m),
        s.r_eff * k_arr,
        cfg,
        log_scale=0.5 * log_norm(state.n, s.lam),
    )
    out = s.r_eff * np.asarray(ktil)
    return float(out) if np.ndim(k) == 0 else out


def qd_ground_momentum(params: RingParams, m, k):
    """Closed Gaussian form of K_0m for the flux-free dot (a = 0, nu = 0).

    Serves as the exact oracle against :func:`radial_momentum`.
    """
    if params.a != 0 or params.nu != 0:
        raise ValueError("closed momentum form requires a = 0 and nu = 0")
    s = derive_scales(params, QuantumState(0, int(m)))
    m_abs = abs(int(m))
    k_arr = np.asarray(k, dtype=float)
    x = s.r_eff * k_arr
    out = (
        s.r_eff
        * 2.0 ** (0.5 * m_abs + 1.0)
        / math.sqrt(math.factorial(m_abs))
        * x**m_abs
        * np.exp(-x * x)
    )
    return float(out) if np.ndim(k) == 0 else out


@dataclass(frozen=True)
class GridDump:
    """Tabulated waveform on a strictly increasing axis grid."""

    axis: str  # "r" or "k"
    axis_values: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.axis_values) != len(self.values):
            raise ValueError("axis and value arrays must have equal length")
        if np.any(np.diff(self.axis_values) <= 0):
            raise ValueError("axis grid must be strictly increasing")


def dump_grid(
    params: RingParams,
    state: QuantumState,
    space,
    start,
    stop,
    count,
    log_spaced=False,
    cfg=QuadConfig(),
):
    """Tabulate the position ("position"/"r") or momentum ("momentum"/"k") waveform."""
    if count < 1:
        raise ValueError("grid needs a positive point count")
    if log_spaced:
        if start <= 0:
            raise ValueError("log-spaced grid requires start > 0")
        grid = np.geomspace(float(start), float(stop), int(count))
    else:
        grid = np.linspace(float(start), float(stop), int(count))
    space = {"r": "position", "k": "momentum"}.get(space, space)
    if space == "position":
        vals = np.atleast_1d(radial_position(params, state, grid))
        axis = "r"
    elif space == "momentum":
        vals = np.atleast_1d(radial_momentum(params, state, grid, cfg))
        axis = "k"
    else:
        raise ValueError(f"unknown space {space!r}")
    meta = {
        "a": params.a,
        "omega0": params.omega0,
        "omega_c": params.omega_c,
        "nu": params.nu,
        "n": state.n,
        "m": state.m,
        "space": space,
        "log_spaced": bool(log_spaced),
    }
    return GridDump(axis=axis, axis_values=grid, values=vals, metadata=meta)
