"""Pure-numpy fallback kernels. Same contracts as the compiled extension."""

import numpy as np

_RESCALE = 1e250


def numerov_count(w, h, u1, u2):
    """Forward Numerov sweep over the whole grid, counting interior sign changes.

    w[i] is the coefficient of u in u'' + w u = 0 at grid point i; the sweep
    starts from u[1] = u1, u[2] = u2 (u[0] = 0 is the origin boundary).
    """
    M = len(w) - 1
    f = 1.0 + (h * h / 12.0) * np.asarray(w)
    nodes = 1 if (u1 < 0.0) != (u2 < 0.0) and u1 != 0.0 else 0
    up, u = u1, u2
    for i in range(2, M):
        un = ((12.0 - 10.0 * f[i]) * u - f[i - 1] * up) / f[i + 1]
        # sign test instead of un*u < 0: the product can overflow in deep
        # forbidden regions before the rescale guard fires
        if (un < 0.0 and u > 0.0) or (un > 0.0 and u < 0.0):
            nodes += 1
        up, u = u, un
        if u > _RESCALE or u < -_RESCALE:
            up *= 1.0 / _RESCALE
            u *= 1.0 / _RESCALE
    return nodes


def numerov_forward(w, h, u1, u2, stop):
    """Forward Numerov sweep; returns u[0..stop] with u[0] = 0."""
    f = 1.0 + (h * h / 12.0) * np.asarray(w)
    u = np.zeros(stop + 1)
    u[1] = u1
    if stop >= 2:
        u[2] = u2
    for i in range(2, stop):
        u[i + 1] = ((12.0 - 10.0 * f[i]) * u[i] - f[i - 1] * u[i - 1]) / f[i + 1]
    return u


def numerov_backward(w, h, u_end, u_end_minus, stop):
    """Backward Numerov sweep from the outer boundary; returns u[stop..M]."""
    M = len(w) - 1
    f = 1.0 + (h * h / 12.0) * np.asarray(w)
    u = np.zeros(M - stop + 1)
    u[-1] = u_end
    if len(u) >= 2:
        u[-2] = u_end_minus
    for i in range(M - 1, stop, -1):
        j = i - stop
        u[j - 1] = ((12.0 - 10.0 * f[i]) * u[j] - f[i + 1] * u[j + 1]) / f[i - 1]
    return u


def continue_sqrt(p, seed):
    """Branch-continued square root of complex samples p along a path.

    The first value is aligned with ``seed``; subsequent signs flip whenever the
    principal branch jumps between adjacent samples.
    """
    w = np.sqrt(np.asarray(p, dtype=np.complex128))
    if len(w) == 0:
        return w
    flips = np.where(np.abs(w[1:] - w[:-1]) > np.abs(w[1:] + w[:-1]), -1.0, 1.0)
    signs = np.concatenate(([1.0], np.cumprod(flips)))
    if abs(w[0] - seed) > abs(w[0] + seed):
        signs = -signs
    return signs * w
