"""Numba kernels for the coordinate-descent solver and the ARCH noise chain.

These are internal: the public solver lives in :mod:`lassoridge.lasso` and
recomputes all certificates from the raw data, so kernel-side caching can
never silently corrupt a reported solution.  ``nogil=True`` lets replications
run on a thread pool.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _gap_gram(beta, grad, xty, yty_n, lam):
    """Duality gap from Gram-cached quantities.

    grad must equal xty - G @ beta.  Returns (gap, primal) where the dual
    point is the residual scaled into the feasible set.
    """
    p = beta.shape[0]
    bx = 0.0
    bg = 0.0
    l1 = 0.0
    gmax = 0.0
    for j in range(p):
        bx += beta[j] * xty[j]
        bg += beta[j] * grad[j]
        l1 += abs(beta[j])
        g = abs(grad[j])
        if g > gmax:
            gmax = g
    rss_n = yty_n - bx - bg
    if rss_n < 0.0:
        rss_n = 0.0
    primal = 0.5 * rss_n + lam * l1
    rty_n = yty_n - bx
    scale = 1.0
    if gmax > lam and gmax > 0.0:
        scale = lam / gmax
    dual = scale * rty_n - 0.5 * scale * scale * rss_n
    gap = primal - dual
    if gap < 0.0:
        gap = 0.0
    return gap, primal


@njit(cache=True, nogil=True)
def cd_gram(gram, xty, yty_n, lam, tol, gap_rtol, max_sweeps):
    """Cyclic coordinate descent with covariance (Gram) updates.

    Parameters are the Gram matrix X'X/n, the correlations X'y/n, y'y/n, the
    penalty, the relative coefficient tolerance, the relative duality-gap
    tolerance, and a sweep cap.  Returns (beta, sweeps, gap, converged).
    """
    p = xty.shape[0]
    beta = np.zeros(p)
    grad = xty.copy()
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        max_change = 0.0
        max_abs = 0.0
        for j in range(p):
            gjj = gram[j, j]
            bj = beta[j]
            rho = grad[j] + gjj * bj
            if rho > lam:
                bn = (rho - lam) / gjj
            elif rho < -lam:
                bn = (rho + lam) / gjj
            else:
                bn = 0.0
            if bn != bj:
                step = bn - bj
                row = gram[j]
                for k in range(p):
                    grad[k] -= row[k] * step
                beta[j] = bn
                a = abs(step)
                if a > max_change:
                    max_change = a
            ab = abs(bn)
            if ab > max_abs:
                max_abs = ab
        if max_change <= tol * max(1.0, max_abs):
            gap, primal = _gap_gram(beta, grad, xty, yty_n, lam)
            if gap <= gap_rtol * max(1.0, primal):
                return beta, sweeps, gap, True
    gap, primal = _gap_gram(beta, grad, xty, yty_n, lam)
    return beta, sweeps, gap, gap <= gap_rtol * max(1.0, primal)


@njit(cache=True, nogil=True)
def cd_naive(x, y, lam, tol, gap_rtol, max_sweeps):
    """Cyclic coordinate descent with residual updates (no Gram cache).

    Preferred for one-off solves where forming X'X/n would dominate the cost.
    x should be Fortran-ordered so column slices are contiguous.
    Returns (beta, sweeps, gap, converged).
    """
    n, p = x.shape
    beta = np.zeros(p)
    resid = y.copy()
    colsq = np.empty(p)
    for j in range(p):
        s = 0.0
        for i in range(n):
            s += x[i, j] * x[i, j]
        colsq[j] = s / n
    sweeps = 0
    gap = np.inf
    while sweeps < max_sweeps:
        sweeps += 1
        max_change = 0.0
        max_abs = 0.0
        for j in range(p):
            s = 0.0
            for i in range(n):
                s += x[i, j] * resid[i]
            bj = beta[j]
            rho = s / n + colsq[j] * bj
            if rho > lam:
                bn = (rho - lam) / colsq[j]
            elif rho < -lam:
                bn = (rho + lam) / colsq[j]
            else:
                bn = 0.0
            if bn != bj:
                step = bn - bj
                for i in range(n):
                    resid[i] -= x[i, j] * step
                beta[j] = bn
                a = abs(step)
                if a > max_change:
                    max_change = a
            ab = abs(bn)
            if ab > max_abs:
                max_abs = ab
        if max_change <= tol * max(1.0, max_abs):
            gmax = 0.0
            for j in range(p):
                s = 0.0
                for i in range(n):
                    s += x[i, j] * resid[i]
                a = abs(s) / n
                if a > gmax:
                    gmax = a
            rss = 0.0
            rty = 0.0
            l1 = 0.0
            for i in range(n):
                rss += resid[i] * resid[i]
                rty += resid[i] * y[i]
            for j in range(p):
                l1 += abs(beta[j])
            rss_n = rss / n
            rty_n = rty / n
            primal = 0.5 * rss_n + lam * l1
            scale = 1.0
            if gmax > lam and gmax > 0.0:
                scale = lam / gmax
            dual = scale * rty_n - 0.5 * scale * scale * rss_n
            gap = primal - dual
            if gap < 0.0:
                gap = 0.0
            if gap <= gap_rtol * max(1.0, primal):
                return beta, sweeps, gap, True
    return beta, sweeps, gap, False


@njit(cache=True, nogil=True)
def arch_noise(z, sigma, a, b):
    """ARCH-style martingale difference chain.

    eps_i = tau_i * z_i with tau_i^2 = sigma^2 * min(1, a + b eps_{i-1}^2 /
    sigma^2) and eps_0 = 0, so the conditional variance never exceeds
    sigma^2.
    """
    n = z.shape[0]
    eps = np.empty(n)
    s2 = sigma * sigma
    prev = 0.0
    for i in range(n):
        ratio = a + b * prev * prev / s2
        if ratio > 1.0:
            ratio = 1.0
        prev = sigma * np.sqrt(ratio) * z[i]
        eps[i] = prev
    return eps
