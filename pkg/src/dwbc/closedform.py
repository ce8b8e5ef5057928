"""Closed-form evaluations of the domain-wall partition functions.

Four formulas, each an independent route to values the enumerators also
produce: a permutation sum over n! terms for the elliptic SOS model, the
matching trigonometric permutation sums for the dynamical SOS and
six-vertex models, and the Izergin determinant for the six-vertex model.
Permutations are always iterated in lexicographic order, so sums are
reproducible bit for bit; the optional parallel mode splits the same
ordering into disjoint ranges and combines partial sums in range order.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from itertools import islice, permutations
from math import ceil, factorial

import numpy as np
from scipy.linalg import lu_factor

from .errors import DegenerateParameter, InvalidParameter, SizeCap
from .rmatrix import EllipticParams, TrigParams
from .theta import ThetaContext, require_off_lattice, theta

FACTORIAL_CAP = 9
_COND_WARN = 1e12


def _perm_sum(n, term, parallel=False):
    """Sum term(sigma) over all permutations of range(n), lexicographically."""
    if not parallel or n < 4:
        return sum(term(sig) for sig in permutations(range(n)))
    total = factorial(n)
    workers = 8
    chunk = max(1, ceil(total / (workers * 4)))
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]

    def part(rg):
        return sum(term(sig)
                   for sig in islice(permutations(range(n)), rg[0], rg[1]))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(part, ranges), 0j)


def _inversions(sig):
    n = len(sig)
    for l in range(n):
        for m in range(l + 1, n):
            if sig[l] > sig[m]:
                yield sig[l], sig[m]


def z_sos_elliptic(ctx: ThetaContext, p: EllipticParams,
                   cap: int = FACTORIAL_CAP, parallel: bool = False) -> complex:
    """Elliptic SOS domain-wall partition function as a permutation sum.

    With th = theta(. | tau), 1-based indices and sigma running over all
    permutations of {1..n}:

        Z = prod_{k>m} th(v_k - v_m - hbar) / th(v_k - v_m)
            * sum_sigma  prod_{l<l', sigma(l)>sigma(l')}
                             th(v_sig(l) - v_sig(l') + hbar)
                           / th(v_sig(l) - v_sig(l') - hbar)
                         * prod_{k<m} th(u_k - v_sig(m))
                         * prod_{k>m} th(u_k - v_sig(m) + hbar)
                         * prod_m th(u_m - v_sig(m) - lam - (m-1) hbar)
                                  * th(hbar) / th(-lam - (m-1) hbar)

    The expression is regular at u_i = v_j (no such denominators appear),
    symmetric in the u's and in the v's, and obeys the standard recursion
    at u_n = v_n - hbar; the test suite checks all three.
    """
    p.validate(ctx)
    n = p.n
    if n > cap:
        raise SizeCap(f"n = {n} exceeds the permutation-sum cap {cap} (n! terms)")
    u, v, lam, hbar = p.u, p.v, p.lam, p.hbar
    for k in range(n):
        for m in range(k):
            require_off_lattice(ctx, v[k] - v[m], f"v[{k + 1}] - v[{m + 1}]")

    pref = 1.0 + 0j
    for k in range(n):
        for m in range(k):
            pref *= theta(ctx, v[k] - v[m] - hbar) / theta(ctx, v[k] - v[m])
    th_h = theta(ctx, hbar)
    tminus = [theta(ctx, -lam - m * hbar) for m in range(n)]

    def term(sig):
        t = 1.0 + 0j
        for a, b in _inversions(sig):
            d = v[a] - v[b]
            t *= theta(ctx, d + hbar) / theta(ctx, d - hbar)
        for m in range(n):
            vm = v[sig[m]]
            for k in range(m):
                t *= theta(ctx, u[k] - vm)
            for k in range(m + 1, n):
                t *= theta(ctx, u[k] - vm + hbar)
            t *= theta(ctx, u[m] - vm - lam - m * hbar) * th_h / tminus[m]
        return t

    return pref * _perm_sum(n, term, parallel)


def recursion_factor(ctx: ThetaContext, p: EllipticParams) -> complex:
    """Proportionality factor relating sizes n and n-1 at u_n = v_n - hbar:

        theta(lam + n hbar) theta(hbar) / theta(lam + (n-1) hbar)
        * prod_{m<n} theta(v_n - v_m - hbar) theta(u_m - v_n).
    """
    n = p.n
    if n < 2:
        raise InvalidParameter("the recursion relates sizes n and n-1; need n >= 2")
    p.validate(ctx)
    out = theta(ctx, p.lam + n * p.hbar) * theta(ctx, p.hbar) \
        / theta(ctx, p.lam + (n - 1) * p.hbar)
    for m in range(n - 1):
        out *= theta(ctx, p.v[n - 1] - p.v[m] - p.hbar) \
            * theta(ctx, p.u[m] - p.v[n - 1])
    return out


def _guard_distinct(values, label, q=None):
    """Raise when a rational denominator of the trigonometric formulas is
    near-degenerate: coinciding parameters, or q^(-1) x_i = q x_j."""
    scale = max(1.0, max(abs(x) for x in values))
    n = len(values)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if abs(values[i] - values[j]) < 1e-10 * scale:
                raise DegenerateParameter(
                    f"{label}[{i + 1}] - {label}[{j + 1}] = "
                    f"{values[i] - values[j]} is degenerate (denominator vanishes)")
            if q is not None and abs(values[i] / q - q * values[j]) < 1e-10 * scale:
                raise DegenerateParameter(
                    f"{label}[{i + 1}]/q - q*{label}[{j + 1}] = "
                    f"{values[i] / q - q * values[j]} is degenerate "
                    f"(denominator vanishes)")


def z_izergin(p: TrigParams) -> complex:
    """Six-vertex domain-wall partition function, Izergin determinant form:

        Z = (q - 1/q)^n prod_m w_m
            * prod_{i,j} (z_i - w_j)(q z_i - w_j / q)
            / prod_{i>j} (z_i - z_j)(w_j - w_i)
            * det || 1 / ((z_i - w_j)(q z_i - w_j / q)) ||

    The determinant is computed from a partially pivoted LU factorisation;
    a RuntimeWarning is emitted when the matrix condition number exceeds
    1e12, since digits are then lost to near-coinciding parameters.
    """
    p.validate()
    n = p.n
    z, w, q = p.z, p.w, p.q
    _guard_distinct(z, "z")
    _guard_distinct(w, "w")
    scale = max(1.0, max(abs(x) for x in z + w))
    for i in range(n):
        for j in range(n):
            if abs(z[i] - w[j]) < 1e-10 * scale:
                raise DegenerateParameter(
                    f"z[{i + 1}] - w[{j + 1}] = {z[i] - w[j]} is degenerate "
                    f"(determinant entry pole)")
            if abs(q * z[i] - w[j] / q) < 1e-10 * scale:
                raise DegenerateParameter(
                    f"q*z[{i + 1}] - w[{j + 1}]/q = {q * z[i] - w[j] / q} is "
                    f"degenerate (determinant entry pole)")

    mat = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            mat[i, j] = 1.0 / ((z[i] - w[j]) * (q * z[i] - w[j] / q))
    cond = np.linalg.cond(mat)
    if cond > _COND_WARN:
        warnings.warn(
            f"Izergin matrix condition number {cond:.3e} exceeds {_COND_WARN:.0e}; "
            f"the determinant value may have lost most significant digits",
            RuntimeWarning, stacklevel=2)
    lu, piv = lu_factor(mat)
    det = complex(np.prod(np.diag(lu)))
    if int(np.sum(piv != np.arange(n))) % 2:
        det = -det

    pref = (q - 1.0 / q) ** n
    for wm in w:
        pref *= wm
    num = 1.0 + 0j
    for i in range(n):
        for j in range(n):
            num *= (z[i] - w[j]) * (q * z[i] - w[j] / q)
    den = 1.0 + 0j
    for i in range(n):
        for j in range(i):
            den *= (z[i] - z[j]) * (w[j] - w[i])
    return pref * num / den * det


def z_6v_sum(p: TrigParams, cap: int = FACTORIAL_CAP,
             parallel: bool = False) -> complex:
    """Six-vertex domain-wall partition function as a permutation sum:

        Z = (q - 1/q)^n prod_m w_m
            * prod_{i>j} (w_i/q - q w_j) / (w_i - w_j)
            * sum_sigma  prod_{i<j, sigma(i)>sigma(j)}
                             (q w_sig(i) - w_sig(j)/q) / (w_sig(i)/q - q w_sig(j))
                         * prod_{i>k} (q z_i - w_sig(k)/q)
                         * prod_{i<k} (z_i - w_sig(k))
    """
    p.validate()
    n = p.n
    if n > cap:
        raise SizeCap(f"n = {n} exceeds the permutation-sum cap {cap} (n! terms)")
    z, w, q = p.z, p.w, p.q
    _guard_distinct(w, "w", q=q)

    pref = (q - 1.0 / q) ** n
    for wm in w:
        pref *= wm
    for i in range(n):
        for j in range(i):
            pref *= (w[i] / q - q * w[j]) / (w[i] - w[j])

    def term(sig):
        t = 1.0 + 0j
        for a, b in _inversions(sig):
            t *= (q * w[a] - w[b] / q) / (w[a] / q - q * w[b])
        for k in range(n):
            wk = w[sig[k]]
            for i in range(k + 1, n):
                t *= q * z[i] - wk / q
            for i in range(k):
                t *= z[i] - wk
        return t

    return pref * _perm_sum(n, term, parallel)


def z_trig_sos(p: TrigParams, cap: int = FACTORIAL_CAP,
               parallel: bool = False) -> complex:
    """Trigonometric dynamical SOS partition function as a permutation sum:

        Z = prod_{k>m} (w_k/q - q w_m) / (w_k - w_m)
            * sum_sigma  prod_{l<l', sigma(l)>sigma(l')}
                             (q w_sig(l) - w_sig(l')/q) / (w_sig(l)/q - q w_sig(l'))
                         * prod_{k>m} (q z_k - w_sig(m)/q)
                         * prod_{k<m} (z_k - w_sig(m))
                         * prod_m (z_m - w_sig(m) mu q^(2(m-1)))
                                  * (q - 1/q) / (1 - mu q^(2(m-1)))

    Sending mu -> inf reproduces the six-vertex sum; substituting
    z = e^(2 pi i u), w = e^(2 pi i v), q = e^(pi i hbar), mu = e^(2 pi i lam)
    makes it the Im(tau) -> inf limit of the elliptic formula up to the
    factor prod_{k,j} 2 pi i e^(pi i (u_k + v_j)).
    """
    if p.mu is None:
        raise InvalidParameter("the trigonometric SOS partition sum needs mu")
    p.validate()
    n = p.n
    if n > cap:
        raise SizeCap(f"n = {n} exceeds the permutation-sum cap {cap} (n! terms)")
    z, w, q, mu = p.z, p.w, p.q, p.mu
    _guard_distinct(w, "w", q=q)

    pref = 1.0 + 0j
    for k in range(n):
        for m in range(k):
            pref *= (w[k] / q - q * w[m]) / (w[k] - w[m])
    qk = [mu * q ** (2 * m) for m in range(n)]
    cfac = q - 1.0 / q

    def term(sig):
        t = 1.0 + 0j
        for a, b in _inversions(sig):
            t *= (q * w[a] - w[b] / q) / (w[a] / q - q * w[b])
        for m in range(n):
            wm = w[sig[m]]
            for k in range(m + 1, n):
                t *= q * z[k] - wm / q
            for k in range(m):
                t *= z[k] - wm
            t *= (z[m] - wm * qk[m]) * cfac / (1.0 - qk[m])
        return t

    return pref * _perm_sum(n, term, parallel)


def weight_kernel(ctx: ThetaContext, p: EllipticParams, vperm) -> complex:
    """Unsymmetrised kernel of the elliptic partition sum, evaluated with the
    row arguments in the order given by vperm:

        prod_{k>m} th(u_k - u_m) / th(u_k - u_m + hbar)
        * prod_{k>m} th(u_k - v_m + hbar) / th(u_k - v_m)
        * prod_m th(u_m - v_m - lam - (m-1) hbar)
                 / (th(u_m - v_m) th(-lam - (m-1) hbar))

    with v_m standing for vperm[m-1].  Unlike the full partition function it
    has simple poles at u_k = v_m; symmetrising it over row orderings against
    the exchange factors reproduces z_sos_elliptic (checked in the tests).
    """
    p.validate(ctx)
    n = p.n
    u, lam, hbar = p.u, p.lam, p.hbar
    v = [complex(x) for x in vperm]
    if len(v) != n:
        raise InvalidParameter(f"vperm must list {n} row arguments, got {len(v)}")
    for k in range(n):
        for m in range(k):
            require_off_lattice(ctx, u[k] - u[m] + hbar,
                                f"u[{k + 1}] - u[{m + 1}] + hbar")
    for k in range(n):
        for m in range(k + 1):
            require_off_lattice(ctx, u[k] - v[m], f"u[{k + 1}] - vperm[{m + 1}]")

    t = 1.0 + 0j
    for k in range(n):
        for m in range(k):
            t *= theta(ctx, u[k] - u[m]) / theta(ctx, u[k] - u[m] + hbar)
            t *= theta(ctx, u[k] - v[m] + hbar) / theta(ctx, u[k] - v[m])
    for m in range(n):
        t *= theta(ctx, u[m] - v[m] - lam - m * hbar) \
            / (theta(ctx, u[m] - v[m]) * theta(ctx, -lam - m * hbar))
    return t
