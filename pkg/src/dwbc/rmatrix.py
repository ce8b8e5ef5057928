"""Boltzmann-weight matrices (R-matrices) for the three models.

All matrices act on C^2 (x) C^2 with the basis ordered (++, +-, -+, --),
sign +1 first.  The entry R[(alpha,beta), (gamma,delta)] is the weight of a
vertex with outgoing pair (alpha, beta) = (top, right) and incoming pair
(gamma, delta) = (bottom, left); sign conservation (the ice rule)
alpha + beta = gamma + delta restricts the support to six entries:

        a  .  .  .
        .  b  cb .          b  = R[+-,+-]   cb = R[+-,-+]
        .  c  bb .          c  = R[-+,+-]   bb = R[-+,-+]
        .  .  .  a

The dynamical (SOS) matrix carries one extra complex parameter lam that is
shifted by +-hbar according to the sign on a spectator space; the checker
for the dynamical Yang-Baxter equation expands that shift over the two
eigen-sectors of H = diag(1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import DegenerateParameter, InvalidParameter
from .theta import ThetaContext, require_off_lattice, theta


def _pair_index(a: int, b: int) -> int:
    return (0 if a > 0 else 2) + (0 if b > 0 else 1)


@dataclass(frozen=True)
class RMatrix4:
    """A 4x4 weight matrix in the fixed (++, +-, -+, --) basis."""

    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=complex)
        if m.shape != (4, 4):
            raise InvalidParameter(f"R-matrix must be 4x4, got shape {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "m", m)

    def entry(self, alpha: int, beta: int, gamma: int, delta: int) -> complex:
        """Weight of the vertex with edge signs alpha (top), beta (right),
        gamma (bottom), delta (left); signs are +1 or -1."""
        return self.m[_pair_index(alpha, beta), _pair_index(gamma, delta)]

    @property
    def a(self) -> complex:
        return self.m[0, 0]

    @property
    def b(self) -> complex:
        return self.m[1, 1]

    @property
    def bbar(self) -> complex:
        return self.m[2, 2]

    @property
    def c(self) -> complex:
        return self.m[2, 1]

    @property
    def cbar(self) -> complex:
        return self.m[1, 2]


def _assemble(a, b, bbar, c, cbar) -> RMatrix4:
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = a
    m[3, 3] = a
    m[1, 1] = b
    m[1, 2] = cbar
    m[2, 1] = c
    m[2, 2] = bbar
    return RMatrix4(m)


@dataclass(frozen=True)
class EllipticParams:
    """Spectral and dynamical parameters of the elliptic SOS model.

    u, v are the column and row spectral parameters (length n each), lam is
    the dynamical parameter attached to the corner face, hbar the step by
    which face heights shift it.
    """

    u: tuple
    v: tuple
    lam: complex
    hbar: complex

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(complex(x) for x in self.u))
        object.__setattr__(self, "v", tuple(complex(x) for x in self.v))
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "hbar", complex(self.hbar))
        if len(self.u) != len(self.v) or not self.u:
            raise InvalidParameter(
                f"need equally many u and v parameters, n >= 1; "
                f"got {len(self.u)} and {len(self.v)}")

    @property
    def n(self) -> int:
        return len(self.u)

    def validate(self, ctx: ThetaContext, tol: float = 1e-10) -> None:
        """Check every dynamical theta denominator reachable at this size.

        Face heights across a domain-wall lattice shift lam by integer
        multiples of hbar bounded by 2n, so lam + k*hbar must stay off the
        lattice for all |k| <= 2n, and hbar itself must be off-lattice
        (else every c-weight vanishes identically).
        """
        require_off_lattice(ctx, self.hbar, "hbar", tol)
        for k in range(-2 * self.n, 2 * self.n + 1):
            require_off_lattice(ctx, self.lam + k * self.hbar,
                                f"lambda + {k}*hbar", tol)


@dataclass(frozen=True)
class TrigParams:
    """Multiplicative spectral parameters z, w with anisotropy q and, for the
    dynamical trigonometric model, the multiplicative dynamical parameter mu."""

    z: tuple
    w: tuple
    q: complex
    mu: complex | None = None

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(complex(x) for x in self.z))
        object.__setattr__(self, "w", tuple(complex(x) for x in self.w))
        object.__setattr__(self, "q", complex(self.q))
        if self.mu is not None:
            object.__setattr__(self, "mu", complex(self.mu))
        if len(self.z) != len(self.w) or not self.z:
            raise InvalidParameter(
                f"need equally many z and w parameters, n >= 1; "
                f"got {len(self.z)} and {len(self.w)}")

    @property
    def n(self) -> int:
        return len(self.z)

    def validate(self, tol: float = 1e-10) -> None:
        if self.q == 0:
            raise InvalidParameter("q must be nonzero")
        if abs(self.q * self.q - 1.0) < tol:
            raise DegenerateParameter(
                f"q = {self.q} has q^2 = 1: q - 1/q vanishes and with it "
                f"every c-weight")
        if self.mu is not None:
            for k in range(self.n):
                val = self.mu * self.q ** (2 * k)
                if abs(val - 1.0) < tol:
                    raise DegenerateParameter(
                        f"mu*q^(2*{k}) = {val} hits 1 (dynamical denominator "
                        f"1 - mu*q^(2k) vanishes)")


def sos_weights(ctx: ThetaContext, x: complex, lam: complex,
                hbar: complex) -> tuple:
    """Face weights (a, b, bbar, c, cbar) of the elliptic SOS model.

        a    = theta(x + hbar)
        b    = theta(x) theta(lam + hbar) / theta(lam)
        bbar = theta(x) theta(lam - hbar) / theta(lam)
        c    = theta(x + lam) theta(hbar) / theta(lam)
        cbar = theta(x - lam) theta(hbar) / theta(-lam)

    x is the spectral argument (column minus row parameter), lam the
    dynamical parameter of the face the vertex sits against.
    """
    require_off_lattice(ctx, lam, "dynamical parameter lambda")
    tl = theta(ctx, lam)
    tx = theta(ctx, x)
    th = theta(ctx, hbar)
    a = theta(ctx, x + hbar)
    b = tx * theta(ctx, lam + hbar) / tl
    bbar = tx * theta(ctx, lam - hbar) / tl
    c = theta(ctx, x + lam) * th / tl
    cbar = theta(ctx, x - lam) * th / (-tl)  # theta is odd: theta(-lam) = -theta(lam)
    return a, b, bbar, c, cbar


def sos_rmatrix(ctx: ThetaContext, x: complex, lam: complex,
                hbar: complex) -> RMatrix4:
    """Dynamical elliptic R-matrix assembled from sos_weights."""
    a, b, bbar, c, cbar = sos_weights(ctx, x, lam, hbar)
    return _assemble(a, b, bbar, c, cbar)


def sixv_rmatrix(z: complex, w: complex, q: complex) -> RMatrix4:
    """Six-vertex weight matrix in multiplicative variables.

        a = q z - w / q,  b = z - w  (both diagonals),
        c = (q - 1/q) z,  cbar = (q - 1/q) w.
    """
    if q == 0:
        raise InvalidParameter("q must be nonzero")
    b = z - w
    cfac = q - 1.0 / q
    return _assemble(q * z - w / q, b, b, cfac * z, cfac * w)


def trig_sos_rmatrix(z: complex, w: complex, mu: complex,
                     q: complex) -> RMatrix4:
    """Dynamical trigonometric R-matrix (the Im(tau) -> inf limit of the
    elliptic one, in multiplicative variables z, w, mu)."""
    if q == 0:
        raise InvalidParameter("q must be nonzero")
    if abs(mu - 1.0) < 1e-12:
        raise DegenerateParameter(
            f"mu = {mu} is within 1e-12 of 1 (dynamical denominator mu - 1 "
            f"vanishes)")
    d = z - w
    cfac = q - 1.0 / q
    a = z * q - w / q
    b = d * (mu * q - 1.0 / q) / (mu - 1.0)
    bbar = d * (mu / q - q) / (mu - 1.0)
    c = (z * mu - w) * cfac / (mu - 1.0)
    cbar = (z - w * mu) * cfac / (1.0 - mu)
    return _assemble(a, b, bbar, c, cbar)


def trig_nondyn_rmatrix(z: complex, w: complex, q: complex) -> RMatrix4:
    """Non-dynamical trigonometric R-matrix (mu -> inf limit); differs from
    the six-vertex matrix only by the gauge factor q on the b-weights."""
    if q == 0:
        raise InvalidParameter("q must be nonzero")
    d = z - w
    cfac = q - 1.0 / q
    return _assemble(q * z - w / q, q * d, d / q, cfac * z, cfac * w)


def gauge_rescale(r: RMatrix4, rho: complex) -> RMatrix4:
    """Rescale b -> rho*b and bbar -> bbar/rho.

    This gauge leaves domain-wall partition functions invariant, because in
    any configuration every internal horizontal edge is counted once as a
    right edge and once as a left edge.
    """
    if rho == 0:
        raise InvalidParameter("gauge factor rho must be nonzero")
    m = np.array(r.m, dtype=complex)
    m[1, 1] *= rho
    m[2, 2] /= rho
    return RMatrix4(m)


_H2 = np.diag([2.0, 0.0, 0.0, -2.0]).astype(complex)


def ice_rule_residual(r: RMatrix4) -> float:
    """Max-norm of [H (x) 1 + 1 (x) H, R]; zero iff sign flow is conserved."""
    comm = _H2 @ r.m - r.m @ _H2
    return float(np.max(np.abs(comm)))


def _flat3(idx) -> int:
    return 4 * idx[0] + 2 * idx[1] + idx[2]


def _embed3(r_of_sign, a: int, b: int, c: int) -> np.ndarray:
    """8x8 operator acting as r_of_sign(s) on spaces (a, b), where s is the
    sign (+1/-1) carried by the spectator space c.  Spaces are numbered
    0, 1, 2; index 0 of each two-state factor means sign +1."""
    out_m = np.zeros((8, 8), dtype=complex)
    for sc in (0, 1):
        g = r_of_sign(1 if sc == 0 else -1).reshape(2, 2, 2, 2)
        for ao, bo, ai, bi in product(range(2), repeat=4):
            row = [0, 0, 0]
            col = [0, 0, 0]
            row[a], col[a] = ao, ai
            row[b], col[b] = bo, bi
            row[c] = col[c] = sc
            out_m[_flat3(row), _flat3(col)] = g[ao, bo, ai, bi]
    return out_m


def dybe_residual_from_builder(builder, x12, x13, x23) -> float:
    """Max-norm residual of the dynamical Yang-Baxter equation on
    C^2 (x) C^2 (x) C^2 for R(x; k) = builder(x, k), where k in {-1, 0, +1}
    counts dynamical shift steps contributed by the spectator space.

    Both sides are built as dense 8x8 matrices:

        R12(x12; 0) R13(x13; H2) R23(x23; 0)
            = R23(x23; H1) R13(x13; 0) R12(x12; H3)

    with Hk meaning the shift is driven by the sign on space k.
    """

    def r(x, k):
        return builder(x, k).m

    lhs = (_embed3(lambda s: r(x12, 0), 0, 1, 2)
           @ _embed3(lambda s: r(x13, s), 0, 2, 1)
           @ _embed3(lambda s: r(x23, 0), 1, 2, 0))
    rhs = (_embed3(lambda s: r(x23, s), 1, 2, 0)
           @ _embed3(lambda s: r(x13, 0), 0, 2, 1)
           @ _embed3(lambda s: r(x12, s), 0, 1, 2))
    return float(np.max(np.abs(lhs - rhs)))


def dybe_residual(ctx: ThetaContext, t1: complex, t2: complex, t3: complex,
                  lam: complex, hbar: complex) -> float:
    """Dynamical Yang-Baxter residual for the elliptic SOS R-matrix at
    spectral points t1, t2, t3 and dynamical parameter lam."""

    def builder(x, k):
        return sos_rmatrix(ctx, x, lam + k * hbar, hbar)

    return dybe_residual_from_builder(builder, t1 - t2, t1 - t3, t2 - t3)


def dybe_residual_trig(z1: complex, z2: complex, z3: complex,
                       mu: complex, q: complex) -> float:
    """Dynamical Yang-Baxter residual for the trigonometric dynamical
    R-matrix; the shift lam -> lam + k*hbar becomes mu -> mu * q^(2k)."""

    def builder(zw, k):
        return trig_sos_rmatrix(zw[0], zw[1], mu * q ** (2 * k), q)

    return dybe_residual_from_builder(builder, (z1, z2), (z1, z3), (z2, z3))


def ybe_residual_nondyn(z1: complex, z2: complex, z3: complex,
                        q: complex) -> float:
    """Ordinary Yang-Baxter residual of the non-dynamical trigonometric
    matrix (the dynamical shifts act trivially)."""

    def builder(zw, k):
        return trig_nondyn_rmatrix(zw[0], zw[1], q)

    return dybe_residual_from_builder(builder, (z1, z2), (z1, z3), (z2, z3))
