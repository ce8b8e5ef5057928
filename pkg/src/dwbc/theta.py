"""Odd quasi-periodic theta function theta(u | tau).

The function is fixed by three conditions:

    theta(u + 1)   = -theta(u)
    theta(u + tau) = -exp(-2*pi*i*u - pi*i*tau) * theta(u)
    theta'(0)      = 1

with tau in the upper half-plane.  It is entire and odd, vanishes exactly
on the period lattice Gamma = Z + Z*tau, and degenerates to sin(pi*u)/pi
as Im(tau) -> +inf.

Evaluation reduces the argument into the fundamental cell |Re u| <= 1/2,
|Im u| <= Im(tau)/2 via the translation law

    theta(u + m + n*tau) = (-1)^(m+n) exp(-2*pi*i*n*u - pi*i*n^2*tau) theta(u)

and then applies the truncated product representation

    theta(u) = sin(pi*u)/pi * prod_{k=1..N} (1 - p^k E)(1 - p^k / E) / (1 - p^k)^2

with E = exp(2*pi*i*u) and nome p = exp(2*pi*i*tau).  The depth N is fixed
per context so that |p|^N < 1e-16; inside the cell |p^k E^{+-1}| <= |p|^(k-1/2),
so the neglected tail is below machine precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import DegenerateParameter, InvalidParameter

_TRUNCATION_TARGET = 1e-16
_TRUNCATION_FLOOR = 1e-12


@dataclass(frozen=True)
class ThetaContext:
    """Modular parameter with its derived nome and truncation depth.

    Immutable and stateless after construction, so a single context can be
    shared freely between threads.  Construction fails if Im(tau) <= 0 or
    if the nome is so close to the unit circle that `max_terms` product
    factors cannot reach a 1e-12 tail.
    """

    tau: complex
    max_terms: int = 4000
    lattice_window: int = 50
    nome_p: complex = field(init=False)
    truncation_terms: int = field(init=False)

    def __post_init__(self):
        tau = complex(self.tau)
        if not tau.imag > 0.0:
            raise InvalidParameter(
                f"tau = {tau} must have strictly positive imaginary part")
        p = cmath.exp(2j * math.pi * tau)
        ap = abs(p)
        if ap == 0.0:
            # Nome underflowed (huge Im tau): the product is empty and the
            # function is exactly the trigonometric limit.
            terms = 1
        else:
            terms = max(1, math.ceil(math.log(_TRUNCATION_TARGET) / math.log(ap)))
            if terms > self.max_terms:
                if ap ** self.max_terms >= _TRUNCATION_FLOOR:
                    raise InvalidParameter(
                        f"|nome| = {ap:.8f} is too close to 1: {self.max_terms} "
                        f"product terms cannot push the tail below {_TRUNCATION_FLOOR:g}")
                terms = self.max_terms
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "nome_p", p)
        object.__setattr__(self, "truncation_terms", terms)


def _cell_value(ctx: ThetaContext, u: complex) -> complex:
    """Product form, valid for u already inside the fundamental cell."""
    ep = cmath.exp(2j * math.pi * u)
    em = cmath.exp(-2j * math.pi * u)
    prod = 1.0 + 0j
    pk = 1.0 + 0j
    for _ in range(ctx.truncation_terms):
        pk *= ctx.nome_p
        prod *= (1.0 - pk * ep) * (1.0 - pk * em) / (1.0 - pk) ** 2
    return cmath.sin(math.pi * u) / math.pi * prod


def theta(ctx: ThetaContext, u: complex) -> complex:
    """Evaluate theta(u | tau) for any complex argument.

    The argument is translated into the fundamental cell by integer steps
    (m, n) along (1, tau); the accumulated quasi-periodicity phase is exact,
    so the translation laws hold to rounding error by construction.
    """
    u = complex(u)
    tau = ctx.tau
    n = round(u.imag / tau.imag)
    u1 = u - n * tau
    m = round(u1.real)
    u0 = complex(u1.real - m, u1.imag)
    value = _cell_value(ctx, u0)
    if m == 0 and n == 0:
        return value
    sign = -1.0 if (m + n) % 2 else 1.0
    phase = cmath.exp(-2j * math.pi * n * u0 - 1j * math.pi * n * n * tau)
    return sign * phase * value


def theta_deriv_at_zero(ctx: ThetaContext) -> complex:
    """Central-difference derivative at 0; equals 1 for a correct normalisation.

    Step h = eps^(1/3) balances rounding against the O(h^2) truncation of the
    difference quotient, leaving an error far below 1e-9.
    """
    h = (2.0 ** -52) ** (1.0 / 3.0)
    return (theta(ctx, h) - theta(ctx, -h)) / (2.0 * h)


def is_on_lattice(ctx: ThetaContext, x: complex, tol: float = 1e-10) -> bool:
    """True if x lies within tol of some m + n*tau, |m|, |n| <= lattice_window."""
    x = complex(x)
    tau = ctx.tau
    win = ctx.lattice_window
    n0 = round(x.imag / tau.imag)
    for dn in (0, -1, 1):
        n = n0 + dn
        if abs(n) > win:
            continue
        rem = x - n * tau
        m0 = round(rem.real)
        for dm in (0, -1, 1):
            m = m0 + dm
            if abs(m) > win:
                continue
            if abs(rem - m) <= tol:
                return True
    return False


def require_off_lattice(ctx: ThetaContext, x: complex, name: str,
                        tol: float = 1e-10) -> None:
    """Raise DegenerateParameter if x sits on the period lattice Gamma.

    `name` identifies the offending theta argument in the diagnostic, e.g.
    "lambda + 3*hbar" or "v[3] - v[1]".
    """
    if is_on_lattice(ctx, x, tol):
        raise DegenerateParameter(
            f"{name} = {complex(x)} lies on the lattice Gamma within {tol:g} "
            f"(theta denominator vanishes)")
