"""Jacobi theta functions and the elliptic cotangent built from them.

Evaluation strategy
-------------------
Every quantity here comes from the four theta q-series with nome
q = e(tau) = exp(2*pi*i*tau).  Series are summed in the half-nome
w = exp(pi*i*tau): the exponents q^{n^2/2} and q^{(n+1/2)^2/2} are then
integer powers of w times a fixed fourth root, so no fractional powers of a
complex number ever appear.

Arguments are reduced into the fundamental cell |Re z| <= 1/2,
|Im z| <= Im(tau)/2 before summation.  For plain theta evaluation the exact
quasi-periodicity prefactor is restored afterwards; the cs ratios only need
the sign (-1)^mu, which keeps lattice sums free of huge prefactors.

Two arithmetic backends share the same series code: binary64 complex for
production work and an mpmath backend (EXTENDED_DPS significant digits) for
oracle-grade evaluation.
"""

from __future__ import annotations

import cmath
import math
from contextlib import nullcontext
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, NonConvergentError, PoleError

DEFAULT_TRUNC_TOL = 1e-12
DEFAULT_POLE_TOL = 1e-12
DEFAULT_MAX_DERIVATIVE_ORDER = 8
MAX_SERIES_TERMS = 500
EXTENDED_DPS = 40

_LOG2 = math.log(2.0)


class Precision(Enum):
    BINARY64 = "binary64"
    EXTENDED = "extended"


@dataclass(frozen=True)
class TauPoint:
    """A point of the upper half plane."""

    tau: complex

    def __post_init__(self) -> None:
        tau = complex(self.tau)
        if not tau.imag > 0:
            raise DomainError(f"tau must have positive imaginary part, got {tau}")
        object.__setattr__(self, "tau", tau)

    @property
    def fundamental(self) -> bool:
        """True iff tau lies in the standard level-2 fundamental domain."""
        t = self.tau
        return abs(t.real) <= 1 and abs(t - 0.5) >= 0.5 and abs(t + 0.5) >= 0.5


def as_tau(value) -> TauPoint:
    return value if isinstance(value, TauPoint) else TauPoint(complex(value))


def _precision_scope(precision: Precision):
    if precision is Precision.EXTENDED:
        import mpmath

        return mpmath.workdps(EXTENDED_DPS)
    return nullcontext()


def _backend(precision: Precision):
    """(exp, sin, cos, pi, cast) for the requested arithmetic."""
    if precision is Precision.BINARY64:
        return cmath.exp, cmath.sin, cmath.cos, math.pi, complex
    import mpmath

    return mpmath.exp, mpmath.sin, mpmath.cos, +mpmath.pi, mpmath.mpc


def _lattice_shifts(z: complex, tau: complex) -> tuple[int, int]:
    """Integers (m, n) such that z - m*tau - n lies in the fundamental cell."""
    m = math.floor(z.imag / tau.imag + 0.5)
    n = math.floor((z - m * tau).real + 0.5)
    return m, n


def _theta_series(j, z0, w, w4, tol, sin, cos, pi, log_aw, aim):
    """Sum the theta_j series at a reduced argument z0.

    log_aw is log|w| (negative) and aim is |Im z0|; both feed the tail
    bound, which is evaluated in log space so very tall tau never overflow.
    """
    total = None if j in (1, 2) else w**0
    for n in range(0 if j in (1, 2) else 1, MAX_SERIES_TERMS):
        if j in (1, 2):
            angle = (2 * n + 1) * pi * z0
            coeff = 2 * w ** (n * (n + 1)) * w4
            if j == 1:
                term = -coeff * sin(angle) if n % 2 else coeff * sin(angle)
            else:
                term = coeff * cos(angle)
            total = term if total is None else total + term
            nn = n + 1
            log_bound = (nn * nn + nn + 0.25) * log_aw + (2 * nn + 1) * math.pi * aim + _LOG2
        else:
            term = 2 * w ** (n * n) * cos(2 * n * pi * z0)
            if j == 4 and n % 2:
                term = -term
            total = total + term
            nn = n + 1
            log_bound = nn * nn * log_aw + 2 * nn * math.pi * aim + _LOG2
        if log_bound < math.log(tol * (1.0 + float(abs(total)))):
            return total
    raise NonConvergentError(
        f"theta_{j} series did not converge within {MAX_SERIES_TERMS} terms"
    )


def theta_eval(j, z, tau, trunc_tol=DEFAULT_TRUNC_TOL, precision=Precision.BINARY64):
    """theta_j(z, tau), j in 1..4, by direct q-series summation.

    Truncation stops once the bound on the next term drops below
    ``trunc_tol`` times (1 + |partial sum|).  The argument is reduced into
    the fundamental cell first and the exact sign/exponential prefactor is
    multiplied back in, so convergence speed does not depend on z.
    """
    if j not in (1, 2, 3, 4):
        raise DomainError(f"theta index must be 1..4, got {j}")
    if trunc_tol <= 0:
        raise DomainError("trunc_tol must be positive")
    point = as_tau(tau)
    t = point.tau
    m, n = _lattice_shifts(complex(z), t)
    with _precision_scope(precision):
        exp, sin, cos, pi, cast = _backend(precision)
        tau_b = cast(t)
        z0 = cast(z) - m * tau_b - n
        w = exp(1j * pi * tau_b)
        w4 = exp(1j * pi * tau_b / 4)
        log_aw = -math.pi * t.imag
        aim = abs(float(complex(z0).imag))
        value = _theta_series(j, z0, w, w4, trunc_tol, sin, cos, pi, log_aw, aim)
        if m == 0 and n == 0:
            return value
        prefactor = exp(-1j * pi * tau_b * (m * m) - 2j * pi * m * z0)
        if j == 1 and (m + n) % 2:
            prefactor = -prefactor
        elif j == 2 and n % 2:
            prefactor = -prefactor
        elif j == 4 and m % 2:
            prefactor = -prefactor
        return prefactor * value


@dataclass(frozen=True)
class EllipticContext:
    """Immutable bundle of tau-dependent constants used by all evaluators.

    Invariants: |q| < 1, k = theta2(0)^2 / theta3(0)^2, lam = k^2 and
    big_k = (pi/2) theta3(0)^2, all recomputable from the stored theta
    constants to within trunc_tol.
    """

    tau: TauPoint
    q: complex
    theta2_0: complex
    theta3_0: complex
    theta4_0: complex
    k: complex
    lam: complex
    big_k: complex
    trunc_tol: float
    precision: Precision
    pole_tol: float


def build_context(
    tau,
    trunc_tol=DEFAULT_TRUNC_TOL,
    precision=Precision.BINARY64,
    pole_tol=DEFAULT_POLE_TOL,
) -> EllipticContext:
    """Evaluate the theta constants at z = 0 and derive q, k, lambda, K."""
    point = as_tau(tau)
    with _precision_scope(precision):
        exp, _, _, pi, cast = _backend(precision)
        tau_b = cast(point.tau)
        q = exp(2j * pi * tau_b)
        th2 = theta_eval(2, 0, point, trunc_tol, precision)
        th3 = theta_eval(3, 0, point, trunc_tol, precision)
        th4 = theta_eval(4, 0, point, trunc_tol, precision)
        k = (th2 / th3) ** 2
        lam = k * k
        big_k = pi / 2 * th3**2
    return EllipticContext(
        tau=point,
        q=q,
        theta2_0=th2,
        theta3_0=th3,
        theta4_0=th4,
        k=k,
        lam=lam,
        big_k=big_k,
        trunc_tol=float(trunc_tol),
        precision=precision,
        pole_tol=float(pole_tol),
    )


def _cell_thetas(z, ctx: EllipticContext, indices):
    """Lattice shifts of z plus theta_j(z0) for each requested j.

    Values are for the reduced point z0 only; callers apply whatever sign
    their ratio picks up, which is how cs evaluation avoids the (possibly
    astronomically large) quasi-periodicity prefactors entirely.
    """
    t = ctx.tau.tau
    m, n = _lattice_shifts(complex(z), t)
    with _precision_scope(ctx.precision):
        exp, sin, cos, pi, cast = _backend(ctx.precision)
        tau_b = cast(t)
        z0 = cast(z) - m * tau_b - n
        w = exp(1j * pi * tau_b)
        w4 = exp(1j * pi * tau_b / 4)
        log_aw = -math.pi * t.imag
        aim = abs(float(complex(z0).imag))
        values = {
            j: _theta_series(j, z0, w, w4, ctx.trunc_tol, sin, cos, pi, log_aw, aim)
            for j in indices
        }
    return m, n, values


def _check_pole(th1, th2, ctx, z):
    if abs(th1) < ctx.pole_tol * abs(th2):
        raise PoleError(f"cs argument within pole tolerance of a lattice point: z = {z!r}")


def cs_eval(z, ctx: EllipticContext):
    """cs(2Kz, k) = cn/sn at the scaled argument, via the theta ratio
    (theta4(0)/theta3(0)) * (theta2(z)/theta1(z)).

    Odd in z; gains a factor (-1)^mu under z -> z + mu*tau + nu.
    """
    m, _, th = _cell_thetas(z, ctx, (1, 2))
    _check_pole(th[1], th[2], ctx, z)
    value = (ctx.theta4_0 / ctx.theta3_0) * (th[2] / th[1])
    return -value if m % 2 else value


@lru_cache(maxsize=None)
def _derivative_poly(order: int) -> dict:
    """d^order/du^order of cs as an integer polynomial in (cs, ns, ds).

    The closed derivative system is cs' = -ns*ds, ns' = -cs*ds,
    ds' = -cs*ns, so repeated differentiation stays inside the ring.
    Keys are exponent triples (i, j, l) for cs^i ns^j ds^l.
    """
    if order == 0:
        return {(1, 0, 0): 1}
    result: dict = {}
    for (i, j, l), coeff in _derivative_poly(order - 1).items():
        for key, c in (
            ((i - 1, j + 1, l + 1), -coeff * i),
            ((i + 1, j - 1, l + 1), -coeff * j),
            ((i + 1, j + 1, l - 1), -coeff * l),
        ):
            if c:
                result[key] = result.get(key, 0) + c
    return {key: c for key, c in result.items() if c}


def cs_derivative_eval(
    order: int,
    z,
    ctx: EllipticContext,
    max_order: int = DEFAULT_MAX_DERIVATIVE_ORDER,
):
    """order-th derivative of u -> cs(u, k) evaluated at u = 2Kz.

    Order 0 reproduces :func:`cs_eval`.  All three function values cs, ns,
    ds are read off theta ratios at the reduced argument with their exact
    lattice signs, then substituted into the cached derivative polynomial.
    """
    if order < 0 or order > max_order:
        raise DomainError(f"derivative order must be in 0..{max_order}, got {order}")
    m, n, th = _cell_thetas(z, ctx, (1, 2, 3, 4))
    _check_pole(th[1], th[2], ctx, z)
    c = (ctx.theta4_0 / ctx.theta3_0) * (th[2] / th[1])
    ns = (ctx.theta2_0 / ctx.theta3_0) * (th[4] / th[1])
    ds = (ctx.theta2_0 * ctx.theta4_0 / ctx.theta3_0**2) * (th[3] / th[1])
    if m % 2:
        c = -c
    if n % 2:
        ns = -ns
    if (m + n) % 2:
        ds = -ds
    total = 0
    for (i, j, l), coeff in _derivative_poly(order).items():
        total = total + coeff * c**i * ns**j * ds**l
    return total


# -- series coefficients of cs at the pole ----------------------------------
#
# cs(u, k) = 1/u + sum_{n>=0} g[2n+1](lambda) u^{2n+1}.  Writing
# A(t) = 1 + sum g[2n+1] t^{n+1} and B(t) = -1 + sum (2n+1) g[2n+1] t^{n+1}
# with t = u^2, the first-order relation (cs')^2 = (1 + cs^2)(1 - lambda
# + cs^2) becomes B^2 = (t + A^2)((1 - lambda) t + A^2), and matching powers
# of t determines every coefficient: with C = A^2 and S_X the proper
# convolution partial sums,
#
#   g_N = -(2 S_A + S_C + (2 - lambda) C[N-1] + (1 - lambda) [N = 2] - S_B)
#          / (4N + 2).
#
# Coefficients are kept as exact polynomials in lambda.

_ONE = (Fraction(1),)


def _poly_add(p, q):
    size = max(len(p), len(q))
    return tuple(
        (p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
        for i in range(size)
    )


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi:
            for j, qj in enumerate(q):
                out[i + j] += pi * qj
    return tuple(out)


def _poly_scale(p, c):
    c = Fraction(c)
    return tuple(c * x for x in p)


@lru_cache(maxsize=None)
def _laurent_polynomials(count: int) -> tuple:
    """The first ``count`` odd-power coefficients as lambda-polynomials."""
    # (2 - lambda) and (1 - lambda) as polynomials
    two_minus = (Fraction(2), Fraction(-1))
    one_minus = (Fraction(1), Fraction(-1))
    a = [_ONE]  # A[0] = 1
    b = [(Fraction(-1),)]  # B[0] = -1
    c = [_ONE]  # C = A^2
    gs = []
    for big_n in range(1, count + 1):
        s_a = (Fraction(0),)
        s_b = (Fraction(0),)
        s_c = (Fraction(0),)
        for i in range(1, big_n):
            s_a = _poly_add(s_a, _poly_mul(a[i], a[big_n - i]))
            s_b = _poly_add(s_b, _poly_mul(b[i], b[big_n - i]))
            s_c = _poly_add(s_c, _poly_mul(c[i], c[big_n - i]))
        rhs = _poly_add(_poly_scale(s_a, 2), s_c)
        rhs = _poly_add(rhs, _poly_mul(two_minus, c[big_n - 1]))
        if big_n == 2:
            rhs = _poly_add(rhs, one_minus)
        rhs = _poly_add(rhs, _poly_scale(s_b, -1))
        g = _poly_scale(rhs, Fraction(-1, 4 * big_n + 2))
        gs.append(g)
        a.append(g)
        b.append(_poly_scale(g, 2 * big_n - 1))
        c.append(_poly_add(_poly_scale(g, 2), s_a))
    return tuple(gs)


def laurent_g_polynomial(n: int) -> tuple:
    """Coefficient of u^{2n+1} in the cs expansion, as a polynomial in
    lambda given by its Fraction coefficients (constant term first)."""
    if n < 0:
        raise DomainError("coefficient index must be nonnegative")
    return _laurent_polynomials(n + 1)[n]


def _eval_poly(coeffs, lam, precision: Precision):
    if precision is Precision.EXTENDED:
        import mpmath

        def conv(f):
            return mpmath.mpf(f.numerator) / f.denominator

    else:
        conv = float
    acc = conv(Fraction(0))
    for coeff in reversed(coeffs):
        acc = acc * lam + conv(coeff)
    return acc


def laurent_g(n: int, ctx: EllipticContext):
    """g[2n+1](k): the coefficient of u^{2n+1} in cs(u, k) near u = 0."""
    poly = laurent_g_polynomial(n)
    with _precision_scope(ctx.precision):
        return _eval_poly(poly, ctx.lam, ctx.precision)


def laurent_coefficient(power: int, ctx: EllipticContext):
    """Series coefficient of u^power, zero for nonnegative even powers."""
    if power < 0:
        raise DomainError("only regular-part coefficients are defined here")
    if power % 2 == 0:
        return 0.0
    return laurent_g((power - 1) // 2, ctx)


def lambda_transform_check(
    tau,
    trunc_tol=DEFAULT_TRUNC_TOL,
    precision=Precision.BINARY64,
) -> dict:
    """Residuals of the modular transformation rules of lambda.

    Both sides of each rule are computed independently through the theta
    constants, at tau and at its image.  Keys name the transformation;
    values are absolute residuals.
    """
    point = as_tau(tau)
    t = point.tau
    lam = build_context(point, trunc_tol, precision).lam
    rules = {
        "inversion": (-1 / t, 1 - lam),
        "translation": (t + 1, lam / (lam - 1)),
        "inverted-translation": (-1 / (t + 1), 1 / (1 - lam)),
        "translated-inversion": ((t - 1) / t, (lam - 1) / lam),
        "dual": (t / (t + 1), 1 / lam),
    }
    residuals = {}
    for name, (image, predicted) in rules.items():
        lam_image = build_context(image, trunc_tol, precision).lam
        residuals[name] = float(abs(lam_image - predicted))
    return residuals
