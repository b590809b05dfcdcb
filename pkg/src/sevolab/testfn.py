"""Test-function machinery for the blow-up analysis.

Japanese-bracket functions <x>**(-l) = (1+|x|^2)**(-l/2) are closed under
the negative Laplacian,

    -Lap <x>**(-l) = l*(n-l-2) <x>**(-l-2) + l*(l+2) <x>**(-l-4),

so integer powers of -Lap reduce to two-term recursions on (coefficient,
exponent) lists.  The fractional remainder (-Lap)**s with s in (0,1) is
evaluated through the normalised hypersingular integral

    (-Lap)**s f(x) = -C(n,s) * int_0^inf rho**(-1-2s) [S_f(rho) - w_{n-1} f(x)] drho,

where S_f is the spherical sum of f over the radius-rho sphere centred at x
(for n = 1 simply f(x+rho) + f(x-rho)) and C(n,s) is the constant making
the Fourier symbol |xi|**(2s).  A Bessel-K frequency-side evaluator provides
an independent cross-check in one dimension.

The time cutoff eta and the compactly supported space cutoff used for
integer orders are powers of one fixed quintic transition that is exactly 1
below 1/2 and exactly 0 above 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.special import kv

from .exponents import SystemParams
from .profiles import GaussianProfile, sphere_surface
from .quadutil import QuadratureFailure, adaptive_quad

__all__ = [
    "BracketCombo", "TestFunctionSpec", "FunctionalValues",
    "neg_laplacian_bracket", "integer_laplacian_bracket",
    "fractional_laplacian_bracket", "fractional_laplacian_fourier",
    "fractional_laplacian_gamma", "eta", "eta_derivs", "eta_ratio_sup",
    "smooth_cutoff", "compact_cutoff", "functionals",
    "envelope_ratio", "plancherel_pairing", "fd_neg_laplacian",
    "InsufficientSnapshotsError", "QuadratureFailure",
]


class InsufficientSnapshotsError(ValueError):
    """Snapshot coverage of the functional time window has gaps over 10%."""


# --------------------------------------------------------------------------
# bracket combinations and the integer Laplacian recursion
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BracketCombo:
    """Sum of Japanese-bracket terms: sum_i c_i <x>**(-l_i), all l_i > 0."""

    terms: tuple[tuple[float, float], ...]

    def value(self, radius, scale: float = 1.0):
        r = np.asarray(radius, dtype=float)
        z2 = (r / scale) ** 2
        out = np.zeros_like(z2)
        for c, ell in self.terms:
            out += c * (1.0 + z2) ** (-ell / 2.0)
        return out if out.shape else float(out)

    def neg_laplacian(self, n: int) -> "BracketCombo":
        merged: dict[float, float] = {}
        for c, ell in self.terms:
            for cc, ee in _neg_lap_term(c, ell, n):
                merged[ee] = merged.get(ee, 0.0) + cc
        terms = sorted(((c, e) for e, c in merged.items() if c != 0.0),
                       key=lambda item: item[1])
        return BracketCombo(tuple(terms))


def _neg_lap_term(c: float, ell: float, n: int):
    out = []
    c1 = c * ell * (n - ell - 2.0)
    if c1 != 0.0:
        out.append((c1, ell + 2.0))
    c2 = c * ell * (ell + 2.0)
    if c2 != 0.0:
        out.append((c2, ell + 4.0))
    return out


def neg_laplacian_bracket(ell: float, n: int) -> BracketCombo:
    """-Lap <x>**(-l) as a two-term bracket combination."""
    if ell <= 0:
        raise ValueError("ell must be positive")
    return BracketCombo(((1.0, float(ell)),)).neg_laplacian(n)


def integer_laplacian_bracket(r: float, m: int, n: int) -> BracketCombo:
    """(-Lap)**m <x>**(-r) by iterating the one-step recursion m times."""
    if r <= 0:
        raise ValueError("r must be positive")
    if m < 1 or int(m) != m:
        raise ValueError("m must be a positive integer")
    combo = BracketCombo(((1.0, float(r)),))
    for _ in range(int(m)):
        combo = combo.neg_laplacian(n)
    return combo


# --------------------------------------------------------------------------
# hypersingular evaluation of the fractional part
# --------------------------------------------------------------------------

def frac_lap_normalization(n: int, s: float) -> float:
    """C(n, s) = 4**s Gamma(n/2+s) / (pi**(n/2) |Gamma(-s)|).

    Under this convention the Fourier symbol of (-Lap)**s is |xi|**(2s);
    the choice is validated by the Bessel-K cross-check.
    """
    if not 0.0 < s < 1.0:
        raise ValueError("s must be in (0, 1)")
    return (4.0**s * gamma_fn(n / 2.0 + s)
            / (math.pi ** (n / 2.0) * abs(gamma_fn(-s))))


def _bracket_d2(c: float, a: float, z: float):
    """Second and fourth derivatives of (1+z**2)**(-a) at z (unit scale)."""
    u = 1.0 + z * z
    d2 = -2.0 * a * u ** (-a - 1.0) + 4.0 * a * (a + 1.0) * z * z * u ** (-a - 2.0)
    d4 = (12.0 * a * (a + 1.0) * u ** (-a - 2.0)
          - 48.0 * a * (a + 1.0) * (a + 2.0) * z * z * u ** (-a - 3.0)
          + 16.0 * a * (a + 1.0) * (a + 2.0) * (a + 3.0) * z**4 * u ** (-a - 4.0))
    return c * d2, c * d4


def _bracket_d1(c: float, a: float, z: float) -> float:
    return c * (-2.0 * a) * z * (1.0 + z * z) ** (-a - 1.0)


def _sphere_sum(combo: BracketCombo, x: float, rho: float, n: int,
                scale: float, mu_nodes, mu_weights) -> float:
    """Integral of the combo over the sphere |y - x| = rho (radial x >= 0)."""
    if n == 1:
        return float(combo.value(abs(x + rho), scale) + combo.value(abs(x - rho), scale))
    if n == 2:
        theta = (mu_nodes + 1.0) * (math.pi / 2.0)
        radii = np.sqrt(x * x + 2.0 * x * rho * np.cos(theta) + rho * rho)
        vals = combo.value(radii, scale)
        return float(2.0 * np.sum(mu_weights * (math.pi / 2.0) * vals))
    # n == 3: 2*pi * int_{-1}^{1} f(sqrt(x^2 + 2 x rho mu + rho^2)) dmu
    radii = np.sqrt(x * x + 2.0 * x * rho * mu_nodes + rho * rho)
    vals = combo.value(radii, scale)
    return float(2.0 * math.pi * np.sum(mu_weights * vals))


@lru_cache(maxsize=4)
def _gl_nodes(npts: int):
    return np.polynomial.legendre.leggauss(npts)


def fractional_laplacian_bracket(combo: BracketCombo, s: float, x: float, n: int,
                                 scale: float = 1.0, rel_tol: float = 1e-10) -> float:
    """(-Lap)**s of sum_i c_i <y/scale>**(-l_i) at the (radial) point x.

    Hypersingular quadrature split at the singularity: radii below a small
    threshold use the analytic Taylor form of the symmetrised difference
    (second differences of O(1) values cancel catastrophically there), the
    middle range is adaptive with breakpoints at |x|, and the far tail is
    integrated in closed form from the bracket decay.  rel_tol governs the
    component quadratures; far past the bracket scale the pieces cancel, so
    the achievable relative accuracy of the final value degrades with x.
    """
    if n not in (1, 2, 3):
        raise ValueError("n must be 1, 2 or 3")
    if not 0.0 < s < 1.0:
        raise ValueError("s must be in (0, 1)")
    x = abs(float(x))
    omega = sphere_surface(n)
    fx = combo.value(x, scale)
    z = x / scale

    # radial Laplacian of the combo at x, for the small-rho Taylor branch
    lap = 0.0
    bilap_scale = 0.0
    for c, ell in combo.terms:
        a = ell / 2.0
        d2, d4 = _bracket_d2(c, a, z)
        if z > 1e-12:
            d1 = _bracket_d1(c, a, z)
            lap += (d2 + (n - 1) * d1 / z) / scale**2
        else:
            lap += n * d2 / scale**2
        bilap_scale += abs(d4) / scale**4

    mu_nodes, mu_weights = _gl_nodes(64)

    # Small-rho threshold: Taylor error ~ rho**4 * f'''' relative to rho**2 * Lap f.
    h_sw = 1e-3 * scale * (1.0 + z)

    def centred(rho: float) -> float:
        """S_f(rho) - omega * f(x), stable for all rho."""
        if rho < h_sw:
            if n == 1:
                d2 = 0.0
                d4 = 0.0
                for c, ell in combo.terms:
                    t2, t4 = _bracket_d2(c, ell / 2.0, z)
                    d2 += t2 / scale**2
                    d4 += t4 / scale**4
                return d2 * rho * rho + d4 * rho**4 / 12.0
            return omega * lap * rho * rho / (2.0 * n)
        return (_sphere_sum(combo, x, rho, n, scale, mu_nodes, mu_weights)
                - omega * fx)

    alpha = 1.0 / (2.0 - 2.0 * s)

    def inner(u: float) -> float:
        rho = u**alpha
        return centred(rho) * rho ** (-1.0 - 2.0 * s) * alpha * u ** (alpha - 1.0)

    lo_cut = max(scale, x / 8.0)
    big = max(200.0 * (x + scale), 1e3 * scale)
    i_inner = adaptive_quad(inner, 0.0, lo_cut ** (2.0 - 2.0 * s),
                            rel_tol=0.1 * rel_tol)
    i_mid = adaptive_quad(lambda rho: centred(rho) * rho ** (-1.0 - 2.0 * s),
                          lo_cut, big,
                          points=[x / 2.0, x, 2.0 * x, 4.0 * x],
                          rel_tol=rel_tol, limit=500)
    # analytic tail: the -omega*f(x) part exactly, the bracket part to leading order
    i_tail = -omega * fx * big ** (-2.0 * s) / (2.0 * s)
    for c, ell in combo.terms:
        i_tail += (omega * c * scale**ell
                   * big ** (-ell - 2.0 * s) / (ell + 2.0 * s))

    return -frac_lap_normalization(n, s) * (i_inner + i_mid + i_tail)


# --------------------------------------------------------------------------
# Fourier-side evaluator (independent cross-check, n = 1)
# --------------------------------------------------------------------------

def bracket_transform_1d(ell: float, xi) -> np.ndarray:
    """Non-unitary transform of <y>**(-l) in 1D: closed Bessel-K form.

    Requires l > 1 (below that the transform is singular at the origin).
    xi**nu * K_nu(xi) tends to 2**(nu-1) Gamma(nu) as xi -> 0; switching to
    that limit for tiny xi avoids the K_nu overflow.
    """
    if ell <= 1.0:
        raise ValueError("bracket transform implemented for exponents > 1")
    xi = np.abs(np.asarray(xi, dtype=float))
    nu = (ell - 1.0) / 2.0
    coef = math.sqrt(2.0 * math.pi) / (2.0 ** ((ell - 2.0) / 2.0) * gamma_fn(ell / 2.0))
    out = np.empty_like(xi)
    tiny = xi < 1e-8
    out[tiny] = 2.0 ** (nu - 1.0) * gamma_fn(nu)
    big = ~tiny
    out[big] = xi[big] ** nu * kv(nu, xi[big])
    return coef * out


def fractional_laplacian_fourier(combo: BracketCombo, s: float, x: float,
                                 scale: float = 1.0) -> float:
    """Frequency-side evaluation of (-Lap)**s for n = 1.

    Uses (-Lap)**s f(x) = (1/pi) * int_0^inf xi**(2s) fhat(xi) cos(x xi) dxi
    with the closed-form Bessel-K transform of each bracket term; completely
    independent of the hypersingular route.
    """
    x = float(x)

    def fhat(xi: float) -> float:
        total = 0.0
        for c, ell in combo.terms:
            total += c * scale * float(bracket_transform_1d(ell, scale * xi))
        return total

    def integrand(xi: float) -> float:
        return xi ** (2.0 * s) * fhat(xi) * math.cos(x * xi)

    cutoff = 80.0 / scale
    # K_nu decays like exp(-scale*xi); resolve each cosine oscillation.
    # The oscillatory integral may cancel to zero, so the error is judged
    # against the non-oscillatory envelope.
    envelope = adaptive_quad(lambda xi: abs(xi ** (2.0 * s) * fhat(xi)),
                             0.0, cutoff, points=[1.0 / scale], rel_tol=1e-6)
    n_osc = 1 + int(abs(x) * cutoff / (2.0 * math.pi))
    val = adaptive_quad(integrand, 0.0, cutoff,
                        points=[0.1 / scale, 1.0 / scale],
                        rel_tol=1e-10, limit=max(200, 30 * n_osc),
                        err_scale=1e-2 * envelope)
    return val / math.pi


# --------------------------------------------------------------------------
# scaled test functions and the full (-Lap)**gamma evaluator
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TestFunctionSpec:
    """Scaled bracket test function <x/R>**(-r) with Laplacian order gamma."""

    __test__ = False  # not a pytest class despite the name

    gamma: float
    r: float
    R: float
    theta: Optional[float] = None

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError("gamma must be >= 1")
        if self.r <= 0 or self.R <= 0:
            raise ValueError("r and R must be positive")

    @property
    def s(self) -> float:
        frac = self.gamma - math.floor(self.gamma)
        return 0.0 if frac < 1e-9 or frac > 1.0 - 1e-9 else frac

    @property
    def int_part(self) -> int:
        return int(round(self.gamma)) if self.s == 0.0 else int(math.floor(self.gamma))

    @classmethod
    def for_blowup(cls, params: SystemParams, R: float) -> "TestFunctionSpec":
        """The construction tied to the equation: r = n + 2*theta, theta = sigma - [sigma]."""
        sigma = params.sigma1
        theta = sigma - math.floor(sigma)
        return cls(gamma=sigma, r=params.n + 2.0 * theta, R=R, theta=theta)


def fractional_laplacian_gamma(spec: TestFunctionSpec, x: float, n: int,
                               factored: bool = False,
                               rel_tol: float = 1e-10) -> float:
    """(-Lap)**gamma of <x/R>**(-r) at x.

    The integer part is the exact bracket recursion (its R-scaling is forced
    by the chain rule); the fractional remainder is evaluated directly on
    the R-scaled combo.  With factored=True the remainder is instead
    computed at x/R on the unit-scale combo and multiplied by R**(-2s);
    comparing both routes exercises the scaling identity nontrivially.
    """
    m = spec.int_part
    s = spec.s
    combo = integer_laplacian_bracket(spec.r, m, n)
    pref = spec.R ** (-2.0 * m)
    if s == 0.0:
        return pref * combo.value(abs(x), scale=spec.R)
    if factored:
        return (pref * spec.R ** (-2.0 * s)
                * fractional_laplacian_bracket(combo, s, x / spec.R, n,
                                               scale=1.0, rel_tol=rel_tol))
    return pref * fractional_laplacian_bracket(combo, s, x, n, scale=spec.R,
                                               rel_tol=rel_tol)


# --------------------------------------------------------------------------
# cutoffs in time and space
# --------------------------------------------------------------------------

def smooth_cutoff(t: float) -> tuple[float, float, float]:
    """C^2 quintic transition chi: exactly 1 on [0,1/2], exactly 0 on [1,inf).

    Returns (chi, chi', chi'').  On (1/2, 1), with tau = t - 1/2:
        chi = 1 - 80 tau^3 + 240 tau^4 - 192 tau^5,
    whose derivative is -960 tau^2 (1/2 - tau)^2 <= 0.
    """
    if t <= 0.5:
        return 1.0, 0.0, 0.0
    if t >= 1.0:
        return 0.0, 0.0, 0.0
    tau = t - 0.5
    chi = 1.0 - 80.0 * tau**3 + 240.0 * tau**4 - 192.0 * tau**5
    d1 = -960.0 * tau**2 * (0.5 - tau) ** 2
    d2 = -1920.0 * tau * (0.5 - tau) * (0.5 - 2.0 * tau)
    return chi, d1, d2


def eta(t: float, lam: float) -> float:
    """Time cutoff eta = chi**lam: 1 on [0,1/2], decreasing, 0 beyond 1."""
    if lam < 1:
        raise ValueError("lam must be >= 1")
    return smooth_cutoff(t)[0] ** lam


def eta_derivs(t: float, lam: float) -> tuple[float, float, float]:
    """(eta, eta', eta'') in closed form from the chi power construction."""
    chi, c1, c2 = smooth_cutoff(t)
    if chi == 0.0:
        return 0.0, 0.0, 0.0
    e = chi**lam
    e1 = lam * chi ** (lam - 1.0) * c1
    e2 = lam * (lam - 1.0) * chi ** (lam - 2.0) * c1 * c1 + lam * chi ** (lam - 1.0) * c2
    return e, e1, e2


def eta_ratio_sup(lam: float, kappa: float, n_grid: int = 20001) -> float:
    """sup over [1/2, 1] of eta**(-k'/k) (|eta'|**k' + |eta''|**k').

    Finite by construction whenever lam >= 2*k' (k' the conjugate of kappa).
    """
    kp = kappa / (kappa - 1.0)
    worst = 0.0
    for t in np.linspace(0.5, 1.0, n_grid)[:-1]:
        e, e1, e2 = eta_derivs(float(t), lam)
        if e == 0.0:
            continue
        worst = max(worst, e ** (-kp / kappa) * (abs(e1) ** kp + abs(e2) ** kp))
    return worst


def compact_cutoff(rho, lam: float):
    """Space cutoff chi(|x|)**lam: 1 inside radius 1/2, 0 outside radius 1."""
    rho = np.asarray(rho, dtype=float)
    flat = rho.ravel()
    res = np.empty_like(flat)
    for i, value in enumerate(flat):
        res[i] = smooth_cutoff(float(value))[0] ** lam
    out = res.reshape(rho.shape)
    return out if out.shape else float(out)


def fd_neg_laplacian(fn: Callable[[float], float], x: float, n: int,
                     m: int = 1, h: float = 1e-2) -> float:
    """(-Lap)**m of a radial profile by nested 4th-order centred differences.

    fn maps a (possibly negative) radial coordinate to the profile value;
    used as the independent oracle for the bracket recursion and for the
    integer-order cutoff.
    """
    if m == 0:
        return fn(x)

    def lap_once(g: Callable[[float], float]) -> Callable[[float], float]:
        def out(y: float) -> float:
            f2 = (-g(y + 2 * h) + 16 * g(y + h) - 30 * g(y) + 16 * g(y - h)
                  - g(y - 2 * h)) / (12 * h * h)
            if n == 1:
                return -f2
            f1 = (-g(y + 2 * h) + 8 * g(y + h) - 8 * g(y - h) + g(y - 2 * h)) / (12 * h)
            if abs(y) < 1e-12:
                return -(n * f2)
            return -(f2 + (n - 1) * f1 / y)
        return out

    g = fn
    for _ in range(m):
        g = lap_once(g)
    return g(x)


# --------------------------------------------------------------------------
# decay-envelope bounds and the duality pairing check
# --------------------------------------------------------------------------

def envelope_ratio(gamma: float, r: float, n: int,
                   x_samples: Sequence[float]) -> tuple[str, float]:
    """Max ratio of |(-Lap)**gamma <x>**(-r)| to its decay envelope.

    The envelope depends on how r + 2*[gamma] compares with n:
    below n it is <x>**(-r-2*gamma); at n it gains a log factor on top of
    <x>**(-n-2s); above n it is <x>**(-n-2s).  Returns (case label, bound).
    """
    spec = TestFunctionSpec(gamma=gamma, r=r, R=1.0)
    s = spec.s
    if s == 0.0:
        raise ValueError("the envelope bound concerns fractional gamma")
    key = r + 2.0 * spec.int_part
    if abs(key - n) < 1e-9:
        case = "log"
    elif key < n:
        case = "below"
    else:
        case = "above"
    worst = 0.0
    for x in x_samples:
        # bound-constant reporting; the far tail does not need tight quads
        val = abs(fractional_laplacian_gamma(spec, float(x), n, rel_tol=1e-6))
        bracket = math.sqrt(1.0 + x * x)
        if case == "below":
            env = bracket ** (-(r + 2.0 * gamma))
        elif case == "log":
            env = bracket ** (-(n + 2.0 * s)) * math.log(math.e + abs(x))
        else:
            env = bracket ** (-(n + 2.0 * s))
        worst = max(worst, val / env)
    return case, worst


def plancherel_pairing(spec: TestFunctionSpec, g: GaussianProfile,
                       sigma: float) -> tuple[float, float]:
    """Both sides of int psi_R (-Lap)**sigma g = int ((-Lap)**sigma psi_R) g, n = 1.

    The left side is computed on the frequency side from closed-form
    transforms, the right side in physical space through the hypersingular
    evaluator; the two routes share no code.
    """
    R = spec.R

    def lhs_integrand(xi: float) -> float:
        psi_hat = 0.0
        for c, ell in BracketCombo(((1.0, spec.r),)).terms:
            psi_hat += c * R * float(bracket_transform_1d(ell, R * xi)) / math.sqrt(2.0 * math.pi)
        return psi_hat * xi ** (2.0 * sigma) * float(g.hat(xi, 1))

    lhs = 2.0 * adaptive_quad(lhs_integrand, 0.0, 80.0 / min(R, 1.0) + 10.0 / g.width,
                              points=[0.5 / R, 2.0 / R], rel_tol=1e-9)

    gamma_spec = TestFunctionSpec(gamma=sigma, r=spec.r, R=R)

    def rhs_integrand(x: float) -> float:
        return fractional_laplacian_gamma(gamma_spec, x, 1) * float(g.value(x))

    rhs = 2.0 * adaptive_quad(rhs_integrand, 0.0, 9.0 * g.width,
                              points=[g.width, 3.0 * g.width], rel_tol=1e-7)
    return lhs, rhs


# --------------------------------------------------------------------------
# blow-up functionals on simulation output
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionalValues:
    I_R: float
    J_R: float
    I_R_t: float
    J_R_t: float


def _conjugate(exp: float) -> float:
    return exp / (exp - 1.0)


def functionals(result, grid, spec: TestFunctionSpec,
                params: SystemParams) -> FunctionalValues:
    """Blow-up functionals I_R, J_R (and late-window variants) from snapshots.

    I_R integrates |v|**p and J_R |u|**q against the space cutoff and the
    time cutoff eta over [0, R**(2*sigma)]; the space integral is a grid
    sum, the time integral a trapezoid over the recorded snapshots.  The
    late-window variants restrict to the second half of the window.
    Requires sigma1 == sigma2; for integer orders the compactly supported
    cutoff is used, otherwise the bracket <x/R>**(-r).
    """
    if not params.equal_orders():
        raise ValueError("functionals need sigma1 == sigma2")
    sigma = params.sigma1
    T = spec.R ** (2.0 * sigma)
    snaps = [(t, u, v) for (t, u, v) in result.snapshots if t <= T * (1.0 + 1e-9)]
    if not snaps:
        raise InsufficientSnapshotsError("no snapshots inside the time window")
    times = [t for t, _, _ in snaps]
    gaps = np.diff([0.0] + times + [T])
    if np.max(gaps) > 0.1 * T + 1e-12:
        raise InsufficientSnapshotsError(
            f"snapshot gap {np.max(gaps):.3g} exceeds 10% of window {T:.3g}")

    lam = 2.0 * max(_conjugate(params.p), _conjugate(params.q))
    radius = grid.radius()
    if abs(sigma - round(sigma)) < 1e-9:
        weight = compact_cutoff(radius / spec.R, lam)
    else:
        weight = (1.0 + (radius / spec.R) ** 2) ** (-spec.r / 2.0)
    dV = grid.dV

    def space_sum(field: np.ndarray, power: float) -> float:
        return float(np.sum(np.abs(field) ** power * weight) * dV)

    t_arr = np.array(times)
    eta_vals = np.array([eta(t / T, lam) for t in times])
    i_vals = np.array([space_sum(v, params.p) for _, _, v in snaps]) * eta_vals
    j_vals = np.array([space_sum(u, params.q) for _, u, _ in snaps]) * eta_vals

    def trapz(vals, lo, hi):
        mask = (t_arr >= lo - 1e-12) & (t_arr <= hi + 1e-12)
        if mask.sum() < 2:
            raise InsufficientSnapshotsError("fewer than two snapshots in window")
        return float(np.trapezoid(vals[mask], t_arr[mask]))

    return FunctionalValues(
        I_R=trapz(i_vals, 0.0, T),
        J_R=trapz(j_vals, 0.0, T),
        I_R_t=trapz(i_vals, T / 2.0, T),
        J_R_t=trapz(j_vals, T / 2.0, T),
    )
