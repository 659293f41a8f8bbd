"""Shape operators for real embedded surfaces.

The same blade/shape machinery in its original habitat: a d-dimensional
manifold embedded in R^N by f, with tangent projector P built from the
tangent vectors f_mu, reflection R = 2P - I, real shape operator
S_mu = (1/2) R dR, and curvature Omega = -[S_mu, S_nu] whose tangent part
reproduces the Riemann tensor, R_{rho sigma mu nu} = f_rho . (Omega f_sigma).

An independent intrinsic (Christoffel-symbol) oracle is included for
acceptance cross-checks; it differentiates only the induced metric and is
test infrastructure, not part of the modelling API.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ChartError, ConsistencyError
from .fields import FieldFn, euclidean
from .linalg import max_abs
from .tolerances import DEFAULT as TOL

__all__ = [
    "Embedding", "plane", "sphere", "cylinder", "torus",
    "tangent_frame", "induced_metric", "embedded_blade", "embedded_shape",
    "embedded_curvature", "embedded_curvature_paths", "riemann_component",
    "embedded_shape_identity_residual", "embedded_covariant_derivative",
    "christoffel_riemann", "gauss_curvature",
]


@dataclass(frozen=True)
class Embedding:
    """Smooth f: R^d -> R^N with independent tangent vectors f_mu = d_mu f."""

    d: int
    N: int
    f: FieldFn  # (N,)-valued, real


def _chart_field(d, N, value, jac=None, hess=None):
    st = euclidean(d)
    deriv = None if jac is None else (lambda x, mu: jac(x)[:, mu])
    deriv2 = None if hess is None else (lambda x, mu, nu: hess(x)[:, mu, nu])
    return Embedding(d, N, FieldFn(st, (N,), value, deriv, deriv2))


def plane():
    """f(u, v) = (u, v, 0)."""
    def value(x):
        return np.array([x[0], x[1], 0.0])

    def jac(x):
        return np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])

    def hess(x):
        return np.zeros((3, 2, 2))

    return _chart_field(2, 3, value, jac, hess)


def sphere(a=1.0):
    """Radius-a sphere in the (theta, phi) chart."""
    def value(x):
        th, ph = x
        return a * np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])

    def jac(x):
        th, ph = x
        return a * np.array([
            [np.cos(th) * np.cos(ph), -np.sin(th) * np.sin(ph)],
            [np.cos(th) * np.sin(ph), np.sin(th) * np.cos(ph)],
            [-np.sin(th), 0.0],
        ])

    def hess(x):
        th, ph = x
        h = np.zeros((3, 2, 2))
        h[:, 0, 0] = a * np.array([-np.sin(th) * np.cos(ph), -np.sin(th) * np.sin(ph), -np.cos(th)])
        h[:, 0, 1] = h[:, 1, 0] = a * np.array([-np.cos(th) * np.sin(ph), np.cos(th) * np.cos(ph), 0.0])
        h[:, 1, 1] = a * np.array([-np.sin(th) * np.cos(ph), -np.sin(th) * np.sin(ph), 0.0])
        return h

    return _chart_field(2, 3, value, jac, hess)


def cylinder():
    """f(u, v) = (cos u, sin u, v); flat metric, nonzero shape operator."""
    def value(x):
        return np.array([np.cos(x[0]), np.sin(x[0]), x[1]])

    def jac(x):
        return np.array([[-np.sin(x[0]), 0.0], [np.cos(x[0]), 0.0], [0.0, 1.0]])

    def hess(x):
        h = np.zeros((3, 2, 2))
        h[:, 0, 0] = np.array([-np.cos(x[0]), -np.sin(x[0]), 0.0])
        return h

    return _chart_field(2, 3, value, jac, hess)


def torus(rmaj=2.0, rmin=0.5):
    """Standard torus; Gauss curvature cos v / (rmin (rmaj + rmin cos v))."""
    def value(x):
        u, v = x
        w = rmaj + rmin * np.cos(v)
        return np.array([w * np.cos(u), w * np.sin(u), rmin * np.sin(v)])

    def jac(x):
        u, v = x
        w = rmaj + rmin * np.cos(v)
        return np.array([
            [-w * np.sin(u), -rmin * np.sin(v) * np.cos(u)],
            [w * np.cos(u), -rmin * np.sin(v) * np.sin(u)],
            [0.0, rmin * np.cos(v)],
        ])

    def hess(x):
        u, v = x
        w = rmaj + rmin * np.cos(v)
        h = np.zeros((3, 2, 2))
        h[:, 0, 0] = np.array([-w * np.cos(u), -w * np.sin(u), 0.0])
        h[:, 0, 1] = h[:, 1, 0] = np.array([rmin * np.sin(v) * np.sin(u),
                                            -rmin * np.sin(v) * np.cos(u), 0.0])
        h[:, 1, 1] = np.array([-rmin * np.cos(v) * np.cos(u),
                               -rmin * np.cos(v) * np.sin(u), -rmin * np.sin(v)])
        return h

    return _chart_field(2, 3, value, jac, hess)


# ---------------------------------------------------------------------------
# pointwise machinery

def tangent_frame(emb: Embedding, x):
    """N x d matrix of tangent vectors f_mu."""
    return np.stack([np.real(emb.f.d(x, mu)) for mu in range(emb.d)], axis=-1)


def induced_metric(emb: Embedding, x, cond_limit=1e8):
    """g_mu nu = f_mu . f_nu; raises on a numerically degenerate chart."""
    fr = tangent_frame(emb, x)
    g = fr.T @ fr
    if np.linalg.cond(g) > cond_limit:
        raise ChartError(f"degenerate chart at {x}: metric condition number too large")
    return g


def embedded_blade(emb: Embedding, x):
    """Reflection R = 2P - I with P the tangent projector F (F^T F)^-1 F^T."""
    fr = tangent_frame(emb, x)
    g = induced_metric(emb, x)
    p = fr @ np.linalg.solve(g, fr.T)
    return 2.0 * p - np.eye(emb.N)


def _projector_derivative(emb: Embedding, x, mu):
    """d_mu P, analytic when the embedding carries second derivatives."""
    if emb.f.deriv2 is None:
        h = emb.f.fd_step
        e = np.zeros(emb.d)
        e[mu] = h
        pp = 0.5 * (embedded_blade(emb, x + e) + np.eye(emb.N))
        pm = 0.5 * (embedded_blade(emb, x - e) + np.eye(emb.N))
        return (pp - pm) / (2.0 * h)
    fr = tangent_frame(emb, x)
    dfr = np.stack([np.real(emb.f.d2(x, nu, mu)) for nu in range(emb.d)], axis=-1)
    g = fr.T @ fr
    ginv = np.linalg.inv(g)
    dg = dfr.T @ fr + fr.T @ dfr
    dginv = -ginv @ dg @ ginv
    return dfr @ ginv @ fr.T + fr @ dginv @ fr.T + fr @ ginv @ dfr.T


def embedded_shape(emb: Embedding, x, mu):
    """S_mu = (1/2) R dR; skew, exchanging tangent and normal vectors."""
    r = embedded_blade(emb, x)
    dr = 2.0 * _projector_derivative(emb, x, mu)
    return 0.5 * r @ dr


def embedded_curvature(emb: Embedding, x, mu, nu):
    """Omega_mu nu = -[S_mu, S_nu]."""
    smu = embedded_shape(emb, x, mu)
    snu = embedded_shape(emb, x, nu)
    return -(smu @ snu - snu @ smu)


def embedded_curvature_paths(emb: Embedding, x, mu, nu, tol=None):
    """Both curvature expressions, cross-checked.

    Returns (-[S, S] value, (1/4)[dR, dR] value, discrepancy); raises
    ConsistencyError beyond the tolerance.
    """
    tol = TOL.fd_nested() if tol is None else tol
    omega_s = embedded_curvature(emb, x, mu, nu)
    dr_mu = 2.0 * _projector_derivative(emb, x, mu)
    dr_nu = 2.0 * _projector_derivative(emb, x, nu)
    omega_r = 0.25 * (dr_mu @ dr_nu - dr_nu @ dr_mu)
    disc = max_abs(omega_s - omega_r)
    if disc > tol:
        raise ConsistencyError(f"curvature expressions disagree by {disc:.3e} at {x}")
    return omega_s, omega_r, disc


def riemann_component(emb: Embedding, x, rho, sigma, mu, nu):
    """R_{rho sigma mu nu} = f_rho . (Omega_mu nu f_sigma)."""
    fr = tangent_frame(emb, x)
    omega = embedded_curvature(emb, x, mu, nu)
    return float(fr[:, rho] @ omega @ fr[:, sigma])


def gauss_curvature(emb: Embedding, x):
    """R_0101 / det g for two-dimensional charts."""
    if emb.d != 2:
        raise ChartError("gauss_curvature requires a 2d chart")
    g = induced_metric(emb, x)
    return riemann_component(emb, x, 0, 1, 0, 1) / float(np.linalg.det(g))


def embedded_shape_identity_residual(emb: Embedding, x, mu, nu, h=None):
    """d_mu S_nu - d_nu S_mu + 2 [S_mu, S_nu]; zero for genuine embeddings."""
    h = emb.f.fd_step if h is None else h

    def s(y, axis):
        return embedded_shape(emb, y, axis)

    emu = np.zeros(emb.d)
    emu[mu] = h
    enu = np.zeros(emb.d)
    enu[nu] = h
    dsnu = (s(x + emu, nu) - s(x - emu, nu)) / (2.0 * h)
    dsmu = (s(x + enu, mu) - s(x - enu, mu)) / (2.0 * h)
    smu, snu = s(x, mu), s(x, nu)
    return dsnu - dsmu + 2.0 * (smu @ snu - snu @ smu)


def embedded_covariant_derivative(emb: Embedding, v: FieldFn, mu, x):
    """D_mu v = d_mu v + S_mu v for R^N-valued fields along the chart."""
    return np.real(v.d(x, mu)) + embedded_shape(emb, x, mu) @ np.real(v(x))


# ---------------------------------------------------------------------------
# intrinsic oracle (test infrastructure)

def christoffel_riemann(metric_fn, x, h=1e-4):
    """All-lower Riemann tensor from a metric function alone (d = 2).

    Conventions: Gamma^a_{bc} = (1/2) g^{ad} (d_b g_dc + d_c g_db - d_d g_bc),
    R^a_{b mu nu} = d_mu Gamma^a_{nu b} - d_nu Gamma^a_{mu b}
                    + Gamma^a_{mu e} Gamma^e_{nu b} - Gamma^a_{nu e} Gamma^e_{mu b},
    lowered with g.  Metric derivatives by central differences of step h; the
    only input is the metric, so this is independent of the shape-operator path.
    """
    x = np.asarray(x, dtype=float)
    d = len(x)

    def dg(y, c):
        e = np.zeros(d)
        e[c] = h
        return (np.asarray(metric_fn(y + e)) - np.asarray(metric_fn(y - e))) / (2.0 * h)

    def gamma(y):
        g = np.asarray(metric_fn(y))
        ginv = np.linalg.inv(g)
        dgs = np.stack([dg(y, c) for c in range(d)], axis=0)  # dgs[c] = d_c g
        out = np.zeros((d, d, d))
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    out[a, b, c] = 0.5 * sum(
                        ginv[a, e] * (dgs[b][e, c] + dgs[c][e, b] - dgs[e][b, c])
                        for e in range(d))
        return out

    def dgamma(y, c):
        e = np.zeros(d)
        e[c] = h
        return (gamma(y + e) - gamma(y - e)) / (2.0 * h)

    gam = gamma(x)
    dgam = np.stack([dgamma(x, c) for c in range(d)], axis=0)
    riem_up = np.zeros((d, d, d, d))
    for a in range(d):
        for b in range(d):
            for mu in range(d):
                for nu in range(d):
                    val = dgam[mu][a, nu, b] - dgam[nu][a, mu, b]
                    val += sum(gam[a, mu, e] * gam[e, nu, b]
                               - gam[a, nu, e] * gam[e, mu, b] for e in range(d))
                    riem_up[a, b, mu, nu] = val
    g = np.asarray(metric_fn(x))
    return np.einsum("ae,ebmn->abmn", g, riem_up)
