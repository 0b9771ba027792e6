"""Bethe-ansatz eigenvalue functions, residuals, and derived observables.

Roots always refer to the multiplicative spectral variable.  Open-chain
Q-functions are crossing symmetric, Q(u) = prod_k omega(u/u_k) omega(u q u_k),
while closed-chain ones are plain products Q(u) = prod_k omega(u/u_k).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    POLE_TOL,
    DomainError,
    ModelParams,
    omega,
    omega_prime,
    pi_phase,
)

__all__ = [
    "BetheSolution",
    "SpectralLine",
    "eval_a_d",
    "q_function",
    "eval_lambda",
    "lambda_partial",
    "bethe_residuals",
    "energy",
    "twist_from_roots",
    "shift_eigenvalue",
    "lambda_leading",
]


@dataclass(frozen=True)
class BetheSolution:
    """One solution of the Bethe equations.

    ``sector`` is the momentum label l of the closed chain (None when open);
    ``twist`` is the closed-chain twist kappa fixed by the roots and l.
    """

    kind: str
    roots: tuple
    sector: int | None = None
    twist: complex | None = None
    residual_norm: float = 0.0

    @property
    def n_roots(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class SpectralLine:
    """A Bethe solution together with everything measured about it."""

    solution: BetheSolution
    energy: complex | None = None
    lambda_samples: tuple = ()
    deg_measured: int | None = None
    deg_predicted: int | None = None
    shift: complex | None = None
    warnings: tuple = field(default=())


def _phi(x):
    """Logarithmic derivative omega'(x)/omega(x)."""
    return omega_prime(x) / omega(x)


def eval_a_d(u, params: ModelParams, kind: str, twist=None):
    """The vacuum amplitudes (a(u), d(u)) entering the eigenvalue ansatz."""
    u = complex(u)
    q = params.q
    if kind == "open":
        denom = omega(u * u * q)
        if abs(denom) < POLE_TOL:
            raise DomainError(f"a/d pole: omega(u^2 q) vanishes at u = {u}")
        prod_a = 1.0 + 0.0j
        prod_d = 1.0 + 0.0j
        for theta in params.thetas:
            prod_a *= omega(u * q / theta) * omega(u * q * theta)
            prod_d *= omega(u / theta) * omega(u * theta)
        a = -(omega(u * u * q * q) / denom) * prod_a
        d = -(omega(u * u) / denom) * prod_d
        return a, d
    if kind == "closed":
        if twist is None:
            raise DomainError("closed-chain a/d need the twist kappa")
        sign = pi_phase(params.twice_spin / 2.0)
        prod_a = 1.0 + 0.0j
        prod_d = 1.0 + 0.0j
        for theta in params.thetas:
            prod_a *= sign * omega(u * q / theta)
            prod_d *= sign * omega(u / theta)
        return twist * prod_a, prod_d / twist
    raise DomainError(f"kind must be 'open' or 'closed', got {kind!r}")


def q_function(u, roots, q, kind: str):
    u = complex(u)
    out = 1.0 + 0.0j
    if kind == "open":
        for r in roots:
            out *= omega(u / r) * omega(u * q * r)
    elif kind == "closed":
        for r in roots:
            out *= omega(u / r)
    else:
        raise DomainError(f"kind must be 'open' or 'closed', got {kind!r}")
    return out


def eval_lambda(u, roots, params: ModelParams, kind: str, twist=None):
    """The transfer-matrix eigenvalue Lambda(u) built from Bethe roots.

    Lambda(u) = a(u) Q(u/q)/Q(u) + d(u) Q(u q)/Q(u).
    """
    u = complex(u)
    q = params.q
    qu = q_function(u, roots, q, kind)
    if abs(qu) < POLE_TOL:
        raise DomainError(f"Q(u) vanishes at u = {u}; Lambda has a pole there")
    a, d = eval_a_d(u, params, kind, twist)
    return a * q_function(u / q, roots, q, kind) / qu + d * q_function(
        u * q, roots, q, kind
    ) / qu


def lambda_partial(v, roots, params: ModelParams, kind: str = "open", sector=None):
    """Gradient of Lambda(v) with respect to each Bethe root (analytic).

    For the closed chain the twist kappa is itself a function of the roots
    (through the sector label), and that dependence is included.
    """
    v = complex(v)
    q = params.q
    roots = tuple(complex(r) for r in roots)
    qu = q_function(v, roots, q, kind)
    if abs(qu) < POLE_TOL:
        raise DomainError(f"Q(v) vanishes at v = {v}")
    if kind == "open":
        a, d = eval_a_d(v, params, "open")
        term_a = a * q_function(v / q, roots, q, "open") / qu
        term_d = d * q_function(v * q, roots, q, "open") / qu
        grad = np.zeros(len(roots), dtype=complex)
        for i, ui in enumerate(roots):
            l1 = (
                _phi(v / (q * ui)) * (-v / (q * ui * ui))
                + _phi(v * ui) * v
                - _phi(v / ui) * (-v / (ui * ui))
                - _phi(v * q * ui) * (v * q)
            )
            l2 = (
                _phi(v * q / ui) * (-v * q / (ui * ui))
                + _phi(v * q * q * ui) * (v * q * q)
                - _phi(v / ui) * (-v / (ui * ui))
                - _phi(v * q * ui) * (v * q)
            )
            grad[i] = term_a * l1 + term_d * l2
        return grad
    if kind == "closed":
        if sector is None:
            raise DomainError("closed-chain lambda_partial needs the sector label")
        kappa = twist_from_roots(roots, sector, params)
        a, d = eval_a_d(v, params, "closed", kappa)
        term_a = a * q_function(v / q, roots, q, "closed") / qu
        term_d = d * q_function(v * q, roots, q, "closed") / qu
        grad = np.zeros(len(roots), dtype=complex)
        for i, ui in enumerate(roots):
            dlog_kappa = _phi(ui) - q * _phi(q * ui)
            l1 = (
                _phi(v / (q * ui)) * (-v / (q * ui * ui))
                - _phi(v / ui) * (-v / (ui * ui))
            )
            l2 = (
                _phi(v * q / ui) * (-v * q / (ui * ui))
                - _phi(v / ui) * (-v / (ui * ui))
            )
            grad[i] = term_a * (l1 + dlog_kappa) + term_d * (l2 - dlog_kappa)
        return grad
    raise DomainError(f"kind must be 'open' or 'closed', got {kind!r}")


def bethe_residuals(
    roots, params: ModelParams, kind: str, twist=None, scaled: bool = False
):
    """Cleared-denominator Bethe-equation residuals, one per root.

    Open chain (inhomogeneous weights allowed):
      A_k = prod_i omega(u_k q/th_i) omega(u_k q th_i)
            * prod_{j!=k} omega(u_k/(q u_j)) omega(u_k u_j)
      B_k = prod_i omega(u_k/th_i) omega(u_k th_i)
            * prod_{j!=k} omega(u_k q/u_j) omega(u_k q^2 u_j)
    Closed chain:
      A_k = kappa   * prod_i omega(u_k q/th_i) * prod_{j!=k} omega(u_k/(q u_j))
      B_k = 1/kappa * prod_i omega(u_k/th_i)   * prod_{j!=k} omega(u_k q/u_j)
    The residual is A_k - B_k; with ``scaled`` it is divided by
    1 + |A_k| + |B_k|.
    """
    roots = [complex(r) for r in roots]
    q = params.q
    m = len(roots)
    res = np.zeros(m, dtype=complex)
    if kind == "closed" and twist is None:
        raise DomainError("closed-chain residuals need the twist kappa")
    for k, uk in enumerate(roots):
        if kind == "open":
            a_k = 1.0 + 0.0j
            b_k = 1.0 + 0.0j
            for theta in params.thetas:
                a_k *= omega(uk * q / theta) * omega(uk * q * theta)
                b_k *= omega(uk / theta) * omega(uk * theta)
            for j, uj in enumerate(roots):
                if j == k:
                    continue
                a_k *= omega(uk / (q * uj)) * omega(uk * uj)
                b_k *= omega(uk * q / uj) * omega(uk * q * q * uj)
        else:
            a_k = complex(twist)
            b_k = 1.0 / complex(twist)
            for theta in params.thetas:
                a_k *= omega(uk * q / theta)
                b_k *= omega(uk / theta)
            for j, uj in enumerate(roots):
                if j == k:
                    continue
                a_k *= omega(uk / (q * uj))
                b_k *= omega(uk * q / uj)
        diff = a_k - b_k
        if scaled:
            diff = diff / (1.0 + abs(a_k) + abs(b_k))
        res[k] = diff
    return res


def energy(roots, params: ModelParams):
    """Open-chain energy carried by a set of Bethe roots.

    E = (1/2) omega(q) sum_j [omega(u_j^2)/omega(u_j)^2
                              - omega(u_j^2 q^2)/omega(u_j q)^2].
    """
    q = params.q
    total = 0.0 + 0.0j
    for r in roots:
        r = complex(r)
        total += omega(r * r) / omega(r) ** 2 - omega(r * r * q * q) / omega(r * q) ** 2
    return 0.5 * omega(q) * total


def twist_from_roots(roots, sector: int, params: ModelParams):
    """Closed-chain twist kappa determined by the roots and momentum label."""
    n = params.n_sites
    q = params.q
    kappa = np.exp(2j * np.pi * sector / n) * pi_phase(-params.twice_spin * n / 2.0)
    for r in roots:
        kappa *= omega(r) / omega(q * r)
    return complex(kappa)


def shift_eigenvalue(solution: BetheSolution, params: ModelParams):
    """Eigenvalue of the one-site shift operator on the solution's line."""
    if solution.kind != "closed":
        raise DomainError("the shift operator only exists on the closed chain")
    out = solution.twist * pi_phase(params.twice_spin * params.n_sites / 2.0)
    for r in solution.roots:
        out *= omega(params.q * r) / omega(r)
    return complex(out)


def lambda_leading(solution: BetheSolution, params: ModelParams):
    """Coefficient of u^N in the closed-chain eigenvalue as u -> infinity.

    lambda_inf = e^(i pi s N) (kappa q^(N-M) + kappa^(-1) q^M); it must be an
    eigenvalue of the traced leading monodromy.
    """
    if solution.kind != "closed":
        raise DomainError("leading eigenvalue defined for the closed chain")
    n = params.n_sites
    m = solution.n_roots
    kappa = complex(solution.twist)
    phase = pi_phase(params.twice_spin * n / 2.0)
    return phase * (kappa * params.q ** (n - m) + params.q**m / kappa)
