"""Algebraic Bethe ansatz: states, off-shell action, and scalar products.

The double-row monodromy T(u) T^(u), viewed as a (2s+1) x (2s+1) matrix in
the auxiliary space, provides a single creation operator B(u) (its top-right
entry) and annihilation operator C(u) (bottom-left).  Bethe vectors are
B-strings on the reference state with every site in its first basis state.
All formulas below require homogeneous site weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import POLE_TOL, DomainError, ModelParams, omega
from .operators import crossing_pair
from .transfer import aux_blocks, open_transfer
from .bethe import eval_lambda, lambda_partial
from .symmetry import generator_blocks

__all__ = [
    "DoubleRow",
    "double_row",
    "BetheVector",
    "reference_state",
    "bethe_vector",
    "offshell_coefficient",
    "OffshellReport",
    "offshell_residual",
    "HighestWeightReport",
    "check_highest_weight",
    "gaudin_matrix",
    "scalar_product",
    "norm_squared",
    "contract_scalar_product",
    "contract_norm_squared",
]


class DoubleRow:
    """Auxiliary-space blocks of T(u) T^(u), computed lazily."""

    def __init__(self, u, params: ModelParams):
        self.u = complex(u)
        self.params = params
        self._plain = aux_blocks(self.u, params, hatted=False)
        self._hat = aux_blocks(self.u, params, hatted=True)
        self._blocks = {}

    def block(self, i: int, j: int) -> np.ndarray:
        """Quantum-space operator in auxiliary slot (i, j), zero-based."""
        if (i, j) not in self._blocks:
            d = self.params.site_dim
            out = self._plain[i, 0] @ self._hat[0, j]
            for c in range(1, d):
                out += self._plain[i, c] @ self._hat[c, j]
            self._blocks[(i, j)] = out
        return self._blocks[(i, j)]

    def creation(self) -> np.ndarray:
        return self.block(0, self.params.site_dim - 1)

    def annihilation(self) -> np.ndarray:
        return self.block(self.params.site_dim - 1, 0)

    def transfer(self) -> np.ndarray:
        _, m = crossing_pair(self.params)
        diag = np.diag(m)
        d = self.params.site_dim
        out = diag[0] * self.block(0, 0)
        for j in range(1, d):
            out += diag[j] * self.block(j, j)
        return out


@lru_cache(maxsize=6)
def double_row(params: ModelParams, u: complex) -> DoubleRow:
    return DoubleRow(u, params)


@dataclass(frozen=True)
class BetheVector:
    values: tuple
    vector: np.ndarray
    dual: bool
    vanished: bool


def reference_state(params: ModelParams) -> np.ndarray:
    vec = np.zeros(params.site_dim**params.n_sites, dtype=complex)
    vec[0] = 1.0
    return vec


def bethe_vector(values, params: ModelParams, dual: bool = False) -> BetheVector:
    """B(u_1)...B(u_M)|0> or the dual <0|C(u_1)...C(u_M)."""
    if not params.homogeneous:
        raise DomainError("Bethe vectors are defined for homogeneous weights")
    values = tuple(complex(v) for v in values)
    vec = reference_state(params)
    scale = 1.0
    if dual:
        for v in values:
            op = double_row(params, v).annihilation()
            scale *= max(1.0, float(np.max(np.abs(op))))
            vec = vec @ op
    else:
        for v in reversed(values):
            op = double_row(params, v).creation()
            scale *= max(1.0, float(np.max(np.abs(op))))
            vec = op @ vec
    vanished = bool(np.max(np.abs(vec)) <= 1e-12 * scale) if values else False
    return BetheVector(values=values, vector=vec, dual=dual, vanished=vanished)


def offshell_coefficient(u, values, k: int, params: ModelParams) -> complex:
    """Weight lambda_k of the unwanted term where u replaces the k-th value.

    lambda_k = -omega(q) omega(u^2 q^2) omega(u_k^2)
               / [omega(u/u_k) omega(u u_k q) omega(u_k^2 q)]
               * [ omega(u_k q)^(2N) prod_(j!=k) omega(u_k/(u_j q)) omega(u_k u_j)
                                              / (omega(u_k/u_j) omega(u_k u_j q))
                 - omega(u_k)^(2N)  prod_(j!=k) omega(u_k q/u_j) omega(u_k u_j q^2)
                                              / (omega(u_k/u_j) omega(u_k u_j q)) ].
    """
    u = complex(u)
    q = params.q
    two_n = 2 * params.n_sites
    uk = complex(values[k])
    for name, val in (
        ("omega(u/u_k)", omega(u / uk)),
        ("omega(u u_k q)", omega(u * uk * q)),
        ("omega(u_k^2 q)", omega(uk * uk * q)),
    ):
        if abs(val) < POLE_TOL:
            raise DomainError(f"offshell coefficient pole: {name} vanishes")
    pref = -(
        omega(q)
        * omega(u * u * q * q)
        * omega(uk * uk)
        / (omega(u / uk) * omega(u * uk * q) * omega(uk * uk * q))
    )
    t1 = omega(uk * q) ** two_n
    t2 = omega(uk) ** two_n
    for j, uj in enumerate(values):
        if j == k:
            continue
        uj = complex(uj)
        denom = omega(uk / uj) * omega(uk * uj * q)
        if abs(denom) < POLE_TOL:
            raise DomainError("offshell coefficient pole: coincident values")
        t1 *= omega(uk / (uj * q)) * omega(uk * uj) / denom
        t2 *= omega(uk * q / uj) * omega(uk * uj * q * q) / denom
    return pref * (t1 - t2)


@dataclass(frozen=True)
class OffshellReport:
    residual: float
    eigenvalue: complex
    coefficients: tuple
    vanished: bool


def offshell_residual(
    u, values, params: ModelParams, dual: bool = False
) -> OffshellReport:
    """Relative residual of the off-shell transfer-matrix action.

    Measures t(u)|v> - Lambda(u; v)|v> - sum_k lambda_k |v with v_k -> u>
    against |t(u)|v>| (row-vector version when ``dual``).
    """
    u = complex(u)
    values = tuple(complex(v) for v in values)
    state = bethe_vector(values, params, dual=dual)
    t = open_transfer(u, params).matrix
    lhs = state.vector @ t if dual else t @ state.vector
    lam = eval_lambda(u, values, params, "open")
    rhs = lam * state.vector
    coeffs = []
    for k in range(len(values)):
        ck = offshell_coefficient(u, values, k, params)
        coeffs.append(ck)
        replaced = values[:k] + (u,) + values[k + 1 :]
        rhs = rhs + ck * bethe_vector(replaced, params, dual=dual).vector
    num = float(np.max(np.abs(lhs - rhs)))
    den = 1.0 + float(np.max(np.abs(lhs)))
    return OffshellReport(
        residual=num / den,
        eigenvalue=lam,
        coefficients=tuple(coeffs),
        vanished=state.vanished,
    )


@dataclass(frozen=True)
class HighestWeightReport:
    annihilation_residual: float
    eigen_residual: float
    weights: tuple


def check_highest_weight(roots, params: ModelParams) -> HighestWeightReport:
    """On-shell states against the raising/weight structure of T^+.

    Lower-triangular blocks must annihilate the state; diagonal blocks must
    act as scalars h_i (measured by a Rayleigh quotient).
    """
    state = bethe_vector(roots, params).vector
    norm = float(np.max(np.abs(state)))
    if norm == 0.0:
        raise DomainError("Bethe vector vanished; no highest-weight check")
    blocks = generator_blocks(params, "+")
    d = params.site_dim
    ann = 0.0
    for i in range(d):
        for j in range(i):
            g = blocks[i, j]
            scale = norm * (1.0 + float(np.max(np.abs(g))))
            ann = max(ann, float(np.max(np.abs(g @ state))) / scale)
    weights = []
    eig = 0.0
    denom = complex(np.vdot(state, state))
    for i in range(d):
        g = blocks[i, i]
        h = complex(np.vdot(state, g @ state)) / denom
        weights.append(h)
        eig = max(
            eig,
            float(np.max(np.abs(g @ state - h * state)))
            / (norm * (1.0 + abs(h))),
        )
    return HighestWeightReport(
        annihilation_residual=ann, eigen_residual=eig, weights=tuple(weights)
    )


def gaudin_matrix(roots, params: ModelParams) -> np.ndarray:
    """The matrix G whose determinant gives the squared norm."""
    roots = tuple(complex(r) for r in roots)
    q = params.q
    n = params.n_sites
    m = len(roots)
    g = np.zeros((m, m), dtype=complex)
    for i in range(m):
        ui = roots[i]
        s_i = -2.0 * n * omega(q) / (omega(ui) * omega(ui * q))
        acc = 0.0 + 0.0j
        for k in range(m):
            if k == i:
                continue
            uk = roots[k]
            acc += 1.0 / (omega(ui / (q * uk)) * omega(ui * q / uk))
            acc += 1.0 / (omega(ui * uk) * omega(ui * uk * q * q))
        s_i += omega(q * q) * acc
        for j in range(m):
            uj = roots[j]
            pref = 1.0 + 0.0j
            for k in range(m):
                if k == i or k == j:
                    continue
                uk = roots[k]
                pref *= omega(uj / uk * q) * omega(uj * uk * q * q)
            pref /= omega(uj / (ui * q)) * omega(ui * uj)
            if i == j:
                bracket = (
                    omega(q)
                    * omega(ui * ui)
                    / (omega(q * q) * omega(ui * ui * q) ** 2)
                ) * s_i
            else:
                bracket = 1.0 + 0.0j
            g[i, j] = pref * bracket
    return g


def scalar_product(on_roots, off_values, params: ModelParams) -> complex:
    """Determinant formula for <on-shell roots | off-shell values>.

    <u|v> = (1/(2 Q^(2s)))^M
            prod_i omega(u_i)^(2N) u_i omega(u_i^2)
                   / (omega(u_i^2 q) omega(v_i^2 q^2))
            prod_(j<i) omega(u_i u_j q^2)/omega(u_i u_j)
            Det[d Lambda(v_j; u)/d u_i] / Det[1/(omega(v_i/u_j) omega(v_i u_j q))].
    """
    u = tuple(complex(r) for r in on_roots)
    v = tuple(complex(r) for r in off_values)
    if len(u) != len(v):
        raise DomainError("scalar product needs equally many roots and values")
    m = len(u)
    q = params.q
    two_n = 2 * params.n_sites
    pref = (0.5 / params.big_q**params.twice_spin) ** m
    for i in range(m):
        pref *= (
            omega(u[i]) ** two_n
            * u[i]
            * omega(u[i] * u[i])
            / (omega(u[i] * u[i] * q) * omega(v[i] * v[i] * q * q))
        )
        for j in range(i):
            pref *= omega(u[i] * u[j] * q * q) / omega(u[i] * u[j])
    if m == 0:
        return complex(pref)
    slavnov = np.zeros((m, m), dtype=complex)
    for j in range(m):
        slavnov[:, j] = lambda_partial(v[j], u, params, kind="open")
    cauchy = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            cauchy[i, j] = 1.0 / (omega(v[i] / u[j]) * omega(v[i] * u[j] * q))
    return complex(pref * np.linalg.det(slavnov) / np.linalg.det(cauchy))


def norm_squared(roots, params: ModelParams) -> complex:
    """Determinant formula for <u|u> (bilinear pairing, not a modulus).

    <u|u> = (omega(q) omega(-q^2)/Q^(2s))^M
            prod_i omega(u_i)^(4N) omega(u_i^2)^2
            prod_(j<i) omega(u_i u_j q^2)
                       / (omega(u_j/u_i) omega(u_i/u_j)
                          omega(u_i u_j) omega(u_i u_j q)^2)
            Det(G).
    """
    u = tuple(complex(r) for r in roots)
    m = len(u)
    q = params.q
    pref = (omega(q) * omega(-q * q) / params.big_q**params.twice_spin) ** m
    for i in range(m):
        pref *= omega(u[i]) ** (4 * params.n_sites) * omega(u[i] * u[i]) ** 2
        for j in range(i):
            pref *= omega(u[i] * u[j] * q * q) / (
                omega(u[j] / u[i])
                * omega(u[i] / u[j])
                * omega(u[i] * u[j])
                * omega(u[i] * u[j] * q) ** 2
            )
    if m == 0:
        return complex(pref)
    return complex(pref * np.linalg.det(gaudin_matrix(u, params)))


def contract_scalar_product(on_roots, off_values, params: ModelParams) -> complex:
    """Direct contraction <0| prod C(u_i) prod B(v_j) |0> (oracle)."""
    bra = bethe_vector(on_roots, params, dual=True).vector
    ket = bethe_vector(off_values, params, dual=False).vector
    return complex(bra @ ket)


def contract_norm_squared(roots, params: ModelParams) -> complex:
    return contract_scalar_product(roots, roots, params)
