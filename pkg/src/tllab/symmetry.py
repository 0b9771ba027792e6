"""Quantum-algebra generators, invariance checks, and degeneracy measurement.

The conserved generators of the open chain are the auxiliary-space matrix
elements of the leading monodromy matrices T^± (every site carrying the
constant R^± matrix).  The module verifies their commutation with the
transfer matrix, the two exchange identities behind it, and measures
eigenvalue degeneracies by a rank-revealing factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import DomainError, ModelParams
from .operators import (
    crossing_pair,
    embed_two,
    partial_transpose,
    r_asymptotic,
)
from .transfer import (
    TransferEval,
    _sweep_blocks,
    monodromy_dense,
    open_transfer,
    transfer_matrix,
)
from .bethe import eval_lambda

__all__ = [
    "DEGENERACY_PROBE",
    "SECOND_PROBE",
    "SymmetryReport",
    "generator_blocks",
    "generator_dense",
    "check_symmetry",
    "measure_degeneracy",
    "line_degeneracy",
]

DEGENERACY_PROBE = 0.93 + 0.41j
SECOND_PROBE = 0.57 - 0.68j


@dataclass(frozen=True)
class SymmetryReport:
    """Largest relative residuals of the invariance identities."""

    commutator_residual: float
    exchange_residual: float
    inversion_residual: float
    details: dict


def generator_blocks(params: ModelParams, sign: str) -> np.ndarray:
    """Blocks T^±_{ij} of the leading monodromy, shape (d, d, D, D)."""
    d = params.site_dim
    tensors = [r_asymptotic(sign, params).reshape(d, d, d, d)] * params.n_sites
    return _sweep_blocks(tensors, d, hatted=False)


def generator_dense(params: ModelParams, sign: str) -> np.ndarray:
    """T^± as one dense matrix on aux (x) chain (aux slowest)."""
    blocks = generator_blocks(params, sign)
    d = params.site_dim
    dim = d**params.n_sites
    return blocks.transpose(0, 2, 1, 3).reshape(d * dim, d * dim)


def _rel(delta: np.ndarray, scale: np.ndarray) -> float:
    return float(np.max(np.abs(delta)) / (1.0 + np.max(np.abs(scale))))


def check_symmetry(params: ModelParams, probes=(0.93 + 0.41j, 1.31 - 0.27j)):
    """Verify the generator commutation and its two supporting identities.

    Checks, for both signs:
      * [T^±_{ij}, t(u)] = 0 for all blocks, at each probe u;
      * [R^±_{12} T^±_1, T_2(u) T^_2(u)] = 0 on aux (x) aux (x) chain;
      * M_1^{-1} ((R^±)^{-1})^{t2} M_1 (R^±)^{t2} = Id.
    Returns the largest relative residual of each family.
    """
    d = params.site_dim
    dim = d**params.n_sites
    _, m = crossing_pair(params)
    details = {}
    comm_res = 0.0
    exch_res = 0.0
    inv_res = 0.0
    for sign in ("+", "-"):
        blocks = generator_blocks(params, sign)
        for u in probes:
            t = open_transfer(u, params).matrix
            worst = 0.0
            for i in range(d):
                for j in range(d):
                    g = blocks[i, j]
                    worst = max(worst, _rel(g @ t - t @ g, g @ t))
            details[f"commutator {sign} u={u}"] = worst
            comm_res = max(comm_res, worst)

        r_pm = r_asymptotic(sign, params)
        dims3 = [d, d, dim]
        t1 = embed_two(generator_dense(params, sign), dims3, 0, 2)
        r12 = embed_two(r_pm, dims3, 0, 1)
        for u in probes[:1]:
            dr = monodromy_dense(u, params) @ monodromy_dense(u, params, hatted=True)
            dr2 = embed_two(dr, dims3, 1, 2)
            lhs = r12 @ t1
            res = _rel(lhs @ dr2 - dr2 @ lhs, lhs @ dr2)
            details[f"exchange {sign} u={u}"] = res
            exch_res = max(exch_res, res)

        m1 = np.kron(m, np.eye(d, dtype=complex))
        pt_inv = partial_transpose(np.linalg.inv(r_pm), d, 2)
        pt_r = partial_transpose(r_pm, d, 2)
        ident = np.linalg.inv(m1) @ pt_inv @ m1 @ pt_r
        res = float(np.max(np.abs(ident - np.eye(d * d))))
        details[f"inversion {sign}"] = res
        inv_res = max(inv_res, res)
    return SymmetryReport(
        commutator_residual=comm_res,
        exchange_residual=exch_res,
        inversion_residual=inv_res,
        details=details,
    )


def measure_degeneracy(t_eval, lam, rank_tol: float = 1e-8):
    """Nullity of t(u0) - lambda Id via a column-pivoted QR factorization.

    Returns (nullity, ambiguous); ambiguous is set when some scaled pivot
    falls within a decade of the rank threshold, meaning the count could
    move under a slightly different tolerance.
    """
    mat = t_eval.matrix if isinstance(t_eval, TransferEval) else np.asarray(t_eval)
    n = mat.shape[0]
    shifted = mat - complex(lam) * np.eye(n, dtype=complex)
    r = scipy.linalg.qr(shifted, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(r))
    ref = diag[0] if diag.size else 0.0
    if ref == 0.0:
        return n, False
    thresh = rank_tol * ref
    rank = int(np.sum(diag > thresh))
    ambiguous = bool(np.any((diag > 0.1 * thresh) & (diag < 10.0 * thresh)))
    return n - rank, ambiguous


def line_degeneracy(
    params: ModelParams,
    kind: str,
    roots,
    twist=None,
    probe=DEGENERACY_PROBE,
    rank_tol: float = 1e-8,
):
    """Measured degeneracy of the eigenvalue carried by a set of Bethe roots.

    The probe point is nudged deterministically off any pole of Lambda.
    Returns (nullity, ambiguous).
    """
    p = complex(probe)
    for _ in range(60):
        try:
            lam = eval_lambda(p, roots, params, kind, twist)
            break
        except DomainError:
            p *= 1.0001937
    else:
        raise DomainError("no pole-free degeneracy probe found")
    te = transfer_matrix(p, params, kind)
    return measure_degeneracy(te, lam, rank_tol)
