"""Transfer matrices: special values, commutativity, Hamiltonian limits."""

import numpy as np

from tllab.core import ModelParams, omega
from tllab.operators import hamiltonian
from tllab.suites import shift_operator
from tllab.transfer import (
    closed_asymptotic_trace,
    closed_transfer,
    hamiltonian_from_transfer,
    open_transfer,
    random_thetas,
    transfer_matrix,
)


def _rel(a, b):
    return np.max(np.abs(a - b)) / (1.0 + np.max(np.abs(a)) + np.max(np.abs(b)))


def test_open_transfer_at_one_is_scalar():
    for n_sites, spin in ((2, "1/2"), (3, "1/2"), (2, "1")):
        params = ModelParams.create(n_sites, spin)
        t1 = open_transfer(1.0, params).matrix
        scalar = params.coupling * omega(params.q) ** (2 * n_sites)
        assert _rel(t1, scalar * np.eye(t1.shape[0])) < 1e-12, (n_sites, spin)


def test_closed_transfer_at_one_is_shift():
    for n_sites, spin in ((2, "1/2"), (3, "1/2"), (2, "1"), (3, "1")):
        params = ModelParams.create(n_sites, spin)
        t1 = closed_transfer(1.0, params).matrix
        shift = shift_operator(n_sites, params.site_dim)
        assert _rel(t1, omega(params.q) ** n_sites * shift) < 1e-12, (n_sites, spin)


def test_shift_operator_has_unit_order():
    for n_sites, d in ((2, 2), (3, 2), (3, 3), (4, 2)):
        shift = shift_operator(n_sites, d)
        power = np.linalg.matrix_power(shift, n_sites)
        assert _rel(power, np.eye(d**n_sites)) < 1e-14


def test_transfer_family_commutes_with_generic_inhomogeneities():
    rng = np.random.default_rng(31)
    for kind in ("open", "closed"):
        thetas = random_thetas(3, rng, q=0.5)
        params = ModelParams.create(3, "1/2", thetas=thetas)
        t1 = transfer_matrix(0.78 - 0.41j, params, kind).matrix
        t2 = transfer_matrix(1.23 + 0.57j, params, kind).matrix
        assert _rel(t1 @ t2, t2 @ t1) < 1e-12, kind


def test_open_transfer_crossing_invariance():
    rng = np.random.default_rng(32)
    thetas = random_thetas(2, rng, q=0.5)
    params = ModelParams.create(2, "1", thetas=thetas)
    u = 1.12 - 0.33j
    left = open_transfer(u, params).matrix
    right = open_transfer(-1.0 / (u * params.q), params).matrix
    assert _rel(left, right) < 1e-12


def test_hamiltonian_from_transfer_matches_direct():
    for n_sites in (2, 3, 4):
        for spin in ("1/2", "1"):
            params = ModelParams.create(n_sites, spin)
            derived = hamiltonian_from_transfer(params)
            direct = hamiltonian(params)
            assert np.max(np.abs(derived - direct)) < 1e-6, (n_sites, spin)


def test_asymptotic_trace_commutes_with_transfer():
    params = ModelParams.create(2, "1")
    trace_op = closed_asymptotic_trace(params, "+")
    t = closed_transfer(0.87 + 0.22j, params).matrix
    assert _rel(trace_op @ t, t @ trace_op) < 1e-12


def test_random_thetas_respect_constraints():
    rng = np.random.default_rng(33)
    q = 0.5
    thetas = random_thetas(4, rng, q=q)
    assert len(thetas) == 4
    for th in thetas:
        assert 0.8 <= abs(th) <= 1.25
    for i, ti in enumerate(thetas):
        for j, tj in enumerate(thetas):
            if i == j:
                continue
            for k in (-2, -1, 0, 1, 2):
                assert abs(ti / tj - q**k) > 1e-9


def test_transfer_eval_carries_context():
    params = ModelParams.create(2, "1/2")
    te = transfer_matrix(0.9 + 0.1j, params, "open")
    assert te.kind == "open"
    assert te.params is params
    assert te.matrix.shape == (4, 4)
