"""Root search: censuses, canonical forms, dedup, and the anchored sector."""

import numpy as np
import pytest

from tllab.core import DomainError, ModelParams
from tllab.solver import (
    SearchConfig,
    canonical_roots,
    chebyshev_dim,
    dedup_solutions,
    expected_census,
    multiplicity,
    predicted_degeneracy,
    refine,
    solve_all_open,
    solve_sector_closed,
    solve_sector_open,
)

FAST = SearchConfig(n_seeds=400)


def test_chebyshev_dimensions():
    # p_0 = 1, p_1 = x, p_{k+1} = x p_k - p_{k-1} evaluated at x = 2s + 1
    for x in (2, 3, 4):
        values = [1, x]
        for _ in range(4):
            values.append(x * values[-1] - values[-2])
        for k, want in enumerate(values):
            assert chebyshev_dim(k, x) == want, (k, x)


def test_predicted_degeneracies_match_table_values():
    params = ModelParams.create(4, "3/2")
    assert predicted_degeneracy(params, 0) == 209
    assert predicted_degeneracy(params, 1) == 15
    assert predicted_degeneracy(params, 2) == 1


def test_multiplicities():
    assert multiplicity(4, 4) == 1
    assert multiplicity(4, 2) == 3
    assert multiplicity(4, 0) == 2
    assert multiplicity(5, 3) == 4
    assert multiplicity(5, 1) == 5


def test_census_totals_are_dimensions():
    for n_sites in (2, 3, 4, 5):
        for spin in ("1/2", "1", "3/2"):
            params = ModelParams.create(n_sites, spin)
            total = 0
            for m in range(n_sites // 2 + 1):
                count = multiplicity(n_sites, n_sites - 2 * m)
                total += count * predicted_degeneracy(params, m)
            assert total == params.site_dim**n_sites, (n_sites, spin)


def test_expected_census_counts():
    params = ModelParams.create(4, "1/2")
    census = expected_census(params)
    expected = {entry.sector: entry.expected for entry in census}
    assert expected == {"M=0": 1, "M=1": 3, "M=2": 2}


def test_canonical_roots_identify_orbit_members():
    q = 0.5
    roots = (1.3 + 0.4j, 0.9 - 0.2j)
    base = canonical_roots(roots, q, "open")
    for mapped in (
        tuple(-r for r in roots),
        (-1.0 / (q * roots[0]), roots[1]),
        (roots[1], roots[0]),
    ):
        assert canonical_roots(mapped, q, "open") == base


def test_open_census_matches_multiplicities():
    for n_sites in (2, 3, 4):
        params = ModelParams.create(n_sites, "1/2")
        sols = solve_all_open(params, FAST)
        for m, lines in sols.items():
            assert len(lines) == multiplicity(n_sites, n_sites - 2 * m), (
                n_sites,
                m,
            )


def test_no_parasitic_lines_in_two_root_sector():
    # clearing denominators creates zero sets near u = 1/q with
    # u_1 u_2 = 1/q^2 that are not transfer eigenvalues; the spectrum
    # filter must reject them
    params = ModelParams.create(4, "1/2")
    lines = solve_sector_open(params, 2, FAST)
    assert len(lines) == 2
    mags = sorted(abs(r) for sol in lines for r in sol.roots)
    # genuine lines stay away from the double pole at u = 2
    for sol in lines:
        prod = sol.roots[0] * sol.roots[1] * params.q**2
        assert abs(prod - 1.0) > 1e-3 or max(np.abs(sol.roots)) < 1.9


def test_conjugate_pair_line_present():
    params = ModelParams.create(4, "1/2")
    lines = solve_sector_open(params, 2, FAST)
    conj = [
        sol
        for sol in lines
        if abs(sol.roots[0].conjugate() - sol.roots[1]) < 1e-8
    ]
    assert len(conj) == 1
    root = max(conj[0].roots, key=lambda r: r.imag)
    assert abs(root - (1.815552 + 0.854196j)) < 5e-6


def test_dedup_merges_reflected_duplicates():
    params = ModelParams.create(2, "1/2")
    a = refine([ROOT_EXACT], params, "open")
    b = refine([-ROOT_EXACT], params, "open")
    merged = dedup_solutions([a, b], params)
    assert len(merged) == 1


ROOT_EXACT = (3.0 + 1.0j) / np.sqrt(5.0)


def test_refine_converges_from_perturbed_start():
    params = ModelParams.create(2, "1/2")
    sol = refine([ROOT_EXACT * (1.0 + 1e-4)], params, "open")
    assert sol.residual_norm < 1e-12
    assert min(abs(r - ROOT_EXACT) for r in sol.roots) < 1e-10 or min(
        abs(r + ROOT_EXACT) for r in sol.roots
    ) < 1e-10


def test_sector_bound_raises():
    params = ModelParams.create(4, "1/2")
    with pytest.raises(DomainError):
        solve_sector_open(params, 3, FAST)


def test_anchored_two_site_closed_sector():
    params = ModelParams.create(2, "1")
    golden = {0: 0.5401823, 1: 1.2169906}
    for sector, want in golden.items():
        lines = solve_sector_closed(params, 1, sector, FAST)
        assert len(lines) == 1, sector
        root = lines[0].roots[0]
        assert abs(root - want) < 5e-6, sector
        assert abs(lines[0].twist - (3.0 - np.sqrt(5.0)) / 2.0) < 5e-6


def test_closed_zero_root_sectors():
    params = ModelParams.create(2, "1/2")
    present = {}
    for sector in (0, 1):
        lines = solve_sector_closed(params, 0, sector, FAST)
        present[sector] = [sol.twist for sol in lines]
    # only the kappa = -1 vacuum line is a genuine eigenvalue at spin 1/2
    assert [round(k.real) for k in present[0]] == [-1]
    assert present[1] == []


def test_three_site_closed_sector_roots():
    params = ModelParams.create(3, "1/2")
    expected = {
        0: complex(np.sqrt(2.0)),
        1: np.sqrt(2.0) * np.exp(-1j * np.pi / 6.0),
        2: np.sqrt(2.0) * np.exp(1j * np.pi / 6.0),
    }
    for sector, want in expected.items():
        lines = solve_sector_closed(params, 1, sector, FAST)
        assert len(lines) == 1, sector
        assert abs(lines[0].roots[0] - want) < 1e-8, sector
        assert abs(lines[0].twist - (-1j)) < 1e-10, sector
