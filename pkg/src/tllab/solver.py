"""Multistart Newton solver for the Bethe equations, with sector censuses.

Seeds are drawn log-uniformly from an annulus and driven by a damped
(backtracking) Newton iteration with analytic Jacobians, vectorized across
the whole seed batch.  Converged roots pass through singularity guards,
per-root canonicalization over the symmetry orbit of the equations, and
deduplication keyed on eigenvalue fingerprints.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import comb

import numpy as np

from .core import DomainError, ModelParams, omega, omega_prime, pi_phase
from .bethe import (
    BetheSolution,
    bethe_residuals,
    eval_lambda,
    twist_from_roots,
)

__all__ = [
    "SearchConfig",
    "SectorCensus",
    "chebyshev_dim",
    "multiplicity",
    "predicted_degeneracy",
    "expected_census",
    "fingerprint",
    "canonical_roots",
    "dedup_solutions",
    "solve_sector_open",
    "solve_sector_closed",
    "solve_all_open",
    "solve_all_closed",
    "refine",
]

GUARD_TOL = 1e-8
MODULUS_BOUNDS = (1e-6, 1e6)
FINGERPRINT_PROBES = (0.93 + 0.41j, 1.78 - 0.67j, 0.41 + 1.13j)


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the multistart search."""

    n_seeds: int = 2000
    annulus: tuple = (0.3, 3.0)
    max_iter: int = 80
    tol: float = 1e-12
    dedup_tol: float = 1e-6
    max_backtrack: int = 30
    rng_seed: int = 1234


@dataclass(frozen=True)
class SectorCensus:
    """Bookkeeping line for one magnon sector."""

    kind: str
    sector: str
    found: int
    expected: int | None
    dimension: int | None
    complete: bool | None


def chebyshev_dim(k: int, x):
    """Chebyshev-type dimension polynomial: p_0 = 1, p_1 = x,
    p_(k+1) = x p_k - p_(k-1)."""
    if k < 0:
        raise DomainError(f"negative label {k}")
    prev, cur = 1, x
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, x * cur - prev
    return cur


def multiplicity(n_sites: int, k: int) -> int:
    """Number of spectral lines in the sector with through-line label k."""
    if k < 0 or k > n_sites or (n_sites - k) % 2:
        raise DomainError(f"label {k} incompatible with {n_sites} sites")
    j = (n_sites - k) // 2
    lower = comb(n_sites, j - 1) if j >= 1 else 0
    return comb(n_sites, j) - lower


def predicted_degeneracy(params: ModelParams, n_roots: int) -> int:
    """Predicted degeneracy of an open-chain line with M = n_roots."""
    return chebyshev_dim(params.n_sites - 2 * n_roots, params.site_dim)


def expected_census(params: ModelParams, kind: str = "open"):
    """Expected per-sector line counts (open chain only; closed is None)."""
    out = []
    for m in range(params.n_sites // 2 + 1):
        k = params.n_sites - 2 * m
        if kind == "open":
            out.append(
                SectorCensus(
                    kind="open",
                    sector=f"M={m}",
                    found=0,
                    expected=multiplicity(params.n_sites, k),
                    dimension=predicted_degeneracy(params, m),
                    complete=None,
                )
            )
        else:
            for l in range(params.n_sites):
                out.append(
                    SectorCensus(
                        kind="closed",
                        sector=f"M={m}, l={l}",
                        found=0,
                        expected=None,
                        dimension=None,
                        complete=None,
                    )
                )
    return out


# ---------------------------------------------------------------------------
# residuals and Jacobians, vectorized over a batch of candidate root tuples


def _phi(z):
    return omega_prime(z) / omega(z)


def _open_fun_jac(params: ModelParams, with_jac: bool = True):
    q = params.q
    thetas = np.asarray(params.thetas, dtype=complex)

    def fun(u, jac=with_jac):
        b, m = u.shape
        idx = np.arange(m)
        with np.errstate(all="ignore"):
            ut = u[..., None]
            pa = np.prod(omega(ut * q / thetas) * omega(ut * q * thetas), axis=-1)
            pb = np.prod(omega(ut / thetas) * omega(ut * thetas), axis=-1)
            x = u[:, :, None] / u[:, None, :]
            y = u[:, :, None] * u[:, None, :]
            fa = omega(x / q) * omega(y)
            fb = omega(x * q) * omega(y * q * q)
            fa[:, idx, idx] = 1.0
            fb[:, idx, idx] = 1.0
            a = pa * np.prod(fa, axis=2)
            bb = pb * np.prod(fb, axis=2)
            r = a - bb
            rs = r / (1.0 + np.abs(a) + np.abs(bb))
            if not jac:
                return r, rs, None
            uk = u[:, :, None]
            ui = u[:, None, :]
            ja = a[:, :, None] * (
                _phi(x / q) * (-uk / (q * ui * ui)) + _phi(y) * uk
            )
            jb = bb[:, :, None] * (
                _phi(x * q) * (-q * uk / (ui * ui)) + _phi(y * q * q) * (q * q * uk)
            )
            da_t = np.sum(
                _phi(ut * q / thetas) * (q / thetas)
                + _phi(ut * q * thetas) * (q * thetas),
                axis=-1,
            )
            db_t = np.sum(
                _phi(ut / thetas) / thetas + _phi(ut * thetas) * thetas, axis=-1
            )
            pair_a = _phi(x / q) / (q * ui) + _phi(y) * ui
            pair_b = _phi(x * q) * (q / ui) + _phi(y * q * q) * (q * q * ui)
            pair_a[:, idx, idx] = 0.0
            pair_b[:, idx, idx] = 0.0
            ja[:, idx, idx] = a * (da_t + np.sum(pair_a, axis=2))
            jb[:, idx, idx] = bb * (db_t + np.sum(pair_b, axis=2))
            return r, rs, ja - jb

    return fun


def _closed_fun_jac(params: ModelParams, sector: int):
    q = params.q
    n = params.n_sites
    thetas = np.asarray(params.thetas, dtype=complex)
    c_l = np.exp(2j * np.pi * sector / n) * pi_phase(-params.twice_spin * n / 2.0)

    def fun(u, jac=True):
        b, m = u.shape
        idx = np.arange(m)
        with np.errstate(all="ignore"):
            ut = u[..., None]
            kappa = c_l * np.prod(omega(u) / omega(q * u), axis=-1)
            pa = np.prod(omega(ut * q / thetas), axis=-1)
            pb = np.prod(omega(ut / thetas), axis=-1)
            x = u[:, :, None] / u[:, None, :]
            fa = omega(x / q)
            fb = omega(x * q)
            fa[:, idx, idx] = 1.0
            fb[:, idx, idx] = 1.0
            a = kappa[:, None] * pa * np.prod(fa, axis=2)
            bb = pb * np.prod(fb, axis=2) / kappa[:, None]
            r = a - bb
            rs = r / (1.0 + np.abs(a) + np.abs(bb))
            if not jac:
                return r, rs, None
            uk = u[:, :, None]
            ui = u[:, None, :]
            dlog_kappa = _phi(u) - q * _phi(q * u)  # (b, m), derivative wrt u_i
            ja = a[:, :, None] * (_phi(x / q) * (-uk / (q * ui * ui)))
            jb = bb[:, :, None] * (_phi(x * q) * (-q * uk / (ui * ui)))
            da_t = np.sum(_phi(ut * q / thetas) * (q / thetas), axis=-1)
            db_t = np.sum(_phi(ut / thetas) / thetas, axis=-1)
            pair_a = _phi(x / q) / (q * ui)
            pair_b = _phi(x * q) * (q / ui)
            pair_a[:, idx, idx] = 0.0
            pair_b[:, idx, idx] = 0.0
            ja[:, idx, idx] = a * (da_t + np.sum(pair_a, axis=2))
            jb[:, idx, idx] = bb * (db_t + np.sum(pair_b, axis=2))
            j = ja - jb
            j += a[:, :, None] * dlog_kappa[:, None, :]
            j += bb[:, :, None] * dlog_kappa[:, None, :]
            return r, rs, j

    return fun


# ---------------------------------------------------------------------------
# Newton driver


def _scaled_norm(rs):
    return np.max(np.abs(rs), axis=-1)


def _batch_solve(j, r):
    """Newton updates for a batch, tolerating singular members."""
    try:
        return np.linalg.solve(j, r[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.zeros_like(r)
        for i in range(j.shape[0]):
            try:
                out[i] = np.linalg.solve(j[i], r[i])
            except np.linalg.LinAlgError:
                out[i] = np.linalg.lstsq(j[i], r[i], rcond=None)[0]
        return out


def _newton_driver(fun, seeds, config: SearchConfig):
    """Run damped Newton from every seed; return converged root tuples."""
    u = np.array(seeds, dtype=complex)
    if u.ndim == 1:
        u = u[:, None]
    results = []
    for _ in range(config.max_iter):
        if u.shape[0] == 0:
            break
        r, rs, j = fun(u, jac=True)
        norm = _scaled_norm(rs)
        finite = (
            np.isfinite(norm)
            & np.all(np.isfinite(r), axis=-1)
            & np.all(np.isfinite(j), axis=(-2, -1))
        )
        done = finite & (norm < config.tol)
        for row in u[done]:
            results.append(tuple(row))
        keep = finite & ~done
        u, r, j, norm = u[keep], r[keep], j[keep], norm[keep]
        if u.shape[0] == 0:
            break
        step = _batch_solve(j, r)
        good = np.all(np.isfinite(step), axis=-1)
        u, step, norm = u[good], step[good], norm[good]
        if u.shape[0] == 0:
            break
        t = np.ones(u.shape[0])
        pending = np.ones(u.shape[0], dtype=bool)
        new_u = u.copy()
        for _ in range(config.max_backtrack + 1):
            if not pending.any():
                break
            cand = u[pending] - t[pending, None] * step[pending]
            _, crs, _ = fun(cand, jac=False)
            cnorm = _scaled_norm(crs)
            improved = np.isfinite(cnorm) & (cnorm < norm[pending])
            sub = np.flatnonzero(pending)
            new_u[sub[improved]] = cand[improved]
            pending[sub[improved]] = False
            t[pending] *= 0.5
        u = new_u[~pending]  # seeds that never improved are dropped
    # whatever is still alive at max_iter has not converged: discard
    return results


def _draw_seeds(params: ModelParams, m: int, config: SearchConfig, salt: int):
    seq = np.random.SeedSequence(
        (config.rng_seed, params.n_sites, params.twice_spin, m, salt)
    )
    rng = np.random.default_rng(seq)
    lo, hi = np.log(config.annulus[0]), np.log(config.annulus[1])
    mods = np.exp(rng.uniform(lo, hi, size=(config.n_seeds, m)))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(config.n_seeds, m))
    return mods * np.exp(1j * phases)


def _one_root_candidates(params: ModelParams, kind: str, sector=None):
    """Closed-form M = 1 root candidates used to enrich the seed pool.

    Writing rho = omega(q u)/omega(u), the one-root equations reduce to
    rho^(2N) = 1 (open) and rho^(N-2) = e^(-4 pi i l/N) (-1)^(2sN) (closed),
    after which u^2 = (1/q - rho)/(q - rho).
    """
    q = params.q
    n = params.n_sites
    cands = []
    if kind == "open":
        rhos = [np.exp(1j * np.pi * j / n) for j in range(2 * n) if j != 0 and j != n]
    else:
        p = n - 2
        if p <= 0:
            return []
        target = np.exp(-4j * np.pi * sector / n) * (-1.0) ** (
            params.twice_spin * n
        )
        base = complex(target) ** (1.0 / p)
        rhos = [base * np.exp(2j * np.pi * k / p) for k in range(p)]
    for rho in rhos:
        if abs(rho - q) < 1e-12 or abs(rho - 1.0 / q) < 1e-12:
            continue
        u2 = (1.0 / q - rho) / (q - rho)
        if u2 == 0:
            continue
        root = cmath.sqrt(u2)
        cands.extend([[root], [-root]])
    return cands


# ---------------------------------------------------------------------------
# guards, canonicalization, dedup


def _passes_guards(roots, params: ModelParams, kind: str) -> bool:
    q = params.q
    lo, hi = MODULUS_BOUNDS
    for r in roots:
        ar = abs(r)
        if not (lo < ar < hi) or not np.isfinite(ar):
            return False
        if abs(omega(r)) < GUARD_TOL or abs(omega(q * r)) < GUARD_TOL:
            return False
    n = len(roots)
    for i in range(n):
        for j in range(n):
            if i != j and abs(omega(roots[i] / roots[j])) < GUARD_TOL:
                return False
            if kind == "open":
                if i != j and abs(omega(roots[i] * roots[j])) < GUARD_TOL:
                    return False
                if abs(omega(roots[i] * roots[j] * q)) < GUARD_TOL:
                    return False
    return True


def _root_key(z):
    return (round(abs(z) * 1e9), round(z.real * 1e9), round(z.imag * 1e9))


def canonical_roots(roots, q, kind: str):
    """Map each root to a canonical representative of its symmetry orbit.

    Open-chain equations are invariant under u -> -u and u -> -1/(q u) per
    root; closed-chain ones under u -> -u.  The representative maximizes
    (|u|, Re u, Im u) lexicographically; the tuple is then sorted.
    """
    out = []
    for r in roots:
        r = complex(r)
        orbit = [r, -r]
        if kind == "open":
            orbit += [-1.0 / (q * r), 1.0 / (q * r)]
        out.append(max(orbit, key=_root_key))
    return tuple(sorted(out, key=_root_key))


def fingerprint(roots, params: ModelParams, kind: str, twist=None) -> np.ndarray:
    """Eigenvalue samples at fixed probes, used as a spectral-line identity."""
    vals = []
    for probe in FINGERPRINT_PROBES:
        p = complex(probe)
        for _ in range(60):
            try:
                vals.append(eval_lambda(p, roots, params, kind, twist))
                break
            except DomainError:
                p *= 1.0001937
        else:
            raise DomainError("could not find a pole-free fingerprint probe")
    return np.array(vals)


def _residual_norm(roots, params, kind, twist) -> float:
    if not roots:
        return 0.0
    res = bethe_residuals(roots, params, kind, twist=twist, scaled=True)
    return float(np.max(np.abs(res)))


def _make_solution(roots, params, kind, sector=None) -> BetheSolution:
    """Canonicalize a raw root tuple and package it, verifying that the
    canonical representative still solves the equations."""
    raw = tuple(complex(r) for r in roots)
    cand = canonical_roots(raw, params.q, kind)
    twist_raw = twist_from_roots(raw, sector, params) if kind == "closed" else None
    use = cand
    if cand != raw:
        twist_c = twist_from_roots(cand, sector, params) if kind == "closed" else None
        ok = _residual_norm(cand, params, kind, twist_c) < 1e-8
        if ok:
            try:
                fp_raw = fingerprint(raw, params, kind, twist_raw)
                fp_c = fingerprint(cand, params, kind, twist_c)
                scale = 1.0 + np.max(np.abs(fp_raw))
                ok = np.max(np.abs(fp_raw - fp_c)) < 1e-7 * scale
            except DomainError:
                ok = False
        if not ok:
            use = tuple(sorted(raw, key=_root_key))
    twist = twist_from_roots(use, sector, params) if kind == "closed" else None
    return BetheSolution(
        kind=kind,
        roots=use,
        sector=sector,
        twist=twist,
        residual_norm=_residual_norm(use, params, kind, twist),
    )


def dedup_solutions(solutions, params: ModelParams):
    """Collapse solutions that describe the same spectral line.

    Identity is judged by the eigenvalue fingerprint (same Lambda function
    means same line, whatever the root bookkeeping).  A clearly smaller
    residual norm wins; at comparable residuals the smaller total root
    magnitude does, so crossing partners collapse onto the customary
    representative.
    """
    kept = []
    prints = []
    for sol in solutions:
        try:
            fp = fingerprint(sol.roots, params, sol.kind, sol.twist)
        except DomainError:
            continue
        match = None
        for i, other in enumerate(kept):
            if other.n_roots != sol.n_roots or other.sector != sol.sector:
                continue
            scale = 1.0 + max(np.max(np.abs(prints[i])), np.max(np.abs(fp)))
            if np.max(np.abs(prints[i] - fp)) < 1e-10 * scale:
                match = i
                break
        if match is None:
            kept.append(sol)
            prints.append(fp)
        else:
            best = kept[match]
            if sol.residual_norm < 0.1 * best.residual_norm:
                kept[match] = sol
            elif best.residual_norm < 0.1 * sol.residual_norm:
                pass
            elif _magnitude(sol) < _magnitude(best) - 1e-12:
                kept[match] = sol
    return sorted(kept, key=_solution_key)


def _magnitude(sol: BetheSolution) -> float:
    return float(sum(abs(r) for r in sol.roots))


def _solution_key(sol: BetheSolution):
    if not sol.roots:
        return (0.0, 0.0, 0.0)
    z = sol.roots[0]
    return (abs(z), z.real, z.imag)


def _conjugate_closure(solutions, params: ModelParams, kind: str):
    """For real q and conjugation-stable weights, add missing conjugate lines."""
    if abs(complex(params.q).imag) > 1e-14:
        return solutions
    thetas = sorted(params.thetas, key=_root_key)
    conj_thetas = sorted((t.conjugate() for t in thetas), key=_root_key)
    if any(abs(a - b) > 1e-12 for a, b in zip(thetas, conj_thetas)):
        return solutions
    extra = []
    for sol in solutions:
        if not sol.roots:
            continue
        conj = tuple(r.conjugate() for r in sol.roots)
        cand = _make_solution(conj, params, kind, sector=sol.sector)
        if cand.residual_norm < 1e-9 and _passes_guards(
            cand.roots, params, kind
        ):
            extra.append(cand)
    return dedup_solutions(list(solutions) + extra, params)


# ---------------------------------------------------------------------------
# sector solvers


def solve_sector_open(
    params: ModelParams,
    n_roots: int,
    config: SearchConfig = None,
    check_spectrum: bool = True,
):
    """All Bethe solutions of the open chain with M = n_roots.

    Clearing the denominators of the Bethe equations introduces parasitic
    zeros where both cleared sides vanish through different factors (for
    instance u_k near 1/q together with u_i u_j near 1/q^2), so by default
    every candidate is kept only if its eigenvalue really occurs in the
    transfer-matrix spectrum.
    """
    config = config or SearchConfig()
    if n_roots == 0:
        return [BetheSolution(kind="open", roots=())]
    if 2 * n_roots > params.n_sites:
        raise DomainError(
            f"M = {n_roots} exceeds N/2 = {params.n_sites / 2} for the open chain"
        )
    seeds = _draw_seeds(params, n_roots, config, salt=0)
    if n_roots == 1:
        extra = _one_root_candidates(params, "open")
        if extra:
            seeds = np.vstack([np.array(extra, dtype=complex), seeds])
    fun = _open_fun_jac(params)
    raw = _newton_driver(fun, seeds, config)
    sols = []
    for roots in raw:
        if _passes_guards(roots, params, "open"):
            sol = _make_solution(roots, params, "open")
            if _passes_guards(sol.roots, params, "open"):
                sols.append(sol)
    sols = dedup_solutions(sols, params)
    sols = _conjugate_closure(sols, params, "open")
    if check_spectrum:
        sols = [s for s in sols if _spectrum_member(s, params)]
    return dedup_solutions(sols, params)


def _spectrum_member(sol: BetheSolution, params: ModelParams) -> bool:
    """Keep only candidate lines whose Lambda really is an eigenvalue."""
    from .symmetry import DEGENERACY_PROBE, measure_degeneracy
    from .transfer import transfer_matrix

    probe = complex(DEGENERACY_PROBE)
    for _ in range(60):
        try:
            lam = eval_lambda(probe, sol.roots, params, sol.kind, sol.twist)
            break
        except DomainError:
            probe *= 1.0001937
    else:
        return False
    te = transfer_matrix(probe, params, sol.kind)
    nullity, _ = measure_degeneracy(te, lam)
    return nullity >= 1


def solve_sector_closed(
    params: ModelParams,
    n_roots: int,
    sector: int,
    config: SearchConfig = None,
    check_spectrum: bool = True,
):
    """All Bethe solutions of the closed chain with M = n_roots and label l.

    The two-site one-root system is degenerate (it is satisfied identically
    once the twist is substituted), so that sector is anchored instead on the
    eigenvalues of the traced leading monodromy, which fixes kappa and then
    the root.
    """
    config = config or SearchConfig()
    n = params.n_sites
    sector = sector % n
    if 2 * n_roots > n:
        raise DomainError(f"M = {n_roots} exceeds N/2 = {n / 2} for the closed chain")
    if n_roots == 0:
        kappa = np.exp(2j * np.pi * sector / n) * pi_phase(
            -params.twice_spin * n / 2.0
        )
        cands = [
            BetheSolution(
                kind="closed", roots=(), sector=sector, twist=complex(kappa)
            )
        ]
    elif n == 2 and n_roots == 1:
        cands = _anchored_two_site(params, sector)
    else:
        seeds = _draw_seeds(params, n_roots, config, salt=17 + sector)
        if n_roots == 1:
            extra = _one_root_candidates(params, "closed", sector)
            if extra:
                seeds = np.vstack([np.array(extra, dtype=complex), seeds])
        fun = _closed_fun_jac(params, sector)
        raw = _newton_driver(fun, seeds, config)
        cands = []
        for roots in raw:
            if _passes_guards(roots, params, "closed"):
                sol = _make_solution(roots, params, "closed", sector=sector)
                if _passes_guards(sol.roots, params, "closed"):
                    cands.append(sol)
        cands = dedup_solutions(cands, params)
        cands = _conjugate_closure(cands, params, "closed")
    if check_spectrum:
        cands = [s for s in cands if _spectrum_member(s, params)]
    return dedup_solutions(cands, params)


def _polish_anchored(root: complex, sector: int, params: ModelParams):
    """Newton-polish a two-site anchored root on the transfer determinant.

    The anchor quadratic has a double root at kappa = +-1, which turns the
    tiny eigensolver error of the asymptotic trace into a sqrt-sized error
    of the candidate. The determinant of t(probe) - Lambda(probe) has simple
    zeros in the root, so a few Newton steps restore machine precision.
    """
    from .symmetry import DEGENERACY_PROBE
    from .transfer import closed_transfer

    q = params.q
    c_l = np.exp(2j * np.pi * sector / params.n_sites) * pi_phase(
        -params.twice_spin * params.n_sites / 2.0
    )
    probe = complex(DEGENERACY_PROBE)
    mat = closed_transfer(probe, params).matrix
    eye = np.eye(mat.shape[0])

    def gap(u):
        kappa = c_l * omega(u) / omega(q * u)
        lam = eval_lambda(probe, (u,), params, "closed", kappa)
        return np.linalg.det(mat - lam * eye)

    u = complex(root)
    try:
        for _ in range(40):
            h = 1e-7 * (1.0 + abs(u))
            g0 = gap(u)
            deriv = (gap(u + h) - gap(u - h)) / (2.0 * h)
            if deriv == 0:
                break
            step = g0 / deriv
            if not np.isfinite(step.real) or not np.isfinite(step.imag):
                break
            u -= step
            if abs(step) < 1e-14 * (1.0 + abs(u)):
                break
    except (DomainError, ZeroDivisionError):
        return complex(root)
    if abs(u - root) > 1e-3 * (1.0 + abs(root)):
        return complex(root)
    return u


def _anchored_two_site(params: ModelParams, sector: int):
    from .transfer import closed_asymptotic_trace

    q = params.q
    phase = pi_phase(params.twice_spin * params.n_sites / 2.0)
    c_l = np.exp(2j * np.pi * sector / 2.0) * pi_phase(-params.twice_spin)
    eigs = np.linalg.eigvals(closed_asymptotic_trace(params, "+"))
    uniq = []
    for lam in sorted(eigs, key=lambda z: (round(z.real, 8), round(z.imag, 8))):
        if not any(abs(lam - w) < 1e-8 * (1.0 + abs(w)) for w in uniq):
            uniq.append(lam)
    cands = []
    for lam in uniq:
        # phase * q * (kappa + 1/kappa) = lam
        z = lam / (phase * q)
        disc = cmath.sqrt(z * z - 4.0)
        for kappa in ((z + disc) / 2.0, (z - disc) / 2.0):
            if kappa == 0:
                continue
            rho = c_l / kappa
            if abs(rho - q) < 1e-9 or abs(rho - 1.0 / q) < 1e-9:
                continue
            u2 = (1.0 / q - rho) / (q - rho)
            if u2 == 0:
                continue
            root = cmath.sqrt(u2)
            if not _passes_guards((root,), params, "closed"):
                continue
            root = _polish_anchored(root, sector, params)
            if not _passes_guards((root,), params, "closed"):
                continue
            sol = _make_solution((root,), params, "closed", sector=sector)
            if abs(sol.twist - kappa) > 1e-6 * (1.0 + abs(kappa)):
                continue
            cands.append(sol)
    return dedup_solutions(cands, params)


def solve_all_open(
    params: ModelParams, config: SearchConfig = None, check_spectrum: bool = True
):
    """Solutions for every open sector, as a dict M -> list of solutions."""
    return {
        m: solve_sector_open(params, m, config, check_spectrum=check_spectrum)
        for m in range(params.n_sites // 2 + 1)
    }


def solve_all_closed(
    params: ModelParams, config: SearchConfig = None, check_spectrum: bool = True
):
    """Solutions for every closed sector, as a dict (M, l) -> list."""
    out = {}
    for m in range(params.n_sites // 2 + 1):
        for l in range(params.n_sites):
            out[(m, l)] = solve_sector_closed(
                params, m, l, config, check_spectrum=check_spectrum
            )
    return out


def refine(roots, params: ModelParams, kind: str, sector=None,
           config: SearchConfig = None):
    """Polish a nearly-converged root tuple with the same damped Newton."""
    config = config or SearchConfig()
    seeds = np.array([list(roots)], dtype=complex)
    if kind == "open":
        fun = _open_fun_jac(params)
    else:
        fun = _closed_fun_jac(params, sector)
    out = _newton_driver(fun, seeds, config)
    if not out:
        raise DomainError("refinement did not converge")
    return _make_solution(out[0], params, kind, sector=sector)
