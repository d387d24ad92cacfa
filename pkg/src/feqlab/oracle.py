"""Independent numeric solver: random-restart damped Gauss-Newton.

Each equation is a quadratic system in the n complex values of f: a linear
part (the measure-weighted shifts) plus the uniform quadratic term
-2 f(x) f(y), one complex equation per pair (x, y).  The solver works on the
real 2n-dimensional embedding with pseudoinverse steps and a halving line
search, which keeps rank-deficient Jacobians (e.g. at f = 0) unexceptional.

Restarts are seeded independently by their counter and merged by canonical
sort, so the result is bit-identical across runs and thread counts.  Random
restarts cannot prove exhaustiveness; completeness statements are always of
the form "the oracle found nothing outside the constructed family".
"""
from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .characters import canonical_key, max_abs, max_abs_diff
from .equations import Instance
from .families import Solution, SolutionReport

KINDS = ("van_vleck", "kannappan", "dalembert")


class NoConvergenceBudget(RuntimeWarning):
    """Fewer than 10% of restarts converged; results may be thin."""


@dataclass(frozen=True)
class OracleConfig:
    restarts: int = 400
    start_radius: float = 2.0
    max_iters: int = 200
    converge_tol: float = 1e-12
    dedup_eps: float = 1e-6
    rng_seed: int = 0

    def __post_init__(self):
        if min(self.restarts, self.max_iters) < 1:
            raise ValueError("restarts and max_iters must be positive")
        if min(self.start_radius, self.converge_tol, self.dedup_eps) <= 0:
            raise ValueError("radius and tolerances must be positive")
        if self.dedup_eps <= self.converge_tol:
            raise ValueError("dedup_eps must exceed converge_tol")


def thread_count() -> int:
    """Worker cap from FEQLAB_THREADS; 0 or unset means auto."""
    raw = os.environ.get("FEQLAB_THREADS", "").strip()
    if not raw or raw == "0":
        return os.cpu_count() or 1
    value = int(raw)
    if value < 0:
        raise ValueError("FEQLAB_THREADS must be >= 0")
    return value


def equation_matrix(kind: str, inst: Instance) -> np.ndarray:
    """Linear part A of the residual system: row x*n+y, one column per
    element, so that the full residual is A f - 2 f(x) f(y)."""
    if kind not in KINDS:
        raise ValueError(f"unknown equation kind {kind!r}")
    sg, tau, mu = inst.sg, inst.tau, inst.mu
    n = sg.order
    t = sg.cayley
    rows = np.arange(n * n)
    xy = t.ravel()
    xty = t[:, tau.perm].ravel()
    A = np.zeros((n * n, n), dtype=np.complex128)
    if kind == "dalembert":
        np.add.at(A, (rows, xy), 1.0)
        np.add.at(A, (rows, xty), 1.0)
        return A
    for z, w in zip(mu.points, mu.weights):
        plain = t[xy, z]
        shifted = t[xty, z]
        if kind == "van_vleck":
            np.add.at(A, (rows, shifted), w)
            np.add.at(A, (rows, plain), -w)
        else:
            np.add.at(A, (rows, plain), w)
            np.add.at(A, (rows, shifted), w)
    return A


def _residual(A: np.ndarray, F: np.ndarray, rx: np.ndarray, ry: np.ndarray) -> np.ndarray:
    return F @ A.T - 2.0 * F[:, rx] * F[:, ry]


def _start_point(seed: int, k: int, n: int, radius: float) -> np.ndarray:
    """Uniform draw from the complex disc of the given radius, per coordinate,
    from an RNG derived only from (seed, restart counter)."""
    rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, k])
    r = radius * np.sqrt(rng.uniform(size=n))
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return r * np.exp(1j * theta)


def _sampling_radius(kind: str, inst: Instance, cfg: OracleConfig) -> float:
    """Effective start radius for one instance.

    Taking y = x at the argmax of |f| in either integral equation gives
    |f|^2 <= |f| * sum_i |w_i|, so every solution lives in the closed disc of
    radius sum_i |w_i| per coordinate (radius 1 for d'Alembert).  Sampling
    from twice that keeps the basins of boundary-norm solutions covered;
    cfg.start_radius acts as a floor, so unit-mass instances keep the
    configured disc.
    """
    bound = (
        1.0
        if kind == "dalembert"
        else float(np.sum(np.abs(inst.mu.weights)))
    )
    return max(cfg.start_radius, 2.0 * bound)


def _gauss_newton_chunk(
    A: np.ndarray, starts: np.ndarray, radius: float, cfg: OracleConfig
) -> list[tuple[np.ndarray, float] | None]:
    """Run all restarts of one chunk in lockstep.

    Every array operation below is elementwise per restart or per-matrix, so
    each trajectory is exactly what a scalar implementation would produce; the
    batching (and hence the chunking across threads) cannot change results.
    """
    n2, n = A.shape
    K = starts.shape[0]
    rx = np.repeat(np.arange(n), n)
    ry = np.tile(np.arange(n), n)
    bound = 10.0 * radius
    rows = np.arange(n2)

    U = np.concatenate([starts.real, starts.imag], axis=1)
    alive = np.ones(K, dtype=bool)
    results: list[tuple[np.ndarray, float] | None] = [None] * K

    def record_converged(idx: np.ndarray, F: np.ndarray, res: np.ndarray) -> np.ndarray:
        conv = res < cfg.converge_tol
        for j in np.flatnonzero(conv):
            results[int(idx[j])] = (F[j].copy(), float(res[j]))
        return conv

    for _ in range(cfg.max_iters):
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        F = U[idx, :n] + 1j * U[idx, n:]
        rc = _residual(A, F, rx, ry)
        res = np.abs(rc).max(axis=1)
        conv = record_converged(idx, F, res)
        diverged = np.abs(F).max(axis=1) > bound
        drop = conv | diverged
        if drop.any():
            alive[idx[drop]] = False
            keep = ~drop
            idx, F, rc = idx[keep], F[keep], rc[keep]
            if idx.size == 0:
                continue

        J = np.empty((idx.size, n2, n), dtype=np.complex128)
        J[:] = A
        J[:, rows, ry] += -2.0 * F[:, rx]
        J[:, rows, rx] += -2.0 * F[:, ry]
        Jr = np.empty((idx.size, 2 * n2, 2 * n))
        Jr[:, :n2, :n] = J.real
        Jr[:, :n2, n:] = -J.imag
        Jr[:, n2:, :n] = J.imag
        Jr[:, n2:, n:] = J.real
        rr = np.concatenate([rc.real, rc.imag], axis=1)
        step = -np.matmul(np.linalg.pinv(Jr), rr[:, :, None])[:, :, 0]

        base = np.einsum("kr,kr->k", rr, rr)
        Ua = U[idx]
        Unew = Ua.copy()
        alpha = np.ones(idx.size)
        pending = np.ones(idx.size, dtype=bool)
        for _ in range(60):
            cand = Ua + alpha[:, None] * step
            rc_c = _residual(A, cand[:, :n] + 1j * cand[:, n:], rx, ry)
            s = np.einsum("kr,kr->k", rc_c.real, rc_c.real) + np.einsum(
                "kr,kr->k", rc_c.imag, rc_c.imag
            )
            ok = pending & (s < base)
            Unew[ok] = cand[ok]
            pending &= ~ok
            if not pending.any():
                break
            alpha[pending] *= 0.5
        if pending.any():
            # no descent direction left at tiny steps: stalled, give up
            alive[idx[pending]] = False
        good = ~pending
        U[idx[good]] = Unew[good]

    idx = np.flatnonzero(alive)
    if idx.size:
        F = U[idx, :n] + 1j * U[idx, n:]
        res = np.abs(_residual(A, F, rx, ry)).max(axis=1)
        record_converged(idx, F, res)
    return results


def oracle_solve(kind: str, inst: Instance, cfg: OracleConfig | None = None) -> SolutionReport:
    """Find all solutions of the chosen equation reachable by the restarts.

    The measure is ignored for kind "dalembert".  Converged points are
    deduplicated by greedy clustering at dedup_eps (cluster representative:
    smallest residual, earliest restart on ties), the zero solution is
    dropped, and the rest is canonically sorted.
    """
    if cfg is None:
        cfg = OracleConfig()
    A = equation_matrix(kind, inst)
    n = inst.sg.order
    radius = _sampling_radius(kind, inst, cfg)
    workers = max(1, min(thread_count(), cfg.restarts))
    chunks = np.array_split(np.arange(cfg.restarts), workers)

    def run(chunk: np.ndarray) -> list[tuple[np.ndarray, float] | None]:
        starts = np.stack(
            [_start_point(cfg.rng_seed, int(k), n, radius) for k in chunk]
        )
        return _gauss_newton_chunk(A, starts, radius, cfg)

    if workers == 1:
        per_chunk = [run(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_chunk = list(pool.map(run, chunks))

    converged: list[tuple[int, np.ndarray, float]] = []
    for chunk, outcomes in zip(chunks, per_chunk):
        for k, outcome in zip(chunk, outcomes):
            if outcome is not None:
                converged.append((int(k), outcome[0], outcome[1]))

    if len(converged) < 0.10 * cfg.restarts:
        warnings.warn(
            NoConvergenceBudget(
                f"{len(converged)}/{cfg.restarts} restarts converged on {kind}"
            )
        )

    clusters: list[dict] = []
    for k, f, res in converged:
        for c in clusters:
            if max_abs_diff(f, c["anchor"]) <= cfg.dedup_eps:
                if res < c["res"]:
                    c["f"], c["res"] = f, res
                break
        else:
            clusters.append({"anchor": f, "f": f, "res": res})

    finals = [
        (c["f"], c["res"]) for c in clusters if max_abs(c["f"]) > cfg.dedup_eps
    ]
    finals.sort(key=lambda fr: canonical_key(fr[0]))
    for f, _ in finals:
        f.setflags(write=False)
    return SolutionReport(
        equation=kind,
        solutions=tuple(
            Solution(values=f, residual=res, provenance="oracle") for f, res in finals
        ),
    )


@dataclass(frozen=True)
class MatchResult:
    """Maximum bipartite matching of two solution sets under a distance cap."""

    pairs: tuple[tuple[int, int], ...]
    unmatched_left: tuple[int, ...]
    unmatched_right: tuple[int, ...]

    @property
    def is_match(self) -> bool:
        return not self.unmatched_left and not self.unmatched_right


def match_solution_sets(a, b, eps: float = 1e-6) -> MatchResult:
    """Match members of a against members of b at max-abs distance <= eps."""
    left = a.values() if isinstance(a, SolutionReport) else list(a)
    right = b.values() if isinstance(b, SolutionReport) else list(b)
    allowed = [
        [j for j, g in enumerate(right) if max_abs_diff(f, g) <= eps] for f in left
    ]
    owner = [-1] * len(right)

    def augment(i: int, seen: list[bool]) -> bool:
        for j in allowed[i]:
            if not seen[j]:
                seen[j] = True
                if owner[j] < 0 or augment(owner[j], seen):
                    owner[j] = i
                    return True
        return False

    for i in range(len(left)):
        augment(i, [False] * len(right))
    pairs = tuple(sorted((i, j) for j, i in enumerate(owner) if i >= 0))
    matched_left = {i for i, _ in pairs}
    return MatchResult(
        pairs=pairs,
        unmatched_left=tuple(i for i in range(len(left)) if i not in matched_left),
        unmatched_right=tuple(j for j in range(len(right)) if owner[j] < 0),
    )
