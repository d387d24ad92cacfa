"""Enumeration of all nonzero multiplicative functions on a finite semigroup.

A complex-valued function on S is stored as a length-n complex vector
(one carrier for every function the package manipulates).  If x has orbit
index i and period p then chi(x)^i (chi(x)^p - 1) = 0, so chi(x) is 0 or a
p-th root of unity.  That gives a finite candidate set per element, and a
backtracking search over candidate assignments recovers the complete set of
multiplicative functions.
"""
from __future__ import annotations

import numpy as np

from .semigroups import FiniteSemigroup, Involution, orbit

MULT_TOL = 1e-12     # absolute slack for the exact multiplicativity scan
CANON_DECIMALS = 8   # rounding used by the canonical order and dedup


def as_cfunc(values, order: int) -> np.ndarray:
    """Validate and freeze a total complex-valued function on S."""
    f = np.asarray(values, dtype=np.complex128)
    if f.shape != (order,):
        raise ValueError(f"expected {order} values, got shape {f.shape}")
    if not np.all(np.isfinite(f.real) & np.isfinite(f.imag)):
        raise ValueError("function values must be finite")
    f = f.copy()
    f.setflags(write=False)
    return f


def canonical_key(f) -> tuple[tuple[float, float], ...]:
    """Lexicographic sort key: (Re, Im) per index, rounded at 1e-8."""
    return tuple(
        (round(float(v.real), CANON_DECIMALS) + 0.0, round(float(v.imag), CANON_DECIMALS) + 0.0)
        for v in np.asarray(f)
    )


def max_abs(f) -> float:
    return float(np.max(np.abs(np.asarray(f))))


def max_abs_diff(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def dedup_canonical(funcs, eps: float = 1e-8) -> list[np.ndarray]:
    """Drop near-duplicates (max-abs distance <= eps), keeping for each
    cluster the canonically smallest representative."""
    out: list[np.ndarray] = []
    for f in sorted(funcs, key=canonical_key):
        if all(max_abs_diff(f, kept) > eps for kept in out):
            out.append(f)
    return out


def candidate_values(sg: FiniteSemigroup, x: int) -> np.ndarray:
    """{0} plus the p-th roots of unity, p the orbit period of x."""
    p = orbit(sg, x).period
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    return np.concatenate(([0j], roots))


def is_multiplicative(sg: FiniteSemigroup, chi, tol: float = MULT_TOL) -> bool:
    """Exact scan of chi(x*y) = chi(x) chi(y) over all pairs."""
    v = np.asarray(chi)
    return bool(np.max(np.abs(v[sg.cayley] - np.outer(v, v))) <= tol)


def enumerate_multiplicative(
    sg: FiniteSemigroup, include_zero: bool = False, tol: float = MULT_TOL
) -> list[np.ndarray]:
    """All nonzero multiplicative functions, canonically ordered.

    Elements are assigned in descending orbit-period order; a product
    constraint chi(a*b) = chi(a)chi(b) is checked as soon as a, b and a*b are
    all assigned, which prunes dead branches as early as possible.
    Completeness is relative to the candidate-value sets above, which every
    multiplicative function must respect.
    """
    n = sg.order
    cands = [candidate_values(sg, x) for x in range(n)]
    order = sorted(range(n), key=lambda x: (-orbit(sg, x).period, x))
    pos = {e: k for k, e in enumerate(order)}
    ready: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            ab = sg.mul(a, b)
            ready[max(pos[a], pos[b], pos[ab])].append((a, b, ab))

    values = np.zeros(n, dtype=np.complex128)
    found: list[np.ndarray] = []

    def assign(k: int) -> None:
        if k == n:
            found.append(values.copy())
            return
        e = order[k]
        for v in cands[e]:
            values[e] = v
            if all(
                abs(values[a] * values[b] - values[ab]) <= tol
                for a, b, ab in ready[k]
            ):
                assign(k + 1)

    assign(0)
    if not include_zero:
        found = [chi for chi in found if max_abs(chi) > tol]
    for chi in found:
        chi.setflags(write=False)
    return sorted(found, key=canonical_key)


def compose_tau(chi, tau: Involution) -> np.ndarray:
    """chi o tau; multiplicative again, since tau anti-commutes into the
    commutative target."""
    out = np.asarray(chi, dtype=np.complex128)[tau.perm].copy()
    out.setflags(write=False)
    return out
