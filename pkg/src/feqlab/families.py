"""Closed-form solution families, the mass-scaling bijection between
d'Alembert and Kannappan solutions, and the identity suites that verify them.

The construction routes all go through multiplicative functions chi:

* sine family (Van Vleck):   f = [(chi - chi o tau)/2] * int chi(tau(t)) dmu,
  admissible when int chi dmu != 0 and int chi o tau dmu = -int chi dmu;
* cosine family (Kannappan): f = [(chi + chi o tau)/2] * int chi dmu,
  admissible when int chi dmu != 0 and int chi o tau dmu = +int chi dmu;
* d'Alembert (abelian part): g = (chi + chi o tau)/2.

Non-abelian d'Alembert solutions have no constructive route here; they are
reachable only through the numeric oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .characters import (
    compose_tau,
    dedup_canonical,
    enumerate_multiplicative,
    max_abs,
)
from .equations import (
    Instance,
    is_abelian_function,
    residual_dalembert,
    residual_kannappan,
    residual_van_vleck,
)
from .errors import EquivalenceViolation, NotDirac, ZeroDenominator
from .measures import (
    double_integral,
    right_integral_table,
    total_mass_integral,
)
from .semigroups import FiniteSemigroup, Involution

ADMISSIBLE_TOL = 1e-9   # admissibility and membership predicates
RESIDUAL_TOL = 1e-10    # residual assertions on constructed members
DEDUP_EPS = 1e-8        # max-abs distance below which two functions coincide


@dataclass(frozen=True, eq=False)
class CharacterIntegrals:
    """A multiplicative function with its two measure integrals."""

    chi: np.ndarray
    int_mu: complex       # int chi dmu
    int_mu_tau: complex   # int chi o tau dmu

    def van_vleck_admissible(self, tol: float = ADMISSIBLE_TOL) -> bool:
        return abs(self.int_mu) > tol and abs(self.int_mu_tau + self.int_mu) < tol

    def kannappan_admissible(self, tol: float = ADMISSIBLE_TOL) -> bool:
        return abs(self.int_mu) > tol and abs(self.int_mu_tau - self.int_mu) < tol


@dataclass(frozen=True, eq=False)
class Solution:
    values: np.ndarray
    residual: float
    provenance: str  # "constructed" or "oracle"


@dataclass(frozen=True, eq=False)
class SolutionReport:
    """Deduplicated, canonically ordered solution set of one equation."""

    equation: str
    solutions: tuple[Solution, ...]

    def values(self) -> list[np.ndarray]:
        return [s.values for s in self.solutions]

    def __len__(self) -> int:
        return len(self.solutions)


def character_integrals(inst: Instance, chars=None) -> list[CharacterIntegrals]:
    if chars is None:
        chars = enumerate_multiplicative(inst.sg)
    out = []
    for chi in chars:
        out.append(
            CharacterIntegrals(
                chi=chi,
                int_mu=total_mass_integral(chi, inst.mu),
                int_mu_tau=total_mass_integral(compose_tau(chi, inst.tau), inst.mu),
            )
        )
    return out


def _as_report(equation, funcs, residual_of, dedup_eps) -> SolutionReport:
    kept = dedup_canonical(funcs, eps=dedup_eps)
    sols = tuple(
        Solution(values=f, residual=residual_of(f).max_abs, provenance="constructed")
        for f in kept
    )
    return SolutionReport(equation=equation, solutions=sols)


def van_vleck_family(
    inst: Instance,
    chars=None,
    tol: float = ADMISSIBLE_TOL,
    dedup_eps: float = DEDUP_EPS,
) -> SolutionReport:
    """All nonzero solutions of the sine-type equation.

    chi and chi o tau yield the identical function, so each admissible pair
    collapses to one family member during deduplication.
    """
    funcs = []
    for ci in character_integrals(inst, chars):
        if not ci.van_vleck_admissible(tol):
            continue
        f = 0.5 * (ci.chi - compose_tau(ci.chi, inst.tau)) * ci.int_mu_tau
        if max_abs(f) > dedup_eps:
            funcs.append(f)
    return _as_report(
        "van_vleck", funcs, lambda f: residual_van_vleck(f, inst), dedup_eps
    )


def van_vleck_family_dirac(
    inst: Instance,
    chars=None,
    tol: float = ADMISSIBLE_TOL,
    dedup_eps: float = DEDUP_EPS,
) -> SolutionReport:
    """Unit-point-mass specialization: f = chi(tau(z0)) (chi - chi o tau)/2.

    Must agree with van_vleck_family whenever it applies.
    """
    if len(inst.mu.points) != 1 or complex(inst.mu.weights[0]) != 1 + 0j:
        raise NotDirac("specialization needs a single atom of weight 1")
    z0 = int(inst.mu.points[0])
    tz0 = inst.tau(z0)
    if chars is None:
        chars = enumerate_multiplicative(inst.sg)
    funcs = []
    for chi in chars:
        if abs(chi[z0]) <= tol or abs(chi[tz0] + chi[z0]) >= tol:
            continue
        f = complex(chi[tz0]) * 0.5 * (chi - compose_tau(chi, inst.tau))
        if max_abs(f) > dedup_eps:
            funcs.append(f)
    return _as_report(
        "van_vleck", funcs, lambda f: residual_van_vleck(f, inst), dedup_eps
    )


def kannappan_abelian_family(
    inst: Instance,
    chars=None,
    tol: float = ADMISSIBLE_TOL,
    dedup_eps: float = DEDUP_EPS,
) -> SolutionReport:
    """All nonzero abelian solutions of the cosine-type equation."""
    funcs = []
    for ci in character_integrals(inst, chars):
        if not ci.kannappan_admissible(tol):
            continue
        f = 0.5 * (ci.chi + compose_tau(ci.chi, inst.tau)) * ci.int_mu
        if max_abs(f) > dedup_eps:
            funcs.append(f)
    return _as_report(
        "kannappan", funcs, lambda f: residual_kannappan(f, inst), dedup_eps
    )


def dalembert_abelian_family(
    sg: FiniteSemigroup, tau: Involution, chars=None, dedup_eps: float = DEDUP_EPS
) -> list[np.ndarray]:
    """Even parts g = (chi + chi o tau)/2 of the multiplicative functions."""
    if chars is None:
        chars = enumerate_multiplicative(sg)
    funcs = []
    for chi in chars:
        g = 0.5 * (chi + compose_tau(chi, tau))
        if max_abs(g) > dedup_eps:
            funcs.append(g)
    return dedup_canonical(funcs, eps=dedup_eps)


# ---------------------------------------------------------------------------
# the mass-scaling bijection between admissible d'Alembert solutions and
# nonzero Kannappan solutions

def dalembert_to_kannappan(g, inst: Instance) -> np.ndarray:
    """Forward map: g -> (int g dmu) * g."""
    return total_mass_integral(g, inst.mu) * np.asarray(g)


def kannappan_to_dalembert(
    f, inst: Instance, tol: float = ADMISSIBLE_TOL
) -> np.ndarray:
    """Inverse map: f -> (x -> int f(x t) dmu / int f dmu).

    A vanishing denominator means f was not a nonzero Kannappan solution in
    the first place, so it is reported as an error rather than patched over.
    """
    mass = total_mass_integral(f, inst.mu)
    if abs(mass) <= tol:
        raise ZeroDenominator(f"int f dmu = {mass}, cannot invert")
    return right_integral_table(inst.sg, np.asarray(f), inst.mu) / mass


@dataclass(frozen=True)
class DalembertConditions:
    """Truth values (and deviations) of the three equivalent integral
    conditions a d'Alembert solution must satisfy to be admissible:

    tau_shift:       int g(x t) dmu = int g(x tau(t)) dmu  for all x
    proportionality: int g(x t) dmu = g(x) int g dmu       for all x
    double_mass:     int int g(t s) dmu dmu = (int g dmu)^2
    """

    tau_shift: bool
    proportionality: bool
    double_mass: bool
    deviations: tuple[float, float, float]
    mass: complex

    @property
    def consistent(self) -> bool:
        return self.tau_shift == self.proportionality == self.double_mass

    @property
    def all_hold(self) -> bool:
        return self.tau_shift and self.proportionality and self.double_mass


def dalembert_integral_conditions(
    g, inst: Instance, tol: float = ADMISSIBLE_TOL
) -> DalembertConditions:
    ga = np.asarray(g)
    r = right_integral_table(inst.sg, ga, inst.mu)
    tau_pts = np.array([inst.tau(int(z)) for z in inst.mu.points])
    r_tau = ga[inst.sg.cayley[:, tau_pts]] @ inst.mu.weights
    mass = total_mass_integral(ga, inst.mu)
    dd = double_integral(inst.sg, ga, inst.mu, "plain")
    d_shift = float(np.max(np.abs(r - r_tau)))
    d_prop = float(np.max(np.abs(r - ga * mass)))
    d_mass = abs(dd - mass * mass)
    return DalembertConditions(
        tau_shift=d_shift <= tol,
        proportionality=d_prop <= tol,
        double_mass=d_mass <= tol,
        deviations=(d_shift, d_prop, d_mass),
        mass=mass,
    )


def dalembert_admissible(g, inst: Instance, tol: float = ADMISSIBLE_TOL) -> bool:
    """Membership test for the admissible pool the bijection starts from:
    nonvanishing measure integral plus the three integral conditions.

    Raises EquivalenceViolation when the three conditions disagree, which for
    a genuine d'Alembert solution cannot happen.
    """
    conds = dalembert_integral_conditions(g, inst, tol)
    if not conds.consistent:
        raise EquivalenceViolation(
            conds.tau_shift, conds.proportionality, conds.double_mass
        )
    return abs(conds.mass) > tol and conds.all_hold


# ---------------------------------------------------------------------------
# identity suites

def _worst_over_x(values: list[float]) -> tuple[float, tuple[int, ...]]:
    x = int(np.argmax(values))
    return float(values[x]), (x,)


@dataclass(frozen=True)
class SuiteReport:
    """Residuals of the identities a solution must satisfy, where each
    identity attains its worst deviation, and the measure integral of the
    solution itself (which must be nonzero when required)."""

    residuals: Mapping[str, float]
    argmax: Mapping[str, tuple[int, ...]]
    mass: complex
    mass_required: bool

    def worst(self) -> float:
        return max(self.residuals.values())

    def failures(
        self, tol: float = RESIDUAL_TOL, mass_tol: float = ADMISSIBLE_TOL
    ) -> list[str]:
        bad = [name for name, dev in self.residuals.items() if dev > tol]
        if self.mass_required and abs(self.mass) <= mass_tol:
            bad.append("nonzero_mass")
        return bad

    def passed(
        self, tol: float = RESIDUAL_TOL, mass_tol: float = ADMISSIBLE_TOL
    ) -> bool:
        return not self.failures(tol, mass_tol)


def van_vleck_identity_suite(f, inst: Instance) -> SuiteReport:
    """Identities every nonzero sine-type solution satisfies:

    odd_part:          f o tau = -f
    double_mass_plain: int int f(t s) dmu dmu = 0
    double_mass_tau:   int int f(tau(t) s) dmu dmu = 0
    sandwich_tau:      int int f(x tau(t) s) = +f(x) int f dmu  for all x
    sandwich_plain:    int int f(x t s)      = -f(x) int f dmu  for all x
    shift_symmetry:    int f(tau(x) t) dmu = int f(x t) dmu     for all x
    plus int f dmu != 0.
    """
    fa = np.asarray(f)
    sg, tau, mu = inst.sg, inst.tau, inst.mu
    mass = total_mass_integral(fa, mu)
    r = right_integral_table(sg, fa, mu)
    sand_tau = _worst_over_x(
        [
            abs(double_integral(sg, fa, mu, "left_tau", x=x, tau=tau) - fa[x] * mass)
            for x in range(sg.order)
        ]
    )
    sand_plain = _worst_over_x(
        [
            abs(double_integral(sg, fa, mu, "plain", x=x) + fa[x] * mass)
            for x in range(sg.order)
        ]
    )
    odd = _worst_over_x(list(np.abs(fa + fa[tau.perm])))
    shift = _worst_over_x(list(np.abs(r[tau.perm] - r)))
    residuals = {
        "odd_part": odd[0],
        "double_mass_plain": abs(double_integral(sg, fa, mu, "plain")),
        "double_mass_tau": abs(double_integral(sg, fa, mu, "left_tau", tau=tau)),
        "sandwich_tau": sand_tau[0],
        "sandwich_plain": sand_plain[0],
        "shift_symmetry": shift[0],
    }
    argmax = {
        "odd_part": odd[1],
        "double_mass_plain": (),
        "double_mass_tau": (),
        "sandwich_tau": sand_tau[1],
        "sandwich_plain": sand_plain[1],
        "shift_symmetry": shift[1],
    }
    return SuiteReport(residuals=residuals, argmax=argmax, mass=mass, mass_required=True)


def kannappan_identity_suite(f, inst: Instance) -> SuiteReport:
    """Identities every cosine-type solution satisfies:

    even_part:      f o tau = f
    sandwich_tau:   int int f(x tau(t) s) = f(x) int f dmu  for all x
    sandwich_plain: int int f(x t s)      = f(x) int f dmu  for all x
    plus int f dmu != 0 exactly when f != 0.
    """
    fa = np.asarray(f)
    sg, tau, mu = inst.sg, inst.tau, inst.mu
    mass = total_mass_integral(fa, mu)
    sand_tau = _worst_over_x(
        [
            abs(double_integral(sg, fa, mu, "left_tau", x=x, tau=tau) - fa[x] * mass)
            for x in range(sg.order)
        ]
    )
    sand_plain = _worst_over_x(
        [
            abs(double_integral(sg, fa, mu, "plain", x=x) - fa[x] * mass)
            for x in range(sg.order)
        ]
    )
    even = _worst_over_x(list(np.abs(fa - fa[tau.perm])))
    residuals = {
        "even_part": even[0],
        "sandwich_tau": sand_tau[0],
        "sandwich_plain": sand_plain[0],
    }
    argmax = {
        "even_part": even[1],
        "sandwich_tau": sand_tau[1],
        "sandwich_plain": sand_plain[1],
    }
    return SuiteReport(
        residuals=residuals,
        argmax=argmax,
        mass=mass,
        mass_required=max_abs(fa) > DEDUP_EPS,
    )


@dataclass(frozen=True)
class TransformReport:
    dalembert_residual: float
    abelian: bool
    mean: complex         # int g dmu, zero for transforms of sine solutions
    double_mass: complex  # int int g(t s) dmu dmu, nonzero


def associated_dalembert(
    f, inst: Instance, tol: float = ADMISSIBLE_TOL
) -> tuple[np.ndarray, TransformReport]:
    """The d'Alembert solution g(x) = int f(x t) dmu / int f dmu attached to a
    nonzero sine-type solution f, with its side conditions evaluated."""
    fa = np.asarray(f)
    mass = total_mass_integral(fa, inst.mu)
    if abs(mass) <= tol:
        raise ZeroDenominator(f"int f dmu = {mass}, transform undefined")
    g = right_integral_table(inst.sg, fa, inst.mu) / mass
    report = TransformReport(
        dalembert_residual=residual_dalembert(g, inst.sg, inst.tau).max_abs,
        abelian=is_abelian_function(g, inst.sg),
        mean=total_mass_integral(g, inst.mu),
        double_mass=double_integral(inst.sg, g, inst.mu, "plain"),
    )
    return g, report
