"""Inverse problem: which curvature diagonals the homogeneous family realizes.

For m = 2 the ordered diagonal (delta_1, delta_2, delta_3) of the curvature
at 0 relates to (a, b, c) = (2 lambda, 1/d_1, 4 d_1/d_2) through

    a - b - 2 = delta_1,   a + b - c = delta_2,   a + c + 2 = delta_3,

i.e. A (a,b,c)^t = (delta_1 + 2, delta_2, delta_3 - 2)^t with
A = [[1,-1,0],[1,1,-1],[1,0,1]], whose unique solution is

    (a, b, c) = ( (d1+d2+d3)/3, (d2+d3-2 d1-6)/3, (2 d3-d1-d2-6)/3 ).

Feasibility of the ordered triple is equivalent to lambda > 1, b > 0,
c > 0, mu_1^2 > 0 and mu_2^2 > 0, with

    mu_1^2 = d_1 - 1/(2 (lambda-1)),
    mu_2^2 = d_2 - 2 d_1/lambda + 1/(lambda (2 lambda-1))
           = (2 (a-c)(a-1) + b c) / (b c lambda (a-1)).

All inequalities are strict and evaluated exactly (margin 0); boundary
triples report infeasible.  Triples are ordered tuples throughout — the
diagonal order is frame data — and multiset questions are answered only by
:func:`permutation_analysis`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateInputError
from .invariants import invariants_at_zero
from .kernels import Homogeneous, kernel_taylor

IDENTITY = (1, 2, 3)
RHO = (2, 1, 3)  # swaps the first two diagonal slots
TAU = (1, 3, 2)  # swaps the last two diagonal slots

_SOLVE_MATRIX = np.array([[1.0, -1.0, 0.0], [1.0, 1.0, -1.0], [1.0, 0.0, 1.0]])


@dataclass(frozen=True)
class FeasibilityResult:
    delta: tuple
    abc: tuple
    params: Optional[tuple]  # (lambda, mu_1^2, mu_2^2)
    checks: dict
    feasible: bool

    def mu_vector(self) -> tuple:
        if self.params is None:
            raise DegenerateInputError("no parameters for an infeasible triple")
        lam, mu1_sq, mu2_sq = self.params
        return (1.0, float(np.sqrt(mu1_sq)), float(np.sqrt(mu2_sq)))


@dataclass(frozen=True)
class PermutationAnalysis:
    delta: tuple
    results: dict  # sigma (1-indexed tuple) -> FeasibilityResult
    feasible_sigmas: tuple

    @property
    def beyond_identity(self) -> tuple:
        return tuple(s for s in self.feasible_sigmas if s != IDENTITY)

    def respects_exclusions(self) -> bool:
        """No sigma outside {identity, rho, tau} may be feasible."""
        return all(s in (IDENTITY, RHO, TAU) for s in self.feasible_sigmas)


def triple_to_abc(delta) -> tuple:
    d1, d2, d3 = (float(x) for x in delta)
    return (
        (d1 + d2 + d3) / 3.0,
        (d2 + d3 - 2.0 * d1 - 6.0) / 3.0,
        (2.0 * d3 - d1 - d2 - 6.0) / 3.0,
    )


def abc_to_params(a: float, b: float, c: float) -> Optional[tuple]:
    """(lambda, mu_1^2, mu_2^2) when positive; None when infeasible."""
    if b == 0.0 or c == 0.0:
        raise DegenerateInputError("b and c must be nonzero")
    lam = a / 2.0
    if not (lam > 1.0 and b > 0.0 and c > 0.0):
        return None
    d1 = 1.0 / b
    d2 = 4.0 * d1 / c
    mu1_sq = d1 - 1.0 / (2.0 * (lam - 1.0))
    mu2_sq = d2 - 2.0 * d1 / lam + 1.0 / (lam * (2.0 * lam - 1.0))
    if mu1_sq <= 0.0 or mu2_sq <= 0.0:
        return None
    return (lam, mu1_sq, mu2_sq)


def mu2_sq_closed(a: float, b: float, c: float) -> float:
    """mu_2^2 in the closed rational form; equals the direct evaluation."""
    return (2.0 * (a - c) * (a - 1.0) + b * c) / (b * c * (a / 2.0) * (a - 1.0))


def solve_triple(delta) -> FeasibilityResult:
    """Full feasibility ledger for an ordered triple."""
    delta = tuple(float(x) for x in delta)
    d1, d2, d3 = delta
    a, b, c = triple_to_abc(delta)
    checks = {
        "sum_gt_6": {"lhs": d1 + d2 + d3, "ok": d1 + d2 + d3 > 6.0},
        "mix1_gt_6": {"lhs": d2 + d3 - 2.0 * d1, "ok": d2 + d3 - 2.0 * d1 > 6.0},
        "mix2_gt_6": {"lhs": 2.0 * d3 - d1 - d2, "ok": 2.0 * d3 - d1 - d2 > 6.0},
        "mu2_pos": {
            "lhs": 2.0 * (a - c) * (a - 1.0) + b * c,
            "ok": 2.0 * (a - c) * (a - 1.0) + b * c > 0.0,
        },
    }
    params = None
    if b != 0.0 and c != 0.0:
        params = abc_to_params(a, b, c)
    feasible = all(entry["ok"] for entry in checks.values()) and params is not None
    return FeasibilityResult(delta=delta, abc=(a, b, c), params=params,
                             checks=checks, feasible=feasible)


def check_region(delta, region: str):
    """(verdict, per-clause ledger) for the base / perm1 / perm2 regions."""
    d1, d2, d3 = (float(x) for x in delta)
    if region == "base":
        res = solve_triple(delta)
        ledger = {k: dict(v) for k, v in res.checks.items()}
        return all(v["ok"] for v in ledger.values()), ledger
    if region == "perm1":
        hi = max(2.0 * d1 - d2, 2.0 * d2 - d1)
        ledger = {
            "distinct_12": {"lhs": d1 - d2, "ok": d1 != d2},
            "upper": {"lhs": 2.0 * (d1 + d2) - (d3 - 6.0), "ok": 2.0 * (d1 + d2) > d3 - 6.0},
            "lower": {"lhs": (d3 - 6.0) - hi, "ok": d3 - 6.0 > hi},
        }
        return all(v["ok"] for v in ledger.values()), ledger
    if region == "perm2":
        lo = min(2.0 * d3 - d2, 2.0 * d2 - d3) - 6.0
        ledger = {
            "order_32": {"lhs": d3 - d2, "ok": d3 > d2},
            "mid": {"lhs": d2 - (3.0 + d3 / 2.0), "ok": d2 > 3.0 + d3 / 2.0},
            "first_small": {"lhs": lo - d1, "ok": d1 < lo},
        }
        return all(v["ok"] for v in ledger.values()), ledger
    raise ValueError(f"region must be base/perm1/perm2, got {region!r}")


def permutation_analysis(delta) -> PermutationAnalysis:
    """Feasibility of every ordering of the triple, keyed by 1-indexed sigma."""
    delta = tuple(float(x) for x in delta)
    results = {}
    for sigma in itertools.permutations((1, 2, 3)):
        permuted = tuple(delta[s - 1] for s in sigma)
        results[sigma] = solve_triple(permuted)
    feasible = tuple(s for s in results if results[s].feasible)
    return PermutationAnalysis(delta=delta, results=results, feasible_sigmas=feasible)


def rank2_feasibility(delta1: float, delta2: float) -> Optional[tuple]:
    """m = 1 case: feasible iff both positive and delta2 - delta1 > 2.

    Then lambda = (delta1+delta2)/4, b = (delta2-delta1-2)/2 and
    mu_1^2 = d_1 - 1/(2 lambda - 1) with d_1 = 1/b.  The swapped pair is
    never feasible (it would force delta1 - delta2 > 2 as well).
    """
    delta1, delta2 = float(delta1), float(delta2)
    if not (delta1 > 0.0 and delta2 > 0.0 and delta2 - delta1 > 2.0):
        return None
    lam = (delta1 + delta2) / 4.0
    b = (delta2 - delta1 - 2.0) / 2.0
    d1 = 1.0 / b
    mu1_sq = d1 - 1.0 / (2.0 * lam - 1.0)
    if mu1_sq <= 0.0:
        return None
    return (lam, mu1_sq)


def roundtrip_check(delta, order: int = 3) -> float:
    """Residual of [prescribe diagonal -> solve -> rebuild kernel -> read diagonal]."""
    res = solve_triple(delta)
    if not res.feasible:
        raise DegenerateInputError(f"triple {tuple(delta)} is not feasible")
    lam = res.params[0]
    spec = Homogeneous(lam=lam, mu=res.mu_vector(), m=2)
    inv = invariants_at_zero(kernel_taylor(spec, order))
    diag = np.real(np.diag(inv.curvature))
    return float(np.abs(diag - np.asarray(delta, dtype=float)).max())
