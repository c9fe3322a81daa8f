"""Analytic worst-case model: cut configurations, constraints, ratio evaluators.

A Configuration assigns a magnitude to each of the 35 edge cuts between the
labeled regions of the two color classes, plus the shape parameters mu, nu, xi
and the separation fractions pi1..pi6 / lambda1..lambda6.  The six ratio
evaluators lower-bound the six candidate covers built by the full algorithm;
their maximum over a feasible configuration is the guarantee certified for
the bipartite-graph family that configuration represents.

The numeric kernel broadcasts over numpy arrays so the same formulas serve
scalar evaluation, the optimizer's batched descent, and the graph-extraction
audit.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .bigraph import BipartiteGraph, VertexSet, best_k
from .covers import PartitionLayout, make_layout
from .exact import ExactResult

__all__ = [
    "CUT_NAMES",
    "VARIABLE_NAMES",
    "Configuration",
    "DeltaQuantities",
    "RatioReport",
    "ConstraintViolations",
    "DegenerateConfiguration",
    "delta_quantities",
    "check_constraints",
    "eval_ratios",
    "extract_config",
    "realized_fractions",
    "dumps_config",
    "loads_config",
]

CUT_NAMES: tuple[str, ...] = (
    "B", "C",
    "F1", "F2", "F3",
    "H1", "H2",
    "I1", "I2", "I3", "I4", "I5", "I6",
    "J1", "J2", "J3",
    "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9",
    "N1", "N2",
    "P1", "P2", "P3", "P4", "P5",
    "U1", "U2", "U3",
)

PI_KEYS = tuple(f"pi{i}" for i in range(1, 7))
LAMBDA_KEYS = tuple(f"lambda{i}" for i in range(1, 7))

# Flat variable order used by the optimizer's vectors.
VARIABLE_NAMES: tuple[str, ...] = CUT_NAMES + ("mu", "nu", "xi") + PI_KEYS + LAMBDA_KEYS

_SHAPE_EPS = 1e-9   # clamp for the (1-nu), (1-xi) denominators
_MU_EPS = 1e-12     # clamp for mu in denominators


class DegenerateConfiguration(ValueError):
    """Configuration unusable for ratio evaluation (opt <= 0 or mu <= 0)."""


@dataclass(frozen=True)
class Configuration:
    """One point of the analytic model: cut magnitudes plus shape parameters.

    `cuts` follows CUT_NAMES order.  Separation fractions are optional: a
    graph extraction leaves them None (they are search variables, not graph
    quantities).  `pi` and `lam` store the separation parameters when the
    configuration is meant to be self-contained (e.g. the shipped worst-case
    point); evaluators accept explicit overrides.
    """

    cuts: tuple[float, ...]
    mu: float
    nu: float
    xi: float
    pi_fracs: tuple[float, ...] | None = None
    lam_fracs: tuple[float, ...] | None = None
    pi: float | None = None
    lam: float | None = None

    def __post_init__(self):
        if len(self.cuts) != len(CUT_NAMES):
            raise ValueError(f"expected {len(CUT_NAMES)} cut values, got {len(self.cuts)}")
        for fr in (self.pi_fracs, self.lam_fracs):
            if fr is not None and len(fr) != 6:
                raise ValueError("separation fractions must have six entries")

    @classmethod
    def from_values(
        cls,
        mu: float,
        nu: float,
        xi: float,
        pi_fracs=None,
        lam_fracs=None,
        pi: float | None = None,
        lam: float | None = None,
        **cuts: float,
    ) -> "Configuration":
        unknown = set(cuts) - set(CUT_NAMES)
        if unknown:
            raise ValueError(f"unknown cut names: {sorted(unknown)}")
        vals = tuple(float(cuts.get(name, 0.0)) for name in CUT_NAMES)
        pf = tuple(float(v) for v in pi_fracs) if pi_fracs is not None else None
        lf = tuple(float(v) for v in lam_fracs) if lam_fracs is not None else None
        return cls(vals, float(mu), float(nu), float(xi), pf, lf, pi, lam)

    def cut(self, name: str) -> float:
        return self.cuts[CUT_NAMES.index(name)]

    def cut_dict(self) -> dict[str, float]:
        return dict(zip(CUT_NAMES, self.cuts))

    def scaled(self, t: float) -> "Configuration":
        """All 35 cuts multiplied by t; shape parameters and fractions unchanged."""
        return replace(self, cuts=tuple(v * t for v in self.cuts))

    def normalized(self) -> "Configuration":
        """Cuts divided by the largest cut, so every magnitude lies in [0, 1]."""
        peak = max(self.cuts)
        return self.scaled(1.0 / peak) if peak > 0 else self


@dataclass(frozen=True)
class DeltaQuantities:
    """Edge counts covered by each labeled set, plus the optimum's value."""

    dS1: float
    dS2: float
    dX1: float
    dX2: float
    dO1: float
    dO2: float
    opt: float


@dataclass(frozen=True)
class ConstraintViolations:
    """Slacks (lhs - rhs) of the structural inequalities, id'd 1..12.

    Constraints 5-8 are reported with denominators cleared ((1-nu)*dS1 - dX1
    and friends): same sign as the stated fractional form wherever that form
    is defined, and still meaningful at nu = 1 or xi = 1 where an empty X-set
    forces the right-hand side to zero.  Entries 11 and 12 (the separation
    inequalities) appear only when the configuration carries fractions and a
    pi/lambda value is known.
    """

    slacks: tuple[tuple[int, str, float], ...]
    tol: float
    feasible: bool

    @property
    def violated(self) -> tuple[tuple[int, str, float], ...]:
        return tuple(e for e in self.slacks if e[2] < -self.tol)


@dataclass(frozen=True)
class RatioReport:
    """The six ratios with every intermediate quantity and branch choice."""

    r1: float
    r2: float
    r3: float
    r4: float
    r5: float
    r6: float
    best: float
    argbest: int
    intermediates: dict[str, float] = field(default_factory=dict)
    branches: dict[str, str] = field(default_factory=dict)

    @property
    def ratios(self) -> tuple[float, ...]:
        return (self.r1, self.r2, self.r3, self.r4, self.r5, self.r6)


def _branch(lhs, rhs, low, high):
    """low where lhs < rhs, high where lhs > rhs, elementwise max at equality."""
    return np.where(lhs < rhs, low, np.where(lhs > rhs, high, np.maximum(low, high)))


def _deltas(c: Mapping[str, object]) -> dict[str, object]:
    L = sum(c[f"L{i}"] for i in range(1, 10))
    dS1 = c["B"] + c["C"] + c["F1"] + c["F2"] + c["F3"] + c["H1"] + c["H2"] \
        + c["L1"] + c["L2"] + c["L3"] + c["U1"] + c["U2"]
    dS2 = c["B"] + c["C"] + c["J1"] + c["J2"] + c["J3"] \
        + c["L1"] + c["L4"] + c["L7"] + c["N1"] + c["N2"] + c["U1"] + c["U3"]
    dX1 = c["I1"] + c["I2"] + c["I5"] + c["I6"] + c["J1"] + c["J3"] \
        + c["L4"] + c["L5"] + c["L6"] + c["N1"] + c["P2"] + c["P4"]
    dX2 = c["F1"] + c["F3"] + c["H1"] + c["I1"] + c["I3"] + c["I5"] \
        + c["L2"] + c["L5"] + c["L8"] + c["P1"] + c["P4"] + c["P5"]
    dO1 = c["C"] + c["H1"] + c["H2"] + c["I3"] + c["I4"] + c["I5"] + c["I6"] \
        + c["J2"] + c["J3"] + L
    dO2 = c["B"] + c["F2"] + c["F3"] + L + c["N1"] + c["N2"] \
        + c["P2"] + c["P3"] + c["P4"] + c["P5"]
    opt = c["B"] + c["C"] + c["F2"] + c["F3"] + c["H1"] + c["H2"] \
        + c["I3"] + c["I4"] + c["I5"] + c["I6"] + c["J2"] + c["J3"] + L \
        + c["N1"] + c["N2"] + c["P2"] + c["P3"] + c["P4"] + c["P5"]
    return {"dS1": dS1, "dS2": dS2, "dX1": dX1, "dX2": dX2,
            "dO1": dO1, "dO2": dO2, "opt": opt}


def _constraint_slacks(c: Mapping[str, object], d: Mapping[str, object]):
    """The ten structural slacks, in id order, denominators cleared for 5-8."""
    nu, xi = c["nu"], c["xi"]
    obar1 = c["I3"] + c["I4"] + c["J2"] + c["L7"] + c["L8"] + c["L9"]
    obar2 = c["F2"] + c["L3"] + c["L6"] + c["L9"] + c["P2"] + c["P3"]
    return [
        d["dS1"] - d["dO1"],
        d["dS2"] - d["dO2"],
        d["dX1"] + c["C"] + c["H1"] + c["H2"] + c["L1"] + c["L2"] + c["L3"] - d["dO1"],
        d["dX2"] + c["B"] + c["N1"] + c["N2"] + c["L1"] + c["L4"] + c["L7"] - d["dO2"],
        (1.0 - nu) * d["dS1"] - d["dX1"],
        (1.0 - xi) * d["dS2"] - d["dX2"],
        (1.0 - nu) * (d["dS1"] + d["dX1"]) - (2.0 - nu) * obar1,
        (1.0 - xi) * (d["dS2"] + d["dX2"]) - (2.0 - xi) * obar2,
        c["B"] + c["F1"] + c["F2"] + c["F3"] + c["U1"] + c["U2"] - d["dX1"],
        c["C"] + c["J1"] + c["J2"] + c["J3"] + c["U1"] + c["U3"] - d["dX2"],
    ]


_CONSTRAINT_NAMES = (
    "dS1 >= dO1",
    "dS2 >= dO2",
    "dX1 + (S1^O1 cuts) >= dO1",
    "dX2 + (S2^O2 cuts) >= dO2",
    "(1-nu)*dS1 >= dX1",
    "(1-xi)*dS2 >= dX2",
    "(1-nu)*(dS1+dX1) >= (2-nu)*d(Obar1)",
    "(1-xi)*(dS2+dX2) >= (2-xi)*d(Obar2)",
    "d(S1\\O1) >= dX1",
    "d(S2\\O2) >= dX2",
    "sum pi_i*Pi_i >= pi*sum Pi_i",
    "sum lambda_i*Lambda_i >= lambda*sum Lambda_i",
)


def _system(c: Mapping[str, object], pi, lam, cap: bool = False) -> dict[str, object]:
    """Everything the ratio evaluators produce, broadcast over array inputs.

    `c` maps each VARIABLE_NAME to a float or ndarray.  With cap=True every
    vertex-fraction coefficient is clamped at 1, which restores the soundness
    of the completion bounds when budgets exceed the bounding set's size (the
    regime the realized-fraction audit can reach); the uncapped form is the
    literal published one.
    """
    d = _deltas(c)
    mu, nu, xi = c["mu"], c["nu"], c["xi"]
    opt = d["opt"]
    opt_safe = np.maximum(opt, 1e-12)  # degenerate configs yield huge, finite ratios
    one_m_xi = np.maximum(1.0 - xi, _SHAPE_EPS)
    one_m_nu = np.maximum(1.0 - nu, _SHAPE_EPS)
    mu_safe = np.maximum(mu, _MU_EPS)
    frac = (lambda f: np.minimum(f, 1.0)) if cap else (lambda f: f)

    out: dict[str, object] = dict(d)

    # First cover: S1 kept, the remaining budget spent on the best of V2.
    A1 = c["J1"] + c["J2"] + c["J3"] + c["L4"] + c["L7"] + c["N1"] + c["N2"] + c["U3"]
    A2 = c["I1"] + c["I3"] + c["I5"] + c["L5"] + c["L8"] + c["P1"] + c["P4"] + c["P5"]
    A3 = c["L4"] + c["L5"] + c["L6"] + c["L7"] + c["L8"] + c["L9"] \
        + c["N1"] + c["N2"] + c["P2"] + c["P3"] + c["P4"] + c["P5"]
    r1 = (d["dS1"] + np.maximum(A1, np.maximum(A2, A3))) / opt_safe

    # Second cover: S2 kept, budget spent on the best of V1.
    B1 = c["H1"] + c["H2"] + c["F1"] + c["F2"] + c["F3"] + c["L2"] + c["L3"] + c["U2"]
    B2 = c["I1"] + c["I2"] + c["I5"] + c["I6"] + c["L5"] + c["L6"] + c["P2"] + c["P4"]
    B3 = c["H1"] + c["H2"] + c["I3"] + c["I4"] + c["I5"] + c["I6"] \
        + c["L2"] + c["L3"] + c["L5"] + c["L6"] + c["L8"] + c["L9"]
    r2 = (d["dS2"] + np.maximum(B1, np.maximum(B2, B3))) / opt_safe

    # Third cover: S1 and X1 kept, leftover budget on the best of V2.
    q3 = 1.0 - mu * (1.0 - nu)
    C1 = q3 * (c["J2"] + c["N2"] + c["L7"] + c["U3"])
    C2 = frac(q3 / (2.0 - xi)) * (c["I3"] + c["J2"] + c["L7"] + c["L8"]
                                  + c["N2"] + c["P1"] + c["P5"] + c["U3"])
    C3 = frac(q3 / (3.0 - 2.0 * xi)) * (c["I3"] + c["J2"] + c["L7"] + c["L8"] + c["L9"]
                                        + c["N2"] + c["P1"] + c["P3"] + c["P5"] + c["U3"])
    r3 = (d["dS1"] + d["dX1"] + np.maximum(C1, np.maximum(C2, C3))) / opt_safe

    # Fourth cover: S2 kept, completed inside V2 or spilling into V1.
    obar2_rest = c["F2"] + c["L3"] + c["L6"] + c["L9"] + c["P2"] + c["P3"]
    M1 = np.maximum(frac(mu / one_m_xi) * d["dX2"],
                    frac(mu / (2.0 * one_m_xi)) * (d["dX2"] + obar2_rest))
    M2 = np.minimum(1.0, (mu - 1.0 + xi) / one_m_xi) * obar2_rest
    M3 = frac((mu - 1.0 + xi) / mu_safe) * (c["F2"] + c["H2"] + c["L3"] + c["U2"])
    M4 = frac((mu - 1.0 + xi) / (mu_safe * (2.0 - nu))) * (
        c["F2"] + c["H2"] + c["I2"] + c["I6"] + c["L3"] + c["L6"] + c["P2"] + c["U2"])
    M5 = frac((mu - 1.0 + xi) / (mu_safe * (3.0 - 2.0 * nu))) * (
        c["F2"] + c["H2"] + c["I2"] + c["I4"] + c["I6"]
        + c["L3"] + c["L6"] + c["L9"] + c["P2"] + c["U2"])
    M_high = d["dX2"] + np.maximum(np.maximum(M2, M3), np.maximum(M4, M5))
    r4 = (d["dS2"] + _branch(mu, 1.0 - xi, M1, M_high)) / opt_safe

    # Fifth cover: vertical separation of S1 u X1, completion from V2.
    Pi = (
        c["C"] + c["J1"] + c["J3"] + c["U1"],    # into S2\O2
        c["B"] + c["L1"] + c["L4"] + c["N1"],    # into S2^O2
        c["F3"] + c["L2"] + c["L5"] + c["P4"],   # into X2^O2
        c["I1"] + c["I5"] + c["F1"] + c["H1"],   # into X2\O2
        c["F2"] + c["L3"] + c["L6"] + c["P2"],   # into O2 outside S2 u X2
        c["I2"] + c["I6"] + c["H2"] + c["U2"],   # into V2 outside S2 u X2 u O2
    )
    pif = tuple(c[k] for k in PI_KEYS)
    sep5 = sum(p * g for p, g in zip(pif, Pi))
    left = tuple((1.0 - p) * g for p, g in zip(pif, Pi))
    t_s2 = c["J2"] + c["L7"] + c["N2"] + c["U3"]
    t_x2 = c["I3"] + c["L8"] + c["P1"] + c["P5"]
    rest_s2x2 = t_s2 + t_x2
    rest_s2o2 = c["J2"] + c["L7"] + c["L8"] + c["L9"] + c["N2"] + c["P3"] + c["P5"] + c["U3"]
    rest_s2x2ob = c["I3"] + c["J2"] + c["L7"] + c["L8"] + c["L9"] \
        + c["N2"] + c["P1"] + c["P3"] + c["P5"] + c["U3"]
    rest_o2 = c["L7"] + c["L8"] + c["L9"] + c["N2"] + c["P3"] + c["P5"]
    s5 = mu * (1.0 - 2.0 * pi) + mu * nu * pi   # budget beyond k2, per k2 units
    q5 = 1.0 + s5                               # completion budget, per k2 units
    Z1 = left[0] + left[1] + t_s2 + frac(s5 / one_m_xi) * (
        left[2] + left[4] + c["L8"] + c["L9"] + c["P3"] + c["P5"])
    Z2 = left[0] + left[1] + t_s2 + frac(s5 / one_m_xi) * (left[2] + left[3] + t_x2)
    Z3 = frac(q5 / (2.0 - xi)) * (left[0] + left[1] + left[2] + left[3] + rest_s2x2)
    Z4 = frac(q5 / (2.0 - xi)) * (left[0] + left[1] + left[2] + left[4] + rest_s2o2)
    Z5 = frac(q5 / (3.0 - 2.0 * xi)) * (sum(left[:5]) + rest_s2x2ob)
    Zs = np.maximum.reduce([Z1, Z2, Z3, Z4, Z5])
    ex5 = (s5 - (1.0 - xi)) / one_m_xi          # budget beyond S2 u X2, over |Obar2|
    Th1 = left[0] + left[1] + left[2] + left[3] + rest_s2x2 \
        + frac(ex5) * (left[4] + c["L9"] + c["P3"])
    Th2 = left[0] + left[1] + left[2] + left[4] + rest_s2o2 \
        + frac(ex5) * (left[3] + c["I3"] + c["P1"])
    Th3 = Z5
    Ths = np.maximum.reduce([Th1, Th2, Th3])
    Ph1 = frac(q5) * (left[0] + left[1] + t_s2)
    Ph2 = frac(q5 / one_m_xi) * (left[2] + left[3] + t_x2)
    Ph3 = frac(q5) * (left[1] + left[2] + left[4] + rest_o2)
    Ph4 = frac(q5 / (2.0 - xi)) * (left[0] + left[1] + left[2] + left[3] + rest_s2x2)
    Ph5 = frac(q5 / (3.0 - 2.0 * xi)) * (sum(left[:5]) + rest_s2x2ob)
    Phs = np.maximum.reduce([Ph1, Ph2, Ph3, Ph4, Ph5])
    wide5 = _branch(s5, 1.0 - xi, Zs, Ths)      # budget at least k2: S2 fits entirely
    r5 = (sep5 + _branch(1.0, q5, wide5, Phs)) / opt_safe

    # Sixth cover: vertical separation of S2 u X2, completion from V1.
    Lam = (
        c["B"] + c["F1"] + c["F3"] + c["U1"],    # into S1\O1
        c["C"] + c["H1"] + c["L1"] + c["L2"],    # into S1^O1
        c["J3"] + c["I5"] + c["L4"] + c["L5"],   # into X1^O1
        c["I1"] + c["J1"] + c["N1"] + c["P4"],   # into X1\O1
        c["I3"] + c["J2"] + c["L7"] + c["L8"],   # into O1 outside S1 u X1
        c["N2"] + c["P1"] + c["P5"] + c["U3"],   # into V1 outside S1 u X1 u O1
    )
    laf = tuple(c[k] for k in LAMBDA_KEYS)
    sep6 = sum(l * g for l, g in zip(laf, Lam))
    mleft = tuple((1.0 - l) * g for l, g in zip(laf, Lam))
    t_s1 = c["F2"] + c["H2"] + c["L3"] + c["U2"]
    t_x1 = c["I2"] + c["I6"] + c["L6"] + c["P2"]
    rest_s1x1 = t_s1 + t_x1
    rest_s1o1 = c["F2"] + c["H2"] + c["I4"] + c["I6"] + c["L3"] + c["L6"] + c["L9"] + c["U2"]
    rest_s1x1ob = c["F2"] + c["H2"] + c["I2"] + c["I4"] + c["I6"] \
        + c["L3"] + c["L6"] + c["L9"] + c["P2"] + c["U2"]
    rest_o1 = c["H2"] + c["I4"] + c["I6"] + c["L3"] + c["L6"] + c["L9"]
    w6 = lam * (2.0 - xi)                        # separation size, per k2 units
    u6 = 1.0 - w6                                # budget beyond k1 = mu*k2
    mu1nu = mu_safe * one_m_nu                   # |X1| and |Obar1| bound, per k2 units
    Up1 = mleft[0] + mleft[1] + t_s1 + frac(u6 / mu1nu) * (mleft[2] + mleft[3] + t_x1)
    Up2 = mleft[0] + mleft[1] + t_s1 + frac(u6 / mu1nu) * (
        mleft[2] + mleft[4] + c["I4"] + c["I6"] + c["L6"] + c["L9"])
    Up3 = frac((mu + u6) / (mu_safe * (2.0 - nu))) * (
        mleft[0] + mleft[1] + mleft[2] + mleft[3] + rest_s1x1)
    Up4 = frac((mu + u6) / (mu_safe * (2.0 - nu))) * (
        mleft[0] + mleft[1] + mleft[2] + mleft[4] + rest_s1o1)
    Up5 = frac((mu + u6) / (mu_safe * (3.0 - 2.0 * nu))) * (sum(mleft[:5]) + rest_s1x1ob)
    Ups = np.maximum.reduce([Up1, Up2, Up3, Up4, Up5])
    ex6 = (u6 - mu * (1.0 - nu)) / mu1nu         # budget beyond S1 u X1, over |Obar1|
    Ps1 = mleft[0] + mleft[1] + mleft[2] + mleft[3] + rest_s1x1 \
        + frac(ex6) * (mleft[4] + c["I4"] + c["L9"])
    Ps2 = mleft[0] + mleft[1] + mleft[2] + mleft[4] + rest_s1o1 \
        + frac(ex6) * (mleft[3] + c["I2"] + c["P2"])
    Ps3 = Up5
    Pss = np.maximum.reduce([Ps1, Ps2, Ps3])
    Om1 = frac((mu + u6) / mu_safe) * (mleft[0] + mleft[1] + t_s1)
    Om2 = frac((mu + u6) / mu_safe) * (mleft[2] + mleft[3] + t_x1)
    Om3 = frac((mu + u6) / mu_safe) * (mleft[1] + mleft[2] + mleft[4] + rest_o1)
    Om4 = frac((mu + u6) / (mu_safe * (2.0 - nu))) * (
        mleft[0] + mleft[1] + mleft[2] + mleft[3] + rest_s1x1)
    Om5 = frac((mu + u6) / (mu_safe * (3.0 - 2.0 * nu))) * (sum(mleft[:5]) + rest_s1x1ob)
    Oms = np.maximum.reduce([Om1, Om2, Om3, Om4, Om5])
    wide6 = _branch(u6, mu * (1.0 - nu), Ups, Pss)  # budget at least k1: S1 fits entirely
    r6 = (sep6 + _branch(w6, 1.0, wide6, Oms)) / opt_safe

    slacks = _constraint_slacks(c, d)
    slacks.append(sep5 - pi * sum(Pi))
    slacks.append(sep6 - lam * sum(Lam))

    out.update({
        "r1": r1, "r2": r2, "r3": r3, "r4": r4, "r5": r5, "r6": r6,
        "A1": A1, "A2": A2, "A3": A3, "B1": B1, "B2": B2, "B3": B3,
        "C1": C1, "C2": C2, "C3": C3,
        "M1": M1, "M2": M2, "M3": M3, "M4": M4, "M5": M5,
        "Pi": Pi, "Lambda": Lam,
        "Z": (Z1, Z2, Z3, Z4, Z5), "Theta": (Th1, Th2, Th3),
        "Phi": (Ph1, Ph2, Ph3, Ph4, Ph5),
        "Upsilon": (Up1, Up2, Up3, Up4, Up5), "Psi": (Ps1, Ps2, Ps3),
        "Omega": (Om1, Om2, Om3, Om4, Om5),
        "Zstar": Zs, "Thetastar": Ths, "Phistar": Phs,
        "Upsilonstar": Ups, "Psistar": Pss, "Omegastar": Oms,
        "sep5": sep5, "sep6": sep6, "s5": s5, "q5": q5, "w6": w6, "u6": u6,
        "slacks": slacks,
    })
    return out


def _values_from_config(config: Configuration, fractions: int) -> dict[str, float]:
    vals: dict[str, float] = dict(zip(CUT_NAMES, config.cuts))
    vals["mu"], vals["nu"], vals["xi"] = config.mu, config.nu, config.xi
    pif = config.pi_fracs if config.pi_fracs is not None else (0.0,) * 6
    laf = config.lam_fracs if config.lam_fracs is not None else (0.0,) * 6
    if fractions == 5:
        pif = pif[:5] + (0.0,)
        laf = laf[:5] + (0.0,)
    elif fractions != 6:
        raise ValueError("fractions must be 5 or 6")
    vals.update(zip(PI_KEYS, pif))
    vals.update(zip(LAMBDA_KEYS, laf))
    return vals


def delta_quantities(config: Configuration) -> DeltaQuantities:
    """Coverage sums of the six labeled sets and the optimum, per the cut identities."""
    d = _deltas(dict(zip(CUT_NAMES, config.cuts)))
    return DeltaQuantities(
        float(d["dS1"]), float(d["dS2"]), float(d["dX1"]),
        float(d["dX2"]), float(d["dO1"]), float(d["dO2"]), float(d["opt"]))


def check_constraints(
    config: Configuration,
    tol: float,
    pi: float | None = None,
    lam: float | None = None,
    fractions: int = 6,
) -> ConstraintViolations:
    """Evaluate the structural inequality block; feasible iff all slacks >= -tol."""
    vals = _values_from_config(config, fractions)
    d = _deltas(vals)
    slacks = [float(s) for s in _constraint_slacks(vals, d)]
    entries = [(i + 1, _CONSTRAINT_NAMES[i], slacks[i]) for i in range(10)]
    pi = pi if pi is not None else config.pi
    lam = lam if lam is not None else config.lam
    if (config.pi_fracs is not None and pi is not None) or (
            config.lam_fracs is not None and lam is not None):
        full = _system(vals, pi if pi is not None else 0.0, lam if lam is not None else 0.0)
        if config.pi_fracs is not None and pi is not None:
            entries.append((11, _CONSTRAINT_NAMES[10], float(full["slacks"][10])))
        if config.lam_fracs is not None and lam is not None:
            entries.append((12, _CONSTRAINT_NAMES[11], float(full["slacks"][11])))
    feasible = all(s >= -tol for _, _, s in entries)
    return ConstraintViolations(tuple(entries), tol, feasible)


def eval_ratios(
    config: Configuration,
    pi: float | None = None,
    lam: float | None = None,
    cap_fractions: bool = False,
    fractions: int = 6,
) -> RatioReport:
    """Evaluate the six ratio lower bounds at one configuration.

    pi/lam default to the values stored on the configuration.  fractions=5
    pins pi6/lambda6 at zero (the convention matching the published variable
    count); fractions=6 treats them as ordinary fractions.
    """
    pi = pi if pi is not None else config.pi
    lam = lam if lam is not None else config.lam
    if pi is None or lam is None:
        raise ValueError("pi and lambda must be supplied or stored on the configuration")
    if pi <= 0 or lam <= 0:
        raise ValueError("pi and lambda must be positive")
    if config.mu <= 0:
        raise DegenerateConfiguration("mu must be positive")
    vals = _values_from_config(config, fractions)
    d = _deltas(vals)
    if float(d["opt"]) <= 0:
        raise DegenerateConfiguration("configuration has opt <= 0")
    full = _system(vals, pi, lam, cap=cap_fractions)
    ratios = [float(full[f"r{i}"]) for i in range(1, 7)]
    best = max(ratios)
    argbest = ratios.index(best) + 1

    inter: dict[str, float] = {k: float(d[k]) for k in d}
    for name in ("A", "B", "C"):
        for i in range(1, 4):
            inter[f"{name}{i}"] = float(full[f"{name}{i}"])
    for i in range(1, 6):
        inter[f"M{i}"] = float(full[f"M{i}"])
    for i in range(6):
        inter[f"Pi{i + 1}"] = float(full["Pi"][i])
        inter[f"Lambda{i + 1}"] = float(full["Lambda"][i])
    for name, n in (("Z", 5), ("Theta", 3), ("Phi", 5),
                    ("Upsilon", 5), ("Psi", 3), ("Omega", 5)):
        for i in range(n):
            inter[f"{name}{i + 1}"] = float(full[name][i])
        inter[f"{name}star"] = float(full[f"{name}star"])

    s5, q5 = float(full["s5"]), float(full["q5"])
    w6, u6 = float(full["w6"]), float(full["u6"])
    xi, mu, nu = config.xi, config.mu, config.nu
    if q5 > 1.0:
        r5b = "Z" if s5 < 1.0 - xi else ("Theta" if s5 > 1.0 - xi else "max(Z,Theta)")
    elif q5 < 1.0:
        r5b = "Phi"
    else:
        r5b = "max(Z,Phi)" if s5 < 1.0 - xi else "max(Z,Theta,Phi)"
    if w6 < 1.0:
        r6b = "Upsilon" if u6 < mu * (1.0 - nu) else (
            "Psi" if u6 > mu * (1.0 - nu) else "max(Upsilon,Psi)")
    elif w6 > 1.0:
        r6b = "Omega"
    else:
        r6b = "max(Upsilon,Psi,Omega)"
    branches = {
        "r4": "M1" if mu < 1.0 - xi else ("X2+M" if mu > 1.0 - xi else "max(M1,X2+M)"),
        "r5": r5b,
        "r6": r6b,
    }
    return RatioReport(*ratios, best=best, argbest=argbest,
                       intermediates=inter, branches=branches)


# --- extraction of a configuration from a concrete solved instance ---------

_REGIONS_1 = ("s1o", "s1n", "x1o", "x1n", "o1bar", "r1")
_REGIONS_2 = ("s2o", "s2n", "x2o", "x2n", "o2bar", "r2")

_CUT_OF: dict[tuple[str, str], str] = {
    ("s1n", "s2o"): "B", ("s1o", "s2n"): "C",
    ("s1n", "x2n"): "F1", ("s1n", "o2bar"): "F2", ("s1n", "x2o"): "F3",
    ("s1o", "x2n"): "H1", ("s1o", "r2"): "H2",
    ("x1n", "x2n"): "I1", ("x1n", "r2"): "I2", ("o1bar", "x2n"): "I3",
    ("o1bar", "r2"): "I4", ("x1o", "x2n"): "I5", ("x1o", "r2"): "I6",
    ("x1n", "s2n"): "J1", ("o1bar", "s2n"): "J2", ("x1o", "s2n"): "J3",
    ("s1o", "s2o"): "L1", ("s1o", "x2o"): "L2", ("s1o", "o2bar"): "L3",
    ("x1o", "s2o"): "L4", ("x1o", "x2o"): "L5", ("x1o", "o2bar"): "L6",
    ("o1bar", "s2o"): "L7", ("o1bar", "x2o"): "L8", ("o1bar", "o2bar"): "L9",
    ("x1n", "s2o"): "N1", ("r1", "s2o"): "N2",
    ("r1", "x2n"): "P1", ("x1n", "o2bar"): "P2", ("r1", "o2bar"): "P3",
    ("x1n", "x2o"): "P4", ("r1", "x2o"): "P5",
    ("s1n", "s2n"): "U1", ("s1n", "r2"): "U2", ("r1", "s2n"): "U3",
}


def _region_labels(n: int, s: set[int], x: set[int], o: set[int], prefix: str) -> list[str]:
    labels = []
    for v in range(n):
        if v in s:
            labels.append(f"{prefix}o" if v in o else f"{prefix}n")
        elif v in x:
            labels.append(f"x{prefix[1]}o" if v in o else f"x{prefix[1]}n")
        elif v in o:
            labels.append(f"o{prefix[1]}bar")
        else:
            labels.append(f"r{prefix[1]}")
    return labels


def _cut_masks(graph: BipartiteGraph, layout: PartitionLayout) -> dict[str, int]:
    """Edge bitmask per cut name, classifying every edge by its region pair."""
    if layout.O1 is None or layout.O2 is None:
        raise ValueError("layout must carry the oracle sets")
    lab1 = _region_labels(graph.n1, set(layout.S1.members), set(layout.X1.members),
                          set(layout.O1.members), "s1")
    lab2 = _region_labels(graph.n2, set(layout.S2.members), set(layout.X2.members),
                          set(layout.O2.members), "s2")
    masks = {name: 0 for name in CUT_NAMES}
    for i, (u, v) in enumerate(graph.edges):
        pair = (lab1[u], lab2[v])
        name = _CUT_OF.get(pair)
        if name is not None:  # the (r1, r2) pair belongs to no tracked cut
            masks[name] |= 1 << i
    return masks


def extract_config(
    graph: BipartiteGraph, k: int, oracle: ExactResult
) -> tuple[Configuration, PartitionLayout]:
    """Read the raw (integer-count) configuration off a solved instance.

    Sides are exchanged if the optimum has more V1 than V2 vertices, so that
    mu = k1/k2 <= 1 holds; the returned layout records the swap.  Separation
    fractions are left unset: they belong to the search, not the graph.
    """
    o_v1, o_v2 = oracle.opt_set.split(graph)
    swapped = oracle.k1 > oracle.k2
    if swapped:
        graph = graph.mirror()
        o_v1, o_v2 = o_v2, o_v1
    k1, k2 = len(o_v1), len(o_v2)
    if k2 == 0:
        raise DegenerateConfiguration("optimal solution is empty on both sides")
    o1 = VertexSet.on_side(1, o_v1)
    o2 = VertexSet.on_side(2, o_v2)
    s1 = best_k(graph, 1, k1)
    s2 = best_k(graph, 2, k2)
    k1p = len(set(s1.members) & set(o1.members))
    k2p = len(set(s2.members) & set(o2.members))
    layout = make_layout(graph, k1, k2, k1p, k2p, oracle=(o1, o2), swapped=swapped)
    masks = _cut_masks(graph, layout)
    cuts = tuple(float(masks[name].bit_count()) for name in CUT_NAMES)
    config = Configuration(
        cuts=cuts,
        mu=k1 / k2,
        nu=(k1p / k1) if k1 else 0.0,
        xi=k2p / k2,
    )
    return config, layout


def realized_fractions(
    graph: BipartiteGraph, layout: PartitionLayout, sep: VertexSet, side: int
) -> tuple[float, ...]:
    """Fraction of each separation group actually covered by `sep`.

    side 1 gives the six pi fractions (groups keyed by V2 region), side 2 the
    six lambda fractions (groups keyed by V1 region).  Empty groups yield 0.
    """
    masks = _cut_masks(graph, layout)
    cover = graph.edge_mask(sep)
    if side == 1:
        groups = (("C", "J1", "J3", "U1"), ("B", "L1", "L4", "N1"),
                  ("F3", "L2", "L5", "P4"), ("I1", "I5", "F1", "H1"),
                  ("F2", "L3", "L6", "P2"), ("I2", "I6", "H2", "U2"))
    elif side == 2:
        groups = (("B", "F1", "F3", "U1"), ("C", "H1", "L1", "L2"),
                  ("J3", "I5", "L4", "L5"), ("I1", "J1", "N1", "P4"),
                  ("I3", "J2", "L7", "L8"), ("N2", "P1", "P5", "U3"))
    else:
        raise ValueError("side must be 1 or 2")
    fracs = []
    for names in groups:
        gmask = 0
        for nm in names:
            gmask |= masks[nm]
        total = gmask.bit_count()
        fracs.append((gmask & cover).bit_count() / total if total else 0.0)
    return tuple(fracs)


# --- flat text dump format ---------------------------------------------------

_SCALAR_KEYS = CUT_NAMES + ("mu", "nu", "xi", "pi", "lambda") + PI_KEYS + LAMBDA_KEYS


def dumps_config(config: Configuration) -> str:
    """Flat `key = value` text; unset fractions/parameters are omitted."""
    lines = [f"{name} = {config.cuts[i]:.12g}" for i, name in enumerate(CUT_NAMES)]
    lines.append(f"mu = {config.mu:.12g}")
    lines.append(f"nu = {config.nu:.12g}")
    lines.append(f"xi = {config.xi:.12g}")
    if config.pi is not None:
        lines.append(f"pi = {config.pi:.12g}")
    if config.lam is not None:
        lines.append(f"lambda = {config.lam:.12g}")
    if config.pi_fracs is not None:
        lines.extend(f"pi{i + 1} = {v:.12g}" for i, v in enumerate(config.pi_fracs))
    if config.lam_fracs is not None:
        lines.extend(f"lambda{i + 1} = {v:.12g}" for i, v in enumerate(config.lam_fracs))
    return "\n".join(lines) + "\n"


def loads_config(text: str) -> Configuration:
    """Parse the flat dump format back into a Configuration."""
    seen: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, sval = line.partition("=")
        key = key.strip()
        if key not in _SCALAR_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        try:
            seen[key] = float(sval.strip())
        except ValueError:
            raise ValueError(f"line {lineno}: bad value for {key!r}") from None
    missing = [name for name in CUT_NAMES + ("mu", "nu", "xi") if name not in seen]
    if missing:
        raise ValueError(f"missing keys: {missing}")
    pif = None
    if any(k in seen for k in PI_KEYS):
        pif = tuple(seen.get(k, 0.0) for k in PI_KEYS)
    laf = None
    if any(k in seen for k in LAMBDA_KEYS):
        laf = tuple(seen.get(k, 0.0) for k in LAMBDA_KEYS)
    return Configuration(
        cuts=tuple(seen[name] for name in CUT_NAMES),
        mu=seen["mu"], nu=seen["nu"], xi=seen["xi"],
        pi_fracs=pif, lam_fracs=laf,
        pi=seen.get("pi"), lam=seen.get("lambda"),
    )
