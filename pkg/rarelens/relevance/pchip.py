"""
Monotone piecewise cubic Hermite relevance functions
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.interpolate import PPoly

from ..errors import ControlPointError
from .control_points import ControlPoint, ControlPointSet, control_points_boxplot


def check_slopes(derivs: Sequence[float], secants: Sequence[float]) -> list[float]:
    """
    Adjust control-point derivatives so each cubic piece follows its secant.

    Interior knots where the secant changes sign or vanishes get a zero
    derivative. Each piece then has its end derivatives turned toward the
    secant and shrunk into the Fritsch-Carlson circle alpha^2 + beta^2 <= 9,
    which keeps the piece monotone for any preliminary derivatives.

    Args:
        derivs: Preliminary derivative at each of the s control points
        secants: Slope of each of the s - 1 intervals

    Returns:
        Modified derivatives (s values)
    """
    phi = [float(d) for d in derivs]
    delta = [float(s) for s in secants]

    if len(phi) != len(delta) + 1:
        raise ControlPointError(
            f"Expected {len(delta) + 1} derivatives for {len(delta)} intervals, got {len(phi)}"
        )

    # Local extrema and flat joins
    for k in range(1, len(delta)):
        if delta[k - 1] * delta[k] <= 0:
            phi[k] = 0.0

    for k, dk in enumerate(delta):
        if dk == 0:
            phi[k] = phi[k + 1] = 0.0
            continue

        alpha = phi[k] / dk
        beta = phi[k + 1] / dk

        if phi[k] != 0 and alpha < 0:
            phi[k] = -phi[k]
            alpha = phi[k] / dk
        if phi[k + 1] != 0 and beta < 0:
            phi[k + 1] = -phi[k + 1]
            beta = phi[k + 1] / dk

        tau1 = 2 * alpha + beta - 3
        tau2 = alpha + 2 * beta - 3
        if tau1 > 0 and tau2 > 0 and alpha * (tau1 + tau2) < tau1 * tau2:
            tau = 3 * dk / math.hypot(alpha, beta)
            phi[k] = alpha * tau
            phi[k + 1] = beta * tau
            alpha, beta = phi[k] / dk, phi[k + 1] / dk

        # Shrinking only moves earlier pieces further inside their circle
        radius = math.hypot(alpha, beta)
        if radius > 3:
            phi[k] = alpha * dk * 3 / radius
            phi[k + 1] = beta * dk * 3 / radius

    return phi


@dataclass(frozen=True, eq=False)
class RelevanceFunction:
    """
    Piecewise cubic relevance function phi: Y -> [0, 1].

    Segment k covers [knots[k], knots[k+1]] with
    phi(y) = a + b*t + c*t**2 + d*t**3, t = y - knots[k];
    `coefficients` holds one (a, b, c, d) row per segment. Outside the
    knots phi is constant at the boundary relevance.
    """
    knots: np.ndarray
    rels: np.ndarray
    coefficients: np.ndarray
    control_points: Optional[ControlPointSet] = None

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=float)
        rels = np.asarray(self.rels, dtype=float)
        coefficients = np.asarray(self.coefficients, dtype=float).reshape(-1, 4)

        if knots.size < 2 or np.any(np.diff(knots) <= 0):
            raise ControlPointError("Relevance knots must be at least 2 strictly ascending values")
        if rels.shape != knots.shape or coefficients.shape[0] != knots.size - 1:
            raise ControlPointError("Relevance knots, values and segments do not line up")

        object.__setattr__(self, 'knots', knots)
        object.__setattr__(self, 'rels', rels)
        object.__setattr__(self, 'coefficients', coefficients)
        # PPoly wants the highest power first
        object.__setattr__(self, '_poly', PPoly(coefficients[:, ::-1].T.copy(), knots))

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.knots[0]), float(self.knots[-1])

    @property
    def n_segments(self) -> int:
        return self.coefficients.shape[0]

    @property
    def poly(self) -> PPoly:
        return self._poly

    def __call__(self, y: Union[float, Iterable[float], np.ndarray]):
        y = np.asarray(y, dtype=float)
        lo, hi = self.knots[0], self.knots[-1]

        values = self._poly(np.clip(y, lo, hi))
        values = np.where(y <= lo, self.rels[0], values)
        values = np.where(y >= hi, self.rels[-1], values)
        values = np.clip(values, 0.0, 1.0)

        return float(values) if values.ndim == 0 else values

    def sample(self, n: int = 200) -> tuple[np.ndarray, np.ndarray]:
        """n equispaced (y, phi(y)) pairs over the knot range"""
        if n < 2:
            raise ValueError(f"Need at least 2 samples, got {n}")
        y = np.linspace(self.knots[0], self.knots[-1], n)
        return y, self(y)

    def to_dict(self) -> dict:
        segments = []
        for k, (a, b, c, d) in enumerate(self.coefficients):
            segments.append({
                "lo": float(self.knots[k]),
                "hi": float(self.knots[k + 1]),
                "a": float(a), "b": float(b), "c": float(c), "d": float(d),
            })
        points = (self.control_points.to_list() if self.control_points is not None
                  else [{"y": float(y), "rel": float(r), "deriv": None}
                        for y, r in zip(self.knots, self.rels)])
        return {"control_points": points, "segments": segments}

    @classmethod
    def from_dict(cls, data: dict) -> 'RelevanceFunction':
        """Rebuild from to_dict() output, keeping the stored coefficients"""
        try:
            points = data["control_points"]
            segments = data["segments"]
            knots = [float(p["y"]) for p in points]
            rels = [float(p["rel"]) for p in points]
            coefficients = [[s["a"], s["b"], s["c"], s["d"]] for s in segments]
        except (KeyError, TypeError, ValueError) as e:
            raise ControlPointError(f"Malformed relevance definition: {e}")

        control_points = None
        if all(p.get("deriv") is not None for p in points):
            control_points = ControlPointSet(tuple(
                ControlPoint(float(p["y"]), float(p["rel"]), float(p["deriv"])) for p in points
            ))
        return cls(np.array(knots), np.array(rels), np.array(coefficients, dtype=float),
                   control_points)


def pchip_fit(control_points: ControlPointSet) -> RelevanceFunction:
    """
    Fit the piecewise cubic Hermite interpolant through the control points.

    Derivatives come from check_slopes over the preliminary derivatives,
    so every piece is monotone in the direction of its secant.
    """
    y = control_points.ys
    rel = control_points.rels

    h = np.diff(y)
    delta = np.diff(rel) / h
    b = np.array(check_slopes(control_points.derivs, delta))

    c = (3 * delta - 2 * b[:-1] - b[1:]) / h
    d = (b[:-1] - 2 * delta + b[1:]) / h ** 2

    coefficients = np.column_stack([rel[:-1], b[:-1], c, d])
    return RelevanceFunction(y, rel, coefficients, control_points)


def relevance_eval(relevance: RelevanceFunction, y: float) -> float:
    """phi(y) for a single value"""
    return float(relevance(float(y)))


def fit_relevance(targets: Iterable[float],
                  control_points: Optional[ControlPointSet] = None) -> RelevanceFunction:
    """Relevance from given control points, or from the boxplot of the targets"""
    if control_points is None:
        control_points = control_points_boxplot(targets)
    return pchip_fit(control_points)
