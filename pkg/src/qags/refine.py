"""Bounded local refinement: limited-memory quasi-Newton with box projection.

Gradients come from central finite differences (one-sided at the box
boundary), search directions from the standard two-loop recursion over a
short (s, y) history, and every trial point is projected onto the box, so
all iterates are feasible by construction.  The refiner is deterministic
and uses only objective evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EvaluationError, InvalidInputError, RefinementError

_ARMIJO_C1 = 1e-4
_MAX_BACKTRACKS = 60
_CURVATURE_EPS = 1e-10


class _OutOfEvals(Exception):
    """Internal: evaluation budget exhausted mid-step."""


@dataclass(frozen=True)
class RefinerConfig:
    """Refinement knobs.

    gradient_step_scale multiplies max(1, |x_i|) to give the per-coordinate
    finite-difference step; the default is the cube root of machine epsilon
    (optimal for central differences).  convergence_tol applies to the
    max-norm of the projected gradient.
    """

    max_evals: int = 10000
    gradient_step_scale: float = float(np.finfo(np.float64).eps) ** (1.0 / 3.0)
    convergence_tol: float = 1e-10
    history_size: int = 10

    def __post_init__(self):
        if self.max_evals < 1:
            raise InvalidInputError("max_evals must be >= 1")
        if not self.gradient_step_scale > 0:
            raise InvalidInputError("gradient_step_scale must be positive")
        if not self.convergence_tol > 0:
            raise InvalidInputError("convergence_tol must be positive")
        if self.history_size < 1:
            raise InvalidInputError("history_size must be >= 1")


class _BudgetedObjective:
    def __init__(self, objective, limit):
        self.objective = objective
        self.limit = limit
        self.used = 0

    def __call__(self, x):
        if self.used >= self.limit:
            raise _OutOfEvals
        self.used += 1
        return self.objective.evaluate(x)


def _fd_gradient(ev, x, fx, box, scale, free):
    """Central-difference gradient, one-sided where the box interferes.

    Degenerate dimensions (zero width) get gradient 0 and are never
    perturbed.  Trial points stay inside the box by construction.
    """
    g = np.zeros(x.size)
    for i in range(x.size):
        if not free[i]:
            continue
        lo = box.lower[i]
        up = box.upper[i]
        h = scale * max(1.0, abs(x[i]))
        half_width = (up - lo) / 2.0
        if h > half_width:
            h = half_width
        can_up = x[i] + h <= up
        can_down = x[i] - h >= lo
        if can_up and can_down:
            xp = x.copy()
            xp[i] += h
            xm = x.copy()
            xm[i] -= h
            g[i] = (ev(xp) - ev(xm)) / (xp[i] - xm[i])
        elif can_up:
            xp = x.copy()
            xp[i] += h
            g[i] = (ev(xp) - fx) / (xp[i] - x[i])
        elif can_down:
            xm = x.copy()
            xm[i] -= h
            g[i] = (fx - ev(xm)) / (x[i] - xm[i])
    return g


def _two_loop(g, s_list, y_list, rho_list):
    """Standard two-loop recursion: returns the quasi-Newton step -H*g."""
    q = -g.copy()
    alphas = []
    for s, y, rho in zip(reversed(s_list), reversed(y_list), reversed(rho_list)):
        a = rho * np.dot(s, q)
        alphas.append(a)
        q -= a * y
    if s_list:
        s, y = s_list[-1], y_list[-1]
        q *= np.dot(s, y) / np.dot(y, y)
    for (s, y, rho), a in zip(zip(s_list, y_list, rho_list), reversed(alphas)):
        b = rho * np.dot(y, q)
        q += (a - b) * s
    return q


def _projected_gradient_norm(x, g, box):
    return float(np.abs(np.clip(x - g, box.lower, box.upper) - x).max())


def refine(f, box, start, cfg=None):
    """Minimize f over the box starting from start (clamped inside).

    Returns (point, value, evals).  The point is feasible to the bound
    arithmetic exactly, and f(point) <= f(start).  Stops on projected
    gradient below cfg.convergence_tol, the evaluation budget, or a
    line-search stall (the finite-difference noise floor).
    """
    if cfg is None:
        cfg = RefinerConfig()
    x = box.clip(np.asarray(start, dtype=np.float64))
    if x.shape != (box.dimension,):
        raise InvalidInputError("start arity does not match box")
    ev = _BudgetedObjective(f, cfg.max_evals)
    free = box.width > 0.0

    try:
        fx = ev(x)
    except EvaluationError as exc:
        raise RefinementError(str(exc), last_point=x.copy()) from exc
    best_x = x.copy()
    best_f = fx
    if not free.any():
        return best_x, best_f, ev.used

    s_list, y_list, rho_list = [], [], []
    try:
        g = _fd_gradient(ev, x, fx, box, cfg.gradient_step_scale, free)
        first_step = True
        while True:
            if _projected_gradient_norm(x, g, box) < cfg.convergence_tol:
                break
            # Active bounds: moving further into the bound is blocked.
            active = ((x <= box.lower) & (g > 0)) | ((x >= box.upper) & (g < 0))
            blocked = active | ~free

            tried_steepest = False
            d = _two_loop(g, s_list, y_list, rho_list)
            d[blocked] = 0.0
            if not d.any() or np.dot(d, g) >= 0.0:
                d = -g.copy()
                d[blocked] = 0.0
                tried_steepest = True
                if not d.any():
                    break

            while True:
                if first_step:
                    alpha = min(1.0, 1.0 / max(1e-12, float(np.abs(g).max())))
                else:
                    alpha = 1.0
                accepted = False
                for _ in range(_MAX_BACKTRACKS):
                    xt = box.clip(x + alpha * d)
                    step = xt - x
                    if not step.any():
                        break
                    slope = float(np.dot(g, step))
                    if slope < 0.0:
                        ft = ev(xt)
                        if ft <= fx + _ARMIJO_C1 * slope:
                            accepted = True
                            break
                    alpha *= 0.5
                if accepted or tried_steepest:
                    break
                # Quasi-Newton direction failed; retry steepest descent.
                d = -g.copy()
                d[blocked] = 0.0
                tried_steepest = True
                if not d.any():
                    break
            if not accepted:
                break

            g_new = _fd_gradient(ev, xt, ft, box, cfg.gradient_step_scale, free)
            s = xt - x
            y = g_new - g
            sy = float(np.dot(s, y))
            if sy > _CURVATURE_EPS * float(np.linalg.norm(s) * np.linalg.norm(y)):
                s_list.append(s)
                y_list.append(y)
                rho_list.append(1.0 / sy)
                if len(s_list) > cfg.history_size:
                    s_list.pop(0)
                    y_list.pop(0)
                    rho_list.pop(0)
            x, fx, g = xt, ft, g_new
            first_step = False
            if fx < best_f:
                best_x = x.copy()
                best_f = fx
    except _OutOfEvals:
        pass
    except EvaluationError as exc:
        raise RefinementError(str(exc), last_point=best_x) from exc
    return best_x, best_f, ev.used
