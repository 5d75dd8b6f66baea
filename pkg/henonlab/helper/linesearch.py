# -*- coding: utf-8 -*-
"""Backtracking line search with a projected Armijo test."""


import numpy as np
import typing


class LineSearchResult(typing.NamedTuple):
    """Accepted step (0.0 if none was found), the new point and its value."""

    step: float
    x: np.ndarray
    value: float
    evaluations: int


class BacktrackingLineSearch:
    """Shrink the step until the projected point decreases the objective enough.

    A trial x_s = P(x + s d) is accepted when

        f(x_s) <= f(x) + sufficient_decrease * <g, x_s - x>,

    g being the gradient at x. If <g, x_s - x> is not negative (the
    projection undid the descent) a strict decrease is required instead.
    """

    def __init__(
        self,
        contraction_factor: float = 0.5,
        sufficient_decrease: float = 1e-4,
        max_iterations: int = 30,
        initial_step_size: float = 1.0,
    ) -> None:
        """Constructor."""
        assert 0.0 < contraction_factor < 1.0
        assert 0.0 < sufficient_decrease < 1.0
        assert max_iterations > 0
        assert initial_step_size > 0.0
        self._contraction_factor = contraction_factor
        self._sufficient_decrease = sufficient_decrease
        self._max_iterations = max_iterations
        self._initial_step_size = initial_step_size

    @property
    def contraction_factor(self) -> float:
        return self._contraction_factor

    @property
    def sufficient_decrease(self) -> float:
        return self._sufficient_decrease

    def search(
        self,
        objective: typing.Callable[[np.ndarray], float],
        x: np.ndarray,
        d: np.ndarray,
        f0: float,
        gradient: np.ndarray,
        *,
        projection: typing.Optional[typing.Callable[[np.ndarray], np.ndarray]] = None,
    ) -> LineSearchResult:
        step = self._initial_step_size
        for evaluation in range(1, self._max_iterations + 1):
            trial = x + step * d
            if projection is not None:
                trial = projection(trial)
            value = objective(trial)
            slope = float(np.dot(gradient, trial - x))

            if np.isfinite(value):
                if slope < 0.0:
                    if value <= f0 + self._sufficient_decrease * slope:
                        return LineSearchResult(step, trial, value, evaluation)
                elif value < f0:
                    return LineSearchResult(step, trial, value, evaluation)

            step *= self._contraction_factor

        # No acceptable step: stay put.
        return LineSearchResult(0.0, x, f0, self._max_iterations)
