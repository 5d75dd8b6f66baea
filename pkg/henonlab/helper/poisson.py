# -*- coding: utf-8 -*-
"""Repeated solves with one symmetric positive definite stiffness matrix."""


from ..printer import debug, trace

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as spla
import typing


METHODS = ("cg", "direct")


class PoissonSolver:
    """Solve A x = b for many right hand sides.

    "cg" runs preconditioned conjugate gradients (incomplete LU of A as
    preconditioner, the previous solution as initial guess) and falls back
    to a sparse LU factorization if CG does not reach `tol`. "direct" uses
    the factorization right away.
    """

    def __init__(
        self,
        matrix: sparse.spmatrix,
        *,
        method: str = "cg",
        tol: float = 1e-10,
        max_iterations: typing.Optional[int] = None,
    ) -> None:
        """Constructor."""
        assert method in METHODS
        self._matrix = sparse.csc_matrix(matrix)
        self._method = method
        self._tol = tol
        self._max_iterations = max_iterations
        self._previous: typing.Optional[np.ndarray] = None
        self._direct: typing.Optional[typing.Callable[[np.ndarray], np.ndarray]] = None
        self._preconditioner: typing.Optional[spla.LinearOperator] = None
        self._inner_iterations = 0

        if method == "cg":
            try:
                ilu = spla.spilu(self._matrix, drop_tol=1e-5, fill_factor=10)
                self._preconditioner = spla.LinearOperator(
                    self._matrix.shape, matvec=ilu.solve, dtype=float
                )
            except RuntimeError as e:
                debug(f"Incomplete LU failed ({e}), running CG without it.")

    @property
    def method(self) -> str:
        return self._method

    @property
    def inner_iterations(self) -> int:
        """CG iterations spent so far."""
        return self._inner_iterations

    def _factorized(self) -> typing.Callable[[np.ndarray], np.ndarray]:
        if self._direct is None:
            self._direct = spla.factorized(self._matrix)
        return self._direct

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self._method == "direct":
            return np.asarray(self._factorized()(rhs))

        count = 0

        def _count(_: np.ndarray) -> None:
            nonlocal count
            count += 1

        x0 = self._previous if self._previous is not None else None
        x, status = spla.cg(
            self._matrix,
            rhs,
            x0=x0,
            rtol=self._tol,
            atol=0.0,
            maxiter=self._max_iterations,
            M=self._preconditioner,
            callback=_count,
        )
        self._inner_iterations += count
        if status != 0 or not np.all(np.isfinite(x)):
            debug(f"CG stopped with status {status}, using a direct solve.")
            x = self._factorized()(rhs)
        else:
            trace(f"CG converged in {count} iterations.")

        self._previous = np.array(x)
        return np.asarray(x)
