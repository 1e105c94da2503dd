#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Block-diagonal semidefinite programs in equality standard form.

Primal:  min  sum_j <C_j, X_j> + c_lp^T x + c_free^T z
         s.t. sum_j A_j(X_j) + A_lp x + B z = b,  X_j psd,  x >= 0,  z free

Dual:    max  b^T y
         s.t. S_j = C_j - A_j^T(y) psd,  s = c_lp - A_lp^T y >= 0,  B^T y = c_free

Each A_j is stored as a sparse (m, n_j^2) matrix whose row k is the
row-major flattening of the symmetric coefficient matrix of constraint k.
"""

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg, sparse

from exceptions import InputError


class SdpStatus(str, enum.Enum):
    """Termination status of an SDP solve."""

    OPTIMAL = "Optimal"
    PRIMAL_INFEASIBLE = "PrimalInfeasible"
    DUAL_INFEASIBLE = "DualInfeasible"
    MAX_ITER = "MaxIter"
    NUMERICAL_FAILURE = "NumericalFailure"


@dataclass(frozen=True)
class SdpProblem:
    """
    Immutable SDP data.

    Attributes:
        b: Right-hand side, length m
        psd_sizes: Side lengths n_j of the PSD blocks
        A_psd: Per-block sparse constraint matrices, shape (m, n_j^2)
        C_psd: Per-block symmetric objective matrices
        A_lp: Sparse (m, n_lp) matrix of the nonnegative block
        c_lp: Objective of the nonnegative block
        B: Dense (m, n_free) matrix of the free variables
        c_free: Objective of the free variables
        labels: Optional names of the PSD blocks
    """

    b: np.ndarray
    psd_sizes: Tuple[int, ...]
    A_psd: Tuple[sparse.csr_matrix, ...]
    C_psd: Tuple[np.ndarray, ...]
    A_lp: sparse.csr_matrix
    c_lp: np.ndarray
    B: np.ndarray
    c_free: np.ndarray
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        m = self.b.shape[0]
        if len(self.A_psd) != len(self.psd_sizes) or len(self.C_psd) != len(self.psd_sizes):
            raise InputError("one A and one C matrix are needed per PSD block")
        for n, A, C in zip(self.psd_sizes, self.A_psd, self.C_psd):
            if A.shape != (m, n * n):
                raise InputError(f"PSD block of size {n} has constraint matrix of shape {A.shape}, expected {(m, n * n)}")
            if C.shape != (n, n) or not np.allclose(C, C.T):
                raise InputError(f"objective of PSD block of size {n} must be a symmetric {n}x{n} matrix")
        if self.A_lp.shape != (m, self.c_lp.shape[0]):
            raise InputError("nonnegative block dimensions are inconsistent")
        if self.B.shape != (m, self.c_free.shape[0]):
            raise InputError("free variable block dimensions are inconsistent")
        if self.n_cone == 0:
            raise InputError("an SDP needs at least one PSD block or nonnegative variable")

    @property
    def m(self) -> int:
        return self.b.shape[0]

    @property
    def n_lp(self) -> int:
        return self.c_lp.shape[0]

    @property
    def n_free(self) -> int:
        return self.c_free.shape[0]

    @property
    def n_cone(self) -> int:
        """Barrier parameter: sum of PSD block sizes plus the LP dimension."""
        return int(sum(self.psd_sizes)) + self.n_lp

    def apply(self, X: Sequence[np.ndarray], x: np.ndarray, z: np.ndarray) -> np.ndarray:
        """
        sum_j A_j(X_j) + A_lp x + B z.
        """
        out = np.zeros(self.m)
        for A, Xj in zip(self.A_psd, X):
            out += A @ Xj.reshape(-1)
        if self.n_lp:
            out += self.A_lp @ x
        if self.n_free:
            out += self.B @ z
        return out

    def adjoint(self, y: np.ndarray) -> Tuple[List[np.ndarray], np.ndarray, np.ndarray]:
        """
        (A_j^T y per block, A_lp^T y, B^T y).
        """
        mats = [(A.T @ y).reshape(n, n) for n, A in zip(self.psd_sizes, self.A_psd)]
        return mats, self.A_lp.T @ y, self.B.T @ y

    def primal_objective(self, X: Sequence[np.ndarray], x: np.ndarray, z: np.ndarray) -> float:
        value = sum(float(np.sum(C * Xj)) for C, Xj in zip(self.C_psd, X))
        return value + float(self.c_lp @ x) + float(self.c_free @ z)

    def objective_norm(self) -> float:
        total = sum(float(np.sum(C * C)) for C in self.C_psd)
        return float(np.sqrt(total + self.c_lp @ self.c_lp + self.c_free @ self.c_free))

    def dual_infeasibility_problem(self) -> "SdpProblem":
        """
        Auxiliary program whose optimal solutions are improving rays of the
        primal: X psd, x >= 0 with A(X) + A_lp x + B z = 0 and objective -1.
        The trace objective keeps it bounded, and y = 0, S = I is a strictly
        feasible dual point.
        """
        objective_row_psd = [sparse.csr_matrix(C.reshape(1, -1)) for C in self.C_psd]
        A_psd = tuple(sparse.vstack([A, row], format="csr") for A, row in zip(self.A_psd, objective_row_psd))
        A_lp = sparse.vstack([self.A_lp, sparse.csr_matrix(self.c_lp.reshape(1, -1))], format="csr")
        B = np.vstack([self.B, self.c_free.reshape(1, -1)])
        b = np.zeros(self.m + 1)
        b[-1] = -1.0
        C_psd = tuple(np.eye(n) for n in self.psd_sizes)
        return SdpProblem(b, self.psd_sizes, A_psd, C_psd, A_lp, np.ones(self.n_lp), B,
                          np.zeros(self.n_free), self.labels)

    def primal_infeasibility_problem(self) -> "SdpProblem":
        """
        Auxiliary program whose feasible dual points are Farkas rays y of the
        primal: -A^T y psd, -A_lp^T y >= 0, B^T y = 0 and b^T y = 1. Its
        objective minimizes the trace of the dual slack, so X = I, x = 1
        is a strictly feasible primal point.
        """
        C_psd = tuple(np.zeros((n, n)) for n in self.psd_sizes)
        B = np.hstack([self.B, self.b.reshape(-1, 1)])
        c_free = np.zeros(self.n_free + 1)
        c_free[-1] = 1.0
        b = self.apply([np.eye(n) for n in self.psd_sizes], np.ones(self.n_lp), np.zeros(self.n_free))
        return SdpProblem(b, self.psd_sizes, self.A_psd, C_psd, self.A_lp, np.zeros(self.n_lp), B,
                          c_free, self.labels)

    def independent_rows(self, tol: float = 1e-10) -> Tuple["SdpProblem", np.ndarray, float]:
        """
        Drop linearly dependent equality rows.

        Args:
            tol: Relative pivot size below which a row counts as dependent

        Returns:
            (reduced problem, kept row indices, largest inconsistency of a
            dropped row's right-hand side)
        """
        blocks = [A.toarray() for A in self.A_psd] + [self.A_lp.toarray(), self.B]
        K = np.hstack(blocks)
        _, R, perm = linalg.qr(K.T, mode="economic", pivoting=True)
        diag = np.abs(np.diag(R))
        rank = int(np.sum(diag > tol * diag[0])) if diag.size and diag[0] > 0 else 0
        kept = np.sort(perm[:rank])
        dropped = np.setdiff1d(np.arange(self.m), kept)
        inconsistency = 0.0
        if dropped.size:
            if rank:
                coef, *_ = linalg.lstsq(K[kept].T, K[dropped].T)
                inconsistency = float(np.max(np.abs(self.b[dropped] - coef.T @ self.b[kept])))
            else:
                inconsistency = float(np.max(np.abs(self.b[dropped])))
        reduced = SdpProblem(
            b=self.b[kept], psd_sizes=self.psd_sizes,
            A_psd=tuple(A[kept] for A in self.A_psd), C_psd=self.C_psd,
            A_lp=self.A_lp[kept], c_lp=self.c_lp, B=self.B[kept], c_free=self.c_free, labels=self.labels,
        )
        return reduced, kept, inconsistency

    def describe(self) -> str:
        return f"SDP m={self.m}, psd blocks={list(self.psd_sizes)}, lp={self.n_lp}, free={self.n_free}"


@dataclass
class SdpSolution:
    """
    Result of an SDP solve.

    Residuals are relative: primal ||r_p|| / (1 + ||b||), dual residual over
    (1 + ||C||), gap |pobj - dobj| / (1 + |pobj| + |dobj|).
    """

    status: SdpStatus
    X: List[np.ndarray] = field(default_factory=list)
    x_lp: np.ndarray = field(default_factory=lambda: np.zeros(0))
    z: np.ndarray = field(default_factory=lambda: np.zeros(0))
    y: np.ndarray = field(default_factory=lambda: np.zeros(0))
    S: List[np.ndarray] = field(default_factory=list)
    s_lp: np.ndarray = field(default_factory=lambda: np.zeros(0))
    primal_objective: float = float("nan")
    dual_objective: float = float("nan")
    primal_residual: float = float("inf")
    dual_residual: float = float("inf")
    gap: float = float("inf")
    iterations: int = 0
    message: str = ""
    certificate_residual: Optional[float] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == SdpStatus.OPTIMAL

    def max_residual(self) -> float:
        return max(self.primal_residual, self.dual_residual, self.gap)

    def nearly_optimal(self, tol: float) -> bool:
        """
        True when the final iterate meets `tol` on every residual, whatever
        the reported status.
        """
        return bool(np.isfinite(self.max_residual())) and self.max_residual() <= tol

    def summary(self) -> str:
        return (
            f"{self.status.value} after {self.iterations} iterations: pobj={self.primal_objective:.10g}, "
            f"dobj={self.dual_objective:.10g}, pinf={self.primal_residual:.2e}, "
            f"dinf={self.dual_residual:.2e}, gap={self.gap:.2e}"
        )


class SdpBuilder:
    """
    Incremental assembly of an SdpProblem from coefficient triplets.

    Args:
        m: Number of equality constraints
    """

    def __init__(self, m: int):
        self.m = int(m)
        self.b = np.zeros(self.m)
        self._psd_sizes: List[int] = []
        self._labels: List[str] = []
        self._psd_entries: List[Tuple[List[int], List[int], List[float]]] = []
        self._psd_objective: List[np.ndarray] = []
        self._lp_entries: Tuple[List[int], List[int], List[float]] = ([], [], [])
        self._lp_objective: List[float] = []
        self._free_columns: List[np.ndarray] = []
        self._free_objective: List[float] = []

    def add_psd_block(self, size: int, label: str = "") -> int:
        """
        Add a PSD block and return its index.
        """
        if size < 1:
            raise InputError(f"PSD block size must be >= 1, got {size}")
        self._psd_sizes.append(int(size))
        self._labels.append(label)
        self._psd_entries.append(([], [], []))
        self._psd_objective.append(np.zeros((size, size)))
        return len(self._psd_sizes) - 1

    def add_psd_coefficients(self, block: int, rows, a, b, values) -> None:
        """
        Add value * E_ab to the coefficient matrix of each listed row.

        Off-diagonal pairs are mirrored, so every (a, b) with a != b must be
        listed once only; the matrix entry (a, b) and (b, a) both get value.
        """
        size = self._psd_sizes[block]
        rows = np.asarray(rows, dtype=int).reshape(-1)
        a = np.asarray(a, dtype=int).reshape(-1)
        b = np.asarray(b, dtype=int).reshape(-1)
        values = np.asarray(values, dtype=float).reshape(-1)
        r_list, c_list, v_list = self._psd_entries[block]
        r_list.extend(rows.tolist())
        c_list.extend((a * size + b).tolist())
        v_list.extend(values.tolist())
        off = a != b
        r_list.extend(rows[off].tolist())
        c_list.extend((b[off] * size + a[off]).tolist())
        v_list.extend(values[off].tolist())

    def set_psd_objective(self, block: int, matrix: np.ndarray) -> None:
        self._psd_objective[block] = np.asarray(matrix, dtype=float)

    def add_lp(self, objective: Sequence[float]) -> int:
        """
        Add nonnegative variables with the given objective; returns the first index.
        """
        start = len(self._lp_objective)
        self._lp_objective.extend(float(c) for c in objective)
        return start

    def add_lp_coefficients(self, rows, cols, values) -> None:
        r_list, c_list, v_list = self._lp_entries
        r_list.extend(np.asarray(rows, dtype=int).reshape(-1).tolist())
        c_list.extend(np.asarray(cols, dtype=int).reshape(-1).tolist())
        v_list.extend(np.asarray(values, dtype=float).reshape(-1).tolist())

    def add_free(self, column: np.ndarray, objective: float = 0.0) -> int:
        """
        Add one free variable with its constraint column; returns its index.
        """
        column = np.asarray(column, dtype=float).reshape(-1)
        if column.shape[0] != self.m:
            raise InputError(f"free column has length {column.shape[0]}, expected {self.m}")
        self._free_columns.append(column)
        self._free_objective.append(float(objective))
        return len(self._free_columns) - 1

    def set_rhs(self, b: np.ndarray) -> None:
        b = np.asarray(b, dtype=float).reshape(-1)
        if b.shape[0] != self.m:
            raise InputError(f"right-hand side has length {b.shape[0]}, expected {self.m}")
        self.b = b.copy()

    def build(self) -> SdpProblem:
        A_psd = []
        for size, (rows, cols, vals) in zip(self._psd_sizes, self._psd_entries):
            A = sparse.coo_matrix((vals, (rows, cols)), shape=(self.m, size * size)).tocsr()
            A.sum_duplicates()
            A_psd.append(A)
        n_lp = len(self._lp_objective)
        rows, cols, vals = self._lp_entries
        A_lp = sparse.coo_matrix((vals, (rows, cols)), shape=(self.m, n_lp)).tocsr()
        A_lp.sum_duplicates()
        if self._free_columns:
            B = np.column_stack(self._free_columns)
        else:
            B = np.zeros((self.m, 0))
        return SdpProblem(
            b=self.b.copy(),
            psd_sizes=tuple(self._psd_sizes),
            A_psd=tuple(A_psd),
            C_psd=tuple(self._psd_objective),
            A_lp=A_lp,
            c_lp=np.array(self._lp_objective, dtype=float),
            B=B,
            c_free=np.array(self._free_objective, dtype=float),
            labels=tuple(self._labels),
        )
