"""Data-driven identification of the lifted linear operator by least squares.

Snapshot matrices hold lifted states as columns with exact integer entries,
so the Frobenius objective is a rational number and every claim (rank
identities, operator equality, zero residual) is decided exactly. When the
snapshot matrix has full row rank the least-squares solution is unique;
otherwise the minimum-Frobenius-norm solution is taken via the exact
pseudo-inverse, matching the pseudo-inverse form of the estimator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import ModTrajectory
from .lifting import CompanionSystem, lift_shift
from .linalg_exact import (
    frobenius_sq,
    inverse,
    matmul,
    pinv,
    rank_int,
    transpose,
)
from .serialize import frac_json, frac_matrix_json, read_integer_csv


@dataclass(frozen=True)
class EdmdDataset:
    """Shift-consistent snapshot pair: column k of z_plus lifts step k+1.

    z and z_plus are (q+1) x n matrices stored as row tuples; entries are
    exact integers taken from the source sequence.
    """

    q: int
    n: int
    z: tuple[tuple[int, ...], ...]
    z_plus: tuple[tuple[int, ...], ...]
    rank_z: int


def dataset_from_values(values, q: int, n: int) -> EdmdDataset:
    """Build snapshot matrices from a raw integer sequence.

    Column k of Z is the window (values[k], ..., values[k+q]); Z_plus shifts
    every window one step. Needs n+q+1 values.
    """
    if q < 0:
        raise ValueError(f"dictionary order must be nonnegative, got {q}")
    if n < 1:
        raise ValueError(f"need at least one snapshot pair, got n={n}")
    if len(values) < n + q + 1:
        raise ValueError(
            f"insufficient data: {len(values)} values cannot form {n} pairs at order {q}"
        )
    cols = [tuple(values[k + j] for j in range(q + 1)) for k in range(n + 1)]
    z = tuple(zip(*cols[:n]))
    z_plus = tuple(zip(*cols[1 : n + 1]))
    return EdmdDataset(q=q, n=n, z=z, z_plus=z_plus, rank_z=rank_int(z))


def build_dataset(traj: ModTrajectory, q: int, n: int) -> EdmdDataset:
    """Snapshot matrices from a trajectory, extending by periodicity if needed."""
    values = [traj.value_at(i) for i in range(n + q + 1)]
    return dataset_from_values(values, q, n)


def check_assumption(dataset: EdmdDataset, p: int) -> bool:
    """Data-richness condition: n >= (p-1)/2 + 1 snapshots at order q >= (p-1)/2.

    When it holds, the snapshot rank is pinned to (p-1)/2 + 1; a violation
    of that consequence would mean corrupted data and raises.
    """
    q_tilde = (p - 1) // 2
    ok = dataset.n >= q_tilde + 1 and dataset.q >= q_tilde
    if ok and dataset.rank_z != q_tilde + 1:
        raise RuntimeError(
            f"rank(Z) = {dataset.rank_z} but the data-richness condition forces {q_tilde + 1}"
        )
    return ok


@dataclass(frozen=True)
class FittedOperator:
    """Exact least-squares operator with its squared Frobenius residual.

    residual_sq is the exact squared Frobenius norm of Z_plus - A Z (the
    norm itself is generally irrational; the squared form preserves the
    comparisons that matter: == 0 and > 0).
    """

    a_hat: tuple[tuple[Fraction, ...], ...]
    residual_sq: Fraction
    fit_kind: str

    @property
    def dimension(self) -> int:
        return len(self.a_hat)


def edmd_fit(dataset: EdmdDataset) -> FittedOperator:
    """Exact rational least squares for Z_plus ~ A Z.

    Full row rank gives the unique solution Z_plus Z^T (Z Z^T)^-1; a
    row-rank-deficient Z gets the minimum-Frobenius-norm solution
    Z_plus pinv(Z).
    """
    if dataset.n < 1:
        raise ValueError("empty dataset")
    z = [list(r) for r in dataset.z]
    z_plus = [list(r) for r in dataset.z_plus]
    if dataset.rank_z == dataset.q + 1:
        gram_inv = inverse(matmul(z, transpose(z)))
        a_hat = matmul(matmul(z_plus, transpose(z)), gram_inv)
        fit_kind = "unique"
    else:
        a_hat = matmul(z_plus, pinv(z))
        fit_kind = "minimum-norm"
    diff = [
        [Fraction(zp) - acc for zp, acc in zip(zp_row, az_row)]
        for zp_row, az_row in zip(z_plus, matmul(a_hat, z))
    ]
    return FittedOperator(
        a_hat=tuple(tuple(row) for row in a_hat),
        residual_sq=frobenius_sq(diff),
        fit_kind=fit_kind,
    )


@dataclass(frozen=True)
class OperatorComparison:
    """Exact comparison of a fitted operator against an analytic companion system."""

    entrywise_equal: bool
    prediction_equivalent: bool
    horizon: int


def compare_operators(
    fitted: FittedOperator,
    analytic: CompanionSystem,
    traj: ModTrajectory,
    horizon: int,
) -> OperatorComparison:
    """Entrywise equality plus exact predictions A^k z_0 = z_k up to the horizon."""
    if fitted.dimension != analytic.dimension:
        raise ValueError(
            f"dimension mismatch: fitted {fitted.dimension}, analytic {analytic.dimension}"
        )
    entrywise = [list(map(Fraction, row)) for row in fitted.a_hat] == analytic.matrix
    q = analytic.q
    z = [Fraction(v) for v in lift_shift(traj, q, 0)]
    prediction = True
    for k in range(1, horizon + 1):
        z = [sum(a * v for a, v in zip(row, z)) for row in fitted.a_hat]
        if z != [Fraction(v) for v in lift_shift(traj, q, k)]:
            prediction = False
            break
    return OperatorComparison(
        entrywise_equal=entrywise, prediction_equivalent=prediction, horizon=horizon
    )


@dataclass(frozen=True)
class UnderparameterizedFit:
    """Least-squares fit below the closing order, with its prediction error."""

    operator: FittedOperator
    max_state_error: Fraction
    horizon: int


def edmd_underparameterized(traj: ModTrajectory, q: int, n: int) -> UnderparameterizedFit:
    """Fit below the closing order; the exact residual is necessarily nonzero.

    The prediction error is quantified over one period as the largest
    absolute deviation of the predicted first component from the true state.
    """
    q_tilde = traj.params.q_tilde
    if q >= q_tilde:
        raise ValueError(f"q={q} is not under-parameterized; closing order is {q_tilde}")
    fitted = edmd_fit(build_dataset(traj, q, n))
    period = traj.params.period
    z = [Fraction(v) for v in lift_shift(traj, q, 0)]
    worst = Fraction(0)
    for k in range(1, period + 1):
        z = [sum(a * v for a, v in zip(row, z)) for row in fitted.a_hat]
        worst = max(worst, abs(z[0] - traj.value_at(k)))
    return UnderparameterizedFit(operator=fitted, max_state_error=worst, horizon=period)


def read_trajectory_csv(path: str) -> list[int]:
    """Ingest external trajectory data: one integer state per line."""
    return read_integer_csv(path)


def operator_to_json(fitted: FittedOperator) -> dict:
    """Lossless JSON form of a fitted operator (rationals as num/den strings)."""
    return {
        "matrix": frac_matrix_json(fitted.a_hat),
        "residual_sq": frac_json(fitted.residual_sq),
        "fit_kind": fitted.fit_kind,
        "dimension": fitted.dimension,
    }
