"""Analytic eigendecomposition of the canonical companion system and
exponent recovery from lifted states.

The canonical closing coefficients give the characteristic polynomial
(x^q + 1)(x - 1), so the spectrum is {1} plus the odd-indexed 2q-th roots of
unity, all on the unit circle, with Vandermonde eigenvectors (1, l, ..., l^q).
Eigenvalue angles are exact rational turns; the eigenvector matrix inverse is
available both as an exact closed form (Lagrange interpolation rows, computed
in RootSum arithmetic) and as a floating mirror used for recovery, where
matching is separation-based and therefore tolerance-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import pi, sin

import numpy as np

from .cyclotomic import HALF, RootSum, inv_root_minus_one, turn_to_complex
from .dynamics import is_prime
from .lifting import companion_matrix


class RecoveryError(RuntimeError):
    """Recovery could not pin a unique exponent consistent with all eigenvalues."""


def char_alpha(q: int) -> tuple[Fraction, ...]:
    """Companion last row whose characteristic polynomial is (x^q + 1)(x - 1)."""
    if q < 1:
        raise ValueError(f"order must be at least 1, got {q}")
    alpha = [Fraction(0)] * (q + 1)
    alpha[0] += 1
    alpha[1] -= 1
    alpha[q] += 1
    return tuple(alpha)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Unit-circle spectrum of the canonical companion matrix of order q.

    turns[j] is the exact rational angle of eigenvalue j as a fraction of a
    full turn; eigenvalues/V/Vinv are the floating mirrors. Column j of V is
    the Vandermonde eigenvector (1, l_j, ..., l_j^q).
    """

    q: int
    turns: tuple[Fraction, ...]
    eigenvalues: np.ndarray
    V: np.ndarray
    Vinv: np.ndarray

    @property
    def dimension(self) -> int:
        return self.q + 1


def eigen_canonical(p: int, q: int, alpha=None) -> SpectralDecomposition:
    """Decomposition for the canonical companion system of order q.

    Eigenvalues are 1 together with exp(i*pi*(2k+1)/q) for k = 0..q-1. If
    alpha is supplied it must be the canonical sparse vector; general
    companion spectra are out of scope here.
    """
    if not is_prime(p) or p <= 3:
        raise ValueError(f"p must be a prime > 3, got {p}")
    if q < 1:
        raise ValueError(f"order must be at least 1, got {q}")
    if alpha is not None and tuple(Fraction(a) for a in alpha) != char_alpha(q):
        raise ValueError("only the canonical sparse closing coefficients are supported")
    turns = (Fraction(0),) + tuple(Fraction(2 * k + 1, 2 * q) for k in range(q))
    eigenvalues = np.array([turn_to_complex(t) for t in turns])
    v = np.array(
        [[turn_to_complex((r * t) % 1) for t in turns] for r in range(q + 1)]
    )
    vinv = np.linalg.inv(v)
    return SpectralDecomposition(q=q, turns=turns, eigenvalues=eigenvalues, V=v, Vinv=vinv)


@lru_cache(maxsize=None)
def vandermonde_exact(q: int) -> tuple[tuple[RootSum, ...], ...]:
    """Exact eigenvector matrix: entry (r, j) is the unit root of turn r*t_j."""
    turns = (Fraction(0),) + tuple(Fraction(2 * k + 1, 2 * q) for k in range(q))
    return tuple(
        tuple(RootSum.root((r * t) % 1) for t in turns) for r in range(q + 1)
    )


@lru_cache(maxsize=None)
def vinv_exact(q: int) -> tuple[tuple[RootSum, ...], ...]:
    """Exact rows of the inverse eigenvector matrix via Lagrange interpolation.

    Row j holds the coefficients of the Lagrange basis polynomial of node
    l_j within the spectrum, so row_j(l_k) = delta_jk. For l = 1 the row is
    (x^q + 1)/2. For an odd root l the quotient (x^q + 1)/(x - l) has
    coefficient l^(q-1-c) at x^c and the node weight is -l/(q*(l - 1)),
    with 1/(l - 1) expanded exactly as a weighted power sum of l.
    """
    rows: list[tuple[RootSum, ...]] = []
    half = Fraction(1, 2)
    one_row = [RootSum.zero()] * (q + 1)
    one_row[0] = RootSum.from_scalar(half)
    one_row[q] = RootSum.from_scalar(half)
    rows.append(tuple(one_row))
    for k in range(q):
        t = Fraction(2 * k + 1, 2 * q)
        weight = inv_root_minus_one(t, 2 * q).rotated(t).scaled(Fraction(-1, q))
        row = [RootSum.zero()] * (q + 1)
        row[0] = -weight.rotated((t * (q - 1)) % 1)
        for c in range(1, q):
            row[c] = weight.rotated((t * (q - c)) % 1) - weight.rotated((t * (q - 1 - c)) % 1)
        row[q] = weight
        rows.append(tuple(row))
    return tuple(rows)


def eigenpair_residuals_exact_zero(dec: SpectralDecomposition) -> bool:
    """Exact check that A v(l) = l v(l) for every eigenpair, in RootSum form."""
    alpha = char_alpha(dec.q)
    for t in dec.turns:
        v = [RootSum.root((r * t) % 1) for r in range(dec.q + 1)]
        shifted = [x.rotated(t) for x in v]
        av = v[1:] + [sum((RootSum.from_scalar(a) * x for a, x in zip(alpha, v)), RootSum.zero())]
        if any(not (lhs - rhs).is_zero() for lhs, rhs in zip(av, shifted)):
            return False
    return True


def eigenpair_residual_float(dec: SpectralDecomposition) -> float:
    """Max-norm residual of A V - V diag(eigenvalues) in the floating mirror."""
    a = np.array(companion_matrix(char_alpha(dec.q)), dtype=float)
    return float(np.max(np.abs(a @ dec.V - dec.V * dec.eigenvalues[None, :])))


@dataclass(frozen=True)
class TransformedState:
    """Eigencoordinates z~ = Vinv z (floating mirror)."""

    entries: np.ndarray


def transform(z, dec: SpectralDecomposition) -> TransformedState:
    z = np.asarray(z, dtype=complex)
    if z.shape != (dec.dimension,):
        raise ValueError(f"state has dimension {z.shape}, expected ({dec.dimension},)")
    return TransformedState(entries=dec.Vinv @ z)


def transform_exact(z, dec: SpectralDecomposition) -> list[RootSum]:
    """Exact eigencoordinates of an integer lifted state."""
    rows = vinv_exact(dec.q)
    if len(z) != dec.dimension:
        raise ValueError(f"state has dimension {len(z)}, expected {dec.dimension}")
    return [
        sum((entry.scaled(val) for entry, val in zip(row, z)), RootSum.zero())
        for row in rows
    ]


@dataclass(frozen=True)
class ExponentEstimate:
    """Recovered exponent with the per-eigenvalue matching evidence."""

    e: int
    per_eigenvalue_residues: tuple[tuple[int, int, float], ...]
    parity: str


def _usable_tolerance(zt0: np.ndarray) -> float:
    return 1e-9 * max(1.0, float(np.max(np.abs(zt0))))


def recover_exponent(z_e, z_0, dec: SpectralDecomposition, p: int) -> ExponentEstimate:
    """Recover e in [1, p-1] from lifted terminal and initial states.

    For each eigenvalue except l = 1 (zero angle, no information) and except
    coordinates where the initial eigencoordinate vanishes, the ratio
    z~_e,j / z~_0,j must equal l_j^e. Each ratio is matched to the nearest
    precomputed power of l_j, accepted only within half the minimum
    separation of distinct powers, and the matches are intersected as
    residue constraints on e. All usable eigenvalues must agree on a single
    exponent; anything less raises RecoveryError.
    """
    zt0 = transform(z_0, dec).entries
    zte = transform(z_e, dec).entries
    tol = _usable_tolerance(zt0)
    constraints: list[tuple[int, int]] = []
    residues: list[tuple[int, int, float]] = []
    for j, turn in enumerate(dec.turns):
        if turn == 0 or abs(zt0[j]) < tol:
            continue
        order = turn.denominator
        ratio = zte[j] / zt0[j]
        best_t, best_dist = 0, abs(ratio - 1.0)
        for t in range(1, order):
            dist = abs(ratio - turn_to_complex((turn * t) % 1))
            if dist < best_dist:
                best_t, best_dist = t, dist
        if best_dist >= sin(pi / order):
            raise RecoveryError(
                f"eigenvalue {j}: ratio {ratio:.6g} matches no power within separation"
            )
        constraints.append((best_t, order))
        residues.append((j, best_t, best_dist))
    if not constraints:
        raise RecoveryError("no usable eigenvalues: initial eigencoordinates all vanish")
    candidates = [
        e for e in range(1, p) if all((e - t) % order == 0 for t, order in constraints)
    ]
    if not candidates:
        raise RecoveryError("eigenvalue constraints are mutually inconsistent")
    if len(candidates) > 1:
        raise RecoveryError(f"constraints leave {len(candidates)} admissible exponents")
    return ExponentEstimate(
        e=candidates[0],
        per_eigenvalue_residues=tuple(residues),
        parity=parity(z_e, z_0, dec),
    )


def parity(z_e, z_0, dec: SpectralDecomposition) -> str:
    """Parity of the exponent from the eigenvalue -1, when it is present.

    -1 is an eigenvalue exactly when q is odd; its eigencoordinate flips
    sign once per step, so the ratio is +1 for even e and -1 for odd e.
    """
    try:
        j = dec.turns.index(HALF)
    except ValueError:
        return "unavailable"
    zt0 = transform(z_0, dec).entries
    zte = transform(z_e, dec).entries
    if abs(zt0[j]) < _usable_tolerance(zt0):
        raise RecoveryError("initial eigencoordinate at -1 vanishes; parity unreadable")
    ratio = zte[j] / zt0[j]
    return "even" if ratio.real > 0 else "odd"
