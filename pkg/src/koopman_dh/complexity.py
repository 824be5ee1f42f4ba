"""Linear complexity over exact fields: Berlekamp-Massey, LFSR generation,
an exhaustive small-order oracle, and the comparison against the minimal
lifted dimension.

The default field is the rationals: the lifted linear systems live over the
reals, and several small-modulus sequences have strictly lower complexity
over their own prime field (a recorded, deliberate distinction). Connection
coefficients are newest-first: s_k = c_1 s_{k-1} + ... + c_L s_{k-L}.
Reversing the connection vector gives the last row of the equivalent
companion matrix (alpha_j = c_{L-j}).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import DhParams, is_prime, simulate
from .lifting import minimal_lifting_dimension
from .linalg_exact import solve_field_with_ranks

RATIONAL = "rational"


@dataclass(frozen=True)
class ModInt:
    """Single prime-field value with operator arithmetic."""

    value: int
    p: int

    def _coerce(self, other) -> "ModInt":
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other
        return ModInt(int(other) % self.p, self.p)

    def __add__(self, other):
        other = self._coerce(other)
        return ModInt((self.value + other.value) % self.p, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        return ModInt((self.value - other.value) % self.p, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        return ModInt((self.value * other.value) % self.p, self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.value == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return self * ModInt(pow(other.value, self.p - 2, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.value % self.p, self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, ModInt):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    __radd__ = __add__
    __rmul__ = __mul__


def _field_tools(field):
    """(converter, zero, one, exporter) for a field tag."""
    if field == RATIONAL:
        return Fraction, Fraction(0), Fraction(1), lambda x: x
    p = int(field)
    if not is_prime(p):
        raise ValueError(f"prime-field modulus must be prime, got {p}")
    return (
        lambda x: ModInt(int(x) % p, p),
        ModInt(0, p),
        ModInt(1, p),
        lambda x: x.value,
    )


@dataclass(frozen=True)
class SequenceSample:
    """A finite sequence tagged with the field its terms live in."""

    terms: tuple
    field: object = RATIONAL

    def __post_init__(self):
        if not self.terms:
            raise ValueError("sequence must be nonempty")
        conv = _field_tools(self.field)[0]
        export = _field_tools(self.field)[3]
        object.__setattr__(self, "terms", tuple(export(conv(t)) for t in self.terms))


@dataclass(frozen=True)
class LinearComplexityResult:
    """Minimal register length L with connection coefficients (newest-first)."""

    length: int
    connection: tuple
    field: object

    @property
    def companion_last_row(self) -> tuple:
        """The equivalent companion-matrix last row (oldest-first ordering)."""
        return tuple(reversed(self.connection))


def berlekamp_massey(sample: SequenceSample) -> LinearComplexityResult:
    """Minimal LFSR of a sequence by the Berlekamp-Massey algorithm.

    Runs over the sample's exact field; the returned register is verified to
    regenerate the input from its first L terms before being returned.
    """
    conv, zero, one, export = _field_tools(sample.field)
    s = [conv(t) for t in sample.terms]
    n_terms = len(s)
    c = [one]
    b = [one]
    length = 0
    m = 1
    last_d = one
    for n in range(n_terms):
        d = s[n]
        for i in range(1, length + 1):
            if i < len(c):
                d = d + c[i] * s[n - i]
        if d == zero:
            m += 1
            continue
        coef = d / last_d
        if 2 * length <= n:
            prev_c = c[:]
            if len(c) < len(b) + m:
                c = c + [zero] * (len(b) + m - len(c))
            for i, bv in enumerate(b):
                c[i + m] = c[i + m] - coef * bv
            length = n + 1 - length
            b = prev_c
            last_d = d
            m = 1
        else:
            if len(c) < len(b) + m:
                c = c + [zero] * (len(b) + m - len(c))
            for i, bv in enumerate(b):
                c[i + m] = c[i + m] - coef * bv
            m += 1
    connection = tuple(
        export(-c[i]) if i < len(c) else export(zero) for i in range(1, length + 1)
    )
    regenerated = lfsr_generate(connection, sample.terms[:length], n_terms, sample.field)
    if tuple(regenerated) != sample.terms:
        raise RuntimeError("internal error: synthesized register fails to regenerate input")
    return LinearComplexityResult(length=length, connection=connection, field=sample.field)


def lfsr_generate(connection, seed, n: int, field=RATIONAL) -> list:
    """Extend a seed by the register rule s_k = sum_i connection_i * s_{k-i}."""
    if len(seed) != len(connection):
        raise ValueError(
            f"seed length {len(seed)} must equal connection length {len(connection)}"
        )
    conv, zero, _, export = _field_tools(field)
    state = [conv(t) for t in seed]
    coeffs = [conv(t) for t in connection]
    out = list(state[:n])
    while len(out) < n:
        nxt = zero
        for i, ci in enumerate(coeffs):
            nxt = nxt + ci * out[-1 - i]
        out.append(nxt)
    return [export(v) for v in out]


def bruteforce_min_lfsr(sample: SequenceSample, max_order: int) -> LinearComplexityResult | None:
    """Smallest register length by exhaustive exact solves, or None above the bound.

    Independent of the Berlekamp-Massey path: for each order L it solves the
    full linear system of recurrence constraints and accepts the first L
    whose exact fit has zero residual across the whole sequence.
    """
    if max_order > 12:
        raise ValueError(f"exhaustive oracle capped at order 12, got {max_order}")
    conv, zero, _, export = _field_tools(sample.field)
    s = [conv(t) for t in sample.terms]
    n_terms = len(s)
    for order in range(0, max_order + 1):
        if order == 0:
            if all(v == zero for v in s):
                return LinearComplexityResult(length=0, connection=(), field=sample.field)
            continue
        rows = [[s[k - i] for i in range(1, order + 1)] for k in range(order, n_terms)]
        rhs = [s[k] for k in range(order, n_terms)]
        if not rows:
            connection = tuple(export(zero) for _ in range(order))
            return LinearComplexityResult(
                length=order, connection=connection, field=sample.field
            )
        solution, _, _ = solve_field_with_ranks(rows, rhs)
        if solution is not None:
            connection = tuple(export(v) for v in solution)
            return LinearComplexityResult(
                length=order, connection=connection, field=sample.field
            )
    return None


@dataclass(frozen=True)
class KoopmanLfsrComparison:
    """Side-by-side of register length and minimal lifted dimension."""

    lfsr_length: int
    koopman_dimension: int
    equal: bool
    connection: tuple


def compare_koopman_vs_lfsr(params: DhParams) -> KoopmanLfsrComparison:
    """Berlekamp-Massey on two periods of the orbit vs the minimal lifting scan.

    Two full periods certify the recurrence across the wraparound; one
    period would under-determine periodic registers.
    """
    period = params.period
    values = simulate(params.m, params, 1, 2 * period - 1).values
    result = berlekamp_massey(SequenceSample(terms=values, field=RATIONAL))
    dimension = minimal_lifting_dimension(params)
    return KoopmanLfsrComparison(
        lfsr_length=result.length,
        koopman_dimension=dimension,
        equal=result.length == dimension,
        connection=result.connection,
    )
