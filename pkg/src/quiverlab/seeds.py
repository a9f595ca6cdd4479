"""Seed mutation with principal coefficients and exact Laurent arithmetic.

Cluster variables are kept as Laurent polynomials in the initial cluster
x_1..x_n with coefficient variables y_1..y_n.  Mutation at k replaces x_k by

    ((product over arrows k -> j* of y_j) (product over arrows k -> j of x_j)
     + (product over arrows i* -> k of y_i) (product over arrows i -> k of x_i)) / x_k

with products over the arrows of the current ice quiver, and the division is
performed exactly; an inexact division or a negative coefficient signals an
implementation bug, never an expected outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classes import enumerate_class
from .core import ExchangeMatrix, IceQuiver, frame, mutate
from .laurent import (
    LaurentPoly,
    LaurentViolation,
    NegativeCoefficientError,
    _div_exact_raw,
    _pow_raw,
)

__all__ = [
    "Seed",
    "initial_seed",
    "exchange_binomial",
    "seed_mutate",
    "cluster_variable",
    "is_coprime_matrix",
    "totally_coprime",
    "initial_exchange_binomial",
    "depth1_upper_membership",
    "grading_check",
    "degree",
    "LaurentViolation",
    "NegativeCoefficientError",
]


@dataclass(frozen=True)
class Seed:
    """Current cluster (expressed in the initial variables) plus its ice quiver."""

    cluster: tuple[LaurentPoly, ...]
    ice: IceQuiver

    @property
    def n(self) -> int:
        return self.ice.n


def initial_seed(b: ExchangeMatrix) -> Seed:
    cluster = tuple(LaurentPoly.x_var(b.n, i) for i in range(1, b.n + 1))
    return Seed(cluster, frame(b))


def exchange_binomial(seed: Seed, k: int) -> LaurentPoly:
    """The two-monomial numerator of the mutation rule at k, evaluated in the
    current cluster."""
    n = seed.n
    if not 1 <= k <= n:
        raise IndexError(f"vertex {k} out of range 1..{n}")
    if seed.ice.m != 2 * n:
        raise ValueError("seed must carry exactly one frozen row per vertex")
    entries = seed.ice.entries
    col = k - 1

    head_y = [0] * n
    tail_y = [0] * n
    for j in range(n):
        c = entries[n + j][col]
        if c > 0:
            head_y[j] = c
        elif c < 0:
            tail_y[j] = -c
    head = LaurentPoly.monomial(n, 1, [0] * n, head_y)
    tail = LaurentPoly.monomial(n, 1, [0] * n, tail_y)
    row_k = entries[col]
    for j in range(n):
        out_mult = row_k[j]
        if out_mult > 0:
            head = head * seed.cluster[j] ** out_mult
        in_mult = entries[j][col]
        if in_mult > 0:
            tail = tail * seed.cluster[j] ** in_mult
    return head + tail


def seed_mutate(seed: Seed, k: int) -> Seed:
    """Mutate the seed at k; the new variable's division is exact by the
    Laurent phenomenon."""
    numerator = exchange_binomial(seed, k)
    new_var = numerator.try_div(seed.cluster[k - 1])
    if new_var is None:
        raise LaurentViolation(
            f"mutation at {k} did not divide exactly; the seed engine is broken"
        )
    cluster = tuple(
        new_var if i == k - 1 else old for i, old in enumerate(seed.cluster)
    )
    return Seed(cluster, mutate(seed.ice, k))


def cluster_variable(b: ExchangeMatrix, steps: tuple[int, ...]) -> LaurentPoly:
    """The variable created by the last step, replayed from the initial seed.

    An empty sequence returns the last initial variable x_n.  Coefficients
    are asserted positive on the way out.
    """
    if b.n == 0:
        raise ValueError("the empty quiver has no cluster variables")
    seed = initial_seed(b)
    for k in steps:
        seed = seed_mutate(seed, k)
    result = seed.cluster[steps[-1] - 1] if steps else seed.cluster[-1]
    if any(c <= 0 for c in result.coefficients()):
        raise NegativeCoefficientError(
            f"variable for sequence {steps} has a nonpositive coefficient"
        )
    return result


# -- coprimality -------------------------------------------------------------

def is_coprime_matrix(matrix: ExchangeMatrix | IceQuiver) -> bool:
    """True iff every pair of columns is linearly independent over the integers."""
    entries = matrix.entries
    n = matrix.n
    m = len(entries)
    for a in range(n):
        for b_col in range(a + 1, n):
            independent = False
            for r in range(m):
                for s in range(r + 1, m):
                    if entries[r][a] * entries[s][b_col] != entries[r][b_col] * entries[s][a]:
                        independent = True
                        break
                if independent:
                    break
            if not independent:
                return False
    return True


def totally_coprime(b: ExchangeMatrix, max_quivers: int = 10_000) -> tuple[bool, bool]:
    """Coprimality across the enumerated mutation class.

    Returns (every representative coprime, enumeration complete).  When the
    class enumeration hit a cap the first value only covers the sampled part.
    """
    cls = enumerate_class(b, max_quivers=max_quivers)
    return all(is_coprime_matrix(rep) for rep in cls.representatives), cls.complete


# -- depth-1 membership in the upper cluster algebra --------------------------

def initial_exchange_binomial(b: ExchangeMatrix, k: int) -> LaurentPoly:
    """Exchange binomial at k for the initial principal-coefficient seed:
    y_k times the out-arrow monomial, plus the in-arrow monomial."""
    n = b.n
    head_x = [max(b.entries[k - 1][j], 0) for j in range(n)]
    head_y = [1 if j == k - 1 else 0 for j in range(n)]
    tail_x = [max(b.entries[i][k - 1], 0) for i in range(n)]
    head = LaurentPoly.monomial(n, 1, head_x, head_y)
    tail = LaurentPoly.monomial(n, 1, tail_x, [0] * n)
    return head + tail


def depth1_upper_membership(p: LaurentPoly, b: ExchangeMatrix) -> bool:
    """Membership in all n adjacent Laurent rings, assuming total coprimality.

    Writing p = sum_d p_d x_k^d with p_d free of x_k, membership in the ring
    adjacent at k holds iff f_k^m divides p_(-m) for every m >= 1, where f_k
    is the initial exchange binomial; the mutated variable is algebraically
    independent of the others, so the negative layers must absorb f_k.
    Coefficient variables are treated as invertible.
    """
    n = b.n
    if p.n != n:
        raise ValueError(f"polynomial has {p.n} variables, quiver has {n}")
    width = 2 * n
    for k in range(1, n + 1):
        layers: dict[int, dict] = {}
        for exps, coeff in p.items():
            d = exps[k - 1]
            if d < 0:
                stripped = list(exps)
                stripped[k - 1] = 0
                layers.setdefault(d, {})[tuple(stripped)] = coeff
        if not layers:
            continue
        f_raw = initial_exchange_binomial(b, k).raw()
        for d, layer in layers.items():
            power = _pow_raw(f_raw, -d, width)
            if _div_exact_raw(layer, power, width) is None:
                return False
    return True


# -- gradings ------------------------------------------------------------------

def grading_check(b: ExchangeMatrix, weights: tuple[int, ...]) -> bool:
    """Valid iff every column of b is orthogonal to the weight vector."""
    if len(weights) != b.n:
        raise ValueError(f"expected {b.n} weights")
    for k in range(b.n):
        if sum(b.entries[i][k] * weights[i] for i in range(b.n)) != 0:
            return False
    return True


def degree(p: LaurentPoly, weights: tuple[int, ...]) -> int | None:
    """Weighted degree of a homogeneous polynomial, None when inhomogeneous;
    coefficient variables weigh zero."""
    return p.degree(weights)
