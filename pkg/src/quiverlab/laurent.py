"""Sparse Laurent polynomials in x_1..x_n, y_1..y_n over arbitrary-precision integers.

Exponent keys are tuples of length 2n (x-exponents first, then y-exponents).
x-exponents may be negative; y-exponents are kept nonnegative, matching the
ring Z[y][x^(+/-1)] in which cluster variables live.  The module-level
division helpers work in the larger ring where y is also invertible; the
class API stays inside Z[y][x^(+/-1)].
"""

from __future__ import annotations

from typing import Iterable, Iterator

Exps = tuple[int, ...]
Terms = dict[Exps, int]


class LaurentViolation(ArithmeticError):
    """An exact division that theory guarantees turned out inexact."""


class NegativeCoefficientError(ArithmeticError):
    """A cluster variable came out with a negative coefficient."""


def _add_raw(a: Terms, b: Terms) -> Terms:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _mul_raw(a: Terms, b: Terms) -> Terms:
    if len(a) > len(b):
        a, b = b, a
    out: Terms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _mins(terms: Terms, width: int) -> list[int]:
    mins = [0] * width
    first = True
    for e in terms:
        if first:
            mins = list(e)
            first = False
        else:
            for i, x in enumerate(e):
                if x < mins[i]:
                    mins[i] = x
    return mins


def _shift(terms: Terms, offset: list[int]) -> Terms:
    return {tuple(x + o for x, o in zip(e, offset)): c for e, c in terms.items()}


def _div_exact_raw(num: Terms, den: Terms, width: int) -> Terms | None:
    """Exact quotient num/den in the Laurent ring, or None.

    Both x- and y-exponents are treated as invertible.  The inputs are
    shifted to ordinary polynomials; after the shift no single variable
    divides the denominator, so Laurent divisibility reduces to polynomial
    divisibility, decided by leading-term division under the lexicographic
    well-order.
    """
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return {}
    mins_n = _mins(num, width)
    mins_d = _mins(den, width)
    n_poly = _shift(num, [-x for x in mins_n])
    d_poly = _shift(den, [-x for x in mins_d])

    lead_d = max(d_poly)
    coeff_d = d_poly[lead_d]
    remainder = dict(n_poly)
    quotient: Terms = {}
    while remainder:
        lead_r = max(remainder)
        coeff_r = remainder[lead_r]
        q_exp = tuple(a - b for a, b in zip(lead_r, lead_d))
        if any(x < 0 for x in q_exp) or coeff_r % coeff_d:
            return None
        q_coeff = coeff_r // coeff_d
        quotient[q_exp] = q_coeff
        for e, c in d_poly.items():
            key = tuple(a + b for a, b in zip(q_exp, e))
            s = remainder.get(key, 0) - q_coeff * c
            if s:
                remainder[key] = s
            else:
                del remainder[key]
    offset = [a - b for a, b in zip(mins_n, mins_d)]
    return _shift(quotient, offset)


def _pow_raw(terms: Terms, power: int, width: int) -> Terms:
    if power < 0:
        raise ValueError("negative power")
    out: Terms = {tuple([0] * width): 1}
    for _ in range(power):
        out = _mul_raw(out, terms)
    return out


class LaurentPoly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Terms | Iterable[tuple[Exps, int]] = ()):
        self.n = n
        items = terms.items() if isinstance(terms, dict) else terms
        clean: Terms = {}
        width = 2 * n
        for exps, coeff in items:
            if len(exps) != width:
                raise ValueError(f"exponent vector must have length {width}")
            if any(e < 0 for e in exps[n:]):
                raise ValueError("y-exponents must be nonnegative")
            if coeff:
                key = tuple(int(e) for e in exps)
                s = clean.get(key, 0) + int(coeff)
                if s:
                    clean[key] = s
                else:
                    del clean[key]
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "LaurentPoly":
        return cls.constant(n, 1)

    @classmethod
    def constant(cls, n: int, value: int) -> "LaurentPoly":
        return cls(n, {tuple([0] * (2 * n)): value} if value else {})

    @classmethod
    def x_var(cls, n: int, i: int) -> "LaurentPoly":
        exps = [0] * (2 * n)
        exps[i - 1] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def y_var(cls, n: int, j: int) -> "LaurentPoly":
        exps = [0] * (2 * n)
        exps[n + j - 1] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def monomial(cls, n: int, coeff: int, x_exps: Iterable[int], y_exps: Iterable[int]) -> "LaurentPoly":
        exps = tuple(x_exps) + tuple(y_exps)
        return cls(n, {exps: coeff})

    # -- views -------------------------------------------------------------

    def items(self) -> Iterator[tuple[Exps, int]]:
        return iter(sorted(self._terms.items()))

    def raw(self) -> Terms:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def coefficients(self) -> list[int]:
        return [c for _, c in sorted(self._terms.items())]

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        return LaurentPoly(self.n, _add_raw(self._terms, other._terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        return LaurentPoly(self.n, _add_raw(self._terms, {e: -c for e, c in other._terms.items()}))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        return LaurentPoly(self.n, _mul_raw(self._terms, other._terms))

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            raise ValueError("use try_div for inverses; negative powers are not closed here")
        return LaurentPoly(self.n, _pow_raw(self._terms, power, 2 * self.n))

    def scaled(self, factor: int) -> "LaurentPoly":
        return LaurentPoly(self.n, {e: factor * c for e, c in self._terms.items()})

    def try_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient in Z[y][x^(+/-1)], or None if not divisible there."""
        self._check_compatible(other)
        q = _div_exact_raw(self._terms, other._terms, 2 * self.n)
        if q is None:
            return None
        if any(e < 0 for exps in q for e in exps[self.n:]):
            return None
        return LaurentPoly(self.n, q)

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if self.n != other.n:
            raise ValueError(f"mixed variable counts: {self.n} vs {other.n}")

    # -- grading -----------------------------------------------------------

    def degree(self, weights: Iterable[int]) -> int | None:
        """Weighted x-degree if homogeneous (y weighs 0), else None."""
        w = list(weights)
        if len(w) != self.n:
            raise ValueError(f"expected {self.n} weights")
        deg = None
        for exps in self._terms:
            d = sum(wi * ei for wi, ei in zip(w, exps[: self.n]))
            if deg is None:
                deg = d
            elif d != deg:
                return None
        return 0 if deg is None else deg

    # -- comparisons / text ------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.n == other.n
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(sorted(self._terms.items()))))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self._terms.items(), reverse=True):
            factors = []
            for idx, e in enumerate(exps):
                if e == 0:
                    continue
                name = f"x{idx + 1}" if idx < self.n else f"y{idx - self.n + 1}"
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"<LaurentPoly {self}>"
