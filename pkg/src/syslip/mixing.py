"""Mixing numbers: first matrix power that is entrywise positive.

A twist product whose r-th transition-matrix power is entrywise positive
pushes the whole measure cone strictly inside itself after r steps, which
bounds its curve-complex translation length below by 1/r.  Positivity is a
reachability property, so it is computed on the boolean shadow of the matrix
(rows as bitmasks); integer powers would grow exponentially for nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .surfaces import RationalRay
from .twists import TransitionMatrix


@dataclass(frozen=True)
class MixingResult:
    """Smallest r <= cap with M^r > 0 entrywise, or absence within the cap."""

    mixing_number: int | None
    cap: int
    dimension: int

    @property
    def within_cap(self) -> bool:
        return self.mixing_number is not None

    @property
    def translation_lower_bound(self) -> Fraction | None:
        if self.mixing_number is None:
            return None
        return Fraction(1, self.mixing_number)


def default_mixing_cap(ray: RationalRay, index: int) -> int:
    """Cap (2 + 2p + q) * i on the root map's mixing number."""
    return (2 + 2 * ray.p + ray.q) * index


def boolean_rows(m: TransitionMatrix) -> list[int]:
    """Row bitmasks of the zero/nonzero shadow of the matrix."""
    rows = []
    for row in m.entries:
        mask = 0
        for y, v in enumerate(row):
            if v:
                mask |= 1 << y
        rows.append(mask)
    return rows


def boolean_matmul(a: list[int], b: list[int]) -> list[int]:
    out = []
    for mask in a:
        acc = 0
        rest = mask
        while rest:
            low = rest & -rest
            acc |= b[low.bit_length() - 1]
            rest ^= low
        out.append(acc)
    return out


def _all_positive(rows: list[int], full: int) -> bool:
    return all(mask == full for mask in rows)


def boolean_power(rows: list[int], k: int) -> list[int]:
    if k < 1:
        raise DomainError("boolean powers start at exponent 1")
    result: list[int] | None = None
    base = rows
    while k:
        if k & 1:
            result = base if result is None else boolean_matmul(result, base)
        k >>= 1
        if k:
            base = boolean_matmul(base, base)
    assert result is not None
    return result


def mixing_number(m: TransitionMatrix, cap: int) -> MixingResult:
    """Smallest r <= cap with M^r entrywise positive, on the boolean shadow.

    Positivity of powers is monotone once every row is nonzero, which lets a
    doubling scan plus binary refinement find the smallest exponent; absence
    within the cap is a value, not an error.
    """
    if cap < 1:
        raise DomainError("cap must be at least 1")
    d = m.dimension
    full = (1 << d) - 1
    rows = boolean_rows(m)
    if any(mask == 0 for mask in rows):
        return MixingResult(mixing_number=None, cap=cap, dimension=d)
    if _all_positive(rows, full):
        return MixingResult(mixing_number=1, cap=cap, dimension=d)
    # doubling scan: squares[j] = shadow of M^(2^j); positivity of powers is
    # monotone because every row is nonzero
    squares = [rows]
    exponent = 1
    while exponent < cap and not _all_positive(squares[-1], full):
        squares.append(boolean_matmul(squares[-1], squares[-1]))
        exponent *= 2
    if not _all_positive(squares[-1], full):
        # exponent >= cap and M^exponent is still not positive
        return MixingResult(mixing_number=None, cap=cap, dimension=d)
    # binary refinement: grow lo_mat = M^lo by stored squares while staying
    # non-positive; the smallest positive exponent is then lo + 1
    lo, lo_mat = 0, None
    for j in range(len(squares) - 2, -1, -1):
        candidate = squares[j] if lo_mat is None else boolean_matmul(lo_mat, squares[j])
        if not _all_positive(candidate, full):
            lo, lo_mat = lo + (1 << j), candidate
    r = lo + 1
    if r > cap:
        return MixingResult(mixing_number=None, cap=cap, dimension=d)
    return MixingResult(mixing_number=r, cap=cap, dimension=d)


def translation_length_lower_bound(result: MixingResult) -> Fraction:
    """Exact rational 1/r from a present mixing number."""
    if result.mixing_number is None:
        raise DomainError("mixing number absent: no translation length bound")
    return Fraction(1, result.mixing_number)
