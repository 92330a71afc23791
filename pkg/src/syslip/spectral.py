"""Certified Perron-root enclosures for nonnegative integer matrices.

The workhorse is the two-sided Collatz-Wielandt iteration: for any positive
vector v,  min_k (Mv)_k / v_k  <=  rho(M)  <=  max_k (Mv)_k / v_k,  and both
bounds are exact rationals when v and M are integral.  Iterating v <- Mv
tightens the enclosure at the spectral-gap rate for primitive matrices; a
stalled enclosure (reducible input) is returned with converged=False rather
than raised.

A characteristic-polynomial route (exact Faddeev-LeVerrier coefficients plus
Sturm-sequence root isolation) provides an independent oracle on small
dimensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError, FalsificationError
from .surfaces import RationalRay
from .twists import TransitionMatrix, column_sum_bound, lifted_root_matrix

DEFAULT_TOLERANCE = 1e-9
MAX_ITERATIONS = 20_000


@dataclass(frozen=True)
class SpectralResult:
    """Enclosure [lower, upper] of the Perron root."""

    lower: float
    upper: float
    iterations: int
    converged: bool

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def log_upper(self) -> float:
        return math.log(self.upper)


def _matvec(entries: tuple[tuple[int, ...], ...], v: list[int]) -> list[int]:
    return [sum(row[k] * v[k] for k in range(len(v)) if row[k]) for row in entries]


def spectral_radius(
    m: TransitionMatrix,
    tol: float = DEFAULT_TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> SpectralResult:
    """Enclose rho(M) by iterated Collatz-Wielandt bounds in exact arithmetic.

    Every iteration's bounds are valid for any nonnegative matrix, so the
    best-so-far enclosure always contains the Perron root; only the width
    guarantee needs primitivity.  Rows must be nonzero (our twist matrices
    have positive diagonals; rotations permute), otherwise the radius of the
    nonzero part is not seen by the iteration and we fail fast.
    """
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    d = m.dimension
    if any(not any(row) for row in m.entries):
        raise DomainError("zero row: Collatz-Wielandt iteration needs nonzero rows")
    v = [1] * d
    best_lower = Fraction(0)
    best_upper: Fraction | None = None
    iterations = 0
    while iterations < max_iterations:
        w = _matvec(m.entries, v)
        iterations += 1
        ratios = [Fraction(w[k], v[k]) for k in range(d)]
        lo, hi = min(ratios), max(ratios)
        if lo > best_lower:
            best_lower = lo
        if best_upper is None or hi < best_upper:
            best_upper = hi
        if float(best_upper - best_lower) <= tol:
            return SpectralResult(
                lower=_round_down(best_lower),
                upper=_round_up(best_upper),
                iterations=iterations,
                converged=True,
            )
        g = gcd(*w) if d > 1 else w[0]
        v = [x // g for x in w] if g > 1 else w
    return SpectralResult(
        lower=_round_down(best_lower),
        upper=_round_up(best_upper if best_upper is not None else best_lower),
        iterations=iterations,
        converged=False,
    )


def _round_down(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) <= x else math.nextafter(f, -math.inf)


def _round_up(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) >= x else math.nextafter(f, math.inf)


# -- characteristic polynomial oracle ---------------------------------------


def characteristic_polynomial(m: TransitionMatrix) -> list[int]:
    """Exact monic characteristic polynomial, highest degree first.

    Faddeev-LeVerrier recursion in rational arithmetic; the coefficients of
    an integer matrix are integers, which we assert on the way out.
    """
    d = m.dimension
    a = [[Fraction(v) for v in row] for row in m.entries]
    coeffs: list[Fraction] = [Fraction(1)]
    work = [[Fraction(0)] * d for _ in range(d)]
    for k in range(1, d + 1):
        if k == 1:
            work = [row[:] for row in a]
        else:
            prev = [[work[x][y] + (coeffs[-1] if x == y else 0) for y in range(d)] for x in range(d)]
            work = [
                [sum(a[x][j] * prev[j][y] for j in range(d)) for y in range(d)]
                for x in range(d)
            ]
        trace = sum(work[x][x] for x in range(d))
        coeffs.append(-trace / k)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise FalsificationError("characteristic polynomial is not integral")
        out.append(c.numerator)
    return out


def _poly_eval(poly: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in poly:
        acc = acc * x + c
    return acc


def _poly_derivative(poly: list[Fraction]) -> list[Fraction]:
    n = len(poly) - 1
    return [poly[k] * (n - k) for k in range(n)]


def _poly_rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = num[:]
    while len(num) >= len(den) and any(num):
        if num[0] == 0:
            num.pop(0)
            continue
        factor = num[0] / den[0]
        for k in range(len(den)):
            num[k] -= factor * den[k]
        num.pop(0)
    while num and num[0] == 0:
        num.pop(0)
    return num


def _sturm_chain(poly: list[int]) -> list[list[Fraction]]:
    p0 = [Fraction(c) for c in poly]
    p1 = _poly_derivative(p0)
    chain = [p0, p1]
    while chain[-1]:
        rem = _poly_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_changes(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        acc = Fraction(0)
        for c in p:
            acc = acc * x + c
        if acc != 0:
            signs.append(1 if acc > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def largest_real_root(poly: list[int], tol: float = 1e-12) -> tuple[float, float]:
    """Enclose the largest real root of an integer polynomial by bisection.

    Sturm counts give the number of roots in a half-open interval, so the
    bisection is exact until the final float rounding.
    """
    if len(poly) < 2:
        raise DomainError("polynomial must have positive degree")
    chain = _sturm_chain(poly)
    bound = Fraction(1) + max(abs(Fraction(c, poly[0])) for c in poly[1:])
    lo, hi = -bound, bound
    if _sign_changes(chain, lo) - _sign_changes(chain, hi) < 1:
        raise DomainError("polynomial has no real roots")
    while float(hi - lo) > tol:
        mid = (lo + hi) / 2
        if _sign_changes(chain, mid) - _sign_changes(chain, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return _round_down(lo), _round_up(hi)


def perron_root_exact(m: TransitionMatrix, tol: float = 1e-12) -> tuple[float, float]:
    """Characteristic-polynomial enclosure of the Perron root (small dims)."""
    return largest_real_root(characteristic_polynomial(m), tol=tol)


# -- root-map dilatation -----------------------------------------------------


def root_log_dilatation_bound(index: int) -> float:
    """Closed-form certified bound log(16i + 9)/i on the root map's log-dilatation."""
    if index < 2:
        raise DomainError("root maps exist for cover degree >= 2")
    return math.log(column_sum_bound(index)) / index


def root_dilatation_bound(
    ray: RationalRay,
    index: int,
    tol: float = 1e-6,
    check: bool = True,
) -> float:
    """Certified upper bound on log lambda of the lifted root map.

    Returns the closed form log(16i+9)/i.  With check=True the constructed
    root matrix's computed Perron upper bound is verified against it; a
    violation is a construction bug and raises with the offending matrix.
    """
    bound = root_log_dilatation_bound(index)
    if check:
        matrix = lifted_root_matrix(ray, index)
        result = spectral_radius(matrix, tol=tol)
        if result.log_upper > bound + tol:
            raise FalsificationError(
                f"root map log-dilatation {result.log_upper:.9f} exceeds "
                f"certified bound {bound:.9f} for ray {ray}, i={index}; "
                f"matrix provenance: {matrix.provenance}"
            )
    return bound
