"""Surface invariants, rational rays of surfaces, and systole/collar bounds.

A surface here is the topological type (genus, punctures) with negative Euler
characteristic.  A rational ray r = p/q indexes the family of cyclic covers
S_{p*i, q*i} of the base surface S_{p, q+2}; along such a family the maximum
possible systole length is uniformly bounded, which yields a collar constant
N with  length(systole)/N <= collar_width(length)  for every member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import DomainError


@dataclass(frozen=True)
class Surface:
    """Topological type S_{g,n}; only hyperbolic types are allowed."""

    genus: int
    punctures: int

    def __post_init__(self) -> None:
        if self.genus < 0 or self.punctures < 0:
            raise DomainError("genus and punctures must be nonnegative")
        if self.euler_characteristic >= 0:
            raise DomainError(
                f"S_{{{self.genus},{self.punctures}}} is not hyperbolic "
                f"(euler characteristic {self.euler_characteristic} >= 0)"
            )

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @property
    def abs_chi(self) -> int:
        return -self.euler_characteristic


@dataclass(frozen=True)
class RationalRay:
    """Coprime pair (p, q); the slope p/q is genus/punctures along the ray."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise DomainError("ray requires positive p and q")
        if gcd(self.p, self.q) != 1:
            raise DomainError(f"ray {self.p}/{self.q} is not in lowest terms")

    @property
    def slope(self) -> float:
        return self.p / self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    @staticmethod
    def parse(text: str) -> "RationalRay":
        parts = text.split("/")
        if len(parts) != 2:
            raise DomainError(f"cannot parse ray {text!r}; expected 'p/q'")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise DomainError(f"cannot parse ray {text!r}: {exc}") from exc
        return RationalRay(p, q)


@dataclass(frozen=True)
class RayPoint:
    """Integral point along a ray: the degree-`index` cyclic cover."""

    ray: RationalRay
    index: int

    def __post_init__(self) -> None:
        if self.index < 2:
            raise DomainError("cover degree must be at least 2")


def euler_characteristic(surface: Surface) -> int:
    """chi = 2 - 2g - n."""
    return surface.euler_characteristic


def base_surface(ray: RationalRay) -> Surface:
    """The surface S_{p, q+2} carrying the twist chain for the ray."""
    return Surface(genus=ray.p, punctures=ray.q + 2)


def cover_surface(point: RayPoint) -> Surface:
    """Invariants of the degree-i cyclic cover of the base surface.

    The cover is cut along an arc joining the two distinguished punctures,
    with both branch points filled afterwards, so chi_cover = i*chi_base + 2
    and the punctures multiply by i.  Solving gives genus p*i, punctures q*i;
    genus/punctures equals the ray slope exactly.
    """
    return Surface(genus=point.ray.p * point.index, punctures=point.ray.q * point.index)


def systole_upper_bound(surface: Surface) -> float:
    """Best available upper bound on systole length for a punctured surface.

    n = 1:  2*arccosh((6g-3)/2)
    n >= 2: min of 2*arccosh((12g+5n+13)/2) and 4*arccosh((6g-6+3n)/n)

    Closed surfaces (n = 0) are out of domain: no bound is provided here.
    """
    g, n = surface.genus, surface.punctures
    if n == 0:
        raise DomainError("no systole bound available for closed surfaces (n = 0)")
    if n == 1:
        return 2.0 * math.acosh((6 * g - 3) / 2.0)
    cusp_bound = 2.0 * math.acosh((12 * g + 5 * n + 13) / 2.0)
    area_bound = 4.0 * math.acosh((6 * g - 6 + 3 * n) / n)
    return min(cusp_bound, area_bound)


def collar_width(length: float) -> float:
    """Half-width arcsinh(1/sinh(l/2)) of the embedded collar about a geodesic.

    Strictly decreasing; fixed point at l = 2*arcsinh(1) where w(l) = l/2.
    """
    if length <= 0:
        raise DomainError("collar width requires a positive length")
    return math.asinh(1.0 / math.sinh(length / 2.0))


def _length_over_width(length: float) -> float:
    # l / w(l) is strictly increasing, so family suprema sit at the largest
    # realizable systole bound.
    return length / collar_width(length)


_SCAN_PREFIX = 64


@lru_cache(maxsize=None)
def _ray_collar_constant(p: int, q: int) -> float:
    ray = RationalRay(p, q)
    # Along a ray the n>=2 area bound increases toward 4*arccosh(6r+3) and
    # dominates every member's bound, so the supremum is the limit value; the
    # finite scan guards the first few members against rounding.
    limit_length = 4.0 * math.acosh(6.0 * ray.slope + 3.0)
    best = _length_over_width(limit_length)
    for i in range(2, _SCAN_PREFIX + 1):
        bound = systole_upper_bound(cover_surface(RayPoint(ray, i)))
        best = max(best, _length_over_width(bound))
    return best


@lru_cache(maxsize=None)
def _fixed_genus_collar_constant(g: int) -> float:
    # For fixed genus the area bound decreases in n, but the minimum of the
    # two n>=2 bounds peaks at moderate n, so scan members until the
    # decreasing area bound can no longer beat the running maximum.
    best = _length_over_width(systole_upper_bound(Surface(g, 1)))
    n = 2
    while True:
        bound = systole_upper_bound(Surface(g, n))
        best = max(best, _length_over_width(bound))
        area_bound = 4.0 * math.acosh((6 * g - 6 + 3 * n) / n)
        if _length_over_width(area_bound) <= best:
            # every later member's bound is at most this area bound
            return best
        n += 1


def family_collar_constant(family: RationalRay | int) -> float:
    """Constant N with l/N <= collar_width(l) for all systoles in the family.

    The family is either a rational ray (all cover degrees) or a fixed genus
    g >= 2 with any number of punctures.  N is the supremum over members of
    bound/collar_width(bound); it is finite because the systole bounds are
    uniformly bounded along both family shapes.
    """
    if isinstance(family, RationalRay):
        return _ray_collar_constant(family.p, family.q)
    if isinstance(family, int):
        if family < 2:
            raise DomainError("fixed-genus families require genus >= 2")
        return _fixed_genus_collar_constant(family)
    raise DomainError(f"unsupported family {family!r}")
