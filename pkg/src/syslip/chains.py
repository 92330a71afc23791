"""Curve chains, their cyclic lifts, and filling-pair Euler combinatorics.

A base chain is an ordered run of 2p+q simple closed curves in which only
consecutive curves meet (once or twice).  Curve 1 is the distinguished curve
`c`; the rest alternate between the twist classes A and B, so each class is a
disjoint multicurve.  Lifting to the degree-i cyclic cover strings i copies
of the chain into a single cycle, one seam intersection per sheet, with the
deck rotation permuting sheets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .surfaces import RationalRay, Surface

COLOR_C = "c"
COLOR_A = "A"
COLOR_B = "B"

DEFAULT_FIRST_INTERSECTION = 2
DEFAULT_INTERSECTION = 1
DEFAULT_SEAM_INTERSECTION = 1


def _chain_colors(length: int) -> tuple[str, ...]:
    # curve 0 is c, curve 1 opens the A class, colors alternate afterwards
    return (COLOR_C,) + tuple(COLOR_A if k % 2 == 1 else COLOR_B for k in range(1, length))


@dataclass(frozen=True)
class CurveChain:
    """Linear chain of curves with adjacent-only intersections in {1, 2}."""

    length: int
    intersections: tuple[int, ...]  # intersections[k] = i(curve_k, curve_{k+1})
    colors: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.length < 3:
            raise DomainError("a chain needs at least 3 curves")
        if len(self.intersections) != self.length - 1:
            raise DomainError("need one intersection number per adjacent pair")
        if any(v not in (1, 2) for v in self.intersections):
            raise DomainError("adjacent intersection numbers must be 1 or 2")
        if not self.colors:
            object.__setattr__(self, "colors", _chain_colors(self.length))

    @property
    def size(self) -> int:
        return self.length

    def color(self, k: int) -> str:
        return self.colors[k]

    def color_class(self, color: str) -> tuple[int, ...]:
        return tuple(k for k in range(self.length) if self.colors[k] == color)

    def neighbors(self, k: int) -> tuple[tuple[int, int], ...]:
        """Adjacent curves of curve k as (index, intersection number) pairs."""
        out = []
        if k > 0:
            out.append((k - 1, self.intersections[k - 1]))
        if k < self.length - 1:
            out.append((k + 1, self.intersections[k]))
        return tuple(out)

    def coupling_neighbors(self, k: int) -> tuple[tuple[int, int], ...]:
        """Neighbors receiving weight from a twist about curve k (all of them)."""
        return self.neighbors(k)

    def adjacent(self, a: int, b: int) -> bool:
        return abs(a - b) == 1

    def to_json(self) -> dict:
        return {
            "curves": self.length,
            "colors": list(self.colors),
            "adjacent_intersections": list(self.intersections),
        }


#: How twist weight crosses the seams of a lifted chain: toward the next
#: sheet, toward the previous sheet, both ways, or not at all (the seam
#: crossings are smoothed outward and carry no measure).
SEAM_FLOW_MODES = ("to_next", "to_prev", "both", "none")


@dataclass(frozen=True)
class LiftedChain:
    """Cyclic chain of sheets*base.length curves in the degree-`sheets` cover.

    Curve (j, k) is sheet j's copy of base curve k, flattened to j*n + k.  The
    end of each sheet's run meets the start of the next sheet's run with the
    seam intersection number; the deck rotation maps (j, k) to (j+1, k).

    The lifts of the distinguished curve c encircle the branch locus, so
    consecutive lifts meet once: c_j and c_{j+1} form an inner ring.  This is
    what lets twist weight slip one sheet per iteration of the root map.
    """

    base: CurveChain
    sheets: int
    seam: int = DEFAULT_SEAM_INTERSECTION
    seam_flow: str = "none"
    c_ring: bool = True
    ring_flow: str = "to_prev"

    def __post_init__(self) -> None:
        if self.sheets < 2:
            raise DomainError("a cyclic cover needs at least 2 sheets")
        if self.seam not in (1, 2):
            raise DomainError("seam intersection number must be 1 or 2")
        if self.seam_flow not in SEAM_FLOW_MODES:
            raise DomainError(f"seam flow must be one of {SEAM_FLOW_MODES}")
        if self.ring_flow not in SEAM_FLOW_MODES:
            raise DomainError(f"ring flow must be one of {SEAM_FLOW_MODES}")

    @property
    def size(self) -> int:
        return self.sheets * self.base.length

    def flat(self, sheet: int, k: int) -> int:
        return (sheet % self.sheets) * self.base.length + k

    def unflat(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.base.length)

    def color(self, idx: int) -> str:
        return self.base.colors[idx % self.base.length]

    def sheet_class(self, sheet: int, color: str) -> tuple[int, ...]:
        return tuple(self.flat(sheet, k) for k in self.base.color_class(color))

    def rotation(self, idx: int) -> int:
        """Deck rotation: (j, k) -> (j+1 mod sheets, k)."""
        sheet, k = self.unflat(idx)
        return self.flat(sheet + 1, k)

    def neighbors(self, idx: int) -> tuple[tuple[int, int], ...]:
        sheet, k = self.unflat(idx)
        n = self.base.length
        out = []
        if k > 0:
            out.append((self.flat(sheet, k - 1), self.base.intersections[k - 1]))
        else:
            out.append((self.flat(sheet - 1, n - 1), self.seam))
        if k < n - 1:
            out.append((self.flat(sheet, k + 1), self.base.intersections[k]))
        else:
            out.append((self.flat(sheet + 1, 0), self.seam))
        if k == 0 and self.c_ring and self.sheets > 1:
            out.append((self.flat(sheet - 1, 0), 1))
            if self.sheets > 2:
                out.append((self.flat(sheet + 1, 0), 1))
        return tuple(out)

    def coupling_neighbors(self, idx: int) -> tuple[tuple[int, int], ...]:
        """Neighbors that a twist about curve idx sends weight into.

        In-sheet neighbors always receive weight.  Across the cut the
        smoothing orients the transfer: seam_flow picks whether weight leaves
        toward the next sheet, the previous sheet, or both; the same
        orientation governs the inner ring of c-lifts.
        """
        sheet, k = self.unflat(idx)
        n = self.base.length
        out = []
        if k > 0:
            out.append((self.flat(sheet, k - 1), self.base.intersections[k - 1]))
        elif self.seam_flow in ("to_prev", "both"):
            out.append((self.flat(sheet - 1, n - 1), self.seam))
        if k < n - 1:
            out.append((self.flat(sheet, k + 1), self.base.intersections[k]))
        elif self.seam_flow in ("to_next", "both"):
            out.append((self.flat(sheet + 1, 0), self.seam))
        if k == 0 and self.c_ring:
            if self.ring_flow in ("to_prev", "both"):
                out.append((self.flat(sheet - 1, 0), 1))
            if self.ring_flow in ("to_next", "both") and self.sheets > 2:
                out.append((self.flat(sheet + 1, 0), 1))
        return tuple(out)

    def adjacent(self, a: int, b: int) -> bool:
        return any(m == b for m, _ in self.neighbors(a))

    def to_json(self) -> dict:
        data = self.base.to_json()
        data["sheets"] = self.sheets
        data["seam_intersection"] = self.seam
        data["seam_flow"] = self.seam_flow
        data["c_ring"] = self.c_ring
        return data


def build_base_chain(
    ray: RationalRay, intersection_pattern: list[int] | tuple[int, ...] | None = None
) -> CurveChain:
    """Chain of 2p+q curves for the ray; pattern overrides the intersections.

    The default pattern gives the first pair intersection 2 and every other
    adjacent pair intersection 1.
    """
    n = 2 * ray.p + ray.q
    if intersection_pattern is None:
        pattern = (DEFAULT_FIRST_INTERSECTION,) + (DEFAULT_INTERSECTION,) * (n - 2)
    else:
        pattern = tuple(intersection_pattern)
    return CurveChain(length=n, intersections=pattern)


def lift_chain(
    chain: CurveChain,
    sheets: int,
    seam: int = DEFAULT_SEAM_INTERSECTION,
    seam_flow: str = "none",
    ring_flow: str = "to_prev",
) -> LiftedChain:
    """Cyclically joined `sheets`-fold lift of the chain."""
    return LiftedChain(
        base=chain, sheets=sheets, seam=seam, seam_flow=seam_flow, ring_flow=ring_flow
    )


def filling_intersection_lower_bound(surface: Surface) -> int:
    """Any pair of curves filling the surface meets at least |chi| times."""
    return surface.abs_chi


@dataclass(frozen=True)
class FillingCounts:
    """Cell counts of the decomposition induced by a filling pair.

    The pair cuts the surface into `discs` discs and `punctured_discs` once-
    punctured discs, with i(alpha,beta) vertices and 2i(alpha,beta) edges.
    """

    intersections: int
    discs: int
    punctured_discs: int

    def __post_init__(self) -> None:
        if self.intersections < 1 or self.discs < 0 or self.punctured_discs < 0:
            raise DomainError("cell counts must be nonnegative (and at least one vertex)")


def check_filling_euler(counts: FillingCounts, surface: Surface) -> bool:
    """True iff the counts are Euler-consistent: i(a,b) - D = 2g - 2 + n.

    Punctured discs contribute zero to the Euler characteristic, so a
    consistent decomposition forces i(a,b) >= |chi|.
    """
    return counts.intersections - counts.discs == surface.abs_chi
