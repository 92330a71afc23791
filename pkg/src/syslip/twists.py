"""Transition matrices of twist products on curve chains.

The engine turns a word of (multi)twists into a nonnegative integer matrix
acting on the chain's weight vector mu_1..mu_n.  Conventions, pinned once and
tested against the closed-form template:

* a twist about target t adds |power| * weight couplings into each chain
  neighbor's row, where the weight is the pair's intersection number except
  into a c-colored row, which counts the pair once;
* a word multiplies left-to-right in application order (the first twist
  applied is the leftmost factor).

Entries are exact Python integers; powers taken downstream grow without
overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .chains import (
    COLOR_A,
    COLOR_B,
    COLOR_C,
    CurveChain,
    LiftedChain,
    build_base_chain,
    lift_chain,
)
from .errors import DomainError
from .surfaces import RationalRay

#: Words compose in application order: first twist applied = leftmost factor.
COMPOSITION_ORDER = "application-order-left-to-right"


@dataclass(frozen=True)
class TransitionMatrix:
    """Dense square nonnegative integer matrix with construction provenance."""

    entries: tuple[tuple[int, ...], ...]
    provenance: str = ""

    def __post_init__(self) -> None:
        d = len(self.entries)
        if any(len(row) != d for row in self.entries):
            raise DomainError("matrix must be square")
        if any(v < 0 for row in self.entries for v in row):
            raise DomainError("matrix entries must be nonnegative")

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __getitem__(self, pos: tuple[int, int]) -> int:
        return self.entries[pos[0]][pos[1]]

    def row(self, x: int) -> tuple[int, ...]:
        return self.entries[x]

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "entries": [str(v) for row in self.entries for v in row],
            "provenance": self.provenance,
        }

    @staticmethod
    def from_json(data: dict) -> "TransitionMatrix":
        d = int(data["dimension"])
        flat = [int(v) for v in data["entries"]]
        if len(flat) != d * d:
            raise DomainError("entry count does not match dimension")
        rows = tuple(tuple(flat[x * d : (x + 1) * d]) for x in range(d))
        return TransitionMatrix(rows, provenance=str(data.get("provenance", "")))

    def to_text(self) -> str:
        width = max(len(str(v)) for row in self.entries for v in row)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.entries)


def identity_matrix(dimension: int, provenance: str = "identity") -> TransitionMatrix:
    rows = tuple(
        tuple(1 if x == y else 0 for y in range(dimension)) for x in range(dimension)
    )
    return TransitionMatrix(rows, provenance=provenance)


def matmul(a: TransitionMatrix, b: TransitionMatrix) -> TransitionMatrix:
    if a.dimension != b.dimension:
        raise DomainError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    d = a.dimension
    bt = list(zip(*b.entries))
    rows = tuple(
        tuple(sum(ra[k] * cb[k] for k in range(d) if ra[k]) for cb in bt)
        for ra in a.entries
    )
    return TransitionMatrix(rows, provenance=f"({a.provenance})*({b.provenance})")


def compose(mats: Sequence[TransitionMatrix], dimension: int | None = None) -> TransitionMatrix:
    """Product of the factors in application order; identity for no factors."""
    if not mats:
        if dimension is None:
            raise DomainError("empty composition needs an explicit dimension")
        return identity_matrix(dimension)
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m)
    return out


def matrix_power(m: TransitionMatrix, k: int) -> TransitionMatrix:
    if k < 0:
        raise DomainError("only nonnegative powers are defined")
    result = identity_matrix(m.dimension, provenance=f"({m.provenance})^0")
    base = m
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def _coupling_weight(chain: CurveChain | LiftedChain, into_row: int, pair_weight: int) -> int:
    # into a c-row the pair counts once; into anything else, its full number
    return 1 if chain.color(into_row) == COLOR_C else pair_weight


def elementary_twist_matrix(
    chain: CurveChain | LiftedChain, targets: Iterable[int], power: int
) -> TransitionMatrix:
    """Matrix of a simultaneous twist about pairwise-disjoint target curves.

    Identity plus, per target t and chain neighbor m, a coupling of magnitude
    |power| * weight(t, m) in entry (m, t).  The orientation (sign of power)
    chooses the smoothing; the measure transition keeps absolute values.
    """
    targets = tuple(targets)
    if power == 0:
        raise DomainError("twist power must be nonzero")
    if not targets:
        raise DomainError("twist needs at least one target curve")
    seen = set()
    for t in targets:
        if t in seen:
            raise DomainError(f"duplicate target curve {t}")
        seen.add(t)
    for t in targets:
        for other in targets:
            if other != t and chain.adjacent(t, other):
                raise DomainError(
                    f"target curves {t} and {other} intersect; not a multicurve"
                )
    d = chain.size
    rows = [[1 if x == y else 0 for y in range(d)] for x in range(d)]
    mag = abs(power)
    for t in targets:
        for m, pair_weight in chain.coupling_neighbors(t):
            rows[m][t] += mag * _coupling_weight(chain, m, pair_weight)
    label = "tau({})^{}".format(",".join(map(str, targets)), power)
    return TransitionMatrix(tuple(tuple(r) for r in rows), provenance=label)


def _word_matrices(
    chain: CurveChain | LiftedChain, word: Sequence[tuple[Iterable[int], int]]
) -> list[TransitionMatrix]:
    return [elementary_twist_matrix(chain, targets, power) for targets, power in word]


def base_twist_word(chain: CurveChain, index: int) -> list[tuple[tuple[int, ...], int]]:
    """Application-ordered word tau_c, tau_A^{-index}, tau_B for the chain."""
    if index < 1:
        raise DomainError("twist index must be at least 1")
    return [
        (chain.color_class(COLOR_C), 1),
        (chain.color_class(COLOR_A), -index),
        (chain.color_class(COLOR_B), 1),
    ]


def base_twist_matrix(
    ray: RationalRay,
    index: int,
    intersection_pattern: Sequence[int] | None = None,
) -> TransitionMatrix:
    """Transition matrix of the (2p+q)-dimensional twist product for the ray."""
    chain = build_base_chain(ray, intersection_pattern)
    mats = _word_matrices(chain, base_twist_word(chain, index))
    out = compose(mats)
    return TransitionMatrix(
        out.entries, provenance=f"base ray={ray} i={index} pattern={list(chain.intersections)}"
    )


def closed_form_base_matrix(chain: CurveChain, index: int) -> TransitionMatrix:
    """Banded closed form of the base twist product, written entry by entry.

    Independent of the composition engine: each band is filled from the
    per-column rules of the twist word, so it serves as a template oracle.
    Rows here are 0-based; the first pair's reverse coupling is 1 by the
    into-c rule.
    """
    if index < 1:
        raise DomainError("twist index must be at least 1")
    n = chain.length
    i = index
    I = chain.intersections  # I[k] joins curves k and k+1
    rows = [[0] * n for _ in range(n)]
    for k in range(n):
        rows[k][k] = 1
    # column 0 (curve c): only the c-twist feeds its neighbor's row
    rows[1][0] = I[0]
    # columns of A-curves (odd k): the A-twist feeds both neighbor rows
    for t in range(1, n, 2):
        rows[t - 1][t] += i * _coupling_weight(chain, t - 1, I[t - 1])
        if t + 1 < n:
            rows[t + 1][t] += i * _coupling_weight(chain, t + 1, I[t])
    # columns of B-curves (even k >= 2): B-twist couplings plus the A-then-B
    # second-order band
    for y in range(2, n, 2):
        rows[y - 1][y] += I[y - 1]
        rows[y][y] += i * I[y - 1] * I[y - 1]
        if y + 1 < n:
            rows[y + 1][y] += I[y]
            rows[y][y] += i * I[y] * I[y]
        rows[y - 2][y] += i * _coupling_weight(chain, y - 2, I[y - 2]) * I[y - 1]
        if y + 2 < n:
            rows[y + 2][y] += i * I[y + 1] * I[y]
    # the c-twist replays row 0 into row 1 with weight I[0]
    for y in range(n):
        if y != 0:
            rows[1][y] += I[0] * rows[0][y]
    return TransitionMatrix(
        tuple(tuple(r) for r in rows),
        provenance=f"closed-form n={n} i={index} pattern={list(I)}",
    )


def deck_rotation_matrix(lifted: LiftedChain) -> TransitionMatrix:
    """Permutation matrix of the deck rotation (j, k) -> (j+1, k)."""
    d = lifted.size
    rows = [[0] * d for _ in range(d)]
    for idx in range(d):
        rows[lifted.rotation(idx)][idx] = 1
    return TransitionMatrix(
        tuple(tuple(r) for r in rows), provenance=f"rotation sheets={lifted.sheets}"
    )


def lifted_root_word(
    lifted: LiftedChain, index: int, sheet: int = 0
) -> list[tuple[tuple[int, ...], int]]:
    return [
        (lifted.sheet_class(sheet, COLOR_C), 1),
        (lifted.sheet_class(sheet, COLOR_A), -index),
        (lifted.sheet_class(sheet, COLOR_B), 1),
    ]


def build_lifted_chain(
    ray: RationalRay,
    index: int,
    intersection_pattern: Sequence[int] | None = None,
    seam: int | None = None,
    seam_flow: str | None = None,
    ring_flow: str | None = None,
) -> LiftedChain:
    """Lifted chain with the coupling orientation the certified bounds need.

    The end-of-sheet seam crossings are smoothed outward by default (they
    carry chain adjacency but no twist weight), while the inner ring of
    c-lifts passes weight toward the previous sheet.  This is the orientation
    under which the root map's dilatation stays within the closed-form bound
    and its mixing number stays within the linear cap; other orientations are
    exposed for exploration and can falsify those bounds.
    """
    chain = build_base_chain(ray, intersection_pattern)
    return lift_chain(
        chain,
        index,
        seam if seam is not None else 1,
        seam_flow if seam_flow is not None else "none",
        ring_flow if ring_flow is not None else "to_prev",
    )


def lifted_root_matrix(
    ray: RationalRay,
    index: int,
    intersection_pattern: Sequence[int] | None = None,
    seam: int | None = None,
    seam_flow: str | None = None,
    ring_flow: str | None = None,
) -> TransitionMatrix:
    """Matrix of one sheet's twist block followed by the deck rotation.

    The i-th power of this matrix is the full lifted twist product, so its
    Perron root is the i-th root of the lifted map's dilatation.
    """
    lifted = build_lifted_chain(ray, index, intersection_pattern, seam, seam_flow, ring_flow)
    mats = _word_matrices(lifted, lifted_root_word(lifted, index))
    mats.append(deck_rotation_matrix(lifted))
    out = compose(mats)
    return TransitionMatrix(
        out.entries,
        provenance=(
            f"lifted-root ray={ray} i={index} seam={lifted.seam} "
            f"flow={lifted.seam_flow} ring={lifted.ring_flow}"
        ),
    )


def lifted_full_matrix(
    ray: RationalRay,
    index: int,
    intersection_pattern: Sequence[int] | None = None,
    seam: int | None = None,
    seam_flow: str | None = None,
    ring_flow: str | None = None,
) -> TransitionMatrix:
    """Matrix of the full lifted twist product (every sheet's block in turn)."""
    lifted = build_lifted_chain(ray, index, intersection_pattern, seam, seam_flow, ring_flow)
    mats: list[TransitionMatrix] = []
    for sheet in range(lifted.sheets):
        mats.extend(_word_matrices(lifted, lifted_root_word(lifted, index, sheet=sheet)))
    out = compose(mats)
    return TransitionMatrix(
        out.entries,
        provenance=(
            f"lifted-full ray={ray} i={index} seam={lifted.seam} "
            f"flow={lifted.seam_flow} ring={lifted.ring_flow}"
        ),
    )


def column_sums(m: TransitionMatrix) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*m.entries))


def row_sums(m: TransitionMatrix) -> tuple[int, ...]:
    return tuple(sum(row) for row in m.entries)


def max_column_sum(m: TransitionMatrix) -> int:
    return max(column_sums(m))


def min_column_sum(m: TransitionMatrix) -> int:
    return min(column_sums(m))


def column_sum_bound(index: int) -> int:
    """Certified bound 16i + 9 on column sums of default base twist matrices."""
    return 16 * index + 9
