"""Colored Young-diagram combinatorics for the rank-N torus algebra.

Boxes are (row, column) pairs with row, column >= 1; the box (x, y) carries
the content x - y + k mod N, where k is the root color of the diagram.
Addable/removable boxes of a fixed color drive the diagonal Fock action;
their spectral supports live on the kappa/q lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .ellcore import LAT_Q2, Lat, Params

Box = tuple[int, int]


@dataclass(frozen=True)
class ColoredPartition:
    """A partition with a color rank N >= 3 and a root color k."""

    parts: tuple[int, ...]
    n_colors: int
    root_color: int = 0

    def __post_init__(self):
        if self.n_colors < 3:
            raise ValueError("need n_colors >= 3")
        if not 0 <= self.root_color < self.n_colors:
            raise ValueError("root color out of range")
        if any(p <= 0 for p in self.parts):
            raise ValueError("parts must be positive (trailing zeros dropped)")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @classmethod
    def make(cls, parts: Iterable[int], n_colors: int, root_color: int = 0) -> "ColoredPartition":
        ps = [int(x) for x in parts if int(x) != 0]
        return cls(tuple(ps), n_colors, root_color)

    @classmethod
    def from_string(cls, text: str, n_colors: int, root_color: int = 0) -> "ColoredPartition":
        text = text.strip()
        parts = [int(t) for t in text.split(",") if t.strip()] if text else []
        return cls.make(parts, n_colors, root_color)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts) if self.parts else "-"

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def row(self, x: int) -> int:
        """Part length of row x (1-based, zero beyond the diagram)."""
        return self.parts[x - 1] if 1 <= x <= len(self.parts) else 0

    def content(self, box: Box) -> int:
        x, y = box
        return (x - y + self.root_color) % self.n_colors

    def boxes(self) -> Iterator[Box]:
        for x, lam in enumerate(self.parts, start=1):
            for y in range(1, lam + 1):
                yield (x, y)

    def addable_boxes(self) -> list[Box]:
        out = []
        for x in range(1, len(self.parts) + 2):
            if x == 1 or self.row(x - 1) > self.row(x):
                out.append((x, self.row(x) + 1))
        return out

    def removable_boxes(self) -> list[Box]:
        return [(x, self.row(x)) for x in range(1, len(self.parts) + 1)
                if self.row(x) > self.row(x + 1)]

    def add_box(self, box: Box) -> "ColoredPartition":
        x, y = box
        if box not in self.addable_boxes():
            raise ValueError(f"{box} is not addable")
        ps = list(self.parts) + [0] * (x - len(self.parts))
        ps[x - 1] += 1
        return ColoredPartition.make(ps, self.n_colors, self.root_color)

    def remove_box(self, box: Box) -> "ColoredPartition":
        x, y = box
        if box not in self.removable_boxes():
            raise ValueError(f"{box} is not removable")
        ps = list(self.parts)
        ps[x - 1] -= 1
        return ColoredPartition.make(ps, self.n_colors, self.root_color)


def boxes_by_color(lam: ColoredPartition, color: int) -> tuple[list[Box], list[Box]]:
    """(addable, removable) boxes of the given color, in increasing content order.

    For same-color candidate boxes of one diagram the integer-content order
    coincides with row order; this is asserted rather than assumed.
    """
    add = [b for b in lam.addable_boxes() if lam.content(b) == color]
    rem = [b for b in lam.removable_boxes() if lam.content(b) == color]
    add.sort(key=lambda b: (b[0] - b[1], b))
    rem.sort(key=lambda b: (b[0] - b[1], b))
    assert add == sorted(add) and rem == sorted(rem)
    return add, rem


def support_lat(box: Box) -> Lat:
    """Spectral support u_X = q1^y q3^x u of a box as a lattice point."""
    x, y = box
    return Lat(kappa_e=y - x, q_e=-x - y, u_e=1)


def row_support_lat(lam: ColoredPartition, a: int) -> Lat:
    """Row support u_a = q1^{lam_a} q3^{a-1} u."""
    la = lam.row(a)
    return Lat(kappa_e=la - (a - 1), q_e=-la - (a - 1), u_e=1)


def support_value(lam: ColoredPartition, position, params: Params) -> complex:
    """Numeric spectral support of a row index (int) or a box (pair)."""
    if isinstance(position, int):
        return row_support_lat(lam, position).value(params)
    return support_lat(tuple(position)).value(params)


def _content_lt(a: Box, b: Box) -> bool:
    return a[0] - a[1] < b[0] - b[1]


def coeff_plus(lam: ColoredPartition, box: Box, color: int, params: Params,
               form: str = "box", tail_rows: int = 0) -> complex:
    """Structure coefficient of the box-adding current at an addable box.

    ``form='box'`` multiplies the finite products over same-color addable
    and removable boxes of smaller content; ``form='row'`` evaluates the
    equivalent row-indexed product (used as a cross-oracle).
    """
    add, rem = boxes_by_color(lam, color)
    if box not in add:
        raise ValueError(f"{box} is not an addable box of color {color}")
    if form == "box":
        uX = support_lat(box)
        out = 1.0 + 0j
        for r in rem:
            if _content_lt(r, box):
                ratio = uX / support_lat(r)
                out *= params.theta_lat(LAT_Q2 * ratio) / params.theta_lat(ratio) / params.q
        for a in add:
            if _content_lt(a, box):
                ratio = uX / support_lat(a)
                out *= params.q * params.theta_lat(ratio / LAT_Q2) / params.theta_lat(ratio)
        return out
    if form == "row":
        return _row_coeff_plus(lam, box[0], color, params)
    raise ValueError(f"unknown form {form!r}")


def coeff_minus(lam: ColoredPartition, box: Box, color: int, params: Params,
                form: str = "box", tail_rows: int = 0) -> complex:
    """Structure coefficient of the box-removing current at a removable box.

    The row form's infinite tail is evaluated by its pairwise cancellation:
    the removable-side product stops at row l(lam) + tail_rows*N and the
    addable-side product one row later, which is exact for any tail_rows >= 0.
    """
    add, rem = boxes_by_color(lam, color)
    if box not in rem:
        raise ValueError(f"{box} is not a removable box of color {color}")
    if form == "box":
        uX = support_lat(box)
        out = 1.0 + 0j
        for r in rem:
            if _content_lt(box, r):
                ratio = support_lat(r) / uX
                out *= params.q * params.theta_lat(ratio / LAT_Q2) / params.theta_lat(ratio)
        for a in add:
            if _content_lt(box, a):
                ratio = support_lat(a) / uX
                out *= params.theta_lat(LAT_Q2 * ratio) / params.theta_lat(ratio) / params.q
        return out
    if form == "row":
        return _row_coeff_minus(lam, box[0], color, params, tail_rows)
    raise ValueError(f"unknown form {form!r}")


def row_removable_condition(lam: ColoredPartition, s: int, color: int) -> bool:
    # right end of row s carries content `color`
    return (lam.row(s) + color) % lam.n_colors == (s + lam.root_color) % lam.n_colors


def row_addable_condition(lam: ColoredPartition, s: int, color: int) -> bool:
    return (lam.row(s) + color + 1) % lam.n_colors == (s + lam.root_color) % lam.n_colors


def _row_coeff_plus(lam: ColoredPartition, i: int, color: int, params: Params) -> complex:
    ui = row_support_lat(lam, i)
    out = 1.0 + 0j
    for s in range(1, i):
        ratio = ui / row_support_lat(lam, s)
        if row_removable_condition(lam, s, color):
            # q^{-1} theta(q3^{-1} r)/theta(q1 r)
            out *= params.theta_lat(Lat(1, 1) * ratio) / params.theta_lat(Lat(1, -1) * ratio) / params.q
        if row_addable_condition(lam, s, color):
            out *= params.q * params.theta_lat(Lat(0, -2) * ratio) / params.theta_lat(ratio)
    return out


def _row_coeff_minus(lam: ColoredPartition, i: int, color: int, params: Params,
                     tail_rows: int = 0) -> complex:
    ui = row_support_lat(lam, i)
    out = 1.0 + 0j
    stop = lam.length + tail_rows * lam.n_colors
    for s in range(i + 1, stop + 2):
        ratio = row_support_lat(lam, s) / ui
        if s <= stop and row_removable_condition(lam, s, color):
            # q theta(q1 q3 r)/theta(r)
            out *= params.q * params.theta_lat(Lat(0, -2) * ratio) / params.theta_lat(ratio)
        if row_addable_condition(lam, s, color):
            out *= params.theta_lat(Lat(1, 1) * ratio) / params.theta_lat(Lat(1, -1) * ratio) / params.q
    return out


def dim_vector(lam: ColoredPartition) -> tuple[int, ...]:
    """Number of boxes of each content class."""
    out = [0] * lam.n_colors
    for b in lam.boxes():
        out[lam.content(b)] += 1
    return tuple(out)


def partitions_up_to(n: int) -> list[tuple[int, ...]]:
    """All partitions of every m <= n, smallest first."""
    out: list[tuple[int, ...]] = []

    def gen(rest: int, mx: int, acc: tuple[int, ...]):
        if rest == 0:
            out.append(acc)
            return
        for first in range(min(rest, mx), 0, -1):
            gen(rest - first, first, acc + (first,))

    for m in range(n + 1):
        gen(m, m, ())
    out.sort(key=lambda t: (sum(t), t))
    return out
