"""Syzygies, minimal graded free resolutions, Betti tables.

A resolution is built by repeatedly computing the kernel of the last map
(as a module Groebner basis computation) and passing to a minimal
generating set of that kernel.  Starting from minimal generators of the
ideal this yields the minimal resolution directly: a matrix entry of
degree zero would mean some generator was redundant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import (module_groebner, module_minimal_generators)
from .ideals import Ideal, free_module_piece_dim
from .rings import Polynomial, PolynomialRing

__all__ = [
    "BettiTable",
    "FreeResolution",
    "syzygies",
    "free_resolution",
    "betti_table",
    "regularity",
    "proj_dim",
    "is_cohen_macaulay",
]


class BettiTable:
    """Graded Betti numbers b_{i,j} of an ideal's minimal resolution:
    b_{0,j} counts minimal generators of degree j."""

    def __init__(self, entries: dict):
        self.entries = {k: v for k, v in entries.items() if v}

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if isinstance(other, dict):
            return self.entries == {k: v for k, v in other.items() if v}
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({self.entries!r})"

    def items(self):
        return self.entries.items()

    def max_index(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def column_degrees(self, i: int) -> dict:
        return {j: b for (ii, j), b in self.entries.items() if ii == i}

    def regularity(self) -> int:
        return max(j - i for i, j in self.entries)

    def proj_dim(self) -> int:
        return self.max_index()

    def total_rank(self, i: int) -> int:
        return sum(self.column_degrees(i).values())

    def quotient_table(self) -> "BettiTable":
        """Betti table of S/I from the table of I."""
        out = {(0, 0): 1}
        for (i, j), b in self.entries.items():
            out[(i + 1, j)] = b
        return BettiTable(out)

    def alternating_degree_sums(self) -> dict:
        out = {}
        for (i, j), b in self.entries.items():
            out[j] = out.get(j, 0) + (b if i % 2 == 0 else -b)
        return {j: v for j, v in out.items() if v}

    def is_symmetric(self) -> bool:
        """True when some degree flip j -> s - j, i -> pd - i fixes the table
        (the shape of a Gorenstein quotient's self-dual resolution)."""
        q = self.quotient_table()
        pd = q.max_index()
        degs = [j for (i, j) in q.entries if i == pd]
        if not degs:
            return True
        s = max(degs)
        return all(q[(pd - i, s - j)] == b for (i, j), b in q.entries.items())

    def render(self) -> str:
        """Macaulay2-style grid: rows are j - i, columns homological index."""
        if not self.entries:
            return "(empty Betti table)"
        imax = self.max_index()
        rows = sorted({j - i for i, j in self.entries})
        header = "       " + "".join(f"{i:>6}" for i in range(imax + 1))
        lines = [header]
        for r in rows:
            cells = []
            for i in range(imax + 1):
                b = self[(i, r + i)]
                cells.append(f"{b if b else '.':>6}")
            lines.append(f"{r:>5}: " + "".join(cells))
        return "\n".join(lines)


@dataclass
class FreeResolution:
    """0 <- I <- F_0 <- F_1 <- ... with graded free modules F_i.

    `shifts[i]` lists the twists of F_i (so F_i = + S(-a) over its shifts);
    `matrices[i]` presents F_{i+1} -> F_i as columns of polynomial tuples.
    """

    ring: PolynomialRing
    shifts: list
    matrices: list
    minimal: bool = True
    generators: list = field(default_factory=list)

    def length(self) -> int:
        return len(self.shifts) - 1

    def betti(self) -> BettiTable:
        entries = {}
        for i, col in enumerate(self.shifts):
            for a in col:
                entries[(i, a)] = entries.get((i, a), 0) + 1
        return BettiTable(entries)

    def check_complex(self) -> bool:
        """Consecutive matrices compose to zero."""
        for step in range(len(self.matrices) - 1):
            A, B = self.matrices[step], self.matrices[step + 1]
            for col in B:
                for i in range(len(self.shifts[step])):
                    acc = self.ring.zero()
                    for k, a_col in enumerate(A):
                        acc = acc + a_col[i] * col[k]
                    if not acc.is_zero():
                        return False
        return True


def _columns_to_elements(columns, ring):
    elements = []
    for col in columns:
        elem = {}
        for i, f in enumerate(col):
            for m, c in f.terms.items():
                elem[(i, m)] = c
        elements.append(elem)
    return elements


def _elements_to_columns(elements, rank, ring):
    cols = []
    for elem in elements:
        per_pos = [{} for _ in range(rank)]
        for (i, m), c in elem.items():
            per_pos[i][m] = c
        cols.append(tuple(Polynomial(ring, t) for t in per_pos))
    return cols


def _column_degree(col, shifts, ring):
    degs = {f.degree() + s for f, s in zip(col, shifts) if not f.is_zero()}
    if len(degs) != 1:
        raise ValueError("column is not homogeneous")
    return degs.pop()


def syzygies(columns, shifts, ring: PolynomialRing):
    """Generators of the kernel of the map defined by `columns` out of the
    free module with the given shifts.

    Returns (kernel columns, their degrees).  Computed by a module Groebner
    basis of the graph elements [col_j ; e_j] under position-over-term
    order, which eliminates the first block of positions.
    """
    r = len(shifts)
    cols = list(columns)
    degs = [_column_degree(c, shifts, ring) for c in cols]
    aug_shifts = tuple(shifts) + tuple(degs)
    elements = []
    one = ring.field.one()
    for j, col in enumerate(cols):
        elem = {(r + j, 0): one}
        for i, f in enumerate(col):
            for m, c in f.terms.items():
                elem[(i, m)] = c
        elements.append(elem)
    basis = module_groebner(elements, aug_shifts, ring)
    syz = []
    for elem in basis:
        if all(pos >= r for (pos, _) in elem):
            syz.append({(pos - r, m): c for (pos, m), c in elem.items()})
    out_cols = _elements_to_columns(syz, len(cols), ring)
    out_degs = [_column_degree(c, degs, ring) for c in out_cols]
    return out_cols, out_degs


def syzygy_matrix(I: Ideal):
    """Syzygies of the minimal generators of an ideal (1-row matrix)."""
    gens = list(I.min_gens())
    cols = [(g,) for g in gens]
    return syzygies(cols, (0,), I.ring), gens


def free_resolution(I: Ideal) -> FreeResolution:
    """Minimal graded free resolution of a proper homogeneous ideal."""
    if I.is_unit():
        raise ValueError("resolution of the unit ideal")
    ring = I.ring
    gens = list(I.min_gens())
    if not gens:
        return FreeResolution(ring, [[]], [], generators=[])
    shifts = [[g.degree() for g in gens]]
    matrices = []
    current_cols = [(g,) for g in gens]
    current_shifts = (0,)
    while True:
        ker_cols, ker_degs = syzygies(current_cols, current_shifts, ring)
        if not ker_cols:
            break
        elements = _columns_to_elements(ker_cols, ring)
        minimal = module_minimal_generators(elements, tuple(shifts[-1]), ring)
        cols = _elements_to_columns(minimal, len(shifts[-1]), ring)
        degs = [_column_degree(c, shifts[-1], ring) for c in cols]
        order = sorted(range(len(cols)), key=lambda k: degs[k])
        cols = [cols[k] for k in order]
        degs = [degs[k] for k in order]
        for col, d in zip(cols, degs):
            for f, s in zip(col, shifts[-1]):
                if not f.is_zero() and f.degree() + s == d and f.degree() == 0:
                    raise AssertionError("non-minimal resolution step")
        matrices.append(cols)
        shifts.append(degs)
        current_cols = cols
        current_shifts = tuple(shifts[-2])
        if len(shifts) > ring.nvars + 2:
            raise RuntimeError("resolution exceeded the syzygy bound")
    return FreeResolution(ring, shifts, matrices, generators=gens)


def betti_table(resolution: FreeResolution) -> BettiTable:
    if not resolution.minimal:
        raise ValueError("Betti numbers require a minimal resolution")
    return resolution.betti()


def regularity(B: BettiTable) -> int:
    """max(j - i) over the table."""
    return B.regularity()


def proj_dim(B: BettiTable) -> int:
    return B.proj_dim()


def is_cohen_macaulay(I: Ideal) -> bool:
    """pd(S/I) equals the height (graded Auslander-Buchsbaum)."""
    res = free_resolution(I)
    pd_quotient = res.length() + 1
    return pd_quotient == I.height()


def euler_numerator(B: BettiTable) -> dict:
    """Alternating degree sums; must match the Hilbert numerator of I."""
    return B.alternating_degree_sums()
