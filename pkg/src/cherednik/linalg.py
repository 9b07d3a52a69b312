"""Exact linear algebra over the coefficient fields.

Matrices are sparse: a row is a dict ``{column: value}`` with nonzero values.
Dense nested lists are accepted by the public helpers and converted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .field import mpq
from .poly import MultiPoly, grlex_key

__all__ = [
    "SolutionSpace",
    "rref",
    "solve_linear_exact",
    "nullspace",
    "rank",
    "PolySpan",
    "linear_combination_coefficients",
]


def _as_rows(M) -> list[dict]:
    rows = []
    for row in M:
        if isinstance(row, dict):
            rows.append({j: v for j, v in row.items() if v})
        else:
            rows.append({j: (mpq(v) if isinstance(v, int) else v) for j, v in enumerate(row) if v})
    return rows


def rref(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form.

    Pivot rows are chosen per column as the sparsest candidate, which keeps
    fill-in low; with exact arithmetic there is no stability concern.
    Returns (pivot rows normalised to pivot 1, pivot columns), aligned.
    """
    work = [dict(r) for r in rows if r]
    pivots: list[int] = []
    done: list[dict] = []
    by_col: dict[int, set[int]] = {}
    for idx, r in enumerate(work):
        for j in r:
            by_col.setdefault(j, set()).add(idx)
    alive = set(range(len(work)))
    for col in range(ncols):
        cands = [i for i in by_col.get(col, ()) if i in alive and work[i].get(col)]
        if not cands:
            continue
        p = min(cands, key=lambda i: len(work[i]))
        alive.discard(p)
        prow = work[p]
        inv = 1 / prow[col]
        prow = {j: v * inv for j, v in prow.items()}
        work[p] = prow
        for i in cands:
            if i == p:
                continue
            r = work[i]
            f = r[col]
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        by_col.setdefault(j, set()).add(i)
                    r[j] = nv
                else:
                    r.pop(j, None)
        pivots.append(col)
        done.append(p)
    # back substitution to make the form fully reduced
    result = [work[p] for p in done]
    for k in range(len(result) - 1, -1, -1):
        col = pivots[k]
        prow = result[k]
        for i in range(k):
            r = result[i]
            f = r.get(col)
            if f:
                for j, v in prow.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
    return result, pivots


@dataclass
class SolutionSpace:
    """Solutions of ``M x = b``: ``particular + span(kernel)``, or inconsistent."""

    ncols: int
    particular: list | None
    kernel: list[list] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def is_unique(self) -> bool:
        return self.consistent and not self.kernel

    @property
    def dimension(self) -> int:
        return len(self.kernel) if self.consistent else -1


def solve_linear_exact(M, b: Sequence | None = None, ncols: int | None = None) -> SolutionSpace:
    """Solve ``M x = b`` exactly.  ``b=None`` means the homogeneous system."""
    rows = _as_rows(M)
    if ncols is None:
        if M and not isinstance(M[0], dict):
            ncols = len(M[0])
        else:
            ncols = 1 + max((j for r in rows for j in r), default=-1)
    rhs_col = ncols
    if b is not None:
        if len(b) != len(rows):
            raise ValueError("right-hand side length does not match the row count")
        for r, v in zip(rows, b):
            if v:
                r[rhs_col] = mpq(v) if isinstance(v, int) else v
    red, pivots = rref(rows, ncols + 1)
    if rhs_col in pivots:
        return SolutionSpace(ncols, None, [])
    particular = [mpq(0)] * ncols
    for r, col in zip(red, pivots):
        particular[col] = r.get(rhs_col, mpq(0))
    pivot_set = set(pivots)
    kernel = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [mpq(0)] * ncols
        vec[free] = mpq(1)
        for r, col in zip(red, pivots):
            v = r.get(free)
            if v:
                vec[col] = -v
        kernel.append(vec)
    return SolutionSpace(ncols, particular, kernel)


def nullspace(M, ncols: int | None = None) -> list[list]:
    return solve_linear_exact(M, None, ncols).kernel


def rank(M, ncols: int | None = None) -> int:
    rows = _as_rows(M)
    if ncols is None:
        ncols = 1 + max((j for r in rows for j in r), default=-1)
    return len(rref(rows, ncols)[1])


class PolySpan:
    """Incrementally maintained reduced echelon basis of a space of polynomials."""

    def __init__(self, nvars: int, polys: Iterable[MultiPoly] = ()):
        self.nvars = nvars
        self._basis: list[tuple[tuple, dict]] = []
        for p in polys:
            self.add(p)

    def __len__(self) -> int:
        return len(self._basis)

    @property
    def dimension(self) -> int:
        return len(self._basis)

    def reduce(self, p: MultiPoly) -> dict:
        v = dict(p.terms)
        for piv, b in self._basis:
            f = v.get(piv)
            if f:
                for e, c in b.items():
                    nv = v.get(e, 0) - f * c
                    if nv:
                        v[e] = nv
                    else:
                        v.pop(e, None)
        return v

    def contains(self, p: MultiPoly) -> bool:
        return not self.reduce(p)

    def add(self, p: MultiPoly) -> bool:
        """Insert ``p``; returns True when it enlarged the span."""
        if p.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        v = self.reduce(p)
        if not v:
            return False
        piv = max(v, key=grlex_key)
        inv = 1 / v[piv]
        v = {e: c * inv for e, c in v.items()}
        for k, (opiv, b) in enumerate(self._basis):
            f = b.get(piv)
            if f:
                for e, c in v.items():
                    nv = b.get(e, 0) - f * c
                    if nv:
                        b[e] = nv
                    else:
                        b.pop(e, None)
        self._basis.append((piv, v))
        return True

    def basis(self) -> list[MultiPoly]:
        ordered = sorted(self._basis, key=lambda t: grlex_key(t[0]), reverse=True)
        return [MultiPoly(self.nvars, dict(b)) for _, b in ordered]


def linear_combination_coefficients(target: MultiPoly, polys: Sequence[MultiPoly]) -> list | None:
    """Coefficients ``a`` with ``sum a_k polys[k] == target``, or None if impossible."""
    index: dict[Hashable, int] = {}
    for p in list(polys) + [target]:
        for e in p.terms:
            index.setdefault(e, len(index))
    rows: list[dict] = [dict() for _ in index]
    for k, p in enumerate(polys):
        for e, c in p.terms.items():
            rows[index[e]][k] = c
    b = [mpq(0)] * len(index)
    for e, c in target.terms.items():
        b[index[e]] = c
    sol = solve_linear_exact(rows, b, ncols=len(polys))
    return sol.particular if sol.consistent else None
