"""Dimension bookkeeping for the T-linear slices of the kernel ideal.

For a mu = 2 curve with a point of multiplicity d - 2 (normalized to
(0:0:1)), the slice K_{1,l} has a closed-form dimension, and inside it sits
Z_l: the part lying in the (d-3)-rd power of <X0, X1>.  Z_l contains every
pencil of adjoint curves in K_{1,l}; its dimension is computed here by plain
rank arithmetic, and compared against the closed-form target that is attained
by generic curves in this family.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import PreconditionError
from .linalg import RowReducer
from .oracle import Oracle
from .poly import monomials_of_bidegree
from .syzygy import Parametrization


def k1_dimension_formula(d: int, ell: int) -> int:
    """Closed-form dim K_{1,ell} for a very singular mu = 2 curve of degree d.

    Conventions: binomial(a, b) = 0 when a < b (so small ell gives 0).
    """
    if ell < 0:
        return 0
    if d % 2 == 1:
        k = (d + 1) // 2
        return comb(max(ell - k + 3, 0), 2) + comb(max(ell - k + 2, 0), 2)
    k = d // 2
    return 2 * comb(max(ell - k + 2, 0), 2)


def adjoint_slice_bound(d: int, ell: int) -> int:
    """The dimension bound for pencils of adjoints inside K_{1,ell}
    (attained by generic very singular mu = 2 curves)."""
    if d % 2 == 1:
        k = (d + 1) // 2
        if ell < 2 * k - 3:
            return 0
        return ell * (ell - 2 * k + 4)
    k = d // 2
    if ell < 2 * k - 2:
        return 0
    return ell * (ell - 2 * k + 3)


def z_dimension(par: Parametrization, ell: int, oracle: Oracle | None = None) -> int:
    """dim of Z_ell = <X0,X1>^(d-3) ∩ K_{1,ell} by stacked-rank arithmetic.

    The parametrization must already be in normalized coordinates (very
    singular point at (0:0:1)); callers coming from classify_singularity
    should pass the transformed curve.
    """
    d = par.d
    if d < 4:
        raise PreconditionError("degree_range", "needs d >= 4")
    if oracle is None:
        oracle = Oracle(par)
    piece = oracle.kernel_basis(1, ell)
    n = len(piece.basis)
    if n == 0:
        return 0
    monomials = monomials_of_bidegree(1, ell)
    low_cols = [t for t, m in enumerate(monomials) if m[2] + m[3] < d - 3]
    if not low_cols:
        return n
    F = par.field
    red = RowReducer(F, len(low_cols))
    rank = 0
    for b in piece.basis:
        row = [b.coeffs.get(monomials[t], F.zero) for t in low_cols]
        red.add_row(row)
    rank = red.rank
    return n - rank


@dataclass
class AdjointRow:
    ell: int
    k1_formula: int
    k1_oracle: int
    z_dim: int
    bound: int

    @property
    def formula_agrees(self) -> bool:
        return self.k1_formula == self.k1_oracle

    @property
    def bound_attained(self) -> bool:
        return self.z_dim == self.bound

    @property
    def within_bound(self) -> bool:
        return self.z_dim <= self.bound


@dataclass
class AdjointReport:
    d: int
    rows: list

    def all_formulas_agree(self) -> bool:
        return all(r.formula_agrees for r in self.rows)


def adjoint_report(par: Parametrization, ell_max: int | None = None) -> AdjointReport:
    """Per-degree dimensions for ell = 0 .. ell_max (default d + 2).

    Expects the normalized (axial) frame, mu = 2, very singular point at
    (0:0:1); K_{1,ell} dimensions are checked against the closed formula,
    Z_ell against the generic-curve target.
    """
    d = par.d
    if ell_max is None:
        ell_max = d + 2
    orc = Oracle(par)
    rows = []
    for ell in range(0, ell_max + 1):
        rows.append(
            AdjointRow(
                ell=ell,
                k1_formula=k1_dimension_formula(d, ell),
                k1_oracle=orc.kernel_dim(1, ell),
                z_dim=z_dimension(par, ell, orc),
                bound=adjoint_slice_bound(d, ell),
            )
        )
    return AdjointReport(d=d, rows=rows)
