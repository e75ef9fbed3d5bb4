"""Generator assembly for mu = 2 curves carrying a point of multiplicity d-2.

After the normalizing change of X-coordinates the low moving line is axial,
P = p1(T) X0 - p0(T) X1, and the parametrization factors through the common
component q.  Two degree-shift operators trade T-degree mu for X-degree one
(and back, modulo P); iterating the downward shift on the high moving line
produces the pseudo-homogeneous family that, topped off with one (d odd) or
two (d even) extra bidegree-(1, k) forms, generates the whole kernel ideal.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ImproperParametrization, PreconditionError, VerificationError
from .linalg import ExactMatrix
from .poly import BiPoly, tpoly_dense
from .syzygy import (
    ImplicitEquation,
    MuBasis,
    Parametrization,
    SingularityClass,
    VERY_SINGULAR,
    apply_x_change,
    classify_singularity,
    implicit_equation,
    mu_basis,
    pullback_through_change,
)


@dataclass
class VerySingularContext:
    original: Parametrization
    par: Parametrization          # transformed: singular point at (0:0:1)
    mb: MuBasis                   # transformed mu-basis {P, Q}
    p0: BiPoly                    # axial pair: P = p1 X0 - p0 X1, gcd(p0,p1)=1
    p1: BiPoly
    q: BiPoly                     # v0 = p0 q, v1 = p1 q
    k: int
    r: int
    change: list                  # Y = M X
    change_inv: list
    implicit: ImplicitEquation    # in the transformed frame

    @property
    def mu(self) -> int:
        return self.mb.mu

    @property
    def d(self) -> int:
        return self.par.d

    @property
    def field(self):
        return self.par.field


def split_degree(d: int, mu: int):
    """d = k mu + r with -1 <= r < mu - 1 (quotient bumps when d+1 | mu)."""
    r = d % mu
    if r == mu - 1:
        return (d + 1) // mu, -1
    return d // mu, r


def very_singular_context(
    par: Parametrization,
    mb: MuBasis | None = None,
    sing: SingularityClass | None = None,
) -> VerySingularContext:
    if mb is None:
        mb = mu_basis(par)
    mu = mb.mu
    d = par.d
    if not mu < d - mu:
        raise PreconditionError("mu_lt_d_minus_mu", f"mu={mu}, d={d}")
    if sing is None:
        sing = classify_singularity(mb)
    if sing.kind != VERY_SINGULAR:
        raise PreconditionError(
            "very_singular", f"singularity class is {sing.kind!r}"
        )
    tpar = apply_x_change(par, sing.change)
    tp = pullback_through_change(mb.p, sing.change_inv)
    tq = pullback_through_change(mb.q, sing.change_inv)
    p0, p1 = sing.axial_pair
    v0, v1, _ = tpar.triple
    q = v0.exact_div(p0)
    if v1 != p1 * q:
        raise VerificationError("factorization v = (p0 q, p1 q, *) failed")
    k, r = split_degree(d, mu)
    tmb = MuBasis(p=tp, q=tq, mu=mu)
    imp = implicit_equation(tmb)
    if imp.properness_degree != 1:
        raise ImproperParametrization(imp.properness_degree)
    return VerySingularContext(
        original=par,
        par=tpar,
        mb=tmb,
        p0=p0,
        p1=p1,
        q=q,
        k=k,
        r=r,
        change=sing.change,
        change_inv=sing.change_inv,
        implicit=imp,
    )


# ---------------------------------------------------------------------------
# the degree-shift operators
# ---------------------------------------------------------------------------

class _PairSolver:
    """Deterministic solver for h = p0 g0 + p1 g1 at a fixed T-degree i."""

    def __init__(self, ctx: VerySingularContext, i: int):
        F = ctx.field
        mu = ctx.mu
        s = i - mu
        d0 = tpoly_dense(ctx.p0)
        d1 = tpoly_dense(ctx.p1)
        cols = []
        for dv in (d0, d1):
            for a in range(s + 1):
                col = [F.zero] * (i + 1)
                for t, c in enumerate(dv):
                    col[a + t] = c
                cols.append(col)
        rows = [[cols[c][r] for c in range(2 * (s + 1))] for r in range(i + 1)]
        self.solver = ExactMatrix(F, rows).solver()
        self.s = s
        self.field = F

    def split(self, h: BiPoly):
        """T-forms (g0, g1) with h = p0 g0 + p1 g1 (canonical pivot solution)."""
        F = self.field
        sol = self.solver.solve(tpoly_dense(h))
        if sol is None:
            raise VerificationError("degree-shift decomposition unsolvable")
        s = self.s
        g0 = {(s - a, a, 0, 0, 0): sol[a] for a in range(s + 1)}
        g1 = {(s - a, a, 0, 0, 0): sol[s + 1 + a] for a in range(s + 1)}
        return (
            BiPoly(F, s, 0, g0),
            BiPoly(F, s, 0, g1),
        )


def _pair_solver(ctx: VerySingularContext, i: int) -> _PairSolver:
    cache = getattr(ctx, "_solvers", None)
    if cache is None:
        cache = ctx._solvers = {}
    if i not in cache:
        cache[i] = _PairSolver(ctx, i)
    return cache[i]


def apply_dt(ctx: VerySingularContext, g: BiPoly) -> BiPoly:
    """Trade T-degree mu for X-degree 1: g = p0 g0 + p1 g1 |-> X0 g0 + X1 g1.

    Well defined modulo P; preserves kernel membership.  Requires
    T-degree >= 2 mu - 1 so the coefficientwise split is solvable.
    """
    F = ctx.field
    i, j = g.bidegree
    mu = ctx.mu
    if i < 2 * mu - 1:
        raise PreconditionError("shift_degree", f"T-degree {i} < {2 * mu - 1}")
    solver = _pair_solver(ctx, i)
    out = BiPoly.zero(F, i - mu, j + 1)
    seen = set()
    for m in g.coeffs:
        b = m[2:]
        if b in seen:
            continue
        seen.add(b)
        g0, g1 = solver.split(g.x_coefficient(b))
        xmono = BiPoly.monomial(F, (0, 0) + b)
        x0 = BiPoly.monomial(F, (0, 0, 1, 0, 0))
        x1 = BiPoly.monomial(F, (0, 0, 0, 1, 0))
        out = out + (x0 * g0 + x1 * g1) * xmono
    return out


def apply_dx(ctx: VerySingularContext, g: BiPoly) -> BiPoly:
    """The reverse shift: g = X0 g0 + X1 g1 |-> p0 g0 + p1 g1 (mod P).

    Input must lie in <X0, X1>; the canonical split sends every monomial
    divisible by X0 to the X0 slot.
    """
    F = ctx.field
    i, j = g.bidegree
    if not g.in_x01_power(1):
        raise PreconditionError("x01_membership", "input not in <X0, X1>")
    g0 = {}
    g1 = {}
    for m, c in g.coeffs.items():
        if m[2] >= 1:
            g0[(m[0], m[1], m[2] - 1, m[3], m[4])] = c
        else:
            g1[(m[0], m[1], m[2], m[3] - 1, m[4])] = c
    part0 = BiPoly(F, i, max(j - 1, 0), g0, _clean=True)
    part1 = BiPoly(F, i, max(j - 1, 0), g1, _clean=True)
    return ctx.p0 * part0 + ctx.p1 * part1


# ---------------------------------------------------------------------------
# the recursive family and the top forms
# ---------------------------------------------------------------------------

def family(ctx: VerySingularContext):
    """[F at j=1 (the high moving line), ..., F at j=k-1], via repeated shifts."""
    mu, k, r = ctx.mu, ctx.k, ctx.r
    if not mu < ctx.d - mu:
        raise PreconditionError("mu_lt_d_minus_mu", "family needs mu < d - mu")
    out = [ctx.mb.q]
    for j in range(2, k):
        nxt = apply_dt(ctx, out[-1])
        if nxt.is_zero():
            raise VerificationError(f"family member at j={j} vanished")
        expect = ((k - j) * mu + r, j)
        if nxt.bidegree != expect:
            raise VerificationError(
                f"family bidegree {nxt.bidegree}, expected {expect}"
            )
        out.append(nxt)
    for j, f in enumerate(out, start=1):
        if not f.subst_x(*ctx.par.triple).is_zero():
            raise VerificationError(f"family member j={j} left the kernel")
    return out


def top_generator_odd(ctx: VerySingularContext, fam=None) -> BiPoly:
    """The extra bidegree-(1, k) generator for d = 2k - 1 (a Sylvester form)."""
    if ctx.mu != 2 or ctx.r != -1:
        raise PreconditionError("parity", "needs mu = 2 and d odd")
    F = ctx.field
    if fam is None:
        fam = family(ctx)
    f21 = ctx.mb.p
    f1k1 = fam[-1]
    if f1k1.bidegree != (1, ctx.k - 1):
        raise VerificationError("family top has unexpected bidegree")
    # canonical split F_{2,1} = T0 G + T1 H: T0-divisible monomials go to G
    gcoef = {}
    hcoef = {}
    for m, c in f21.coeffs.items():
        if m[0] >= 1:
            gcoef[(m[0] - 1, m[1], m[2], m[3], m[4])] = c
        else:
            hcoef[(m[0], m[1] - 1, m[2], m[3], m[4])] = c
    g11 = BiPoly(F, 1, 1, gcoef, _clean=True)
    h11 = BiPoly(F, 1, 1, hcoef, _clean=True)
    f_up = f1k1.t_coefficient(1, 0)          # F_{1,k-1} = T0 f_up - T1 f_dn
    f_dn = -f1k1.t_coefficient(0, 1)
    top = f_dn * g11 + f_up * h11
    if top.is_zero() or top.bidegree != (1, ctx.k):
        raise VerificationError("top form construction failed")
    if not top.subst_x(*ctx.par.triple).is_zero():
        raise VerificationError("top form left the kernel")
    if not top.in_x01_power(1):
        raise VerificationError("top form escaped <X0, X1>")
    return top


def top_generators_even(ctx: VerySingularContext, fam=None):
    """The two extra bidegree-(1, k) generators for d = 2k."""
    if ctx.mu != 2 or ctx.r != 0:
        raise PreconditionError("parity", "needs mu = 2 and d even")
    F = ctx.field
    if fam is None:
        fam = family(ctx)
    f21 = ctx.mb.p
    f2k1 = fam[-1]
    if f2k1.bidegree != (2, ctx.k - 1):
        raise VerificationError("family top has unexpected bidegree")
    f0 = f21.t_coefficient(2, 0)
    f1 = f21.t_coefficient(0, 2)
    m0 = f2k1.t_coefficient(2, 0)
    m1 = f2k1.t_coefficient(0, 2)
    try:
        top0 = (m0 * f21 - f0 * f2k1).monomial_quotient((0, 1, 0, 0, 0))
        top1 = (m1 * f21 - f1 * f2k1).monomial_quotient((1, 0, 0, 0, 0))
    except Exception as exc:  # inexact division signals broken preconditions
        raise VerificationError(f"paired top forms not divisible: {exc}") from exc
    for t in (top0, top1):
        if t.is_zero() or t.bidegree != (1, ctx.k):
            raise VerificationError("paired top form has wrong shape")
        if not t.subst_x(*ctx.par.triple).is_zero():
            raise VerificationError("paired top form left the kernel")
        if not t.in_x01_power(1):
            raise VerificationError("paired top form escaped <X0, X1>")
    return top0, top1


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

@dataclass
class Generator:
    poly: BiPoly            # original input coordinates, normalized
    pipeline_poly: BiPoly   # the transformed-frame representative
    bidegree: tuple
    label: str


def assemble_very_singular(ctx: VerySingularContext):
    """Minimal generating set: k+2 elements for d odd, k+3 for d even."""
    if ctx.mu != 2:
        raise PreconditionError("mu_equals_2", f"mu = {ctx.mu}")
    d, k = ctx.d, ctx.k
    if ctx.r == -1 and k < 2:
        raise PreconditionError("degree_range", "d odd needs k >= 2")
    if ctx.r == 0 and k < 3:
        raise PreconditionError(
            "degree_range",
            "d = 4 cannot carry a triple point with mu = 2",
        )
    fam = family(ctx)
    gens = [
        (ctx.implicit.equation, "implicit-equation"),
        (ctx.mb.p, "low-moving-line"),
    ]
    labels = ["high-moving-line"] + [
        f"degree-shift-family[j={j}]" for j in range(2, k)
    ]
    gens.extend(zip(fam, labels))
    if ctx.r == -1:
        gens.append((top_generator_odd(ctx, fam), "sylvester-top-form"))
        expected = k + 2
    else:
        t0, t1 = top_generators_even(ctx, fam)
        gens.append((t0, "paired-top-form[0]"))
        gens.append((t1, "paired-top-form[1]"))
        expected = k + 3
    if len(gens) != expected:
        raise VerificationError(f"assembled {len(gens)} generators, wanted {expected}")
    out = []
    for poly, label in gens:
        back = pullback_through_change(poly, ctx.change).normalized()
        out.append(
            Generator(
                poly=back,
                pipeline_poly=poly.normalized(),
                bidegree=poly.bidegree,
                label=label,
            )
        )
    return out
