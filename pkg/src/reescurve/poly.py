"""Bihomogeneous polynomial arithmetic in (T0, T1; X0, X1, X2).

A BiPoly is a sparse map from exponent tuples (a0, a1, b0, b1, b2) to nonzero
scalars, tagged with its bidegree (tdeg, xdeg); T-forms and X-forms are just
BiPolys with xdeg = 0 / tdeg = 0.  The canonical monomial order used for
printing, pivoting and normalization everywhere is lexicographic with
T0 > T1 > X0 > X1 > X2, highest first — i.e. plain descending tuple order.
"""
from __future__ import annotations

import re

from .fields import ensure_same_field

Mono = tuple  # (a0, a1, b0, b1, b2)

_VAR_INDEX = {"T0": 0, "T1": 1, "X0": 2, "X1": 3, "X2": 4}
_VAR_NAMES = ("T0", "T1", "X0", "X1", "X2")


class GradingError(ValueError):
    """Bidegree bookkeeping violation (mismatched or inconsistent degrees)."""


class InexactDivision(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class BiPoly:
    __slots__ = ("field", "tdeg", "xdeg", "coeffs")

    def __init__(self, field, tdeg, xdeg, coeffs=None, *, _clean=False):
        if tdeg < 0 or xdeg < 0:
            raise GradingError(f"negative bidegree ({tdeg}, {xdeg})")
        self.field = field
        self.tdeg = tdeg
        self.xdeg = xdeg
        if coeffs is None:
            self.coeffs = {}
        elif _clean:
            self.coeffs = coeffs
        else:
            clean = {}
            for mono, c in coeffs.items():
                c = field.coerce(c)
                if field.is_zero(c):
                    continue
                a0, a1, b0, b1, b2 = mono
                if a0 + a1 != tdeg or b0 + b1 + b2 != xdeg:
                    raise GradingError(
                        f"monomial {mono} violates bidegree ({tdeg}, {xdeg})"
                    )
                if min(mono) < 0:
                    raise GradingError(f"negative exponent in {mono}")
                clean[tuple(mono)] = c
            self.coeffs = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field, tdeg, xdeg):
        return cls(field, tdeg, xdeg, {}, _clean=True)

    @classmethod
    def monomial(cls, field, mono, coeff=1):
        a0, a1, b0, b1, b2 = mono
        return cls(field, a0 + a1, b0 + b1 + b2, {tuple(mono): coeff})

    @classmethod
    def constant(cls, field, c):
        return cls(field, 0, 0, {(0, 0, 0, 0, 0): c})

    # -- basics ------------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    @property
    def bidegree(self):
        return (self.tdeg, self.xdeg)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        if self.field != other.field or self.coeffs != other.coeffs:
            return False
        if self.coeffs:  # both nonzero with equal support
            return self.bidegree == other.bidegree
        return True  # zero polynomials compare equal across declared degrees

    def __hash__(self):
        return hash((self.field, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"BiPoly({self.bidegree}, {self.text()})"

    def leading(self):
        """(monomial, coeff) of the canonical leading term; None when zero."""
        if not self.coeffs:
            return None
        m = max(self.coeffs)
        return m, self.coeffs[m]

    def terms_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: kv[0], reverse=True)

    # -- ring operations ----------------------------------------------------

    def _check_add(self, other):
        ensure_same_field(self.field, other.field)
        if self.coeffs and other.coeffs and self.bidegree != other.bidegree:
            raise GradingError(
                f"bidegree mismatch in sum: {self.bidegree} vs {other.bidegree}"
            )

    def __add__(self, other):
        self._check_add(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        F = self.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = F.add(out.get(m, F.zero), c)
            if F.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return BiPoly(F, self.tdeg, self.xdeg, out, _clean=True)

    def __neg__(self):
        F = self.field
        return BiPoly(
            F,
            self.tdeg,
            self.xdeg,
            {m: F.neg(c) for m, c in self.coeffs.items()},
            _clean=True,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        ensure_same_field(self.field, other.field)
        F = self.field
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = (
                    m1[0] + m2[0],
                    m1[1] + m2[1],
                    m1[2] + m2[2],
                    m1[3] + m2[3],
                    m1[4] + m2[4],
                )
                s = F.add(out.get(m, F.zero), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return BiPoly(
            F, self.tdeg + other.tdeg, self.xdeg + other.xdeg, out, _clean=True
        )

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        if F.is_zero(c):
            return BiPoly.zero(F, self.tdeg, self.xdeg)
        return BiPoly(
            F,
            self.tdeg,
            self.xdeg,
            {m: F.mul(c, v) for m, v in self.coeffs.items()},
            _clean=True,
        )

    def monomial_quotient(self, mono):
        """Exact division by a single monomial; errors on any indivisible term."""
        a0, a1, b0, b1, b2 = mono
        F = self.field
        out = {}
        for m, c in self.coeffs.items():
            q = (m[0] - a0, m[1] - a1, m[2] - b0, m[3] - b1, m[4] - b2)
            if min(q) < 0:
                raise InexactDivision(f"{m} not divisible by {mono}")
            out[q] = c
        td, xd = self.tdeg - (a0 + a1), self.xdeg - (b0 + b1 + b2)
        if self.is_zero():
            td, xd = max(td, 0), max(xd, 0)
        return BiPoly(F, td, xd, out, _clean=True)

    def exact_div(self, g):
        """Quotient self / g when g divides exactly; InexactDivision otherwise."""
        ensure_same_field(self.field, g.field)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        if self.is_zero():
            return BiPoly.zero(
                F, max(self.tdeg - g.tdeg, 0), max(self.xdeg - g.xdeg, 0)
            )
        td, xd = self.tdeg - g.tdeg, self.xdeg - g.xdeg
        if td < 0 or xd < 0:
            raise InexactDivision("degree of divisor exceeds dividend")
        glm, glc = g.leading()
        rem = dict(self.coeffs)
        out = {}
        while rem:
            m = max(rem)
            q = (
                m[0] - glm[0],
                m[1] - glm[1],
                m[2] - glm[2],
                m[3] - glm[3],
                m[4] - glm[4],
            )
            if min(q) < 0:
                raise InexactDivision("leading term not divisible")
            qc = F.div(rem[m], glc)
            out[q] = qc
            for gm, gc in g.coeffs.items():
                mm = (
                    q[0] + gm[0],
                    q[1] + gm[1],
                    q[2] + gm[2],
                    q[3] + gm[3],
                    q[4] + gm[4],
                )
                s = F.sub(rem.get(mm, F.zero), F.mul(qc, gc))
                if F.is_zero(s):
                    rem.pop(mm, None)
                else:
                    rem[mm] = s
        return BiPoly(F, td, xd, out, _clean=True)

    def divides_into(self, f) -> bool:
        """True iff self divides f exactly."""
        try:
            f.exact_div(self)
            return True
        except InexactDivision:
            return False

    # -- substitutions -------------------------------------------------------

    def subst_x(self, u0, u1, u2):
        """G(T, u0(T), u1(T), u2(T)): eliminate X along a parametrization.

        The u_i must be T-forms of one common degree d; the result is a T-form
        of degree tdeg + xdeg*d (zero iff G is in the kernel ideal).
        """
        F = self.field
        for u in (u0, u1, u2):
            ensure_same_field(F, u.field)
            if u.xdeg != 0:
                raise GradingError("substitution targets must be T-forms")
        d = u0.tdeg
        if u1.tdeg != d or u2.tdeg != d:
            raise GradingError("parametrization degrees differ")
        out = BiPoly.zero(F, self.tdeg + self.xdeg * d, 0)
        cache = {(0, 0, 0): BiPoly.constant(F, 1)}

        def upower(b):
            if b in cache:
                return cache[b]
            b0, b1, b2 = b
            if b0:
                prev = upower((b0 - 1, b1, b2))
                val = prev * u0
            elif b1:
                prev = upower((b0, b1 - 1, b2))
                val = prev * u1
            else:
                prev = upower((b0, b1, b2 - 1))
                val = prev * u2
            cache[b] = val
            return val

        for m, c in self.coeffs.items():
            a0, a1, b0, b1, b2 = m
            term = upower((b0, b1, b2)).scale(c)
            shifted = BiPoly(
                F,
                term.tdeg + a0 + a1,
                0,
                {(k[0] + a0, k[1] + a1, 0, 0, 0): v for k, v in term.coeffs.items()},
                _clean=True,
            )
            out = out + shifted
        return out

    def subst_t(self, f0, f1):
        """G(f0(X), f1(X), X): eliminate T along a pair of equal-degree X-forms."""
        F = self.field
        for f in (f0, f1):
            ensure_same_field(F, f.field)
            if f.tdeg != 0:
                raise GradingError("substitution targets must be X-forms")
        ell = f0.xdeg
        if f1.xdeg != ell:
            raise GradingError("degree mismatch between the two X-forms")
        out = BiPoly.zero(F, 0, self.tdeg * ell + self.xdeg)
        cache = {}

        def fpower(f, n):
            key = (id(f), n)
            if key not in cache:
                cache[key] = BiPoly.constant(F, 1) if n == 0 else fpower(f, n - 1) * f
            return cache[key]

        for m, c in self.coeffs.items():
            a0, a1, b0, b1, b2 = m
            term = fpower(f0, a0) * fpower(f1, a1)
            term = term * BiPoly.monomial(F, (0, 0, b0, b1, b2), c)
            out = out + term
        return out

    def compose_x(self, l0, l1, l2):
        """G(T, l0(X), l1(X), l2(X)) for three X-forms of one degree ell.

        With ell = 1 this is a linear change of the X coordinates; the result
        has bidegree (tdeg, xdeg * ell).
        """
        F = self.field
        for l in (l0, l1, l2):
            ensure_same_field(F, l.field)
            if l.tdeg != 0:
                raise GradingError("compose_x targets must be X-forms")
        ell = l0.xdeg
        if l1.xdeg != ell or l2.xdeg != ell:
            raise GradingError("compose_x targets must share one degree")
        out = BiPoly.zero(F, self.tdeg, self.xdeg * ell)
        cache = {(0, 0, 0): BiPoly.constant(F, 1)}

        def lpower(b):
            if b in cache:
                return cache[b]
            b0, b1, b2 = b
            if b0:
                val = lpower((b0 - 1, b1, b2)) * l0
            elif b1:
                val = lpower((b0, b1 - 1, b2)) * l1
            else:
                val = lpower((b0, b1, b2 - 1)) * l2
            cache[b] = val
            return val

        for m, c in self.coeffs.items():
            a0, a1, b0, b1, b2 = m
            term = lpower((b0, b1, b2)).scale(c)
            shifted = BiPoly(
                F,
                self.tdeg,
                term.xdeg,
                {(a0, a1) + k[2:]: v for k, v in term.coeffs.items()},
                _clean=True,
            )
            out = out + shifted
        return out

    # -- coefficient extraction ----------------------------------------------

    def t_coefficient(self, a0, a1):
        """The X-form coefficient of T0^a0 T1^a1."""
        F = self.field
        out = {
            (0, 0) + m[2:]: c
            for m, c in self.coeffs.items()
            if m[0] == a0 and m[1] == a1
        }
        return BiPoly(F, 0, self.xdeg, out, _clean=True)

    def x_coefficient(self, b):
        """The T-form coefficient of X^b, b = (b0, b1, b2)."""
        F = self.field
        out = {
            (m[0], m[1], 0, 0, 0): c for m, c in self.coeffs.items() if m[2:] == tuple(b)
        }
        return BiPoly(F, self.tdeg, 0, out, _clean=True)

    def x_derivative(self, i):
        """Partial derivative with respect to X_i (i in 0..2)."""
        F = self.field
        out = {}
        for m, c in self.coeffs.items():
            e = m[2 + i]
            if e == 0:
                continue
            q = list(m)
            q[2 + i] -= 1
            out[tuple(q)] = F.mul(c, F.coerce(e))
        return BiPoly(F, self.tdeg, max(self.xdeg - 1, 0), out, _clean=True)

    def in_x01_power(self, k) -> bool:
        """Membership in <X0, X1>^k (a monomial ideal: pure support check)."""
        return all(m[2] + m[3] >= k for m in self.coeffs)

    # -- normalization and text ------------------------------------------------

    def normalized(self):
        """Scale so the canonical leading coefficient is 1 (zero stays zero)."""
        lead = self.leading()
        if lead is None:
            return self
        return self.scale(self.field.inv(lead[1]))

    def proportional_to(self, other) -> bool:
        """True iff self = c * other for some nonzero scalar c."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.normalized() == other.normalized()

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        pieces = []
        for m, c in self.terms_sorted():
            cs = F.scalar_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            factors = [
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(_VAR_NAMES, m)
                if e > 0
            ]
            if not factors:
                body = cs
            elif cs == "1":
                body = "*".join(factors)
            else:
                body = cs + "*" + "*".join(factors)
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def to_vector(self, monomials):
        F = self.field
        return [self.coeffs.get(m, F.zero) for m in monomials]


_TERM_RE = re.compile(r"(?=[+-])")


def parse_bipoly(field, s, tdeg=None, xdeg=None) -> BiPoly:
    """Parse the canonical text form back into a BiPoly."""
    s = s.replace(" ", "")
    if s in ("", "0"):
        if tdeg is None or xdeg is None:
            raise GradingError("bidegree required to parse the zero polynomial")
        return BiPoly.zero(field, tdeg, xdeg)
    chunks = [c for c in _TERM_RE.split(s) if c]
    coeffs = {}
    for chunk in chunks:
        sign = 1
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -1
            chunk = chunk[1:]
        coeff = field.one
        expo = [0, 0, 0, 0, 0]
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {chunk!r}")
            if factor[0] in "TX":
                if "^" in factor:
                    var, _, e = factor.partition("^")
                    expo[_VAR_INDEX[var]] += int(e)
                else:
                    expo[_VAR_INDEX[factor]] += 1
            else:
                coeff = field.mul(coeff, field.coerce(factor))
        if sign < 0:
            coeff = field.neg(coeff)
        m = tuple(expo)
        coeffs[m] = field.add(coeffs.get(m, field.zero), coeff)
    td = max(m[0] + m[1] for m in coeffs)
    xd = max(m[2] + m[3] + m[4] for m in coeffs)
    if tdeg is not None and tdeg != td:
        raise GradingError(f"parsed T-degree {td}, expected {tdeg}")
    if xdeg is not None and xdeg != xd:
        raise GradingError(f"parsed X-degree {xd}, expected {xdeg}")
    return BiPoly(field, td, xd, coeffs)


# ---------------------------------------------------------------------------
# T-forms and X-forms
# ---------------------------------------------------------------------------

def t_poly(field, coeff_list) -> BiPoly:
    """T-form from a dense coefficient list: index a carries T0^(d-a) T1^a."""
    d = len(coeff_list) - 1
    if d < 0:
        raise GradingError("empty coefficient list")
    coeffs = {}
    for a, c in enumerate(coeff_list):
        c = field.coerce(c)
        if not field.is_zero(c):
            coeffs[(d - a, a, 0, 0, 0)] = c
    return BiPoly(field, d, 0, coeffs, _clean=True)


def tpoly_dense(tp: BiPoly):
    """Dense coefficient list of a T-form, index = T1 exponent."""
    F = tp.field
    out = [F.zero] * (tp.tdeg + 1)
    for m, c in tp.coeffs.items():
        out[m[1]] = c
    return out


def x_form(field, coeffs_by_xmono, degree=None) -> BiPoly:
    """X-form from a map (b0, b1, b2) -> coeff."""
    coeffs = {}
    deg = degree
    for b, c in coeffs_by_xmono.items():
        c = field.coerce(c)
        if field.is_zero(c):
            continue
        if deg is None:
            deg = sum(b)
        coeffs[(0, 0) + tuple(b)] = c
    return BiPoly(field, 0, 0 if deg is None else deg, coeffs)


def t_monomials(s):
    """T-monomials of degree s in canonical descending order."""
    return [(s - a, a, 0, 0, 0) for a in range(s + 1)]


def x_monomials(j):
    """X-monomials of degree j in canonical descending order."""
    out = [
        (0, 0, b0, b1, j - b0 - b1)
        for b0 in range(j, -1, -1)
        for b1 in range(j - b0, -1, -1)
    ]
    return out


def monomials_of_bidegree(i, j):
    """All (i, j) monomials in canonical descending order."""
    return [
        (a0, i - a0, b0, b1, j - b0 - b1)
        for a0 in range(i, -1, -1)
        for b0 in range(j, -1, -1)
        for b1 in range(j - b0, -1, -1)
    ]


def bidegree_dimension(i, j):
    return (i + 1) * (j + 1) * (j + 2) // 2


# ---------------------------------------------------------------------------
# univariate (T-form) gcd
# ---------------------------------------------------------------------------

def _strip_tpoly(tp: BiPoly):
    """Return (e0, e1, dense core) with tp = T0^e0 T1^e1 * core, core(0) != 0."""
    dense = tpoly_dense(tp)
    F = tp.field
    lo = 0
    while F.is_zero(dense[lo]):
        lo += 1
    hi = len(dense) - 1
    while F.is_zero(dense[hi]):
        hi -= 1
    core = dense[lo : hi + 1]
    e1 = lo                      # power of T1
    e0 = len(dense) - 1 - hi     # power of T0
    return e0, e1, core


def _poly1_mod(a, b, F):
    """Remainder of dense univariate a mod b (ascending coefficients)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        if F.is_zero(a[-1]):
            a.pop()
            continue
        f = F.div(a[-1], lb)
        off = len(a) - 1 - db
        for k in range(db + 1):
            a[off + k] = F.sub(a[off + k], F.mul(f, b[k]))
        a.pop()
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def tpoly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """Monic gcd of two nonzero homogeneous T-forms."""
    ensure_same_field(f.field, g.field)
    F = f.field
    if f.is_zero() or g.is_zero():
        nz = g if f.is_zero() else f
        if nz.is_zero():
            raise ZeroDivisionError("gcd(0, 0) undefined")
        return nz.normalized()
    e0f, e1f, cf = _strip_tpoly(f)
    e0g, e1g, cg = _strip_tpoly(g)
    a, b = cf, cg
    while b:
        a, b = b, _poly1_mod(a, b, F)
    core = a
    e0, e1 = min(e0f, e0g), min(e1f, e1g)
    deg = e0 + e1 + len(core) - 1
    coeffs = {}
    for k, c in enumerate(core):
        if not F.is_zero(c):
            coeffs[(deg - (e1 + k), e1 + k, 0, 0, 0)] = c
    return BiPoly(F, deg, 0, coeffs, _clean=True).normalized()


def tpoly_gcd_many(polys) -> BiPoly:
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        raise ZeroDivisionError("gcd of all-zero family")
    g = nz[0]
    for p in nz[1:]:
        g = tpoly_gcd(g, p)
    return g.normalized()


# ---------------------------------------------------------------------------
# resultant with respect to T
# ---------------------------------------------------------------------------

def poly_det_bareiss(mat):
    """Fraction-free determinant of a square matrix of BiPolys.

    Bareiss condensation: every division is exact over the polynomial ring
    (entries are kept as minors of the original matrix).
    """
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    F = mat[0][0].field
    m = [list(row) for row in mat]
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k].is_zero():
            pr = next(
                (r for r in range(k + 1, n) if not m[r][k].is_zero()), None
            )
            if pr is None:
                td = sum(m[r][r].tdeg for r in range(n))
                xd = sum(m[r][r].xdeg for r in range(n))
                return BiPoly.zero(F, max(td, 0), max(xd, 0))
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else num.exact_div(prev)
            m[i][k] = BiPoly.zero(F, 0, 0)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant_t(f: BiPoly, g: BiPoly) -> BiPoly:
    """Sylvester resultant eliminating T; an X-form of degree s2*j1 + s1*j2."""
    ensure_same_field(f.field, g.field)
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    s1, j1 = f.tdeg, f.xdeg
    s2, j2 = g.tdeg, g.xdeg
    if s1 < 1 or s2 < 1:
        raise GradingError("resultant requires positive T-degrees")
    F = f.field
    n = s1 + s2
    fc = [f.t_coefficient(s1 - a, a) for a in range(s1 + 1)]
    gc = [g.t_coefficient(s2 - a, a) for a in range(s2 + 1)]
    # block order (g shifts on top) fixed so that the resultant of two linear
    # moving lines a*T0 + b*T1, c*T0 + d*T1 comes out as b*c - a*d = +det[[c,d],[a,b]]
    rows = []
    for r in range(s1):
        row = [BiPoly.zero(F, 0, j2) for _ in range(n)]
        for a in range(s2 + 1):
            row[r + a] = gc[a]
        rows.append(row)
    for r in range(s2):
        row = [BiPoly.zero(F, 0, j1) for _ in range(n)]
        for a in range(s1 + 1):
            row[r + a] = fc[a]
        rows.append(row)
    det = poly_det_bareiss(rows)
    want = s2 * j1 + s1 * j2
    if not det.is_zero() and det.xdeg != want:
        raise GradingError(
            f"resultant degree {det.xdeg}, expected {want} (internal error)"
        )
    if det.is_zero():
        det = BiPoly.zero(F, 0, want)
    return det


# ---------------------------------------------------------------------------
# X-form gcd (via sympy) and squarefree part
# ---------------------------------------------------------------------------

def _to_sympy(xp: BiPoly):
    import sympy

    from .fields import PrimeField

    X = sympy.symbols("X0 X1 X2")
    dom = sympy.GF(xp.field.p) if isinstance(xp.field, PrimeField) else sympy.QQ
    terms = {}
    for m, c in xp.coeffs.items():
        if isinstance(xp.field, PrimeField):
            terms[m[2:]] = int(c)
        else:
            terms[m[2:]] = sympy.Rational(c.numerator, c.denominator)
    return sympy.Poly.from_dict(terms, *X, domain=dom), X, dom


def xpoly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """Monic gcd of two X-forms (delegated to sympy's multivariate gcd)."""
    ensure_same_field(f.field, g.field)
    F = f.field
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    pf, X, dom = _to_sympy(f)
    pg, _, _ = _to_sympy(g)
    h = pf.gcd(pg)
    coeffs = {}
    from .fields import PrimeField

    for mono, c in h.terms():
        if isinstance(F, PrimeField):
            val = int(c) % F.p
        else:
            from fractions import Fraction

            val = Fraction(int(c.p), int(c.q))
        coeffs[(0, 0) + tuple(mono)] = val
    deg = h.total_degree()
    return BiPoly(F, 0, deg, coeffs).normalized()
