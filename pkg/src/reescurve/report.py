"""End-to-end generator reports: run a pipeline, verify everything, serialize.

A report records the curve, its invariants (mu, properness degree,
singularity class), the assembled minimal generators with provenance labels,
a per-generator verification matrix, and the brute-force minimal-generator
table cross-check.  Reports round-trip through JSON (schema 1) and can be
re-verified from the file alone.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from .errors import PreconditionError
from .fields import DEFAULT_PRIME, PrimeField, Rationals, field_from_spec
from .linalg import RowReducer
from .oracle import Oracle, ideal_piece_membership
from .poly import BiPoly, monomials_of_bidegree, resultant_t, tpoly_dense
from .syzygy import (
    NOT_APPLICABLE,
    Parametrization,
    VERY_SINGULAR,
    classify_singularity,
    implicit_equation,
    mu_basis,
    parametrization,
)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# curve (de)serialization
# ---------------------------------------------------------------------------

def curve_to_json(par: Parametrization) -> dict:
    F = par.field
    return {
        "field": F.name,
        "d": par.d,
        "u0": [F.scalar_str(c) for c in tpoly_dense(par.u0)],
        "u1": [F.scalar_str(c) for c in tpoly_dense(par.u1)],
        "u2": [F.scalar_str(c) for c in tpoly_dense(par.u2)],
    }


def curve_from_json(doc: dict, field_override=None) -> Parametrization:
    field = field_override or field_from_spec(doc["field"])
    lists = []
    for key in ("u0", "u1", "u2"):
        if key not in doc:
            raise PreconditionError("curve_input", f"missing {key}")
        lists.append([field.coerce(c) for c in doc[key]])
    if len({len(l) for l in lists}) != 1:
        raise PreconditionError("curve_input", "u0, u1, u2 lengths differ")
    if "d" in doc and doc["d"] != len(lists[0]) - 1:
        raise PreconditionError(
            "curve_input", f"declared d={doc['d']} but lists have length {len(lists[0])}"
        )
    return parametrization(field, *lists)


def mirror_to_prime_field(par: Parametrization, p: int = DEFAULT_PRIME) -> Parametrization:
    """Reduce a rational curve mod p (used to run the big table cross-check)."""
    F = PrimeField(p)
    return parametrization(
        F,
        *[[F.coerce(c) for c in tpoly_dense(u)] for u in par.triple],
    )


# ---------------------------------------------------------------------------
# report structures
# ---------------------------------------------------------------------------

@dataclass
class GeneratorRecord:
    bidegree: tuple
    label: str
    text: str
    checks: dict

    @property
    def verified(self) -> bool:
        return all(self.checks.values())


@dataclass
class GeneratorReport:
    curve: dict
    d: int
    mu: int
    properness_degree: int
    singularity: dict
    generators: list
    table_cells: list
    table_field: str
    table_box: tuple
    verdicts: dict
    notes: list = dc_field(default_factory=list)
    timings: dict = dc_field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(self.verdicts.values()) and all(g.verified for g in self.generators)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": "gens",
            "curve": self.curve,
            "d": self.d,
            "mu": self.mu,
            "properness_degree": self.properness_degree,
            "singularity": self.singularity,
            "generators": [
                {
                    "bidegree": list(g.bidegree),
                    "label": g.label,
                    "poly": g.text,
                    "checks": g.checks,
                    "verified": g.verified,
                }
                for g in self.generators
            ],
            "oracle_table": {
                "field": self.table_field,
                "imax": self.table_box[0],
                "jmax": self.table_box[1],
                "cells": [list(c) for c in self.table_cells],
            },
            "verdicts": self.verdicts,
            "all_pass": self.all_pass,
            "notes": self.notes,
            "timings": self.timings,
        }


# ---------------------------------------------------------------------------
# verification helpers
# ---------------------------------------------------------------------------

def _kernel_span_contains(orc: Oracle, g: BiPoly) -> bool:
    i, j = g.bidegree
    data = orc.kernel_basis(i, j)
    if not data.basis:
        return False
    F = g.field
    monomials = monomials_of_bidegree(i, j)
    red = RowReducer(F, len(monomials))
    red.add_rows([b.to_vector(monomials) for b in data.basis])
    return red.contains(g.to_vector(monomials))


def _independent_mod(first: list, modulus: list) -> bool:
    """Are the given same-bidegree forms K-independent modulo span of monomial
    multiples of the modulus generators?"""
    if not first:
        return True
    F = first[0].field
    i, j = first[0].bidegree
    monomials = monomials_of_bidegree(i, j)
    red = RowReducer(F, len(monomials))
    for gen in modulus:
        ig, jg = gen.bidegree
        if ig > i or jg > j:
            continue
        for m in monomials_of_bidegree(i - ig, j - jg):
            red.add_row((BiPoly.monomial(F, m) * gen).to_vector(monomials))
    base = red.rank
    red.add_rows([f.to_vector(monomials) for f in first])
    return red.rank == base + len(first)


# ---------------------------------------------------------------------------
# report construction
# ---------------------------------------------------------------------------

def build_report(
    par: Parametrization,
    *,
    mirror_prime: int = DEFAULT_PRIME,
    check_resultants: bool = True,
    check_morley: bool = True,
    check_kernel_span: bool = True,
    with_table: bool = True,
) -> GeneratorReport:
    from . import mu2mild, mu2sing

    t_start = time.perf_counter()
    timings = {}
    F = par.field
    mb = mu_basis(par)
    if mb.mu != 2:
        raise PreconditionError(
            "mu_equals_2", f"generator assembly supports mu = 2 (got mu = {mb.mu})"
        )
    imp = implicit_equation(mb)
    if imp.properness_degree != 1:
        from .errors import ImproperParametrization

        raise ImproperParametrization(imp.properness_degree)
    sing = classify_singularity(mb)
    notes = []
    verdicts = {}
    timings["analysis"] = time.perf_counter() - t_start

    t0 = time.perf_counter()
    if sing.kind == VERY_SINGULAR:
        ctx = mu2sing.very_singular_context(par, mb, sing)
        gens = mu2sing.assemble_very_singular(ctx)
    else:
        if sing.kind == NOT_APPLICABLE:
            notes.append(
                "2*mu = d boundary: emitting the double-point family without "
                "asserting the count formula"
            )
        ctx = mu2mild.mild_context(par, mb, sing)
        gens = mu2mild.assemble_mild(ctx)
    timings["assembly"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    orc = Oracle(par)
    records = []
    for g in gens:
        checks = {
            "substitutes-to-zero": g.poly.subst_x(*par.triple).is_zero(),
        }
        if check_kernel_span:
            checks["in-kernel-span"] = _kernel_span_contains(orc, g.poly)
        records.append(
            GeneratorRecord(
                bidegree=g.bidegree, label=g.label, text=g.poly.text(), checks=checks
            )
        )
    timings["per-generator"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if sing.kind == VERY_SINGULAR:
        _very_singular_verdicts(ctx, gens, verdicts, check_resultants)
    else:
        _mild_verdicts(ctx, gens, verdicts, check_resultants, check_morley)
    timings["identities"] = time.perf_counter() - t0

    table_cells = []
    table_field = ""
    box = (par.d - mb.mu, par.d)
    if with_table:
        t0 = time.perf_counter()
        if isinstance(F, Rationals):
            tab_par = mirror_to_prime_field(par, mirror_prime)
            tab_orc = Oracle(tab_par)
            table_field = tab_par.field.name
            notes.append(
                f"table cross-check computed over the prime-field mirror {table_field}"
            )
        else:
            tab_orc = orc  # reuse the kernel slices cached by the span checks
            table_field = F.name
        table = tab_orc.mingen_table(box[0], box[1])
        table_cells = [(i, j, c) for (i, j), c in sorted(table.counts.items())]
        expected = sorted(g.bidegree for g in gens)
        key = "oracle-table-multiset"
        if sing.kind == NOT_APPLICABLE:
            notes.append(
                f"boundary case: table multiset match = {table.multiset() == expected} (informational)"
            )
        else:
            verdicts[key] = table.multiset() == expected
        hits = table.boundary_hits()
        if hits:
            notes.append(f"nonzero boundary cells in the table box: {hits}")
        timings["oracle-table"] = time.perf_counter() - t0

    sing_doc = {
        "kind": sing.kind,
        "note": sing.note,
    }
    if sing.change is not None:
        sing_doc["change"] = [[F.scalar_str(x) for x in row] for row in sing.change]
    if sing.axial_pair is not None:
        sing_doc["axial_pair"] = [p.text() for p in sing.axial_pair]

    timings["total"] = time.perf_counter() - t_start
    return GeneratorReport(
        curve=curve_to_json(par),
        d=par.d,
        mu=mb.mu,
        properness_degree=imp.properness_degree,
        singularity=sing_doc,
        generators=records,
        table_cells=table_cells,
        table_field=table_field,
        table_box=box,
        verdicts=verdicts,
        notes=notes,
        timings=timings,
    )


def _very_singular_verdicts(ctx, gens, verdicts, check_resultants):
    eq = ctx.implicit.equation
    fam = [g.pipeline_poly for g in gens if "moving-line" in g.label or "family" in g.label]
    fam = fam[1:]  # drop the low moving line; rest is the shift family
    tops = [g.pipeline_poly for g in gens if "top-form" in g.label]
    low = ctx.mb.p
    # the high moving line is the one assembled generator allowed to involve
    # a pure X2 term; everything else lives in <X0, X1>
    verdicts["generators-in-x01-ideal"] = all(
        g.pipeline_poly.in_x01_power(1)
        for g in gens
        if g.label != "high-moving-line"
    )
    k = ctx.k
    emma = []
    if fam:
        # the family climbs one power of <X0,X1> per shift
        for pos, f in enumerate(fam):
            emma.append(f.in_x01_power(pos))
        if ctx.r == -1:
            emma.append(not fam[-1].in_x01_power(k - 1))
    for t in tops:
        emma.append(t.in_x01_power(k - 1))
        emma.append(not t.in_x01_power(k))
    verdicts["power-ideal-memberships"] = all(emma)
    verdicts["family-not-multiple-of-low-line"] = all(
        not ideal_piece_membership(f, [low]) for f in fam
    )
    if check_resultants:
        ok = []
        for f in fam:
            r = resultant_t(low, f)
            ok.append((not r.is_zero()) and r.proportional_to(eq))
        if len(tops) == 2:
            r = resultant_t(tops[0], tops[1])
            ok.append((not r.is_zero()) and r.proportional_to(eq))
        elif len(tops) == 1:
            r = resultant_t(low, tops[0])
            ok.append((not r.is_zero()) and eq.divides_into(r))
        verdicts["resultant-identities"] = all(ok)


def _mild_verdicts(ctx, gens, verdicts, check_resultants, check_morley):
    from .mu2mild import delta_sylvester, minor_family, morley_coeffs, morley_det_check

    F = ctx.field
    d = ctx.d
    deltas = delta_sylvester(ctx)
    t0m = BiPoly.monomial(F, (1, 0, 0, 0, 0))
    t1m = BiPoly.monomial(F, (0, 1, 0, 0, 0))
    pq = [ctx.mb.p, ctx.mb.q]
    verdicts["sylvester-shift-relations"] = all(
        diff.is_zero() or ideal_piece_membership(diff, pq)
        for diff in (
            deltas[(0, 0)] - t0m * deltas[(1, 0)],
            deltas[(0, 0)] - t1m * deltas[(0, 1)],
        )
    )
    verdicts["sylvester-pair-independent-mod-low-line"] = _independent_mod(
        [deltas[(1, 0)], deltas[(0, 1)]], [ctx.mb.p]
    )
    if d >= 5:
        morley = morley_coeffs(ctx)
        indep = []
        dets = []
        for i in range(1, d - 3):
            fam = minor_family(ctx, i, morley)
            indep.append(_independent_mod(fam, [ctx.mb.p]))
            if check_morley:
                _, _, lam = morley_det_check(ctx, i, morley)
                dets.append(not F.is_zero(lam))
        verdicts["minor-families-independent-mod-low-line"] = all(indep)
        if check_morley:
            verdicts["morley-determinants"] = all(dets)


# ---------------------------------------------------------------------------
# verify: re-run a saved report
# ---------------------------------------------------------------------------

def verify_report(saved: dict):
    """Recompute a saved gens report and compare (timings masked).

    Returns (ok, list of differences).
    """
    diffs = []
    if saved.get("schema") != SCHEMA_VERSION:
        return False, [f"unsupported schema {saved.get('schema')!r}"]
    par = curve_from_json(saved["curve"])
    fresh = build_report(par).to_json()
    for key in ("d", "mu", "properness_degree", "all_pass"):
        if fresh[key] != saved.get(key):
            diffs.append(f"{key}: saved {saved.get(key)!r} vs recomputed {fresh[key]!r}")
    if fresh["singularity"].get("kind") != saved.get("singularity", {}).get("kind"):
        diffs.append("singularity kind differs")
    old_gens = [
        (tuple(g["bidegree"]), g["label"], g["poly"]) for g in saved.get("generators", [])
    ]
    new_gens = [
        (tuple(g["bidegree"]), g["label"], g["poly"]) for g in fresh["generators"]
    ]
    if old_gens != new_gens:
        diffs.append("generator lists differ")
    if saved.get("oracle_table", {}).get("cells") != fresh["oracle_table"]["cells"]:
        diffs.append("oracle tables differ")
    if not fresh["all_pass"]:
        diffs.append("recomputed report has failing verdicts")
    return not diffs, diffs
