"""Comparison table: implemented families checked end to end, plus closed-form
counts of other known locally indistinguishable constructions."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .families import (
    FIXED_DIMS,
    CompletionError,
    Family,
    complete_with_grid,
    count_formula,
    generate,
    in_region,
    is_complete_basis,
)
from .nonlocality import RANK_TOL, certify_nonlocal
from .states import ORTHO_TOL, validate_set

REPORT_FAMILIES = (Family.NOVEL, Family.SHI_SUBSET) + tuple(FIXED_DIMS)


@dataclass(frozen=True)
class FamilyRow:
    family: str
    m: int
    n: int
    formula: int
    generated: int
    orthogonal: bool
    certified: bool
    completable: bool


@dataclass(frozen=True)
class FormulaRow:
    construction: str
    system: str
    formula: str
    constraint: str
    type1: str
    type2: str
    count: int | None


# name, system, formula text, constraint text, count(m, n) or None outside the region
_SQUARE = "d x d"
_RECT = "m x n"


def _square(pred, f):
    return lambda m, n: f(m) if m == n and pred(m) else None


def _rect(pred, f):
    return lambda m, n: f(m, n) if pred(m, n) else None


REFERENCE_ROWS = (
    ("bennett1999", _SQUARE, "9", "d = 3", "complete", "-", _square(lambda d: d == 3, lambda d: 9)),
    ("zhang2014", _SQUARE, "d^2", "d odd, d >= 3", "complete", "-",
     _square(lambda d: d % 2 == 1 and d >= 3, lambda d: d * d)),
    ("chb1999", _SQUARE, "3", "d = 3", "incomplete", "unextendible", _square(lambda d: d == 3, lambda d: 3)),
    ("divincenzo2003", _SQUARE, "d^2-2d+1", "d even, d >= 4", "incomplete", "unextendible",
     _square(lambda d: d % 2 == 0 and d >= 4, lambda d: d * d - 2 * d + 1)),
    ("halder2019", _SQUARE, "d^2-2d+2", "d odd, d >= 3", "incomplete", "unextendible",
     _square(lambda d: d % 2 == 1 and d >= 3, lambda d: d * d - 2 * d + 2)),
    ("shi2020", _RECT, "mn-4*floor((m-1)/2)", "3 <= m <= n", "incomplete", "unextendible",
     _rect(lambda m, n: 3 <= m <= n, lambda m, n: m * n - 4 * ((m - 1) // 2))),
    ("sixia2015", _SQUARE, "2d-1", "d >= 3", "incomplete", "uncompletable",
     _square(lambda d: d >= 3, lambda d: 2 * d - 1)),
    ("wang2015-square", _SQUARE, "6d-9", "d odd, d >= 3", "incomplete", "completable",
     _square(lambda d: d % 2 == 1 and d >= 3, lambda d: 6 * d - 9)),
    ("zhang2015", _SQUARE, "4d-4", "d >= 3", "incomplete", "completable",
     _square(lambda d: d >= 3, lambda d: 4 * d - 4)),
    ("xzhang2016", _RECT, "mn", "m, n >= 3", "incomplete", "completable",
     _rect(lambda m, n: m >= 3 and n >= 3, lambda m, n: m * n)),
    ("wang2015", _RECT, "3m+3n-9", "m, n >= 3", "incomplete", "completable",
     _rect(lambda m, n: m >= 3 and n >= 3, lambda m, n: 3 * m + 3 * n - 9)),
    ("zhang2016-completable", _RECT, "3n+m-4", "3 <= m <= n", "incomplete", "completable",
     _rect(lambda m, n: 3 <= m <= n, lambda m, n: 3 * n + m - 4)),
    ("zhang2016-uncompletable", _RECT, "2n-1", "3 <= m <= n", "incomplete", "uncompletable",
     _rect(lambda m, n: 3 <= m <= n, lambda m, n: 2 * n - 1)),
    ("wang2017", _RECT, "2n-1", "4 <= m <= n", "incomplete", "uncompletable",
     _rect(lambda m, n: 4 <= m <= n, lambda m, n: 2 * n - 1)),
    ("zhang2017", _RECT, "3m+3n-8", "4 <= m <= n", "incomplete", "uncompletable",
     _rect(lambda m, n: 4 <= m <= n, lambda m, n: 3 * m + 3 * n - 8)),
    ("this-package (novel, shi)", _RECT, "2n+2m-4", "m, n >= 3", "incomplete", "completable",
     _rect(lambda m, n: m >= 3 and n >= 3, lambda m, n: 2 * n + 2 * m - 4)),
)


def family_row(family: Family, m: int, n: int, tol=ORTHO_TOL, rank_tol=RANK_TOL) -> FamilyRow:
    s = generate(family, m, n)
    orthogonal = validate_set(s, tol).valid
    certified = orthogonal and certify_nonlocal(s, tol, rank_tol).certified_nonlocal
    try:
        completable = is_complete_basis(complete_with_grid(s, tol), rank_tol)
    except CompletionError:
        completable = False
    return FamilyRow(
        family.value, m, n, count_formula(family, m, n), len(s), orthogonal, certified, completable
    )


def family_rows(m_max: int, n_max: int, tol=ORTHO_TOL, rank_tol=RANK_TOL) -> list[FamilyRow]:
    if m_max < 3 or n_max < 3:
        raise ValueError("m_max and n_max must be >= 3")
    rows = []
    for fam in REPORT_FAMILIES:
        for m in range(3, m_max + 1):
            for n in range(3, n_max + 1):
                if in_region(fam, m, n):
                    rows.append(family_row(fam, m, n, tol, rank_tol))
    return rows


def formula_rows(m: int, n: int) -> list[FormulaRow]:
    """Reference counts evaluated at ``(m, n)``; square constructions use ``d = m = n``."""
    return [
        FormulaRow(name, system, text, constraint, t1, t2, count(m, n))
        for name, system, text, constraint, t1, t2, count in REFERENCE_ROWS
    ]


def build_report(m_max: int, n_max: int, tol=ORTHO_TOL, rank_tol=RANK_TOL) -> dict:
    return {
        "families": [asdict(r) for r in family_rows(m_max, n_max, tol, rank_tol)],
        "formula_only": {
            "m": m_max,
            "n": n_max,
            "rows": [asdict(r) for r in formula_rows(m_max, n_max)],
        },
    }


def _yn(x: bool) -> str:
    return "yes" if x else "no"


def format_report(report: dict) -> str:
    lines = [
        f"{'family':<16}{'m':>3}{'n':>3}{'formula':>9}{'generated':>11}"
        f"{'orthogonal':>12}{'certified':>11}{'completable':>13}"
    ]
    for r in report["families"]:
        lines.append(
            f"{r['family']:<16}{r['m']:>3}{r['n']:>3}{r['formula']:>9}{r['generated']:>11}"
            f"{_yn(r['orthogonal']):>12}{_yn(r['certified']):>11}{_yn(r['completable']):>13}"
        )
    fo = report["formula_only"]
    lines.append("")
    lines.append(f"formula-only rows at m={fo['m']}, n={fo['n']} (d = m = n for square systems)")
    lines.append(f"{'construction':<28}{'system':<8}{'count':>7}  {'formula':<22}{'type 1':<12}type 2")
    for r in fo["rows"]:
        count = "n/a" if r["count"] is None else str(r["count"])
        lines.append(
            f"{r['construction']:<28}{r['system']:<8}{count:>7}  {r['formula']:<22}"
            f"{r['type1']:<12}{r['type2']}"
        )
    return "\n".join(lines)
