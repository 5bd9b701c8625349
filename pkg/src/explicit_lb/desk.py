"""Small-modulus table of |L'/L(1, chi)| and |b(chi)| next to the bound formulas.

The bounds are theorems only for q >= 10^30. For q <= a few hundred the
table records what the formulas give and what the L-functions actually do;
nothing is asserted, and every report says so.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

from .arith_primes import EULER_GAMMA
from .bounds import stated_rhs
from .characters import primitive_characters
from .errors import DomainError
from .lfunctions import log_deriv_L

DESK_NOTE = ("exploratory: the bound formulas are evaluated far below q = 10^30, "
             "where they make no claim; no inequality is asserted")


def _rows_for_modulus(q: int) -> list[dict]:
    chars = primitive_characters(q)
    logderiv = {chi.label: log_deriv_L(1.0, chi) for chi in chars}
    shift = math.log(q / (2 * math.pi)) - EULER_GAMMA
    L = math.log(q)
    thm = stated_rhs("thm11", L)
    cor = stated_rhs("cor12", L)
    rows = []
    for chi in chars:
        r = logderiv[chi.label]
        rb = logderiv[chi.conjugate().label]
        b = -rb.value - shift
        rows.append({
            "label": chi.label,
            "q": q,
            "parity": chi.parity_a,
            "real": bool(chi.is_real),
            "abs_logderiv": abs(r.value),
            "logderiv_error": r.est_error,
            "abs_b": abs(b),
            "b_error": rb.est_error,
            "thm11_formula": thm,
            "cor12_formula": cor,
            # the thm11 formula is negative for the smallest q, so differences, not ratios
            "logderiv_excess": abs(r.value) - thm,
            "b_excess": abs(b) - cor,
        })
    return rows


def desk_report(q_max: int = 200, q_min: int = 3, parallelism: int = 1) -> dict:
    """Every primitive character with q_min <= q <= q_max, one row each."""
    if q_min < 3 or q_max < q_min:
        raise DomainError(f"need 3 <= q_min <= q_max, got {q_min}, {q_max}")
    moduli = range(q_min, q_max + 1)
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            chunks = list(pool.map(_rows_for_modulus, moduli, chunksize=8))
    else:
        chunks = [_rows_for_modulus(q) for q in moduli]
    rows = [row for chunk in chunks for row in chunk]
    top_ld = max(rows, key=lambda r: (r["logderiv_excess"], r["label"]))
    top_b = max(rows, key=lambda r: (r["b_excess"], r["label"]))
    summary = {
        "characters": len(rows),
        "moduli": len(moduli),
        "max_abs_logderiv": max(r["abs_logderiv"] for r in rows),
        "max_abs_b": max(r["abs_b"] for r in rows),
        "max_logderiv_excess": top_ld["logderiv_excess"],
        "max_logderiv_excess_at": top_ld["label"],
        "max_b_excess": top_b["b_excess"],
        "max_b_excess_at": top_b["label"],
        "rows_above_thm11_formula": sum(r["logderiv_excess"] > 0 for r in rows),
        "rows_above_cor12_formula": sum(r["b_excess"] > 0 for r in rows),
    }
    return {
        "claim": False,
        "note": DESK_NOTE,
        "q_range": [q_min, q_max],
        "summary": summary,
        "rows": rows,
    }
