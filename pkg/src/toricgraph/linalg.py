"""Sparse rank computations, exact over Q or modulo a fixed prime.

Rows are dicts ``{column: value}`` and are eliminated one at a time against
the pivot rows found so far (pivot = leftmost nonzero column).  Boundary
matrices of the complexes used in this package have entries in {-1, 0, 1},
so the exact routine stays in integers and rarely needs a gcd pass.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List

PRIME = 2147483629  # largest prime below 2**31

Row = Dict[int, int]


def rank_exact(rows: Iterable[Row]) -> int:
    """Rank over the rationals (fraction-free integer elimination)."""
    pivots: Dict[int, Dict[int, int]] = {}
    rank = 0
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        if any(isinstance(v, Fraction) for v in r.values()):
            den = 1
            for v in r.values():
                den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
            r = {c: int(v * den) for c, v in r.items()}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = r
                rank += 1
                break
            a, b = piv[col], r[col]
            if a in (1, -1):
                f = b * a
                for c, v in piv.items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        del r[c]
                continue
            new = {}
            for c in r.keys() | piv.keys():
                nv = a * r.get(c, 0) - b * piv.get(c, 0)
                if nv:
                    new[c] = nv
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            r = {c: v // g for c, v in new.items()} if g > 1 else new
    return rank


def rank_mod_p(rows: Iterable[Row], p: int = PRIME) -> int:
    """Rank over GF(p).  Equals the rational rank except for finitely many p."""
    pivots: Dict[int, Dict[int, int]] = {}
    rank = 0
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                inv = pow(r[col], p - 2, p)
                pivots[col] = {c: v * inv % p for c, v in r.items()}
                rank += 1
                break
            f = r[col]
            for c, v in piv.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return rank


def rank(rows: List[Row], modular: bool = False) -> int:
    return rank_mod_p(rows) if modular else rank_exact(rows)
