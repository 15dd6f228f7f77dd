"""Exact rank of sparse matrices.

Rows are dicts ``{column: value}``.  Three elimination backends:

* integers (rows over Q are scaled to Z first): fraction-free elimination with
  content reduction, which keeps entries small;
* Gaussian integers, stored as ``(re, im)`` int pairs, with the same scheme;
* a generic field backend for anything else (e.g. Q(t)).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .fields import Gaussian, RationalFunction, normalize


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# -- integer backend --------------------------------------------------------

def _int_row(row: Mapping) -> dict:
    den = 1
    for v in row.values():
        den = _lcm(den, Fraction(v).denominator)
    out = {c: int(Fraction(v) * den) for c, v in row.items() if v}
    return _int_primitive(out)


def _int_primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _rank_int(rows: list[dict]) -> int:
    pivots: dict = {}
    for row in rows:
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = row
                break
            a, b = p[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {}
            for c, v in row.items():
                w = a * v
                if w:
                    new[c] = w
            for c, v in p.items():
                w = new.get(c, 0) - b * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = _int_primitive(new)
    return len(pivots)


# -- Gaussian-integer backend -------------------------------------------------

def _parts(v):
    if isinstance(v, Gaussian):
        return Fraction(v.re), Fraction(v.im)
    return Fraction(v), Fraction(0)


def _gauss_row(row: Mapping) -> dict:
    den = 1
    parts = {}
    for c, v in row.items():
        if not v:
            continue
        re, im = _parts(v)
        parts[c] = (re, im)
        den = _lcm(_lcm(den, re.denominator), im.denominator)
    return _gauss_primitive({c: (int(re * den), int(im * den)) for c, (re, im) in parts.items()})


def _gauss_primitive(row: dict) -> dict:
    g = 0
    for a, b in row.values():
        g = gcd(gcd(g, a), b)
        if g == 1:
            return row
    if g > 1:
        return {c: (a // g, b // g) for c, (a, b) in row.items()}
    return row


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _rank_gauss(rows: list[dict]) -> int:
    pivots: dict = {}
    for row in rows:
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = row
                break
            a, b = p[lead], row[lead]
            # strip common integer factor of the multipliers
            g = gcd(gcd(a[0], a[1]), gcd(b[0], b[1]))
            if g > 1:
                a = (a[0] // g, a[1] // g)
                b = (b[0] // g, b[1] // g)
            new = {}
            for c, v in row.items():
                w = _gmul(a, v)
                if w != (0, 0):
                    new[c] = w
            for c, v in p.items():
                bv = _gmul(b, v)
                old = new.get(c, (0, 0))
                w = (old[0] - bv[0], old[1] - bv[1])
                if w != (0, 0):
                    new[c] = w
                else:
                    new.pop(c, None)
            row = _gauss_primitive(new)
    return len(pivots)


# -- generic field backend ------------------------------------------------------

def _rank_field(rows: list[dict]) -> int:
    pivots: dict = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                inv = 1 / row[lead]
                pivots[lead] = {c: normalize(v * inv) for c, v in row.items()}
                break
            f = row[lead]
            new = dict(row)
            for c, v in p.items():
                w = normalize(new.get(c, 0) - f * v)
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = new
    return len(pivots)


def _kind(rows: Iterable[Mapping]) -> str:
    kind = "int"
    for row in rows:
        for v in row.values():
            if isinstance(v, RationalFunction):
                return "field"
            if isinstance(v, Gaussian):
                if isinstance(v.re, RationalFunction) or isinstance(v.im, RationalFunction):
                    return "field"
                kind = "gauss"
    return kind


def sparse_rank(rows: Iterable[Mapping]) -> int:
    rows = [r for r in rows if any(r.values())]
    if not rows:
        return 0
    kind = _kind(rows)
    if kind == "int":
        return _rank_int([_int_row(r) for r in rows])
    if kind == "gauss":
        return _rank_gauss([_gauss_row(r) for r in rows])
    return _rank_field(rows)


def columns_rank(cols: Mapping[int, Mapping]) -> int:
    """Rank of a matrix stored column-wise; rank is the same for rows or columns."""
    return sparse_rank(cols.values())
