"""Text formats for Lie algebras: Salamon tuples and a line-based bracket format.

Salamon tuples list ``de^k`` slot by slot, e.g. ``(0,0,0,0,12,34)``.  A digit pair
``ab`` in slot ``k`` adds ``e^a ∧ e^b`` to ``de^k``; when ``a > b`` this equals
``-e^{ba}``, so ``42`` contributes ``-e^{24}``.  With ``de^k = -Σ a_ij^k e^{ij}``
the tuple ``(0,0,0,0,12,34)`` gives ``[e1, e2] = -e5``.  Many references use the
opposite sign; it does not change the isomorphism class, only the basis.

The extended format handles larger dimensions and arbitrary coefficients::

    dim 10 field Q
    basis e1 f1 e2 f2 e3 f3 z1 z2 c1 c2   # optional
    d 9 = [1,2] + [3,4]
    d 10 = 2*[1,3] - 1/2*[2,4]

Each ``[i,j]`` stands for ``e^i ∧ e^j`` (1-based); ``#`` starts a comment.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DimensionTooLarge, SalamonSyntaxError, ScalarSyntaxError
from .fields import format_scalar, normalize, parse_scalar
from .lie import LieAlgebra


def salamon_terms(text: str) -> list[list[tuple[int, int, int]]]:
    """Parse a tuple into per-slot lists of ``(sign, a, b)`` with 1-based digits."""
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos] in " \t":
            pos += 1

    def fail(msg):
        raise SalamonSyntaxError(msg, text, pos)

    skip()
    if pos >= n or text[pos] != "(":
        fail("expected '('")
    pos += 1
    entries: list = []
    while True:
        skip()
        terms: list = []
        if pos < n and text[pos] == "0" and (pos + 1 >= n or not text[pos + 1].isdigit()):
            pos += 1
        else:
            sign = 1
            if pos < n and text[pos] in "+-":
                sign = -1 if text[pos] == "-" else 1
                pos += 1
                skip()
            while True:
                if pos + 1 >= n or not (text[pos].isdigit() and text[pos + 1].isdigit()):
                    if pos < n and text[pos].isdigit():
                        pos += 1  # point at the offending second character
                    fail("expected a two-digit term")
                a, b = int(text[pos]), int(text[pos + 1])
                if a == 0 or b == 0:
                    fail("basis indices start at 1")
                if a == b:
                    fail(f"repeated index in term {a}{b}")
                if pos + 2 < n and text[pos + 2].isdigit():
                    pos += 2
                    fail("indices are single digits; use the extended format for dimension above 9")
                terms.append((sign, a, b))
                pos += 2
                skip()
                if pos < n and text[pos] in "+-":
                    sign = -1 if text[pos] == "-" else 1
                    pos += 1
                    skip()
                    continue
                break
        entries.append(terms)
        skip()
        if pos < n and text[pos] == ",":
            pos += 1
            continue
        if pos < n and text[pos] == ")":
            pos += 1
            break
        fail("expected ',' or ')'")
    skip()
    if pos != n:
        fail("unexpected trailing text")
    return entries


def _constants_from_forms(n: int, forms: list[dict]) -> dict:
    """Convert ``de^k = Σ c e^{ij}`` (0-based, i<j) into bracket constants."""
    consts: dict = {}
    for k, form in enumerate(forms):
        for (i, j), c in form.items():
            c = normalize(c)
            if c:
                consts.setdefault((i, j), {})[k] = -c
    return consts


def parse_salamon(text: str, *, name: str | None = None, validate: bool = True) -> LieAlgebra:
    entries = salamon_terms(text)
    n = len(entries)
    forms: list[dict] = []
    for k, terms in enumerate(entries):
        form: dict = {}
        for sign, a, b in terms:
            if a > n or b > n:
                raise DimensionTooLarge(f"index {max(a, b)} exceeds dimension {n} in slot {k + 1}")
            i, j = a - 1, b - 1
            if i > j:
                i, j, sign = j, i, -sign
            form[(i, j)] = form.get((i, j), 0) + sign
        forms.append({p: Fraction(c) for p, c in form.items() if c})
    return LieAlgebra(n, _constants_from_forms(n, forms), name=name, validate=validate)


def dual_forms(g: LieAlgebra) -> list[dict]:
    """``de^k`` as ``{(i, j): c}`` with 0-based ``i < j``."""
    forms = [dict() for _ in range(g.dim)]
    for (i, j), row in g.constants.items():
        for k, c in row.items():
            forms[k][(i, j)] = -c
    return forms


def serialize_salamon(g: LieAlgebra) -> str:
    """Salamon tuple for algebras with dim ≤ 9 and coefficients ±1."""
    if g.dim > 9:
        raise DimensionTooLarge("Salamon notation is limited to dimension 9")
    slots = []
    for form in dual_forms(g):
        if not form:
            slots.append("0")
            continue
        parts = []
        for (i, j) in sorted(form):
            c = form[(i, j)]
            if c not in (1, -1):
                raise ValueError("Salamon notation needs coefficients ±1")
            parts.append(("-" if c == -1 else "+") + f"{i + 1}{j + 1}")
        s = "".join(parts)
        slots.append(s[1:] if s.startswith("+") else s)
    return "(" + ",".join(slots) + ")"


_TERM = re.compile(r"\[\s*(\w+)\s*,\s*(\w+)\s*\]")


def _index_of(tok: str, names, lineno: int, full_text: str, where: int) -> int:
    if tok.isdigit():
        return int(tok)
    if names and tok in names:
        return names.index(tok) + 1
    raise SalamonSyntaxError(f"line {lineno}: unknown basis element {tok!r}", full_text, where)


def _parse_rhs(rhs: str, n: int, lineno: int, offset: int, full_text: str, names=None) -> dict:
    """Parse ``c*[i,j] ± c*[i,j] ...`` into ``{(i, j): c}``; i, j are 1-based or basis names."""
    form: dict = {}
    text = rhs.strip()
    if text in ("", "0"):
        return form
    # split on top-level +/- preceding a coefficient or bracket (not inside parentheses)
    pieces = []
    depth = 0
    start = 0
    for idx, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and idx > 0:
            prev = text[:idx].rstrip()
            if prev.endswith("]"):
                pieces.append((start, text[start:idx]))
                start = idx
    pieces.append((start, text[start:]))
    for start, piece in pieces:
        m = None
        for m in _TERM.finditer(piece):
            pass
        where = offset + start
        if m is None or piece[m.end():].strip():
            raise SalamonSyntaxError(f"line {lineno}: expected a term like c*[i,j]", full_text, where)
        coef_txt = piece[:m.start()].strip()
        sign = 1
        if coef_txt.startswith("+"):
            coef_txt = coef_txt[1:].strip()
        elif coef_txt.startswith("-"):
            sign = -1
            coef_txt = coef_txt[1:].strip()
        if coef_txt.endswith("*"):
            coef_txt = coef_txt[:-1].strip()
        elif coef_txt:
            raise SalamonSyntaxError(f"line {lineno}: missing '*' before bracket", full_text, where)
        try:
            c = parse_scalar(coef_txt) if coef_txt else Fraction(1)
        except ScalarSyntaxError as exc:
            raise SalamonSyntaxError(f"line {lineno}: bad coefficient ({exc})", full_text, where) from None
        a, b = (_index_of(m.group(k), names, lineno, full_text, where) for k in (1, 2))
        if not (1 <= a <= n and 1 <= b <= n):
            raise DimensionTooLarge(f"line {lineno}: index out of range 1..{n}")
        if a == b:
            raise SalamonSyntaxError(f"line {lineno}: repeated index [{a},{b}]", full_text, where)
        i, j = a - 1, b - 1
        if i > j:
            i, j, sign = j, i, -sign
        form[(i, j)] = normalize(form.get((i, j), 0) + (c if sign > 0 else -c))
    return {p: c for p, c in form.items() if c}


def parse_extended(text: str, *, name: str | None = None, validate: bool = True) -> LieAlgebra:
    n = None
    names = None
    forms: list | None = None
    offset = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line_start = offset
        offset += len(raw) + 1
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = re.fullmatch(r"dim\s+(\d+)(?:\s+field\s+(Q|Q\(t\)))?", line)
            if not m:
                raise SalamonSyntaxError(f"line {lineno}: expected header 'dim N field Q|Q(t)'", text, line_start)
            n = int(m.group(1))
            forms = [dict() for _ in range(n)]
            continue
        if line.startswith("basis"):
            names = line.split()[1:]
            if len(names) != n:
                raise SalamonSyntaxError(f"line {lineno}: basis lists {len(names)} names for dimension {n}",
                                         text, line_start)
            continue
        m = re.fullmatch(r"d\s*(\w+)\s*=(.*)", line)
        if not m:
            raise SalamonSyntaxError(f"line {lineno}: expected 'd k = ...'", text, line_start)
        key = m.group(1)
        if key.isdigit():
            k = int(key) - 1
        elif names and key in names:
            k = names.index(key)
        else:
            raise SalamonSyntaxError(f"line {lineno}: unknown basis element {key!r}", text, line_start)
        if not 0 <= k < n:
            raise DimensionTooLarge(f"line {lineno}: index {k + 1} out of range 1..{n}")
        rhs_off = line_start + raw.index("=") + 1
        for p, c in _parse_rhs(m.group(2), n, lineno, rhs_off, text, names).items():
            forms[k][p] = normalize(forms[k].get(p, 0) + c)
    if n is None:
        raise SalamonSyntaxError("empty input: expected header 'dim N field Q|Q(t)'", text, 0)
    return LieAlgebra(n, _constants_from_forms(n, forms), names=names, name=name, validate=validate)


def serialize_extended(g: LieAlgebra) -> str:
    lines = [f"dim {g.dim} field {g.field}"]
    if g.names != [f"e{k + 1}" for k in range(g.dim)]:
        lines.append("basis " + " ".join(g.names))
    for k, form in enumerate(dual_forms(g)):
        if not form:
            continue
        parts = []
        for (i, j) in sorted(form):
            c = form[(i, j)]
            cs = format_scalar(c)
            if c == 1:
                parts.append(f"+ [{i + 1},{j + 1}]")
            elif c == -1:
                parts.append(f"- [{i + 1},{j + 1}]")
            else:
                parts.append(f"+ ({cs})*[{i + 1},{j + 1}]")
        rhs = " ".join(parts)
        rhs = rhs[2:] if rhs.startswith("+ ") else "-" + rhs[2:]
        lines.append(f"d {k + 1} = {rhs}")
    return "\n".join(lines) + "\n"


def parse_algebra_text(text: str, *, name: str | None = None, validate: bool = True) -> LieAlgebra:
    """Dispatch on the first non-blank character: ``(`` for Salamon, otherwise extended."""
    stripped = text.lstrip()
    if stripped.startswith("("):
        return parse_salamon(text.strip(), name=name, validate=validate)
    return parse_extended(text, name=name, validate=validate)
