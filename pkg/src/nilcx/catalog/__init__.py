"""Named algebras with complex structures and the results expected of them.

Static entries live in ``entries.json``; two families are generated on demand:

* ``heisenberg(n,m)``: Heisenberg algebra of dimension ``2n+1`` plus ``R^m``;
* ``torus_over_curve(k)``: basis ``e1, e2, z1..z_2k`` with ``[e1, e2] = z_2k``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from ..complex_structure import AlmostComplexStructure
from ..errors import UnknownEntry
from ..lie import LieAlgebra
from ..notation import parse_extended, parse_salamon

SIX_DIMENSIONAL = ["h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8", "h9", "h10", "h11", "h12", "h13",
                   "h14", "h15", "h16", "h19m", "h26p"]
HIGHER = ["badmtbs", "ex2ev", "nilnonnilexam", "exam322", "dim18"]
REPAIRED = {"dim18": "dim18r"}


@dataclass
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    structures: dict = field(default_factory=dict)
    filtrations: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    source: str = ""
    origins: dict = field(default_factory=dict)

    def structure(self, key: str | None = None) -> AlmostComplexStructure:
        if key is None:
            key = next(iter(self.structures))
        try:
            return self.structures[key]
        except KeyError:
            raise UnknownEntry(f"{self.name} has no structure {key!r}") from None

    def filtration(self, key: str):
        from ..bundles import Filtration

        if key not in self.filtrations:
            raise UnknownEntry(f"{self.name} has no filtration {key!r}")
        return Filtration.from_json(self.algebra, self.filtrations[key])

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "algebra": self.algebra.to_json(),
            "source": self.source,
            "structures": {k: J.to_json() for k, J in self.structures.items()},
            "filtrations": self.filtrations,
            "expected": self.expected,
        }


@lru_cache(maxsize=1)
def _raw() -> dict:
    text = resources.files(__package__).joinpath("entries.json").read_text(encoding="utf-8")
    data = json.loads(text)
    return {e["name"]: e for e in data["entries"]}


def _build(raw: dict) -> CatalogEntry:
    name = raw["name"]
    validate = raw.get("validate", True)
    if "salamon" in raw:
        g = parse_salamon(raw["salamon"], name=name, validate=validate)
        source = raw["salamon"]
    else:
        g = parse_extended(raw["extended"], name=name, validate=validate)
        source = raw["extended"]
    structures = {}
    origins = {}
    for key, spec in raw.get("structures", {}).items():
        structures[key] = AlmostComplexStructure.from_json(g, spec, name=key)
        origins[key] = spec.get("origin", "")
    return CatalogEntry(name, g, structures, dict(raw.get("filtrations", {})), dict(raw.get("expected", {})),
                        source, origins)


# ---------------------------------------------------------------------------
# generated families
# ---------------------------------------------------------------------------

def heisenberg(n: int = 2, m: int = 1, signs: tuple | None = None) -> CatalogEntry:
    """``H_{2n+1} ⊕ R^m`` with basis ``x1..xn, y1..yn, c, z1..zm`` and ``[x_i, y_i] = c``.

    When the dimension is even the entry carries the structure ``J x_i = ±y_i``,
    ``J z_{2k-1} = z_{2k}``, ``J c = z_m``.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    names = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["c"] + [f"z{k + 1}" for k in range(m)]
    dim = len(names)
    c = 2 * n
    consts = {(i, n + i): {c: Fraction(1)} for i in range(n)}
    label = f"heisenberg({n},{m})"
    g = LieAlgebra(dim, consts, names=names, name=label)
    structures = {}
    if dim % 2 == 0:
        signs = signs or (1,) * n
        if len(signs) != n:
            raise ValueError("one sign per Heisenberg pair")
        pairs = [[f"x{i + 1}", ("" if s > 0 else "-") + f"y{i + 1}"] for i, s in enumerate(signs)]
        pairs += [[f"z{2 * k + 1}", f"z{2 * k + 2}"] for k in range((m - 1) // 2)]
        pairs.append(["c", f"z{m}"])
        structures["J"] = AlmostComplexStructure.from_action(g, pairs, name="J")
    expected = {"structures": {"J": {"integrable": True, "abelian": True,
                                      "bundle": {"overall": "principal_torus_bundle"}}}} if structures else {}
    return CatalogEntry(label, g, structures, {}, expected, label, {"J": "generated"})


def torus_over_curve(k: int = 3, twisted: bool = False) -> CatalogEntry:
    """Basis ``e1, e2, z1..z_2k``; the only bracket is ``[e1, e2] = z_2k``.

    ``J e1 = e2`` and ``J z_{2i-1} = z_{2i}``.  With ``twisted`` (k ≥ 2) the last
    pair becomes ``J z_2k = z_{2k-1} + t z_1`` so that the smallest invariant
    rational subspace around the commutator grows to dimension 4.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    names = ["e1", "e2"] + [f"z{i + 1}" for i in range(2 * k)]
    dim = len(names)
    g = LieAlgebra(dim, {(0, 1): {dim - 1: Fraction(1)}}, names=names, name=f"torus_over_curve({k})")
    pairs = [["e1", "e2"]]
    if twisted:
        if k < 2:
            raise ValueError("the twisted structure needs k >= 2")
        pairs += [[f"z{2 * i + 1}", f"z{2 * i + 2}"] for i in range(k - 1)]
        pairs.append([f"z{2 * k}", f"z{2 * k - 1} + t*z1"])
    else:
        pairs += [[f"z{2 * i + 1}", f"z{2 * i + 2}"] for i in range(k)]
    J = AlmostComplexStructure.from_action(g, pairs, name="J_t" if twisted else "J")
    expected = {"b1": 2 * k + 1, "closed_holomorphic_one_forms": k,
                "albanese_bounds": [1, k]}
    return CatalogEntry(g.name, g, {J.name: J}, {}, {"family": expected}, g.name, {J.name: "generated"})


_GEN = re.compile(r"(heisenberg|torus_over_curve)\((\d+)(?:,(\d+))?\)")


def catalog_names() -> list[str]:
    return list(_raw())


@lru_cache(maxsize=None)
def _cached(name: str) -> CatalogEntry:
    return _build(_raw()[name])


def catalog_get(name: str) -> CatalogEntry:
    """Entry by name; generators accept ``heisenberg(n,m)`` and ``torus_over_curve(k)``."""
    key = name.replace(" ", "")
    m = _GEN.fullmatch(key)
    if m:
        if m.group(1) == "heisenberg":
            return heisenberg(int(m.group(2)), int(m.group(3) or 1))
        if m.group(3) is not None:
            raise UnknownEntry(f"torus_over_curve takes one argument, got {name!r}")
        return torus_over_curve(int(m.group(2)))
    if key not in _raw():
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(catalog_names())}")
    return _cached(key)


def all_entries() -> list[CatalogEntry]:
    return [catalog_get(n) for n in catalog_names()]


from .verify import verify_all, verify_entry  # noqa: E402

__all__ = ["CatalogEntry", "catalog_get", "catalog_names", "all_entries", "heisenberg", "torus_over_curve",
           "verify_all", "verify_entry", "SIX_DIMENSIONAL", "HIGHER"]
