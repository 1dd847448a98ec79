"""Kirby diagrams as framed links recorded by their linking matrix."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidArgument, OddLattice, ParseError, SpinViolation
from .lattice import GramLattice, congruent_transform


@dataclass(frozen=True)
class Component:
    name: str
    framing: int


@dataclass(frozen=True)
class KirbyDiagram:
    """Framed link; ``linking[i][i]`` is the framing of component ``i``."""

    components: tuple[Component, ...]
    linking: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.components)
        if len(self.linking) != n or any(len(r) != n for r in self.linking):
            raise InvalidArgument("linking matrix size does not match the component list")
        for i in range(n):
            if self.linking[i][i] != self.components[i].framing:
                raise InvalidArgument(f"linking[{i}][{i}] differs from the framing")
            for j in range(i + 1, n):
                if self.linking[i][j] != self.linking[j][i]:
                    raise InvalidArgument(f"linking matrix not symmetric at ({i},{j})")

    @property
    def even(self) -> bool:
        return all(c.framing % 2 == 0 for c in self.components)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.components]

    def to_dict(self) -> dict:
        return {
            "components": [{"name": c.name, "framing": c.framing} for c in self.components],
            "linking": [list(r) for r in self.linking],
        }


def _from_matrix(matrix: Sequence[Sequence[int]], names=None) -> KirbyDiagram:
    n = len(matrix)
    names = names or [f"K{i + 1}" for i in range(n)]
    comps = tuple(Component(names[i], int(matrix[i][i])) for i in range(n))
    return KirbyDiagram(comps, tuple(tuple(int(x) for x in row) for row in matrix))


def parse(document: str | dict) -> KirbyDiagram:
    """Read the JSON diagram format, reporting the location of any violation."""
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    else:
        doc = document
    if not isinstance(doc, dict):
        raise ParseError("expected an object with 'components' and 'linking'", "$")
    comps = doc.get("components")
    link = doc.get("linking")
    if not isinstance(comps, list):
        raise ParseError("'components' must be a list", "$.components")
    if not isinstance(link, list):
        raise ParseError("'linking' must be a list of rows", "$.linking")
    n = len(comps)
    parsed = []
    for i, c in enumerate(comps):
        loc = f"$.components[{i}]"
        if not isinstance(c, dict) or "framing" not in c:
            raise ParseError("component needs 'name' and 'framing'", loc)
        fr = c["framing"]
        if not isinstance(fr, int) or isinstance(fr, bool):
            raise ParseError("framing must be an integer", f"{loc}.framing")
        parsed.append(Component(str(c.get("name", f"K{i + 1}")), fr))
    if len(link) != n:
        raise ParseError(f"{len(link)} rows for {n} components", "$.linking")
    for i, row in enumerate(link):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row must have {n} entries", f"$.linking[{i}]")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise ParseError("entries must be integers", f"$.linking[{i}][{j}]")
    for i in range(n):
        if link[i][i] != parsed[i].framing:
            raise ParseError(
                f"diagonal {link[i][i]} differs from framing {parsed[i].framing}",
                f"$.linking[{i}][{i}]",
            )
        for j in range(i + 1, n):
            if link[i][j] != link[j][i]:
                raise ParseError("linking matrix is not symmetric", f"$.linking[{i}][{j}]")
    return KirbyDiagram(tuple(parsed), tuple(tuple(r) for r in link))


def serialize(d: KirbyDiagram) -> str:
    """Canonical text form: components in order, linking row-major."""
    comps = ", ".join(
        "{" + f'"name": {json.dumps(c.name)}, "framing": {c.framing}' + "}"
        for c in d.components
    )
    rows = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in d.linking)
    return '{"components": [' + comps + '], "linking": [' + rows + "]}\n"


class EvennessReport:
    """Truthy iff every framing is even; lists the odd components otherwise."""

    def __init__(self, offending: list[str]):
        self.offending = offending

    def __bool__(self):
        return not self.offending

    def __repr__(self):
        return f"EvennessReport(even={not self.offending}, offending={self.offending})"


def validate_even(d: KirbyDiagram) -> EvennessReport:
    return EvennessReport([c.name for c in d.components if c.framing % 2])


def to_gram(d: KirbyDiagram) -> GramLattice:
    return GramLattice(d.linking)


def lens_diagram(n: int) -> KirbyDiagram:
    """Unknot with framing ``n``: surgery gives the lens space L(n, 1)."""
    if n % 2:
        raise SpinViolation(f"framing {n} is odd; L({n},1) surgery diagram is not spin")
    return _from_matrix([[n]], ["U"])


def zn_gauge_diagram(n: int) -> KirbyDiagram:
    """Two 0-framed unknots linking ``n`` times (Z_n gauge theory)."""
    if n < 1:
        raise InvalidArgument("linking number must be at least 1")
    return _from_matrix([[0, n], [n, 0]])


def toric_diagram() -> KirbyDiagram:
    return zn_gauge_diagram(2)


def from_k_matrix(k: GramLattice) -> KirbyDiagram:
    """Diagram of unknots whose linking matrix is the even K-matrix."""
    if not k.even:
        raise OddLattice("K-matrix has an odd diagonal entry")
    return _from_matrix(k.gram)


def handle_slide(d: KirbyDiagram, i: int, j: int, sign: int = 1) -> KirbyDiagram:
    """Slide component ``j`` over ``i``: column ``j`` gains ``sign`` times column ``i``."""
    n = len(d.components)
    if i == j:
        raise InvalidArgument("cannot slide a handle over itself")
    if not (0 <= i < n and 0 <= j < n):
        raise InvalidArgument("component index out of range")
    if sign not in (1, -1):
        raise InvalidArgument("sign must be +1 or -1")
    p = [[int(r == c) for c in range(n)] for r in range(n)]
    p[i][j] = sign
    g = congruent_transform(GramLattice(d.linking), p)
    return KirbyDiagram(
        tuple(Component(c.name, g.gram[k][k]) for k, c in enumerate(d.components)),
        g.gram,
    )
