"""Text renderings of the matrix picture: ASCII grid, JSON and a TikZ matrix."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import Composition
from .section import ONE, STAR, SectionState

FORMATS = ("ascii", "json", "latex-tikz")


@dataclass(frozen=True)
class RenderPlan:
    format: str = "ascii"
    encircle: bool = True

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {', '.join(FORMATS)}")


def _cell(label, circled: bool) -> str:
    ch = "." if label is None else str(label)
    if circled:
        return "O" if label is None else f"({ch})"
    return ch


def render_matrix(state: SectionState, excluded: Optional[Iterable] = None, plan: RenderPlan = RenderPlan()) -> str:
    """Render the labelled matrix; ``excluded`` marks encircled coordinates."""
    X = frozenset(map(tuple, excluded)) if excluded is not None and plan.encircle else frozenset()
    if plan.format == "json":
        return json.dumps(matrix_json(state, X if excluded is not None else None), sort_keys=True)
    if plan.format == "latex-tikz":
        return _tikz(state, X)
    return _ascii(state, X)


def matrix_json(state: SectionState, excluded=None) -> dict:
    out = state.to_json()
    if excluded is not None:
        out["X"] = [list(x) for x in sorted(excluded)]
    return out


def state_from_json(data: dict) -> tuple[SectionState, Optional[frozenset]]:
    """Inverse of :func:`matrix_json`."""
    c = Composition(tuple(data["composition"]))
    entries = {tuple(x): ONE for x in data["supp_e"]}
    entries.update({tuple(x): STAR for x in data["supp_v"]})
    X = frozenset(tuple(x) for x in data["X"]) if "X" in data else None
    return SectionState(c, entries), X


def _ascii(state: SectionState, X) -> str:
    c = state.composition
    n = c.n
    bounds = set(c.offsets[1:])  # a block ends after each of these indices
    w = 3
    lines = []
    header = ["   "] + [f"{j:>{w}}" + (" |" if j in bounds else "") for j in range(1, n + 1)]
    lines.append("".join(header).rstrip())
    rule = "   " + "".join("-" * w + ("-+" if j in bounds else "") for j in range(1, n + 1))
    for i in range(1, n + 1):
        row = [f"{i:>3}"]
        for j in range(1, n + 1):
            cell = _cell(state.entries.get((i, j)), (i, j) in X)
            row.append(f"{cell:>{w}}" + (" |" if j in bounds else ""))
        lines.append("".join(row).rstrip())
        if i in bounds:
            lines.append(rule)
    return "\n".join(lines) + "\n"


def _tikz(state: SectionState, X) -> str:
    c = state.composition
    n = c.n
    out = [
        r"\documentclass[tikz]{standalone}",
        r"\usetikzlibrary{matrix}",
        r"\begin{document}",
        r"\begin{tikzpicture}",
        r"\matrix (M) [matrix of math nodes, ampersand replacement=\&, nodes={minimum size=5mm, anchor=center}] {",
    ]
    for i in range(1, n + 1):
        cells = []
        for j in range(1, n + 1):
            label = state.entries.get((i, j))
            cells.append({None: "", ONE: "1", STAR: r"\ast"}[label])
        out.append(" \\& ".join(cells) + r" \\")
    out.append("};")
    offs = c.offsets + (n,)
    for b in range(c.k):
        lo, hi = offs[b] + 1, offs[b + 1]
        out.append(rf"\draw (M-{lo}-{lo}.north west) rectangle (M-{hi}-{hi}.south east);")
    for i, j in sorted(X):
        out.append(rf"\draw (M-{i}-{j}) circle (2.2mm);")
    out += [r"\end{tikzpicture}", r"\end{document}"]
    return "\n".join(out) + "\n"


def render_lines(state: SectionState) -> str:
    """Line-diagram data as coordinate lists: one labelled line per entry."""
    c = state.composition
    rows = []
    for (i, j), label in sorted(state.entries.items()):
        (r1, c1), (r2, c2) = c.box(i), c.box(j)
        rows.append(f"{label} ({i},{j}) box[{r1},{c1}] -> box[{r2},{c2}]")
    return "\n".join(rows) + ("\n" if rows else "")
