"""Orthogonality graphs and color-preserving isomorphism.

Each unordered pair of states gets the color of the side(s) on which the two
states are orthogonal: ``A``, ``B`` or ``Both``. Two sets are isomorphic when a
vertex bijection carries every color class onto the same color class.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .states import ORTHO_TOL, Side, StateSet, orthogonality_side

NODE_BUDGET = 10**7


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class OrthoGraph:
    vertices: tuple[str, ...]
    edges: dict[tuple[int, int], Side]

    def color(self, i: int, j: int) -> Side | None:
        return self.edges.get((i, j) if i < j else (j, i))

    def edges_on(self, side: Side) -> list[tuple[int, int]]:
        """``E_A`` (A or Both) or ``E_B`` (B or Both), sorted."""
        return sorted(p for p, c in self.edges.items() if c is side or c is Side.BOTH)

    def relabeled(self, perm: list[int]) -> "OrthoGraph":
        """Graph whose vertex ``perm[i]`` is this graph's vertex ``i``."""
        verts = [None] * len(self.vertices)
        for i, p in enumerate(perm):
            verts[p] = self.vertices[i]
        edges = {}
        for (i, j), c in self.edges.items():
            a, b = perm[i], perm[j]
            edges[(min(a, b), max(a, b))] = c
        return OrthoGraph(tuple(verts), edges)


def build_graph(s: StateSet, tol: float = ORTHO_TOL) -> OrthoGraph:
    edges = {}
    for i, j in itertools.combinations(range(len(s)), 2):
        side = orthogonality_side(s[i], s[j], tol)
        if side is None:
            raise GraphError(f"states {s[i].label} and {s[j].label} are not orthogonal")
        edges[(i, j)] = side
    return OrthoGraph(tuple(s.labels), edges)


def edge_counts(g: OrthoGraph) -> tuple[int, int, int]:
    """``(|E_A|, |E_B|, #Both)``; Both-pairs count towards both sides."""
    c = Counter(g.edges.values())
    both = c[Side.BOTH]
    return c[Side.A] + both, c[Side.B] + both, both


# -- isomorphism ------------------------------------------------------------


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    mapping: dict[int, int] | None = None
    obstruction: str | None = None
    budget_exceeded: bool = False
    party_swapped: bool = False
    nodes: int = 0

    def labeled_mapping(self, g1: OrthoGraph, g2: OrthoGraph) -> dict[str, str] | None:
        if self.mapping is None:
            return None
        return {g1.vertices[i]: g2.vertices[j] for i, j in self.mapping.items()}


_SWAP = {Side.A: Side.B, Side.B: Side.A, Side.BOTH: Side.BOTH}


def _color_matrix(g: OrthoGraph) -> list[list[Side | None]]:
    k = len(g.vertices)
    mat = [[None] * k for _ in range(k)]
    for (i, j), c in g.edges.items():
        mat[i][j] = mat[j][i] = c
    return mat


_ORDER = (None, Side.A, Side.B, Side.BOTH)


def _signature(row, skip) -> tuple[int, ...]:
    c = Counter(x for t, x in enumerate(row) if t != skip)
    return tuple(c[x] for x in _ORDER)


def _canonical(colorings):
    palette = {c: n for n, c in enumerate(sorted({c for col in colorings for c in col}))}
    return [[palette[c] for c in col] for col in colorings]


def _refine(mats: list[list[list]]) -> list[list[int]]:
    """Joint color refinement of several graphs; classes are comparable across graphs."""
    colors = _canonical([[_signature(row, i) for i, row in enumerate(mat)] for mat in mats])
    while True:
        new = _canonical(
            [
                [
                    (col[i], tuple(sorted(Counter(
                        (_ORDER.index(mat[i][j]), col[j]) for j in range(len(mat)) if j != i
                    ).items())))
                    for i in range(len(mat))
                ]
                for mat, col in zip(mats, colors)
            ]
        )
        if len({c for col in new for c in col}) == len({c for col in colors for c in col}):
            return new
        colors = new


def verify_mapping(
    g1: OrthoGraph, g2: OrthoGraph, mapping: dict[int, int], party_swapped: bool = False
) -> bool:
    """Re-check a vertex bijection pair by pair."""
    k = len(g1.vertices)
    if len(g2.vertices) != k or sorted(mapping) != list(range(k)):
        return False
    if sorted(mapping.values()) != list(range(k)):
        return False
    for i, j in itertools.combinations(range(k), 2):
        c1 = g1.color(i, j)
        if party_swapped and c1 is not None:
            c1 = _SWAP[c1]
        if c1 is not g2.color(mapping[i], mapping[j]):
            return False
    return True


def check_isomorphic(
    g1: OrthoGraph,
    g2: OrthoGraph,
    allow_party_swap: bool = False,
    budget: int = NODE_BUDGET,
) -> IsoResult:
    """Decide color-preserving isomorphism by backtracking.

    Cheap invariants (vertex counts, per-color edge counts, degree signatures)
    are compared first; the search then only pairs vertices in the same
    refined color class. With ``allow_party_swap`` the A and B colors of
    ``g1`` are exchanged before matching. A search that hits ``budget`` node
    expansions reports ``budget_exceeded`` instead of a verdict.
    """
    if allow_party_swap:
        plain = check_isomorphic(g1, g2, False, budget)
        if plain.isomorphic:
            return plain
        swapped = OrthoGraph(g1.vertices, {p: _SWAP[c] for p, c in g1.edges.items()})
        res = check_isomorphic(swapped, g2, False, budget)
        if res.isomorphic:
            return IsoResult(True, mapping=res.mapping, party_swapped=True, nodes=res.nodes)
        if res.budget_exceeded:
            return res
        return IsoResult(False, obstruction=plain.obstruction + "; also with parties swapped")

    k = len(g1.vertices)
    if k != len(g2.vertices):
        return IsoResult(False, obstruction=f"vertex count {k} != {len(g2.vertices)}")
    c1, c2 = edge_counts(g1), edge_counts(g2)
    for name, x, y in zip(("A-edge", "B-edge", "Both-edge"), c1, c2):
        if x != y:
            return IsoResult(False, obstruction=f"{name} count {x} != {y}")
    if len(g1.edges) != len(g2.edges):
        return IsoResult(False, obstruction=f"edge count {len(g1.edges)} != {len(g2.edges)}")
    m1, m2 = _color_matrix(g1), _color_matrix(g2)
    sig1 = sorted(_signature(r, i) for i, r in enumerate(m1))
    sig2 = sorted(_signature(r, i) for i, r in enumerate(m2))
    if sig1 != sig2:
        return IsoResult(False, obstruction="per-color degree signatures differ")
    cls1, cls2 = _refine([m1, m2])
    if sorted(cls1) != sorted(cls2):
        return IsoResult(False, obstruction="color-refinement class sizes differ")

    # smallest refined classes first
    by_class = Counter(cls1)
    order = sorted(range(k), key=lambda v: (by_class[cls1[v]], v))
    candidates = {v: [w for w in range(k) if cls2[w] == cls1[v]] for v in range(k)}
    mapping: dict[int, int] = {}
    used = [False] * k
    nodes = 0

    def extend(pos: int) -> bool | None:
        nonlocal nodes
        if pos == k:
            return True
        v = order[pos]
        for w in candidates[v]:
            if used[w]:
                continue
            nodes += 1
            if nodes > budget:
                return None
            if all(m1[v][u] is m2[w][mapping[u]] for u in order[:pos]):
                mapping[v] = w
                used[w] = True
                found = extend(pos + 1)
                if found is None or found:
                    return found
                del mapping[v]
                used[w] = False
        return False

    found = extend(0)
    if found is None:
        return IsoResult(False, obstruction="search budget exceeded", budget_exceeded=True, nodes=nodes)
    if not found:
        return IsoResult(False, obstruction="no color-preserving bijection exists", nodes=nodes)
    mapping = dict(sorted(mapping.items()))
    if not verify_mapping(g1, g2, mapping):
        raise AssertionError("isomorphism search produced an invalid mapping")
    return IsoResult(True, mapping=mapping, nodes=nodes)


# -- DOT ----------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: OrthoGraph, side: str = "A", name: str = "orthogonality") -> str:
    """Graphviz text for one side (``A``/``B``) or the ``both`` overlay.

    A-side edges are solid and B-side edges dashed; in the overlay a pair
    orthogonal on both sides is drawn once, bold.
    """
    side = side.lower()
    if side not in ("a", "b", "both"):
        raise ValueError(f"side must be A, B or both, got {side!r}")
    lines = [f"graph {_quote(name)} {{"]
    for v in g.vertices:
        lines.append(f"  {_quote(v)};")
    for (i, j) in sorted(g.edges):
        c = g.edges[(i, j)]
        if side == "a":
            style = "solid" if c in (Side.A, Side.BOTH) else None
        elif side == "b":
            style = "dashed" if c in (Side.B, Side.BOTH) else None
        else:
            style = {Side.A: "solid", Side.B: "dashed", Side.BOTH: "bold"}[c]
        if style:
            lines.append(f"  {_quote(g.vertices[i])} -- {_quote(g.vertices[j])} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
