"""Principal graphs with dual data and their four-partite gluing.

A bigraph is a bipartite graph graded by depth, encoded by the text grammar
    bwd<block>v<block>...duals<invol>v<invol>...
where each depth block has one row per new vertex ("p"-separated) and each row
lists "x"-separated edge multiplicities to the previous depth's vertices.  The
duals suffix lists, per even depth, the 1-based images of the involution on
that depth's vertices.

Vertex order is canonical: depth-major, order of appearance in the encoding.
Fixture graphs may carry explicit vertex names (paper figures order some
depths differently from the encoding; names pin the correspondence).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import polys
from .errors import (
    BadShadingWord,
    DualsNotInvolution,
    GrammarError,
    InconsistentDelta,
    RowLengthMismatch,
)
from .linalg import RATIONAL, Matrix

HAT = "̂"
BAR = "̄"

SQUARE = ("NN", "NM", "MM", "MN")  # region classes around the shading square


def hat(name: str) -> str:
    return name + HAT


def bar(name: str) -> str:
    return name + BAR


def undecorate(name: str) -> str:
    return name.rstrip(HAT + BAR)


@dataclass(frozen=True)
class Edge:
    src: str   # lower-depth endpoint
    dst: str   # higher-depth endpoint
    label: str

    def other(self, v: str) -> str:
        return self.dst if v == self.src else self.src


@dataclass(frozen=True)
class Loop:
    """A based loop: vertices[i] -- edges[i] -- vertices[i+1 mod n]."""

    vertices: tuple
    edges: tuple

    def __len__(self):
        return len(self.vertices)

    def rotated(self, k: int) -> "Loop":
        n = len(self.vertices)
        k %= n
        return Loop(self.vertices[k:] + self.vertices[:k], self.edges[k:] + self.edges[:k])

    def reversed(self) -> "Loop":
        n = len(self.vertices)
        verts = (self.vertices[0],) + tuple(reversed(self.vertices[1:]))
        edges = tuple(reversed(self.edges))
        return Loop(verts, edges)

    def display(self) -> str:
        return ",".join(self.vertices)


class Bigraph:
    def __init__(self, depth_names: Sequence[Sequence[str]], edges: Iterable[tuple],
                 duals: Optional[dict] = None, encoding: Optional[str] = None,
                 order: Optional[Sequence[str]] = None):
        self.depth_names = [list(d) for d in depth_names]
        self.vertices = list(order) if order else [v for d in self.depth_names for v in d]
        self.depth = {v: k for k, d in enumerate(self.depth_names) for v in d}
        if order is not None:
            if set(order) != set(self.depth):
                raise GrammarError("display order must list every vertex exactly once")
            if [self.depth[v] for v in order] != sorted(self.depth[v] for v in order):
                raise GrammarError("display order must be depth-major")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self.edges: list[Edge] = []
        self._adj: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        seen = {}
        for (a, b) in edges:
            if self.depth[a] > self.depth[b]:
                a, b = b, a
            k = seen.get((a, b), 0)
            seen[(a, b)] = k + 1
            label = f"{a}~{b}" if k == 0 else f"{a}~{b}#{k + 1}"
            e = Edge(a, b, label)
            self.edges.append(e)
            self._adj[a].append(e)
            self._adj[b].append(e)
        for v in self.vertices:
            self._adj[v].sort(key=lambda e: (self._index[e.other(v)], e.label))
        self.duals = dict(duals) if duals else None
        self._encoding = encoding
        self._validate()

    def _validate(self):
        if len(self.depth_names[0]) != 1:
            raise GrammarError("depth 0 must have exactly one vertex")
        for e in self.edges:
            if abs(self.depth[e.src] - self.depth[e.dst]) != 1:
                raise GrammarError(f"edge {e.label} joins non-adjacent depths")
        for k, names in enumerate(self.depth_names):
            if k == 0:
                continue
            for v in names:
                if not any(self.depth[e.other(v)] == k - 1 for e in self._adj[v]):
                    raise GrammarError(f"vertex {v} at depth {k} has no edge to depth {k - 1}")
        if self.duals is not None:
            for v, w in self.duals.items():
                if self.depth[v] % 2 or self.depth[v] != self.depth[w]:
                    raise DualsNotInvolution(f"dual data must pair even vertices by depth: {v}->{w}")
                if self.duals.get(w) != v:
                    raise DualsNotInvolution(f"duals not an involution at {v}")

    # -- basic queries -----------------------------------------------------------

    @property
    def max_depth(self) -> int:
        return len(self.depth_names) - 1

    def index(self, v: str) -> int:
        return self._index[v]

    def adjacent(self, v: str) -> list[Edge]:
        return self._adj[v]

    def neighbors(self, v: str) -> list[str]:
        return [e.other(v) for e in self._adj[v]]

    def multiplicity(self, a: str, b: str) -> int:
        return sum(1 for e in self._adj[a] if e.other(a) == b)

    def evens(self) -> list[str]:
        return [v for v in self.vertices if self.depth[v] % 2 == 0]

    def odds(self) -> list[str]:
        return [v for v in self.vertices if self.depth[v] % 2 == 1]

    def odd_at_depth(self, k: int) -> list[str]:
        return list(self.depth_names[k]) if k <= self.max_depth else []

    def bipartite_matrix(self) -> Matrix:
        """Even-by-odd adjacency multiplicity matrix."""
        ev, od = self.evens(), self.odds()
        rows = [[Fraction(self.multiplicity(a, b)) for b in od] for a in ev]
        return Matrix.from_rows_rational(rows) if ev and od else Matrix.from_rows_rational([[Fraction(0)]])

    # -- serialization -------------------------------------------------------------

    def serialize(self) -> str:
        parts = []
        for k in range(1, len(self.depth_names)):
            prev = self.depth_names[k - 1]
            rows = []
            for v in self.depth_names[k]:
                rows.append("x".join(str(self.multiplicity(v, u)) for u in prev))
            parts.append("p".join(rows))
        s = "bwd" + "v".join(parts)
        if self.duals is not None:
            blocks = []
            for k in range(0, len(self.depth_names), 2):
                names = self.depth_names[k]
                blocks.append("x".join(str(names.index(self.duals[v]) + 1) for v in names))
            s += "duals" + "v".join(blocks)
        return s

    def __repr__(self):
        return f"Bigraph({self.serialize()})"

    def __eq__(self, other):
        return isinstance(other, Bigraph) and self.serialize() == other.serialize()

    def __hash__(self):
        return hash(self.serialize())


def parse_bigraph(encoding: str, names: Optional[Sequence[Sequence[str]]] = None,
                  order: Optional[Sequence[str]] = None) -> Bigraph:
    """Parse a `bwd...duals...` (or `gbg...`) string.  Optional `names` gives
    explicit vertex names per depth in encoding order; `order` fixes the
    canonical display order when it differs from appearance order."""
    text = encoding.strip()
    m = re.match(r"(bwd|gbg)", text)
    if not m:
        raise GrammarError("encoding must start with 'bwd' or 'gbg'", 0)
    body = text[3:]
    duals_part = None
    if "duals" in body:
        body, duals_part = body.split("duals", 1)
    # depth blocks for depths 1..n; the depth-0 vertex is implicit
    blocks = body.split("v") if body else []
    depth_rows: list[list[list[int]]] = []
    for block in blocks:
        rows = []
        for row in block.split("p"):
            if not row:
                raise GrammarError("empty adjacency row", text.find(block))
            try:
                rows.append([int(x) for x in row.split("x")])
            except ValueError as exc:
                raise GrammarError(f"bad multiplicity in {row!r}", text.find(row)) from exc
        depth_rows.append(rows)

    depth_names: list[list[str]] = []
    if names is not None:
        depth_names = [list(d) for d in names]
        if len(depth_names) != len(depth_rows) + 1:
            raise GrammarError("names must cover every depth")
    else:
        depth_names = [["*0.0"]] + [
            [f"*{k + 1}.{i}" for i in range(len(rows))] for k, rows in enumerate(depth_rows)
        ]

    edges = []
    for k, rows in enumerate(depth_rows):
        prev = depth_names[k]
        cur = depth_names[k + 1]
        if len(rows) != len(cur):
            raise GrammarError(f"depth {k + 1} has {len(rows)} rows but {len(cur)} names")
        for v, row in zip(cur, rows):
            if len(row) != len(prev):
                raise RowLengthMismatch(
                    f"row for {v} has {len(row)} entries, previous depth has {len(prev)} vertices",
                    encoding.find("v"))
            for u, mult in zip(prev, row):
                edges.extend([(u, v)] * mult)

    duals = None
    if duals_part is not None:
        duals = {}
        blocks = duals_part.split("v")
        even_depths = [k for k in range(len(depth_names)) if k % 2 == 0]
        if len(blocks) != len(even_depths):
            raise DualsNotInvolution(
                f"duals lists {len(blocks)} blocks for {len(even_depths)} even depths")
        for k, block in zip(even_depths, blocks):
            names_k = depth_names[k]
            imgs = [int(x) for x in block.split("x")]
            if len(imgs) != len(names_k):
                raise DualsNotInvolution(f"duals block for depth {k} has wrong length")
            for v, i in zip(names_k, imgs):
                duals[v] = names_k[i - 1]
    return Bigraph(depth_names, edges, duals, encoding=text, order=order)


class BigraphPair:
    """A principal/dual graph pair; odd vertices are identified by position."""

    def __init__(self, principal: Bigraph, dual: Bigraph):
        self.principal = principal
        self.dual = dual
        for k in range(1, max(principal.max_depth, dual.max_depth) + 1, 2):
            if len(principal.odd_at_depth(k)) != len(dual.odd_at_depth(k)):
                raise GrammarError(
                    f"odd vertex counts differ at depth {k}; no positional identification")

    def odd_partner(self, v: str) -> str:
        """The dual graph's odd vertex identified with principal odd v."""
        k = self.principal.depth[v]
        i = self.principal.depth_names[k].index(v)
        return self.dual.depth_names[k][i]

    def odd_partner_inv(self, w: str) -> str:
        k = self.dual.depth[w]
        i = self.dual.depth_names[k].index(w)
        return self.principal.depth_names[k][i]

    def slot_iso(self, v: str) -> str:
        """Graph isomorphism principal -> dual by per-depth appearance slot
        (the identity when both graphs share one encoding)."""
        k = self.principal.depth[v]
        i = self.principal.depth_names[k].index(v)
        return self.dual.depth_names[k][i]

    def slot_iso_inv(self, w: str) -> str:
        k = self.dual.depth[w]
        i = self.dual.depth_names[k].index(w)
        return self.principal.depth_names[k][i]

    def serialize(self) -> tuple[str, str]:
        return (self.principal.serialize(), self.dual.serialize())

    def __repr__(self):
        p, d = self.serialize()
        return f"BigraphPair({p}, {d})"

    def __eq__(self, other):
        return isinstance(other, BigraphPair) and self.serialize() == other.serialize()

    def __hash__(self):
        return hash(self.serialize())


def parse_pair(principal: str, dual: str,
               names_principal=None, names_dual=None) -> BigraphPair:
    return BigraphPair(parse_bigraph(principal, names_principal),
                       parse_bigraph(dual, names_dual))


class FourPartiteGraph:
    """The two-sided gluing of a graph pair over the shading square.

    NN holds the principal evens (plain names), NM the principal odds, MM the
    dual evens (hatted), MN the dual odds (barred).  Edges NM-MM and MN-NN are
    induced through the positional odd identification.
    """

    def __init__(self, pair: BigraphPair):
        self.pair = pair
        p, d = pair.principal, pair.dual
        self.classes = {
            "NN": list(p.evens()),
            "NM": list(p.odds()),
            "MM": [hat(v) for v in d.evens()],
            "MN": [bar(v) for v in d.odds()],
        }
        self._class_of = {v: c for c, vs in self.classes.items() for v in vs}
        self._adj: dict[str, dict[str, list[Edge]]] = {
            v: {c: [] for c in SQUARE} for vs in self.classes.values() for v in vs}
        self.edges: dict[tuple, list[Edge]] = {}

        def add(cls_pair, a, b, label):
            e = Edge(a, b, label)
            self.edges.setdefault(cls_pair, []).append(e)
            self._adj[a][self._class_of[b]].append(e)
            self._adj[b][self._class_of[a]].append(e)

        for e in p.edges:  # NN-NM
            add(("NN", "NM"), e.src if p.depth[e.src] % 2 == 0 else e.dst,
                e.dst if p.depth[e.dst] % 2 == 1 else e.src, e.label)
        for e in d.edges:  # MM-MN (hatted even, barred odd)
            ev = e.src if d.depth[e.src] % 2 == 0 else e.dst
            od = e.dst if d.depth[e.dst] % 2 == 1 else e.src
            add(("MM", "MN"), hat(ev), bar(od), f"{hat(ev)}~{bar(od)}")
        for e in d.edges:  # NM-MM: principal odd (partner) to hatted dual even
            ev = e.src if d.depth[e.src] % 2 == 0 else e.dst
            od = e.dst if d.depth[e.dst] % 2 == 1 else e.src
            po = pair.odd_partner_inv(od)
            add(("NM", "MM"), po, hat(ev), f"{po}~{hat(ev)}")
        for e in p.edges:  # MN-NN: barred dual odd to principal even
            ev = e.src if p.depth[e.src] % 2 == 0 else e.dst
            od = e.dst if p.depth[e.dst] % 2 == 1 else e.src
            bo = bar(pair.odd_partner(od))
            add(("MN", "NN"), bo, ev, f"{bo}~{ev}")

        order = {v: i for i, v in enumerate(
            self.classes["NN"] + self.classes["NM"] + self.classes["MM"] + self.classes["MN"])}
        for v, by_class in self._adj.items():
            for c in by_class:
                by_class[c].sort(key=lambda e: (order[e.other(v)], e.label))
        self._order = order

    def vertex_class(self, v: str) -> str:
        return self._class_of[v]

    def index(self, v: str) -> int:
        return self._order[v]

    def adjacent(self, v: str, cls: str) -> list[Edge]:
        return self._adj[v][cls]

    def neighbors(self, v: str, cls: str) -> list[str]:
        return [e.other(v) for e in self._adj[v][cls]]

    def has_edge(self, a: str, b: str) -> bool:
        return any(e.other(a) == b for e in self._adj[a][self._class_of[b]])

    def red_restriction(self) -> list[tuple]:
        return sorted(tuple(sorted((e.src, e.dst))) for e in self.edges.get(("NN", "NM"), []))

    def blue_restriction(self) -> list[tuple]:
        return sorted(tuple(sorted((undecorate(e.src), undecorate(e.dst))))
                      for e in self.edges.get(("MM", "MN"), []))


# -- loop enumeration -----------------------------------------------------------


def loops(graph, base: str, length: int, square_loop: Optional[Sequence[str]] = None) -> list[Loop]:
    """All based loops of the given length, in canonical lexicographic order.

    On a Bigraph the loop alternates even/odd; on a FourPartiteGraph a
    `square_loop` word over {NN, NM, MM, MN} prescribes the region classes
    visited (defaulting to alternating red shading from the base's class).
    """
    if length == 0:
        return [Loop((base,), ())]
    if length % 2:
        raise BadShadingWord("loops have even length")
    if isinstance(graph, FourPartiteGraph):
        if square_loop is None:
            c0 = graph.vertex_class(base)
            square_loop = [c0, _red_blue_step(c0)] * (length // 2)
        square_loop = list(square_loop)
        if len(square_loop) != length:
            raise BadShadingWord("shading word length must equal loop length")
        if graph.vertex_class(base) != square_loop[0]:
            raise BadShadingWord(f"base {base} is not in class {square_loop[0]}")
        for a, b in zip(square_loop, square_loop[1:] + square_loop[:1]):
            if not _square_adjacent(a, b):
                raise BadShadingWord(f"classes {a},{b} are not adjacent on the square")

        def next_edges(v, i):
            return graph.adjacent(v, square_loop[(i + 1) % length])
    else:
        def next_edges(v, i):
            return graph.adjacent(v)

    out: list[Loop] = []

    def extend(v, i, verts, edges):
        for e in next_edges(v, i):
            w = e.other(v)
            if i + 1 == length:
                if w == base:
                    out.append(Loop(tuple(verts), tuple(edges) + (e.label,)))
                continue
            verts.append(w)
            edges.append(e.label)
            extend(w, i + 1, verts, edges)
            verts.pop()
            edges.pop()

    extend(base, 0, [base], [])
    return out


def _red_blue_step(c: str) -> str:
    return {"NN": "NM", "NM": "NN", "MM": "MN", "MN": "MM"}[c]


def _square_adjacent(a: str, b: str) -> bool:
    i, j = SQUARE.index(a), SQUARE.index(b)
    return (i - j) % 4 in (1, 3)


# -- norms and dimensions ---------------------------------------------------------


def graph_norm_squared(g: Bigraph, width: Fraction = Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    """Certified interval around ||g||^2, the top eigenvalue of M M^t."""
    m = g.bipartite_matrix()
    mmt = m * m.transpose()
    char = polys.poly(mmt.charpoly())
    # squarefree part, for Sturm counting
    sf, _ = polys.divmod_poly(char, polys.gcd(char, polys.derivative(char)))
    bound = polys.root_bound(sf)
    seq = polys.sturm_sequence(sf)
    lo, hi = Fraction(0), bound
    # peel off until exactly the largest root remains in (lo, hi]
    while polys.count_roots(sf, lo, hi, seq) > 1:
        mid = (lo + hi) / 2
        if polys.count_roots(sf, mid, hi, seq) >= 1:
            lo = mid
        else:
            hi = mid
    if polys.evaluate(sf, lo) == 0:
        lo -= width / 4
    return polys.refine_root(sf, lo, hi, width, seq)


@dataclass
class DimensionTable:
    """Frobenius-Perron dimensions of a graph (or of a four-partite gluing),
    with the lopsided rescaling by delta per shading."""

    dims: dict
    delta: object
    shading: dict  # vertex -> exponent of delta in the lopsided dimension

    def dim(self, v: str):
        return self.dims[v]

    def lopsided(self, v: str):
        s = self.shading[v]
        d = self.dims[v]
        if s == 0:
            return d
        if s == 1:
            return d / self.delta
        return d * self.delta ** (-s)


def fp_dimensions(g: Bigraph, field, delta) -> DimensionTable:
    """Exact FP dimension vector: delta*dim(v) = sum of neighbor dims, with the
    depth-0 vertex normalized to 1."""
    verts = g.vertices
    idx = {v: i for i, v in enumerate(verts)}
    rows = []
    rhs = []
    for v in verts:
        row = [field.zero] * len(verts)
        row[idx[v]] = delta
        for e in g.adjacent(v):
            w = e.other(v)
            row[idx[w]] = row[idx[w]] - field.one
        rows.append(row)
        rhs.append(field.zero)
    root = g.depth_names[0][0]
    row = [field.zero] * len(verts)
    row[idx[root]] = field.one
    rows.append(row)
    rhs.append(field.one)
    sol = Matrix.from_rows(rows, field).solve(rhs)
    if sol is None:
        raise InconsistentDelta("no FP eigenvector for the given delta over this field")
    dims = {v: sol[idx[v]] for v in verts}
    shading = {v: g.depth[v] % 2 for v in verts}
    return DimensionTable(dims, delta, shading)


def fourpartite_dimensions(fp: FourPartiteGraph, field, delta) -> DimensionTable:
    """Dimension table on the four-partite graph: shading exponents are 0 on
    N-N and M-M, +1 on N-M, -1 on M-N."""
    dp = fp_dimensions(fp.pair.principal, field, delta)
    dd = fp_dimensions(fp.pair.dual, field, delta)
    dims = {}
    shading = {}
    for v in fp.classes["NN"]:
        dims[v] = dp.dim(v)
        shading[v] = 0
    for v in fp.classes["NM"]:
        dims[v] = dp.dim(v)
        shading[v] = 1
    for v in fp.classes["MM"]:
        dims[v] = dd.dim(undecorate(v))
        shading[v] = 0
    for v in fp.classes["MN"]:
        dims[v] = dd.dim(undecorate(v))
        shading[v] = -1
    return DimensionTable(dims, delta, shading)
