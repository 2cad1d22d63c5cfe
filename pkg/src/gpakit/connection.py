"""Connections as 4-box elements of the two-sided graph planar algebra.

A connection assigns a field element to every 4-loop (a, xi, b_hat, eta_bar)
around the shading square.  The principal block view groups cells by the even
pair (a, b_hat); the dual view holds the one-click rotation, whose lopsided
renormalization is

    dual(eta_bar, a, xi, b_hat) = principal(a, xi, b_hat, eta_bar) * d_a * delta / d_xi.

Bi-invertibility is checked as: every vertical block is square and invertible
(defining K^{-1}), and the horizontal composite of K with that single K^{-1}
reproduces the Temperley-Lieb side

    sum_b  d_b * K(w, xi, b, eta) * K^{-1}(u, eta, b, xi)
        = [w == u] * d_xi * d_eta / d_w

exactly over the field.  Both checks are gauge covariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .bigraph import (
    FourPartiteGraph,
    Loop,
    fourpartite_dimensions,
    loops,
    undecorate,
)
from .errors import (
    MissingCell,
    NotInvertibleBlock,
    UnknownLoop,
    ZeroGaugeValue,
)
from .linalg import Matrix


class Connection:
    def __init__(self, fourpartite: FourPartiteGraph, field, delta, cells: dict,
                 dual_cells: Optional[dict] = None, name: str = ""):
        self.fourpartite = fourpartite
        self.field = field
        self.delta = delta
        self.dims = fourpartite_dimensions(fourpartite, field, delta)
        self.cells = dict(cells)
        self.dual_cells = dict(dual_cells) if dual_cells else None
        self.name = name
        self._validate_support()
        self._inverse_cache = None

    # -- structure ---------------------------------------------------------------

    def _validate_support(self):
        genuine = {lp for lp in all_zeta_loops(self.fourpartite)}
        for lp in self.cells:
            if lp not in genuine:
                raise UnknownLoop(f"cell at {lp.display()} is not a 4-loop of the graph")
        for lp in genuine:
            if lp not in self.cells:
                raise MissingCell(
                    f"no cell for 4-loop {lp.display()} "
                    f"(block {lp.vertices[0]},{lp.vertices[2]})")

    def cell(self, a, xi, bhat, ebar):
        lp = zeta_loop(self.fourpartite, a, xi, bhat, ebar)
        return self.cells.get(lp, self.field.zero)

    def dim(self, v) -> object:
        return self.dims.dim(v)

    def blocks(self) -> dict:
        """Vertical blocks: (a, b_hat) -> (xis, ebars, Matrix rows[eta][xi])."""
        fp = self.fourpartite
        out = {}
        for a in fp.classes["NN"]:
            for bhat in fp.classes["MM"]:
                xis = [x for x in fp.neighbors(a, "NM") if fp.has_edge(x, bhat)]
                ebars = [t for t in fp.neighbors(bhat, "MN") if fp.has_edge(t, a)]
                xis = sorted(set(xis), key=fp.index)
                ebars = sorted(set(ebars), key=fp.index)
                if not xis and not ebars:
                    continue
                rows = [[self.cell(a, xi, bhat, eb) for xi in xis] for eb in ebars]
                out[(a, bhat)] = (xis, ebars, Matrix.from_rows(rows, self.field)
                                  if rows and rows[0] else None)
        return out

    def vertical_inverse(self) -> dict:
        """K^{-1} cells Q[(a, eta_bar, b_hat, xi)] from exact block inversion."""
        if self._inverse_cache is not None:
            return self._inverse_cache
        q = {}
        for (a, bhat), (xis, ebars, mat) in self.blocks().items():
            if len(xis) != len(ebars):
                raise NotInvertibleBlock(
                    f"block ({a},{bhat}) is {len(ebars)}x{len(xis)}, not square")
            if not xis:
                continue
            inv = mat.inverse()
            if inv is None:
                raise NotInvertibleBlock(f"block ({a},{bhat}) is singular")
            for i, xi in enumerate(xis):
                for j, eb in enumerate(ebars):
                    q[(a, eb, bhat, xi)] = inv.rows[i][j]
        self._inverse_cache = q
        return q

    def inverse_cell(self, a, ebar, bhat, xi):
        return self.vertical_inverse().get((a, ebar, bhat, xi), self.field.zero)

    # -- renormalization -----------------------------------------------------------

    def renormalize_transfer(self, a, xi, bhat, ebar):
        """The dual-matrix entry implied by one-click rotation with lopsided
        coefficients: value * d_a * delta / d_xi."""
        val = self.cell(a, xi, bhat, ebar)
        return val * self.dim(a) * self.delta / self.dim(xi)

    def spherical_transfer_float(self, a, xi, bhat, ebar, value: float) -> float:
        """Float shadow of the renormalization in the spherical structure."""
        da, dxi = self.dim(a).to_float(), self.dim(xi).to_float()
        db, deb = self.dim(bhat).to_float(), self.dim(ebar).to_float()
        return value * math.sqrt(da * db / (dxi * deb))

    def dual_consistency(self) -> list:
        """Transfer every principal cell and compare against the stored dual
        matrix; returns the list of disagreeing loops (empty = consistent)."""
        if self.dual_cells is None:
            return []
        bad = []
        for lp, val in self.cells.items():
            a, xi, bhat, eb = lp.vertices
            want = self.renormalize_transfer(a, xi, bhat, eb)
            dlp = dual_loop(self.fourpartite, eb, a, xi, bhat)
            got = self.dual_cells.get(dlp, self.field.zero)
            if got != want:
                bad.append(lp)
        for dlp in self.dual_cells or ():
            eb, a, xi, bhat = dlp.vertices
            if zeta_loop(self.fourpartite, a, xi, bhat, eb) not in self.cells:
                bad.append(dlp)
        return bad

    def __repr__(self):
        return f"Connection({self.name or 'anonymous'}, {len(self.cells)} cells)"


def zeta_loop(fp: FourPartiteGraph, a, xi, bhat, ebar) -> Loop:
    verts = (a, xi, bhat, ebar)
    return Loop(verts, _loop_edges(fp, verts))


def dual_loop(fp: FourPartiteGraph, ebar, a, xi, bhat) -> Loop:
    verts = (ebar, a, xi, bhat)
    return Loop(verts, _loop_edges(fp, verts))


def _loop_edges(fp: FourPartiteGraph, verts) -> tuple:
    labels = []
    for i, v in enumerate(verts):
        w = verts[(i + 1) % len(verts)]
        es = [e for e in fp.adjacent(v, fp.vertex_class(w)) if e.other(v) == w]
        if not es:
            raise UnknownLoop(f"no edge {v} ~ {w}")
        labels.append(es[0].label)
    return tuple(labels)


def all_zeta_loops(fp: FourPartiteGraph) -> list[Loop]:
    out = []
    for a in fp.classes["NN"]:
        out.extend(loops(fp, a, 4, ("NN", "NM", "MM", "MN")))
    return out


def connection_load(fp: FourPartiteGraph, field, delta, payload: dict,
                    name: str = "") -> Connection:
    """Build a connection from the JSON cell table {"cells": [[loop, coeff]],
    "dual_cells": [...]}; loop strings read "a,xi;bhat,ebar"."""
    def parse_cells(items, dual=False):
        out = {}
        for loop_str, coeff in items:
            parts = loop_str.replace(";", ",").split(",")
            if len(parts) != 4:
                raise UnknownLoop(f"bad loop string {loop_str!r}")
            verts = tuple(p.strip() for p in parts)
            lp = Loop(verts, _loop_edges(fp, verts))
            out[lp] = field.parse(coeff)
        return out

    cells = parse_cells(payload["cells"])
    dual_cells = parse_cells(payload["dual_cells"], dual=True) if payload.get("dual_cells") else None
    return Connection(fp, field, delta, cells, dual_cells, name=name)


# -- bi-invertibility ---------------------------------------------------------------


@dataclass
class BiinvertibilityReport:
    connection: str
    vertical_ok: bool
    failures: list = dc_field(default_factory=list)  # (loop display, residual)

    @property
    def ok(self) -> bool:
        return self.vertical_ok and not self.failures

    def summary(self) -> str:
        if self.ok:
            return f"{self.connection}: bi-invertible (all residuals zero)"
        if not self.vertical_ok:
            return f"{self.connection}: vertical block not invertible"
        return (f"{self.connection}: {len(self.failures)} nonzero horizontal "
                f"residuals, e.g. {self.failures[0][0]}")


def check_biinvertible(conn: Connection) -> BiinvertibilityReport:
    """Verify the pair of planar equations: the vertical composite against the
    solved inverse is the identity by construction once every block inverts;
    the horizontal composite with the same inverse must match the
    Temperley-Lieb side exactly, cell for cell."""
    fp = conn.fourpartite
    try:
        conn.vertical_inverse()
    except NotInvertibleBlock as exc:
        return BiinvertibilityReport(conn.name, False, [(str(exc), None)])
    failures = []
    f = conn.field
    for xi in fp.classes["NM"]:
        for ebar in fp.classes["MN"]:
            ws = [w for w in fp.neighbors(xi, "NN") if fp.has_edge(ebar, w)]
            bs = [b for b in fp.neighbors(xi, "MM") if fp.has_edge(b, ebar)]
            for w in sorted(set(ws), key=fp.index):
                for u in sorted(set(ws), key=fp.index):
                    acc = f.zero
                    for b in sorted(set(bs), key=fp.index):
                        acc = acc + conn.dim(b) * conn.cell(w, xi, b, ebar) \
                            * conn.inverse_cell(u, ebar, b, xi)
                    if w == u:
                        acc = acc - conn.dim(xi) * conn.dim(ebar) / conn.dim(w)
                    if not acc.is_zero():
                        failures.append((f"{w},{xi},{u},{ebar}", acc))
    return BiinvertibilityReport(conn.name, True, failures)


# -- gauge action ---------------------------------------------------------------------


class GaugeElement:
    """Nonzero field values (exact layer) or complex numbers (float layer)
    attached to the edges of the four-partite graph; unspecified edges are 1."""

    def __init__(self, fp: FourPartiteGraph, values: dict, field=None):
        self.fp = fp
        self.field = field
        self.values = {}
        for key, val in values.items():
            label = key if isinstance(key, str) else self._edge_label(*key)
            if hasattr(val, "is_zero") and val.is_zero():
                raise ZeroGaugeValue(f"gauge value at {label} is zero")
            if not hasattr(val, "is_zero") and val == 0:
                raise ZeroGaugeValue(f"gauge value at {label} is zero")
            self.values[label] = val

    def _edge_label(self, a, b) -> str:
        es = [e for e in self.fp.adjacent(a, self.fp.vertex_class(b)) if e.other(a) == b]
        if not es:
            raise UnknownLoop(f"no edge {a} ~ {b}")
        return es[0].label

    def at(self, label: str):
        one = self.field.one if self.field is not None else 1.0
        return self.values.get(label, one)

    def inverse(self) -> "GaugeElement":
        inv = {}
        for k, v in self.values.items():
            inv[k] = v.inverse() if hasattr(v, "inverse") else 1.0 / v
        return GaugeElement(self.fp, inv, self.field)

    def compose(self, other: "GaugeElement") -> "GaugeElement":
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out[k] * v if k in out else v
        return GaugeElement(self.fp, out, self.field)


def gauge_apply(g: GaugeElement, conn: Connection) -> Connection:
    """Multiply each cell by the product of gauge values on its four edges."""
    cells = {}
    for lp, val in conn.cells.items():
        w = val
        for label in lp.edges:
            w = w * g.at(label)
        cells[lp] = w
    dual = None
    if conn.dual_cells is not None:
        dual = {}
        for lp, val in conn.dual_cells.items():
            w = val
            for label in lp.edges:
                w = w * g.at(label)
            dual[lp] = w
    return Connection(conn.fourpartite, conn.field, conn.delta, cells, dual,
                      name=f"gauge({conn.name})")


def alt_apply(g: GaugeElement, x, start_exponent: int = 1):
    """Alt(g): multiply each loop coefficient by the alternating product of
    g and g^{-1} over its edges (surrounding the box with beads)."""
    out = {}
    for lp, c in x.coeffs.items():
        w = c
        exp = start_exponent
        for label in lp.edges:
            val = g.at(label)
            w = w * (val if exp > 0 else (val.inverse() if hasattr(val, "inverse") else 1.0 / val))
            exp = -exp
        out[lp] = w
    return x.ctx.element(x.n, x.sign, out)
