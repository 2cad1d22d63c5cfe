"""The lopsided graph planar algebra of a bipartite graph.

Elements are functionals on based loops (equivalently block matrices indexed
by even-vertex pairs with path-indexed rows and columns).  A fixed vocabulary
of tangles acts by state sums whose critical-point coefficients are powers of
the lopsided dimensions d_v / delta^{shading(v)}:

    multiply        block-wise matrix product (no critical points)
    cap_top         join the two leftmost top points; encloses the region
                    between them, merges the outer regions (one maximum)
    cap_right       join the rightmost top/bottom points around the right
                    changeover (one maximum, one minimum)
    cup_top         insert an enclosed region at the top left (one minimum)
    include_right   add a through strand on the right (no critical points)
    rotate_one_click  shift the boundary by one point (one min, one max)
    trace_right     close everything off to the right
    star            the lopsided antilinear involution

A floating-point spherical shadow of the same vocabulary supports the natural
rescaling map and its intertwining check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .bigraph import Bigraph, DimensionTable, Loop, fp_dimensions, loops
from .errors import BoundaryMismatch, MixedGraphs
from .linalg import Matrix


class GpaContext:
    """A graph together with its exact field data; all tangle operations live
    here so elements stay lightweight."""

    def __init__(self, graph: Bigraph, field, delta, dims: Optional[DimensionTable] = None):
        self.graph = graph
        self.field = field
        self.delta = delta
        self.dims = dims or fp_dimensions(graph, field, delta)
        self._paths_cache: dict = {}
        self._loops_cache: dict = {}

    # -- boundaries -------------------------------------------------------------

    def base_vertices(self, sign: int) -> list[str]:
        want = 0 if sign > 0 else 1
        return [v for v in self.graph.vertices if self.graph.depth[v] % 2 == want]

    def all_loops(self, n: int, sign: int) -> list[Loop]:
        key = (n, sign)
        if key not in self._loops_cache:
            out = []
            for v in self.base_vertices(sign):
                out.extend(loops(self.graph, v, 2 * n))
            self._loops_cache[key] = out
        return self._loops_cache[key]

    def paths(self, a: str, b: str, n: int) -> list[tuple]:
        """Paths a -> b of length n as (vertices, edges) tuples, canonical order."""
        key = (a, b, n)
        if key in self._paths_cache:
            return self._paths_cache[key]
        out: list[tuple] = []

        def extend(v, verts, edges):
            if len(edges) == n:
                if v == b:
                    out.append((tuple(verts), tuple(edges)))
                return
            for e in self.graph.adjacent(v):
                w = e.other(v)
                verts.append(w)
                edges.append(e.label)
                extend(w, verts, edges)
                verts.pop()
                edges.pop()

        extend(a, [a], [])
        self._paths_cache[key] = out
        return out

    def lop(self, v: str):
        return self.dims.lopsided(v)

    # -- elements ----------------------------------------------------------------

    def zero(self, n: int, sign: int = 1) -> "GpaElement":
        return GpaElement(self, n, sign, {})

    def element(self, n: int, sign: int, coeffs: dict) -> "GpaElement":
        return GpaElement(self, n, sign, {lp: c for lp, c in coeffs.items()
                                          if not _is_zero(c)})

    def identity(self, n: int) -> "GpaElement":
        coeffs = {}
        for lp in self.all_loops(n, 1):
            top_v, top_e = lp.vertices[: n + 1], lp.edges[:n]
            bot_v = (lp.vertices[0],) + tuple(reversed(lp.vertices[n:]))
            bot_e = tuple(reversed(lp.edges[n:]))
            if top_v == bot_v and top_e == bot_e:
                coeffs[lp] = self.field.one
        return GpaElement(self, n, 1, coeffs)

    def from_blocks(self, n: int, blocks: dict, sign: int = 1) -> "GpaElement":
        """Assemble from {(a, b): matrix rows} in the canonical path order;
        entry (rho, pi) is the coefficient of the loop pi + reverse(rho)."""
        coeffs = {}
        for (a, b), rows in blocks.items():
            ps = self.paths(a, b, n)
            for i, rho in enumerate(ps):
                for j, pi in enumerate(ps):
                    val = rows[i][j]
                    if _is_zero(val):
                        continue
                    coeffs[_assemble_loop(pi, rho)] = val
        return GpaElement(self, n, sign, coeffs)

    def block(self, x: "GpaElement", a: str, b: str) -> Matrix:
        ps = self.paths(a, b, x.n)
        rows = [[x.coeff(_assemble_loop(pi, rho)) for pi in ps] for rho in ps]
        return Matrix.from_rows(rows, self.field)

    # -- vocabulary: exact lopsided action ----------------------------------------

    def multiply(self, x: "GpaElement", y: "GpaElement") -> "GpaElement":
        """Product in the convention where the block matrix of x*y is
        M[x] M[y]: the output takes its top from y and its bottom from x,
        contracting y's bottom path against x's top path."""
        if x.n != y.n or x.sign != y.sign:
            raise BoundaryMismatch("product needs matching boundaries")
        if x.ctx is not y.ctx:
            raise MixedGraphs("product needs a common graph context")
        n = x.n
        by_top: dict = {}
        for lp, c in x.coeffs.items():
            key = (lp.vertices[: n + 1], lp.edges[:n])
            by_top.setdefault(key, []).append((lp, c))
        out: dict = {}
        for lp, c in y.coeffs.items():
            bot_v = (lp.vertices[0],) + tuple(reversed(lp.vertices[n:]))
            bot_e = tuple(reversed(lp.edges[n:]))
            for lp2, c2 in by_top.get((bot_v, bot_e), ()):  # y's bottom = x's top
                combined = Loop(lp.vertices[: n + 1] + lp2.vertices[n + 1:],
                                lp.edges[:n] + lp2.edges[n:])
                prev = out.get(combined)
                term = c * c2
                out[combined] = term if prev is None else prev + term
        return self.element(n, x.sign, out)

    def cap_top(self, x: "GpaElement") -> "GpaElement":
        """Join top points 1 and 2; output is an (n-1)-box."""
        n = x.n
        if n < 1:
            raise BoundaryMismatch("cap needs at least one strand")
        out: dict = {}
        for lp, c in x.coeffs.items():
            if lp.vertices[0] != lp.vertices[2] or lp.edges[0] != lp.edges[1]:
                continue
            verts = (lp.vertices[0],) + lp.vertices[3:]
            edges = lp.edges[2:]
            key = Loop(verts, edges)
            term = c / self.lop(lp.vertices[0])
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
        return self.element(n - 1, x.sign, out)

    def cap_right(self, x: "GpaElement") -> "GpaElement":
        """Join the rightmost top and bottom points around the changeover."""
        n = x.n
        if n < 1:
            raise BoundaryMismatch("cap needs at least one strand")
        out: dict = {}
        for lp, c in x.coeffs.items():
            if lp.vertices[n - 1] != lp.vertices[(n + 1) % (2 * n)]:
                continue
            if lp.edges[n - 1] != lp.edges[n]:
                continue
            verts = lp.vertices[: n] + lp.vertices[n + 2:]
            edges = lp.edges[: n - 1] + lp.edges[n + 1:]
            key = Loop(verts, edges)
            term = c * self.lop(lp.vertices[n]) / self.lop(lp.vertices[n - 1])
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
        return self.element(n - 1, x.sign, out)

    def cup_top(self, x: "GpaElement") -> "GpaElement":
        """Insert an enclosed shaded region at the top left; (n+1)-box."""
        n = x.n
        out: dict = {}
        for lp, c in x.coeffs.items():
            v0 = lp.vertices[0]
            for e in self.graph.adjacent(v0):
                w = e.other(v0)
                if n == 0:
                    verts, edges = (v0, w), (e.label, e.label)
                else:
                    verts = (v0, w) + lp.vertices
                    edges = (e.label, e.label) + lp.edges
                out[Loop(verts, edges)] = c * self.lop(w)
        return self.element(n + 1, x.sign, out)

    def include_right(self, x: "GpaElement") -> "GpaElement":
        """Add a through strand on the right; no critical points."""
        n = x.n
        out: dict = {}
        for lp, c in x.coeffs.items():
            vn = lp.vertices[n] if n else lp.vertices[0]
            for e in self.graph.adjacent(vn):
                w = e.other(vn)
                if n == 0:
                    verts, edges = (vn, w), (e.label, e.label)
                else:
                    verts = lp.vertices[: n + 1] + (w, vn) + lp.vertices[n + 1:]
                    edges = lp.edges[:n] + (e.label, e.label) + lp.edges[n:]
                out[Loop(verts, edges)] = c
        return self.element(n + 1, x.sign, out)

    def rotate_one_click(self, x: "GpaElement", direction: int = 1) -> "GpaElement":
        """One-click rotation; the boundary shading flips.  Direction +1 sends
        the loop (w1..w_{2n-1} w0) to the value at (w0 w1 .. w_{2n-1})."""
        n = x.n
        if n == 0:
            return x
        out: dict = {}
        if direction > 0:
            for lp, c in x.coeffs.items():
                # x(w1..w0) contributes to output at w = (w0..w_{2n-1})
                w = lp.rotated(2 * n - 1)
                out[w] = c * self.lop(w.vertices[1]) / self.lop(w.vertices[n])
        else:
            for lp, c in x.coeffs.items():
                w = lp.rotated(1)
                out[w] = c * self.lop(lp.vertices[n]) / self.lop(lp.vertices[1])
        return self.element(n, -x.sign, out)

    def trace_right(self, x: "GpaElement") -> "GpaElement":
        """Close all strands to the right, landing in the 0-box space
        (functions on base vertices)."""
        y = x
        while y.n > 0:
            y = self.cap_right(y)
        return y

    def star(self, x: "GpaElement") -> "GpaElement":
        """Lopsided star: reverse each loop, weighted by the above/below
        lopsided dimension products; antilinear over the omega extension."""
        n = x.n
        out: dict = {}
        for lp, c in x.coeffs.items():
            rev = lp.reversed()
            w = self.field.one
            for i in range(1, n):
                w = w * self.lop(rev.vertices[i])
            for i in range(n + 1, 2 * n):
                w = w / self.lop(rev.vertices[i])
            out[rev] = _conj(c) * w
        return self.element(n, x.sign, out)

    def evaluate(self, op: "TangleOp", *inputs: "GpaElement") -> "GpaElement":
        """Dispatch a vocabulary tangle by name (the TangleOp carries its
        critical-point schema for the spherical shadow)."""
        fn = getattr(self, op.name)
        return fn(*inputs, *op.args)

    # -- floating-point spherical shadow ------------------------------------------

    def lop_float(self, v: str) -> float:
        return self.dims.lopsided(v).to_float()

    def dim_float(self, v: str) -> float:
        return self.dims.dim(v).to_float()

    def _shadow_factor(self, lp: Loop, n: int, allup: bool) -> float:
        """The loop rescaling of the natural map, in the basis where either
        half the boundary points face down (allup=False; changeovers excluded)
        or all of them face up (allup=True; everything past the base counts)."""
        w = 1.0
        if allup:
            for i in range(1, 2 * n):
                w *= self.lop_float(lp.vertices[i])
        else:
            for i in range(1, n):
                w *= self.lop_float(lp.vertices[i])
            for i in range(n + 1, 2 * n):
                w /= self.lop_float(lp.vertices[i])
        return math.sqrt(w)

    def natural_shadow(self, x: "GpaElement") -> dict:
        """The basis rescaling into the spherical picture: each loop gains
        sqrt(prod above d_lop / prod below d_lop); changeover vertices are
        excluded from both products."""
        return {lp: _to_float(c) * self._shadow_factor(lp, x.n, False)
                for lp, c in x.coeffs.items()}

    def spherical_apply(self, op: "TangleOp", *inputs: dict, n: int, sign: int) -> dict:
        """Apply the op to float coefficient dicts in the spherical structure."""
        name = op.name
        if name == "multiply":
            x, y = inputs
            by_top: dict = {}
            for lp, c in x.items():
                by_top.setdefault((lp.vertices[: n + 1], lp.edges[:n]), []).append((lp, c))
            out: dict = {}
            for lp, c in y.items():
                bot = ((lp.vertices[0],) + tuple(reversed(lp.vertices[n:])),
                       tuple(reversed(lp.edges[n:])))
                for lp2, c2 in by_top.get(bot, ()):
                    key = Loop(lp.vertices[: n + 1] + lp2.vertices[n + 1:],
                               lp.edges[:n] + lp2.edges[n:])
                    out[key] = out.get(key, 0.0) + c * c2
            return out
        if name == "cap_top":
            out = {}
            for lp, c in inputs[0].items():
                if lp.vertices[0] != lp.vertices[2] or lp.edges[0] != lp.edges[1]:
                    continue
                key = Loop((lp.vertices[0],) + lp.vertices[3:], lp.edges[2:])
                out[key] = out.get(key, 0.0) + c * math.sqrt(
                    self.dim_float(lp.vertices[1]) / self.dim_float(lp.vertices[0]))
            return out
        if name == "cap_right":
            out = {}
            for lp, c in inputs[0].items():
                if lp.vertices[n - 1] != lp.vertices[(n + 1) % (2 * n)] or lp.edges[n - 1] != lp.edges[n]:
                    continue
                key = Loop(lp.vertices[: n] + lp.vertices[n + 2:],
                           lp.edges[: n - 1] + lp.edges[n + 1:])
                out[key] = out.get(key, 0.0) + c * (
                    self.dim_float(lp.vertices[n]) / self.dim_float(lp.vertices[n - 1]))
            return out
        if name == "cup_top":
            out = {}
            for lp, c in inputs[0].items():
                v0 = lp.vertices[0]
                for e in self.graph.adjacent(v0):
                    w = e.other(v0)
                    key = Loop((v0, w) + lp.vertices, (e.label, e.label) + lp.edges)
                    out[key] = c * math.sqrt(self.dim_float(w) / self.dim_float(v0))
            return out
        if name == "include_right":
            out = {}
            for lp, c in inputs[0].items():
                vn = lp.vertices[n] if n else lp.vertices[0]
                for e in self.graph.adjacent(vn):
                    w = e.other(vn)
                    if n == 0:
                        key = Loop((lp.vertices[0], w), (e.label, e.label))
                    else:
                        key = Loop(lp.vertices[: n + 1] + (w, vn) + lp.vertices[n + 1:],
                                   lp.edges[:n] + (e.label, e.label) + lp.edges[n:])
                    out[key] = c
            return out
        if name == "rotate_one_click":
            direction = op.args[0] if op.args else 1
            out = {}
            if direction > 0:
                for lp, c in inputs[0].items():
                    w = lp.rotated(2 * n - 1)
                    out[w] = c * math.sqrt(
                        self.dim_float(w.vertices[1]) * self.dim_float(w.vertices[(n + 1) % (2 * n)])
                        / (self.dim_float(w.vertices[0]) * self.dim_float(w.vertices[n])))
            else:
                for lp, c in inputs[0].items():
                    w = lp.rotated(1)
                    out[w] = c * math.sqrt(
                        self.dim_float(lp.vertices[0]) * self.dim_float(lp.vertices[n])
                        / (self.dim_float(lp.vertices[1]) * self.dim_float(lp.vertices[(n + 1) % (2 * n)])))
            return out
        raise ValueError(f"no spherical shadow for op {name!r}")

    def check_intertwiner(self, op: "TangleOp", *inputs: "GpaElement") -> float:
        """Deviation in the intertwining relation between the two structures:
        natural(T_spherical(z)) = sqrt(delta)^s * T_lopsided(natural(z)),
        where s is the signed critical-point count of the tangle in its
        boundary presentation and z is the spherical preimage of the input."""
        x0 = inputs[0]
        allup = op.name in ("cap_top", "cup_top")
        n_in, sign_in = x0.n, x0.sign
        z = [{lp: _to_float(c) / self._shadow_factor(lp, x.n, allup)
              for lp, c in x.coeffs.items()} for x in inputs]
        rhs_sph = self.spherical_apply(op, *z, n=n_in, sign=sign_in)
        exact = self.evaluate(op, *inputs)
        n_out = exact.n
        lhs = {lp: v * self._shadow_factor(lp, n_out, allup)
               for lp, v in rhs_sph.items()}
        s = op.scale_exponent(n_in, sign_in)
        scale = self.delta.to_float() ** (s / 2.0)
        dev = 0.0
        for lp in set(lhs) | set(exact.coeffs):
            lopsided = _to_float(exact.coeffs[lp]) if lp in exact.coeffs else 0.0
            dev = max(dev, abs(lhs.get(lp, 0.0) - scale * lopsided))
        return dev


@dataclass(frozen=True)
class TangleOp:
    """A vocabulary tangle plus its critical-point schema.

    Each critical point is recorded as (sign, above_odd(n, sign) -> bool):
    sign +1 for a minimum, -1 for a maximum; above_odd says whether the region
    above the point is shaded, as a function of the input boundary.
    """

    name: str
    args: tuple = ()

    _SCHEMAS: dict = None

    def critical_points(self, n: int, sign: int) -> list[tuple[int, bool]]:
        base_even = sign > 0
        if self.name == "multiply" or self.name == "include_right":
            return []
        if self.name == "cap_top":
            # maximum; above it sits the basepoint region
            return [(-1, not base_even)]
        if self.name == "cup_top":
            return [(+1, base_even)]
        if self.name == "cap_right":
            # merged region at position n-1, enclosed at position n
            merged_odd = _position_odd(n - 1, base_even)
            enclosed_odd = _position_odd(n, base_even)
            return [(-1, merged_odd), (+1, enclosed_odd)]
        if self.name == "rotate_one_click":
            direction = self.args[0] if self.args else 1
            out_even = not base_even
            if direction > 0:
                return [(+1, _position_odd(1, out_even)), (-1, _position_odd(n, out_even))]
            return [(+1, _position_odd(1, base_even)), (-1, _position_odd(n, base_even))]
        raise ValueError(f"no schema for {self.name}")

    def intertwiner_counts(self, n: int, sign: int) -> tuple[int, int]:
        nn = mm = 0
        for s, above_shaded in self.critical_points(n, sign):
            if above_shaded:
                nn += s
            else:
                mm += s
        return nn, mm

    def scale_exponent(self, n: int, sign: int) -> int:
        """The power s with natural(T_sph(z)) = sqrt(delta)^s T_lop(natural z),
        for the boundary presentation each tangle is drawn in."""
        base_even = sign > 0
        if self.name in ("multiply", "include_right"):
            return 0
        if self.name in ("cap_top", "cup_top"):
            return 1 if base_even else -1
        if self.name == "cap_right":
            enclosed_odd = _position_odd(n, base_even)
            return 2 if enclosed_odd else -2
        if self.name == "rotate_one_click":
            # inverting the relation for the other parity flips the sign twice,
            # so both directions share one exponent per basepoint parity
            if n % 2 == 1:
                return 0
            return -2 if base_even else 2
        raise ValueError(f"no scale exponent for {self.name}")


def _position_odd(i: int, base_even: bool) -> bool:
    """Whether loop position i holds an odd (shaded) vertex."""
    return (i % 2 == 1) == base_even


class GpaElement:
    """A functional on based loops of fixed length and basepoint parity."""

    __slots__ = ("ctx", "n", "sign", "coeffs")

    def __init__(self, ctx: GpaContext, n: int, sign: int, coeffs: dict):
        self.ctx = ctx
        self.n = n
        self.sign = sign
        self.coeffs = coeffs

    def coeff(self, lp: Loop):
        return self.coeffs.get(lp, self.ctx.field.zero)

    def __add__(self, other: "GpaElement") -> "GpaElement":
        if (self.n, self.sign) != (other.n, other.sign):
            raise BoundaryMismatch("sum needs matching boundaries")
        out = dict(self.coeffs)
        for lp, c in other.coeffs.items():
            out[lp] = out[lp] + c if lp in out else c
        return self.ctx.element(self.n, self.sign, out)

    def __sub__(self, other: "GpaElement") -> "GpaElement":
        return self + other.scale(-self.ctx.field.one)

    def scale(self, c) -> "GpaElement":
        return self.ctx.element(self.n, self.sign, {lp: v * c for lp, v in self.coeffs.items()})

    def __mul__(self, other: "GpaElement") -> "GpaElement":
        return self.ctx.multiply(self, other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, GpaElement):
            return NotImplemented
        return (self.n, self.sign) == (other.n, other.sign) and self.coeffs == other.coeffs

    def support(self) -> list[Loop]:
        return sorted(self.coeffs, key=lambda lp: (lp.vertices, lp.edges))

    def __repr__(self):
        return f"GpaElement(n={self.n}, sign={self.sign:+d}, {len(self.coeffs)} loops)"


def _assemble_loop(top: tuple, bottom: tuple) -> Loop:
    """Loop with the given top and bottom paths (both run base -> changeover):
    vertices are the top path followed by the reversed bottom interior."""
    (tv, te), (bv, be) = top, bottom
    verts = tv + tuple(reversed(bv[1:-1]))
    edges = te + tuple(reversed(be))
    return Loop(verts, edges)


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def _conj(x):
    return x.conj() if hasattr(x, "conj") else x


def _to_float(x) -> float:
    if hasattr(x, "to_float"):
        return x.to_float()
    return float(x)
