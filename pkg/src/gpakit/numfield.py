"""Exact arithmetic in real algebraic number fields Q(alpha).

A field is presented by an integer minimal polynomial together with an
isolating interval certifying which real root the generator denotes.  Elements
are rational-coefficient polynomials in the generator, reduced modulo the
minimal polynomial.  Signs and decimal enclosures are decided by certified
interval refinement, never by floating point.

Irreducibility of the minimal polynomial is asserted by the caller and policed
lazily: any nonconstant gcd met during inversion raises ZeroDivisorEncountered.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

import mpmath

from . import polys
from .errors import (
    AmbiguousRoot,
    DivisionByZero,
    MixedFields,
    NegativeInput,
    NoRootNearApprox,
    NotSquarefree,
    ZeroDivisorEncountered,
)

# Reconstruction bounds for sqrt_in_field, recorded here so a None result is
# auditable: candidates are built at 256-bit precision and rationalized with
# numerator and denominator capped at 2**64.
SQRT_HEIGHT_BOUND = 2**64
SQRT_PRECISION_BITS = 256


class NumberField:
    """Q(alpha) for a designated real root alpha of an integer polynomial."""

    def __init__(self, min_poly_desc: Iterable, approx_root: str | Fraction,
                 generator: str = "a"):
        coeffs = [Fraction(c) for c in min_poly_desc]
        if len(coeffs) < 2 or coeffs[0] == 0:
            raise NoRootNearApprox("minimal polynomial must be nonconstant")
        p = polys.poly(reversed(coeffs))
        if p[-1] < 0:
            p = polys.neg(p)
        if not polys.is_squarefree(p):
            raise NotSquarefree(f"{list(min_poly_desc)} has a repeated root")
        self.min_poly = p
        self.degree = polys.degree(p)
        self.generator = generator
        self._sturm = polys.sturm_sequence(p)
        approx = Fraction(str(approx_root))
        radius = Fraction(1, 2)
        n = polys.count_roots(p, approx - radius, approx + radius, self._sturm)
        if n == 0:
            raise NoRootNearApprox(f"no root of {list(min_poly_desc)} within 0.5 of {approx_root}")
        if n > 1:
            raise AmbiguousRoot(
                f"{n} roots of {list(min_poly_desc)} within 0.5 of {approx_root}")
        try:
            self._interval = polys.isolate_root_near(p, approx, radius)
        except LookupError as exc:  # pragma: no cover - guarded by count above
            raise NoRootNearApprox(str(exc)) from exc
        # reduction table: alpha^k for k = degree .. 2*degree-2 as power-basis rows
        self._powers = self._reduction_table()
        self.zero = FieldElement(self, (Fraction(0),) * self.degree)
        self.one = FieldElement(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))
        self.gen = FieldElement(
            self, tuple(Fraction(int(i == 1)) for i in range(self.degree))
        ) if self.degree > 1 else self.one

    def _reduction_table(self):
        d = self.degree
        # alpha^d = -(p[0] + p[1] alpha + ...)/p[d]
        lead = self.min_poly[-1]
        base = [-c / lead for c in self.min_poly[:-1]]
        rows = [list(base)]
        for _ in range(d - 2):
            prev = rows[-1]
            nxt = [Fraction(0)] * d
            for i in range(d - 1):
                nxt[i + 1] += prev[i]
            for i in range(d):
                nxt[i] += prev[d - 1] * base[i]
            rows.append(nxt)
        return [tuple(r) for r in rows]

    # -- construction ----------------------------------------------------------

    def element(self, coeffs) -> FieldElement:
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            cs = self._reduce(cs)
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def from_rational(self, q) -> FieldElement:
        return self.element([Fraction(q)])

    def brace(self, a, b, c) -> FieldElement:
        """The paper-style shorthand {a,b,c} = a*alpha^4 + b*alpha^2 + c."""
        cs = [Fraction(0)] * 5
        cs[0], cs[2], cs[4] = Fraction(c), Fraction(b), Fraction(a)
        return self.element(cs)

    def parse(self, text: str) -> FieldElement:
        return parse_element(self, text)

    def _reduce(self, cs: list[Fraction]) -> list[Fraction]:
        d = self.degree
        out = list(cs[:d]) + [Fraction(0)] * max(0, d - len(cs))
        for k in range(len(cs) - 1, d - 1, -1):
            c = cs[k]
            if c:
                row = self._powers[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return out

    # -- certified numerics ----------------------------------------------------

    def refine_interval(self, width: Fraction) -> tuple[Fraction, Fraction]:
        lo, hi = self._interval
        if hi - lo > width:
            lo, hi = polys.refine_root(self.min_poly, lo, hi, width, self._sturm)
            self._interval = (lo, hi)
        return self._interval

    def root_float(self, dps: int = 30) -> mpmath.mpf:
        lo, hi = self.refine_interval(Fraction(1, 10 ** (dps + 5)))
        with mpmath.workdps(dps + 10):
            return mpmath.mpf(((lo + hi) / 2).numerator) / ((lo + hi) / 2).denominator

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.min_poly == other.min_poly
                and self._contains_same_root(other))

    def _contains_same_root(self, other: "NumberField") -> bool:
        lo1, hi1 = self._interval
        lo2, hi2 = other._interval
        return max(lo1, lo2) <= min(hi1, hi2) or polys.count_roots(
            self.min_poly, min(lo1, lo2), max(hi1, hi2), self._sturm) == 1

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        desc = [str(c) for c in reversed(self.min_poly)]
        lo, hi = self._interval
        return f"NumberField([{', '.join(desc)}], root~{float((lo + hi) / 2):.5f})"


def field_create(min_poly, approx_root, generator: str = "a") -> NumberField:
    """Create Q(alpha); `min_poly` lists integer coefficients leading-first,
    matching the lambda_p^(x) root notation."""
    return NumberField(min_poly, approx_root, generator)


class FieldElement:
    """Immutable element of a NumberField in the power basis."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- ring structure --------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise MixedFields("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.degree
        out = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return FieldElement(self.field, tuple(self.field._reduce(out)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero field element")
        # extended Euclid in Q[x]: s*self + t*minpoly = gcd
        a = polys.poly(self.coeffs)
        b = self.field.min_poly
        s0, s1 = polys.poly([1]), polys.poly([])
        while b:
            q, r = polys.divmod_poly(a, b)
            a, b = b, r
            s0, s1 = s1, polys.sub(s0, polys.mul(q, s1))
        if polys.degree(a) > 0:
            raise ZeroDivisorEncountered(
                "nonconstant gcd with the minimal polynomial; the field presentation is reducible")
        inv = polys.scale(s0, 1 / a[0])
        return self.field.element(list(inv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    # -- order structure via the designated real embedding ----------------------

    def sign(self) -> int:
        if self.is_zero():
            return 0
        p = polys.poly(self.coeffs)
        width = Fraction(1, 2)
        for attempt in range(10_000):
            lo, hi = self.field.refine_interval(width)
            vlo, vhi = polys.eval_interval(p, lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            width /= 16
            if attempt == 20:
                # nonzero reduced element evaluating to 0 at alpha would mean
                # the minimal polynomial is reducible; check once, exactly
                g = polys.gcd(p, self.field.min_poly)
                if polys.degree(g) > 0 and polys.count_roots(g, lo, hi) > 0:
                    raise ZeroDivisorEncountered(
                        "element vanishes at the designated root; minimal polynomial reducible")
        raise ZeroDivisorEncountered("sign refinement failed to converge")

    def interval(self, width: Fraction = Fraction(1, 10**20)) -> tuple[Fraction, Fraction]:
        """Certified enclosure of the element's real value, narrower than width."""
        p = polys.poly(self.coeffs)
        field_width = Fraction(1, 2)
        while True:
            lo, hi = self.field.refine_interval(field_width)
            vlo, vhi = polys.eval_interval(p, lo, hi)
            if vhi - vlo < width:
                return vlo, vhi
            field_width /= 16

    def to_float(self) -> float:
        lo, hi = self.interval(Fraction(1, 10**25))
        mid = (lo + hi) / 2
        return mid.numerator / mid.denominator

    def to_mpf(self, dps: int = 40) -> mpmath.mpf:
        lo, hi = self.interval(Fraction(1, 10 ** (dps + 5)))
        mid = (lo + hi) / 2
        with mpmath.workdps(dps + 10):
            return mpmath.mpf(mid.numerator) / mid.denominator

    def compare(self, other: "FieldElement", width: Fraction = Fraction(1, 10**20)) -> int:
        """Certified comparison across (possibly different) fields.

        Returns -1/0/+1; 0 only when both elements live in the same field and
        are exactly equal.  Raises AmbiguousRoot if the certified enclosures at
        the requested width overlap without exact equality being available.
        """
        if isinstance(other, FieldElement) and other.field == self.field:
            return (self - other).sign()
        lo1, hi1 = self.interval(width)
        lo2, hi2 = other.interval(width)
        if hi1 < lo2:
            return -1
        if hi2 < lo1:
            return 1
        raise AmbiguousRoot("enclosures overlap at the requested width; elements may be equal")

    def __lt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __repr__(self):
        return f"<{format_element(self)}>"


def sign(a: FieldElement) -> int:
    return a.sign()


def sqrt_in_field(a: FieldElement) -> Optional[FieldElement]:
    """Exact square root in the same field, or None.

    Candidates come from square roots in every embedding (sign choices
    enumerated), solved back to power-basis coordinates and rationalized at
    the documented height bound; the winner is verified exactly.
    """
    if a.sign() < 0:
        raise NegativeInput("sqrt of a negative element")
    if a.is_zero():
        return a.field.zero
    field = a.field
    d = field.degree
    with mpmath.workprec(SQRT_PRECISION_BITS):
        roots = mpmath.polyroots([mpmath.mpf(str(c)) for c in reversed(field.min_poly)],
                                 maxsteps=200, extraprec=200)
        pa = list(a.coeffs)
        values = [sum(mpmath.mpf(str(c)) * r**i if mpmath.im(r) == 0 else
                      mpmath.mpc(str(c)) * r**i for i, c in enumerate(pa)) for r in roots]
        sqrts = [mpmath.sqrt(v) for v in values]
        vander = mpmath.matrix([[r**i for i in range(d)] for r in roots])
        for mask in range(2**d):
            rhs = mpmath.matrix([sqrts[i] * (1 if mask & (1 << i) == 0 else -1)
                                 for i in range(d)])
            try:
                sol = mpmath.lu_solve(vander, rhs)
            except ZeroDivisionError:  # pragma: no cover - squarefree => distinct roots
                continue
            if any(abs(mpmath.im(x)) > mpmath.mpf(2) ** -60 for x in sol):
                continue
            coeffs = []
            ok = True
            for x in sol:
                fr = _rationalize(mpmath.re(x))
                if fr is None:
                    ok = False
                    break
                coeffs.append(fr)
            if not ok:
                continue
            cand = field.element(coeffs)
            if cand * cand == a:
                return cand if cand.sign() >= 0 else -cand
    return None


def _rationalize(x: mpmath.mpf) -> Optional[Fraction]:
    fr = Fraction(mpmath.nstr(x, 50, strip_zeros=False)).limit_denominator(SQRT_HEIGHT_BOUND)
    if abs(fr.numerator) > SQRT_HEIGHT_BOUND:
        return None
    with mpmath.workprec(SQRT_PRECISION_BITS):
        err = abs(x - mpmath.mpf(fr.numerator) / fr.denominator)
        if err > mpmath.mpf(2) ** -(SQRT_PRECISION_BITS // 2):
            return None
    return fr


def minimal_polynomial(a: FieldElement) -> polys.Poly:
    """Minimal polynomial of the element over Q (monic, ascending coeffs)."""
    field = a.field
    d = field.degree
    powers = [field.one]
    for _ in range(d):
        powers.append(powers[-1] * a)
    # find least k such that 1, a, .., a^k are dependent
    from .linalg import Matrix  # local import to avoid a cycle at module load
    for k in range(1, d + 1):
        rows = [list(powers[i].coeffs) for i in range(k + 1)]
        mat = Matrix.from_rows_rational(rows)
        null = mat.left_nullspace()
        if null:
            v = null[0]
            lead = v[k]
            return polys.poly([c / lead for c in v])
    raise AssertionError("element must satisfy a degree <= [field:Q] relation")


# -- the omega extension -------------------------------------------------------


class CyclotomicExtension:
    """Degree-2 extension of a real base field by a primitive cube root of
    unity:  elements are u + v*omega with omega^2 + omega + 1 = 0."""

    def __init__(self, base: NumberField):
        self.base = base
        self.zero = CycElement(self, base.zero, base.zero)
        self.one = CycElement(self, base.one, base.zero)
        self.omega = CycElement(self, base.zero, base.one)

    def element(self, u, v=None) -> "CycElement":
        if isinstance(u, CycElement):
            return u
        if isinstance(u, (int, Fraction)):
            u = self.base.from_rational(u)
        if v is None:
            v = self.base.zero
        elif isinstance(v, (int, Fraction)):
            v = self.base.from_rational(v)
        return CycElement(self, u, v)

    def embed(self, a: FieldElement) -> "CycElement":
        return CycElement(self, a, self.base.zero)

    def __eq__(self, other):
        return isinstance(other, CyclotomicExtension) and self.base == other.base

    def __hash__(self):
        return hash(("omega", self.base))

    def __repr__(self):
        return f"CyclotomicExtension({self.base!r})"


class CycElement:
    """u + v*omega over the base field; conjugation sends omega to omega^2."""

    __slots__ = ("ext", "u", "v")

    def __init__(self, ext: CyclotomicExtension, u: FieldElement, v: FieldElement):
        self.ext = ext
        self.u = u
        self.v = v

    def _coerce(self, other):
        if isinstance(other, CycElement):
            if other.ext != self.ext:
                raise MixedFields("elements of different omega extensions")
            return other
        if isinstance(other, FieldElement):
            return self.ext.embed(other)
        if isinstance(other, (int, Fraction)):
            return self.ext.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycElement(self.ext, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return CycElement(self.ext, -self.u, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycElement(self.ext, self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (u1 + v1 w)(u2 + v2 w) with w^2 = -1 - w
        uu = self.u * o.u - self.v * o.v
        vv = self.u * o.v + self.v * o.u - self.v * o.v
        return CycElement(self.ext, uu, vv)

    __rmul__ = __mul__

    def conj(self) -> "CycElement":
        return CycElement(self.ext, self.u - self.v, -self.v)

    def norm(self) -> FieldElement:
        return self.u * self.u - self.u * self.v + self.v * self.v

    def inverse(self) -> "CycElement":
        n = self.norm()
        if n.is_zero():
            raise DivisionByZero("inverse of zero")
        ninv = n.inverse()
        c = self.conj()
        return CycElement(self.ext, c.u * ninv, c.v * ninv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ext.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def to_complex(self) -> complex:
        w = complex(-0.5, 3**0.5 / 2)
        return self.u.to_float() + self.v.to_float() * w

    def __repr__(self):
        return f"<{format_element(self.u)} + ({format_element(self.v)})*w>"


# -- parsing and formatting ----------------------------------------------------


def parse_field_declaration(text: str) -> NumberField:
    """Parse declarations like "field a: [1,-2,-1,1] near 2.25"."""
    body = text.strip()
    if body.startswith("field"):
        body = body[len("field"):].strip()
    name, _, rest = body.partition(":")
    name = name.strip() or "a"
    coeff_part, _, approx = rest.partition("near")
    coeffs = [Fraction(s.strip()) for s in coeff_part.strip().strip("[]").split(",")]
    return NumberField(coeffs, approx.strip(), generator=name)


def parse_element(field: NumberField, text: str) -> FieldElement:
    """Parse "2*a^4 - 11*a^2 + 5" or the brace shorthand "{2,-11,5}"."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty element string")
    if s.startswith("{") and s.endswith("}"):
        parts = [Fraction(p) for p in s[1:-1].split(",")]
        if len(parts) != 3:
            raise ValueError(f"brace shorthand needs three entries: {text!r}")
        return field.brace(*parts)
    var = field.generator
    # split into signed terms
    terms: list[str] = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*/^(":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    acc = field.zero
    for term in terms:
        if not term or term in "+-":
            raise ValueError(f"malformed term in {text!r}")
        tsign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                tsign = -tsign
            term = term[1:]
        coef = Fraction(1)
        power = 0
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if factor[0].isalpha():
                fname, _, exp = factor.partition("^")
                if fname != var:
                    raise ValueError(f"unknown generator {fname!r} (field uses {var!r})")
                power += int(exp) if exp else 1
            else:
                coef *= Fraction(factor)
        cs = [Fraction(0)] * (power + 1)
        cs[power] = coef * tsign
        acc = acc + field.element(cs)
    return acc


def format_element(a: FieldElement, var: str | None = None) -> str:
    var = var or a.field.generator
    parts = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            stem = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
            parts.append(("-" if c < 0 else "") + stem if not parts
                         else ("- " if c < 0 else "+ ") + stem)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" {p}" if p.startswith(("+", "-")) else f" + {p}"
    return out
