"""Sparse polynomials in z_1..z_n, zbar_1..zbar_n and w over Q(i).

zbar is an independent formal variable (complexification); being
real-valued is a checkable predicate, not a representation constraint.
w is the single distinguished normal variable and carries weight 2 in
the weighted grading (z and zbar weigh 1).

Terms are stored as a sparse map Monomial -> coefficient with no zero
coefficients; iteration order, printing and serialization use the graded
lexicographic key (total degree, zexp, zbarexp, wexp) so identical
polynomials always render identically.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import ContainsW, DimensionMismatch, InconsistentConjugation, MalformedInput
from .scalars import GaussianRational, ONE, ZERO, as_scalar


class Monomial(NamedTuple):
    zexp: tuple
    zbarexp: tuple
    wexp: int

    def total_degree(self):
        return sum(self.zexp) + sum(self.zbarexp) + self.wexp

    def weighted_degree(self):
        return sum(self.zexp) + sum(self.zbarexp) + 2 * self.wexp

    def sort_key(self):
        return (self.total_degree(), self.zexp, self.zbarexp, self.wexp)

    def mul(self, other):
        return Monomial(
            tuple(a + b for a, b in zip(self.zexp, other.zexp)),
            tuple(a + b for a, b in zip(self.zbarexp, other.zbarexp)),
            self.wexp + other.wexp,
        )

    def conjugated(self):
        return Monomial(self.zbarexp, self.zexp, self.wexp)

    def text(self):
        parts = []
        for i, e in enumerate(self.zexp):
            if e == 1:
                parts.append(f"z{i + 1}")
            elif e > 1:
                parts.append(f"z{i + 1}^{e}")
        for i, e in enumerate(self.zbarexp):
            if e == 1:
                parts.append(f"zbar{i + 1}")
            elif e > 1:
                parts.append(f"zbar{i + 1}^{e}")
        if self.wexp == 1:
            parts.append("w")
        elif self.wexp > 1:
            parts.append(f"w^{self.wexp}")
        return " ".join(parts) if parts else "1"


def unit_monomial(n):
    return Monomial((0,) * n, (0,) * n, 0)


def parse_variable(var, n):
    """Accept "z3", "zbar2", "w" (or ("z", j) tuples with 1-based j)."""
    if isinstance(var, tuple):
        kind, *rest = var
        j = rest[0] if rest else None
    elif var == "w":
        kind, j = "w", None
    elif var.startswith("zbar"):
        kind, j = "zbar", int(var[4:])
    elif var.startswith("z"):
        kind, j = "z", int(var[1:])
    else:
        raise MalformedInput(f"unknown variable {var!r}")
    if kind == "w":
        return ("w", None)
    if not 1 <= j <= n:
        raise MalformedInput(f"variable index out of range: {var!r} with n={n}")
    return (kind, j - 1)


class Polynomial:
    """Immutable sparse polynomial over Q(i)."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=()):
        tmap = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mono, coeff in items:
            coeff = as_scalar(coeff)
            if not coeff:
                continue
            if len(mono.zexp) != n or len(mono.zbarexp) != n:
                raise DimensionMismatch(f"monomial arity != {n}")
            prev = tmap.get(mono)
            if prev is None:
                tmap[mono] = coeff
            else:
                s = prev + coeff
                if s:
                    tmap[mono] = s
                else:
                    del tmap[mono]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", tmap)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, c):
        return cls(n, [(unit_monomial(n), as_scalar(c))])

    @classmethod
    def variable(cls, n, var):
        kind, j = parse_variable(var, n)
        ze = [0] * n
        zb = [0] * n
        we = 0
        if kind == "z":
            ze[j] = 1
        elif kind == "zbar":
            zb[j] = 1
        else:
            we = 1
        return cls(n, [(Monomial(tuple(ze), tuple(zb), we), ONE)])

    @classmethod
    def from_terms(cls, n, triples):
        """triples: iterable of (zexp, zbarexp, wexp, coeff)."""
        return cls(
            n,
            [(Monomial(tuple(z), tuple(zb), int(w)), c) for z, zb, w, c in triples],
        )

    # -- views ---------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono):
        return self.terms.get(mono, ZERO)

    def has_w(self):
        return any(m.wexp for m in self.terms)

    def has_zbar(self):
        return any(any(m.zbarexp) for m in self.terms)

    def total_degree(self):
        """Max total degree, or -1 for the zero polynomial."""
        return max((m.total_degree() for m in self.terms), default=-1)

    def min_total_degree(self):
        return min((m.total_degree() for m in self.terms), default=-1)

    def weighted_degree(self):
        return max((m.weighted_degree() for m in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial(n={self.n}, {self.text()})"

    def text(self):
        """Canonical text form: `coeff * vars` terms joined by +."""
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * {m.text()}" for m, c in self.sorted_terms())

    __str__ = text

    # -- ring operations ------------------------------------------------------

    def _check_same_ring(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"ambient dimensions differ: {self.n} != {other.n}")

    def __add__(self, other):
        if isinstance(other, (int, GaussianRational)):
            other = Polynomial.constant(self.n, other)
        self._check_same_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        p = Polynomial.__new__(Polynomial)
        object.__setattr__(p, "n", self.n)
        object.__setattr__(p, "terms", out)
        return p

    def __neg__(self):
        p = Polynomial.__new__(Polynomial)
        object.__setattr__(p, "n", self.n)
        object.__setattr__(p, "terms", {m: -c for m, c in self.terms.items()})
        return p

    def __sub__(self, other):
        if isinstance(other, (int, GaussianRational)):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, GaussianRational)):
            c = as_scalar(other)
            if not c:
                return Polynomial.zero(self.n)
            return self.scale(c)
        self._check_same_ring(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2)
                c = c1 * c2
                prev = out.get(m)
                if prev is None:
                    out[m] = c
                else:
                    s = prev + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        p = Polynomial.__new__(Polynomial)
        object.__setattr__(p, "n", self.n)
        object.__setattr__(p, "terms", out)
        return p

    __rmul__ = __mul__

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return Polynomial.zero(self.n)
        p = Polynomial.__new__(Polynomial)
        object.__setattr__(p, "n", self.n)
        object.__setattr__(p, "terms", {m: c * v for m, v in self.terms.items()})
        return p

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise MalformedInput("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus and structure -------------------------------------------

    def conjugate_poly(self):
        """Swap z <-> zbar and conjugate coefficients.  Defined on the
        w-free subring; w is never conjugated in this setting."""
        if self.has_w():
            raise ContainsW("conjugation is defined on the w-free subring")
        return Polynomial(
            self.n, [(m.conjugated(), c.conjugate()) for m, c in self.terms.items()]
        )

    def is_real_valued(self):
        if self.has_w():
            raise ContainsW("realness test applies to w-free polynomials")
        for m, c in self.terms.items():
            if self.terms.get(m.conjugated(), ZERO) != c.conjugate():
                return False
        return True

    def partial_derivative(self, var):
        kind, j = parse_variable(var, self.n)
        out = []
        for m, c in self.terms.items():
            if kind == "z":
                e = m.zexp[j]
                if e:
                    ze = list(m.zexp)
                    ze[j] -= 1
                    out.append((Monomial(tuple(ze), m.zbarexp, m.wexp), c * e))
            elif kind == "zbar":
                e = m.zbarexp[j]
                if e:
                    zb = list(m.zbarexp)
                    zb[j] -= 1
                    out.append((Monomial(m.zexp, tuple(zb), m.wexp), c * e))
            else:
                if m.wexp:
                    out.append((Monomial(m.zexp, m.zbarexp, m.wexp - 1), c * m.wexp))
        return Polynomial(self.n, out)

    def homogeneous_part(self, d):
        return Polynomial(
            self.n, [(m, c) for m, c in self.terms.items() if m.total_degree() == d]
        )

    def weighted_part(self, d):
        return Polynomial(
            self.n, [(m, c) for m, c in self.terms.items() if m.weighted_degree() == d]
        )

    def homogeneous_decomposition(self):
        """dict degree -> part; the parts sum back to the polynomial."""
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(m.total_degree(), []).append((m, c))
        return {d: Polynomial(self.n, t) for d, t in sorted(parts.items())}

    def substitute_w(self, rho):
        """Replace w by the polynomial rho.  Requires rho without w and
        self without zbar (the holomorphic-extension use)."""
        if self.has_zbar():
            raise MalformedInput("substitute_w target must be zbar-free")
        if rho.has_w():
            raise MalformedInput("substitute_w replacement must be w-free")
        self._check_same_ring(rho)
        powers = {0: Polynomial.constant(self.n, 1)}

        def rho_power(k):
            if k not in powers:
                powers[k] = rho_power(k - 1) * rho
            return powers[k]

        result = Polynomial.zero(self.n)
        for m, c in self.terms.items():
            base = Polynomial(self.n, [(Monomial(m.zexp, m.zbarexp, 0), c)])
            result = result + (base * rho_power(m.wexp) if m.wexp else base)
        return result

    def substitute_linear(self, coeffs, consts=None, new_n=None,
                          zbar_coeffs=None, zbar_consts=None):
        """Compose with an affine map z_j = sum_k coeffs[j][k] xi_k + consts[j].

        zbar_j goes to the conjugate assignment automatically; if explicit
        zbar data is passed it must equal that conjugate.  w passes through
        untouched.  The result lives in `new_n` variables (default: the
        width of `coeffs`).
        """
        coeffs = [[as_scalar(x) for x in row] for row in coeffs]
        if len(coeffs) != self.n:
            raise DimensionMismatch(f"need {self.n} assignment rows")
        m = new_n if new_n is not None else (len(coeffs[0]) if coeffs else 0)
        if any(len(row) != m for row in coeffs):
            raise DimensionMismatch("ragged assignment rows")
        if consts is None:
            consts = [ZERO] * self.n
        consts = [as_scalar(x) for x in consts]
        if len(consts) != self.n:
            raise DimensionMismatch("need one constant per z variable")

        if zbar_coeffs is not None or zbar_consts is not None:
            zb_c = [[as_scalar(x) for x in row] for row in (zbar_coeffs or [])]
            zb_k = [as_scalar(x) for x in (zbar_consts or [ZERO] * self.n)]
            expect_c = [[x.conjugate() for x in row] for row in coeffs]
            expect_k = [x.conjugate() for x in consts]
            if zb_c != expect_c or zb_k != expect_k:
                raise InconsistentConjugation(
                    "zbar assignment must be the conjugate of the z assignment"
                )

        unit = unit_monomial(m)
        z_images = []
        zbar_images = []
        for j in range(self.n):
            terms = []
            if consts[j]:
                terms.append((unit, consts[j]))
            for k in range(m):
                if coeffs[j][k]:
                    ze = [0] * m
                    ze[k] = 1
                    terms.append((Monomial(tuple(ze), (0,) * m, 0), coeffs[j][k]))
            img = Polynomial(m, terms)
            z_images.append(img)
            zbar_images.append(img.conjugate_poly())

        cache = {}

        def image_power(which, j, e):
            key = (which, j, e)
            if key not in cache:
                if e == 0:
                    cache[key] = Polynomial.constant(m, 1)
                else:
                    base = z_images[j] if which == "z" else zbar_images[j]
                    cache[key] = image_power(which, j, e - 1) * base
            return cache[key]

        result = Polynomial.zero(m)
        for mono, c in self.terms.items():
            factor = Polynomial(m, [(Monomial((0,) * m, (0,) * m, mono.wexp), c)])
            for j, e in enumerate(mono.zexp):
                if e:
                    factor = factor * image_power("z", j, e)
            for j, e in enumerate(mono.zbarexp):
                if e:
                    factor = factor * image_power("zbar", j, e)
            result = result + factor
        return result

    def evaluate(self, zpoint, wvalue=None):
        """Exact evaluation with zbar_j forced to conjugate(z_j)."""
        if len(zpoint) != self.n:
            raise DimensionMismatch(f"point dimension {len(zpoint)} != {self.n}")
        zs = [as_scalar(z) for z in zpoint]
        zbars = [z.conjugate() for z in zs]
        if wvalue is None:
            if self.has_w():
                raise MalformedInput("polynomial contains w: a w value is required")
            wval = ZERO
        else:
            wval = as_scalar(wvalue)
        total = ZERO
        for m, c in self.terms.items():
            v = c
            for j, e in enumerate(m.zexp):
                for _ in range(e):
                    v = v * zs[j]
            for j, e in enumerate(m.zbarexp):
                for _ in range(e):
                    v = v * zbars[j]
            for _ in range(m.wexp):
                v = v * wval
            total = total + v
        return total


def iter_exponents(nvars, total):
    """All exponent tuples of length nvars summing to total, lexicographic
    descending in the first coordinate."""
    if nvars == 0:
        if total == 0:
            yield ()
        return
    if nvars == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in iter_exponents(nvars - 1, total - first):
            yield (first,) + rest


def monomials_of_degree(n, d):
    """All degree-d monomials in z, zbar (no w), graded-lex descending."""
    out = []
    for zdeg in range(d, -1, -1):
        for ze in iter_exponents(n, zdeg):
            for zb in iter_exponents(n, d - zdeg):
                out.append(Monomial(ze, zb, 0))
    return out
