"""Quadric and perturbed graph models w = A(z,zbar) + B(z,z) + conj(B(z,z)) (+ E).

Everything here stays in exact arithmetic over Q(i): Hermitian congruence
diagonalization (inertia only, no eigenvalues), CR singular sets as exact
real-linear systems, slices along complex directions, Bishop invariants
exposed as exact squares, elliptic-direction search with exact
certification, and conic classification of slice fibers.

Floats enter only through the two explicitly numeric paths: the
rationalize-and-verify step of the elliptic-direction search (every
returned direction is re-verified exactly) and `classify_normal_form`
in numeric mode.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    Degenerate,
    DegenerateSlice,
    DimensionMismatch,
    InvariantViolation,
    MalformedInput,
    NotO3,
    UnsupportedDimension,
    UnsupportedModel,
    ZeroDirection,
)
from .linalg import ExactMatrix, nullspace, rank, rref, solve
from .polynomials import Monomial, Polynomial
from .scalars import GaussianRational, ONE, ZERO, as_scalar, gr, rational_sqrt


# ---------------------------------------------------------------------------
# Forms and models
# ---------------------------------------------------------------------------


class HermitianForm:
    """A(z, zbar) = sum a_jk z_j zbar_k with a_jk = conj(a_kj)."""

    __slots__ = ("n", "entries")

    def __init__(self, entries):
        rows = [tuple(as_scalar(x) for x in row) for row in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("Hermitian form needs a square grid")
        for j in range(n):
            for k in range(n):
                if rows[j][k] != rows[k][j].conjugate():
                    raise InvariantViolation(
                        f"A[{j + 1}][{k + 1}] != conj(A[{k + 1}][{j + 1}])"
                    )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("HermitianForm is immutable")

    def __eq__(self, other):
        return isinstance(other, HermitianForm) and self.entries == other.entries

    def __hash__(self):
        return hash(("H", self.entries))

    def matrix(self):
        return ExactMatrix(self.entries)

    def value(self, c):
        """A(c, conj(c)); always real."""
        c = [as_scalar(x) for x in c]
        total = ZERO
        for j in range(self.n):
            if not c[j]:
                continue
            for k in range(self.n):
                a = self.entries[j][k]
                if a and c[k]:
                    total = total + a * c[j] * c[k].conjugate()
        return total

    def pair(self, u, v):
        """Sesquilinear value sum a_jk u_j conj(v_k)."""
        u = [as_scalar(x) for x in u]
        v = [as_scalar(x) for x in v]
        total = ZERO
        for j in range(self.n):
            if not u[j]:
                continue
            for k in range(self.n):
                a = self.entries[j][k]
                if a and v[k]:
                    total = total + a * u[j] * v[k].conjugate()
        return total

    def polynomial(self):
        n = self.n
        terms = []
        for j in range(n):
            for k in range(n):
                a = self.entries[j][k]
                if a:
                    ze = [0] * n
                    zb = [0] * n
                    ze[j] += 1
                    zb[k] += 1
                    terms.append((Monomial(tuple(ze), tuple(zb), 0), a))
        return Polynomial(n, terms)

    @classmethod
    def diagonal(cls, values):
        vals = [as_scalar(v) for v in values]
        n = len(vals)
        return cls([[vals[j] if j == k else ZERO for k in range(n)] for j in range(n)])


class SymmetricForm:
    """B(z, z) = sum b_jk z_j z_k with b_jk = b_kj."""

    __slots__ = ("n", "entries")

    def __init__(self, entries):
        rows = [tuple(as_scalar(x) for x in row) for row in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("symmetric form needs a square grid")
        for j in range(n):
            for k in range(j + 1, n):
                if rows[j][k] != rows[k][j]:
                    raise InvariantViolation(f"B[{j + 1}][{k + 1}] != B[{k + 1}][{j + 1}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("SymmetricForm is immutable")

    def __eq__(self, other):
        return isinstance(other, SymmetricForm) and self.entries == other.entries

    def __hash__(self):
        return hash(("S", self.entries))

    def matrix(self):
        return ExactMatrix(self.entries)

    def value(self, c):
        c = [as_scalar(x) for x in c]
        total = ZERO
        for j in range(self.n):
            if not c[j]:
                continue
            for k in range(self.n):
                b = self.entries[j][k]
                if b and c[k]:
                    total = total + b * c[j] * c[k]
        return total

    def pair(self, u, v):
        """Bilinear value sum b_jk u_j v_k."""
        u = [as_scalar(x) for x in u]
        v = [as_scalar(x) for x in v]
        total = ZERO
        for j in range(self.n):
            if not u[j]:
                continue
            for k in range(self.n):
                b = self.entries[j][k]
                if b and v[k]:
                    total = total + b * u[j] * v[k]
        return total

    def polynomial(self):
        n = self.n
        terms = []
        for j in range(n):
            for k in range(n):
                b = self.entries[j][k]
                if b:
                    ze = [0] * n
                    ze[j] += 1
                    ze[k] += 1
                    terms.append((Monomial(tuple(ze), (0,) * n, 0), b))
        return Polynomial(n, terms)

    @classmethod
    def diagonal(cls, values):
        vals = [as_scalar(v) for v in values]
        n = len(vals)
        return cls([[vals[j] if j == k else ZERO for k in range(n)] for j in range(n)])

    @classmethod
    def zero(cls, n):
        return cls([[ZERO] * n for _ in range(n)])


class QuadricModel:
    """The quadric graph w = A(z,zbar) + B(z,z) + conj(B(z,z))."""

    __slots__ = ("n", "A", "B", "name")

    def __init__(self, A, B, name=None):
        if A.n != B.n:
            raise DimensionMismatch("A and B dimensions differ")
        object.__setattr__(self, "n", A.n)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("QuadricModel is immutable")

    def __eq__(self, other):
        return isinstance(other, QuadricModel) and (self.A, self.B) == (other.A, other.B)

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return self.name or f"QuadricModel(n={self.n})"

    def q_polynomial(self):
        b = self.B.polynomial()
        return self.A.polynomial() + b + b.conjugate_poly()

    rho_polynomial = q_polynomial

    def quadric(self):
        return self

    def perturbation(self):
        return Polynomial.zero(self.n)

    def is_nondegenerate(self):
        return is_nondegenerate(self.A)


class PerturbedModel:
    """Quadric model plus a real-valued O(3) perturbation E."""

    __slots__ = ("base", "E", "n")

    def __init__(self, base, E):
        if E.n != base.n:
            raise DimensionMismatch("perturbation dimension differs from the model")
        if E.has_w():
            raise InvariantViolation("E must not contain w")
        if not E.is_real_valued():
            raise InvariantViolation("E must be real-valued")
        if E and E.min_total_degree() < 3:
            raise NotO3(f"E has a term of degree {E.min_total_degree()} < 3")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "n", base.n)

    def __setattr__(self, name, value):
        raise AttributeError("PerturbedModel is immutable")

    def __eq__(self, other):
        return isinstance(other, PerturbedModel) and (self.base, self.E) == (other.base, other.E)

    def __hash__(self):
        return hash((self.base, self.E))

    @property
    def A(self):
        return self.base.A

    @property
    def B(self):
        return self.base.B

    def q_polynomial(self):
        return self.base.q_polynomial()

    def rho_polynomial(self):
        return self.base.q_polynomial() + self.E

    def quadric(self):
        return self.base

    def perturbation(self):
        return self.E

    def is_nondegenerate(self):
        return is_nondegenerate(self.A)


def build_q(model):
    """The defining real-valued polynomial of the quadric part."""
    return model.q_polynomial()


def is_nondegenerate(A):
    return rank(A.matrix()) == A.n


# ---------------------------------------------------------------------------
# Canonical model builders (Coffman shapes and the Bishop quadric)
# ---------------------------------------------------------------------------


def type_p(l1, l2):
    return QuadricModel(
        HermitianForm.diagonal([1, 1]),
        SymmetricForm.diagonal([l1, l2]),
        name=f"(P) l1={l1} l2={l2}",
    )


def type_mi(l1, l2):
    return QuadricModel(
        HermitianForm.diagonal([1, -1]),
        SymmetricForm.diagonal([l1, l2]),
        name=f"(M.I) l1={l1} l2={l2}",
    )


def type_mii(lam):
    half = as_scalar(lam) * gr(Fraction(1, 2))
    return QuadricModel(
        HermitianForm.diagonal([1, -1]),
        SymmetricForm([[ZERO, half], [half, ZERO]]),
        name=f"(M.II) lam={lam}",
    )


def type_miii():
    h = gr(Fraction(1, 2))
    return QuadricModel(
        HermitianForm.diagonal([1, -1]),
        SymmetricForm([[h, h], [h, h]]),
        name="(M.III)",
    )


def bishop_model(lam):
    return QuadricModel(
        HermitianForm.diagonal([1]),
        SymmetricForm.diagonal([lam]),
        name=f"Bishop lam={lam}",
    )


# ---------------------------------------------------------------------------
# Hermitian congruence diagonalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HermitianDiagonalization:
    """Change of basis z = P z' with A(Pc', conj(Pc')) = sum d_j |c'_j|^2.

    Positive d's come first; `signature` is (#positive, #negative).
    `majority` is False when there are more negative than positive entries,
    which no z-coordinate change can fix (flipping w would).
    """

    change: ExactMatrix
    diagonal: tuple
    signs: tuple
    signature: tuple
    majority: bool

    def column(self, k):
        return tuple(self.change.entries[j][k] for j in range(self.change.rows))


def diagonalize_hermitian(A):
    n = A.n
    M = [[A.entries[j][k] for k in range(n)] for j in range(n)]
    P = [[ONE if j == k else ZERO for k in range(n)] for j in range(n)]

    def p_col_add(dst, src, t):
        for j in range(n):
            if P[j][src]:
                P[j][dst] = P[j][dst] + t * P[j][src]

    def p_col_swap(a, b):
        for j in range(n):
            P[j][a], P[j][b] = P[j][b], P[j][a]

    def m_swap(a, b):
        M[a], M[b] = M[b], M[a]
        for row in M:
            row[a], row[b] = row[b], row[a]

    def m_row_col_add(dst, src, t):
        # row_dst += t * row_src, then col_dst += conj(t) * col_src
        tc = t.conjugate()
        for q in range(n):
            if M[src][q]:
                M[dst][q] = M[dst][q] + t * M[src][q]
        for p in range(n):
            if M[p][src]:
                M[p][dst] = M[p][dst] + tc * M[p][src]

    for k in range(n):
        if not M[k][k]:
            pivot_j = next((j for j in range(k + 1, n) if M[j][j]), None)
            if pivot_j is not None:
                m_swap(k, pivot_j)
                p_col_swap(k, pivot_j)
            else:
                # all remaining diagonal zero: pull a nonzero off-diagonal pair
                found = None
                for p in range(k, n):
                    for q in range(p + 1, n):
                        if M[p][q]:
                            found = (p, q)
                            break
                    if found:
                        break
                if found is None:
                    raise Degenerate("Hermitian form is degenerate")
                p, q = found
                if p != k:
                    m_swap(k, p)
                    p_col_swap(k, p)
                    if q == k:
                        q = p
                t = ONE if M[k][q].re != 0 else gr(0, 1)
                m_row_col_add(k, q, t)
                p_col_add(k, q, t)
        pivot = M[k][k]
        for r in range(k + 1, n):
            if M[r][k]:
                t = -(M[r][k] / pivot)
                m_row_col_add(r, k, t)
                p_col_add(r, k, t)

    diag = [M[j][j] for j in range(n)]
    if any(not d for d in diag):
        raise Degenerate("Hermitian form is degenerate")
    if any(d.im != 0 for d in diag):
        raise InvariantViolation("congruence produced a non-real diagonal")

    order = sorted(range(n), key=lambda j: (0 if diag[j].re > 0 else 1, j))
    if order != list(range(n)):
        newP = [[P[j][order[k]] for k in range(n)] for j in range(n)]
        diag = [diag[j] for j in order]
        P = newP
    signs = tuple(1 if d.re > 0 else -1 for d in diag)
    pos = sum(1 for s in signs if s > 0)
    return HermitianDiagonalization(
        change=ExactMatrix(P),
        diagonal=tuple(diag),
        signs=signs,
        signature=(pos, n - pos),
        majority=pos >= n - pos,
    )


# ---------------------------------------------------------------------------
# CR singular set
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearSet:
    """Real-linear subset of {w = 0} in coordinates (x, y) = (Re z, Im z).

    `equations` is the RREF of the defining real system (columns
    x_1..x_n, y_1..y_n); `basis` spans the solution set.
    """

    n: int
    equations: ExactMatrix
    dimension: int
    totally_real: bool
    basis: tuple
    contained_in_w0: bool = True

    def complex_basis(self):
        """Solution basis as complex n-vectors (x + iy)."""
        out = []
        for v in self.basis:
            out.append(
                tuple(
                    GaussianRational(v[j].re, v[self.n + j].re) for j in range(self.n)
                )
            )
        return out

    def equations_text(self):
        lines = []
        for row in self.equations.entries:
            parts = []
            for j, coeff in enumerate(row):
                if coeff:
                    name = f"x{j + 1}" if j < self.n else f"y{j - self.n + 1}"
                    cs = str(coeff)
                    parts.append(name if cs == "1" else f"{cs}*{name}")
            if parts:
                lines.append(" + ".join(parts) + " = 0")
        return lines


def _real_linear_rows(poly, n):
    """Turn a complex-linear polynomial in z, zbar into two real rows
    over (x, y)."""
    cx = [ZERO] * n
    cy = [ZERO] * n
    i_unit = gr(0, 1)
    for m, c in poly.terms.items():
        if m.total_degree() != 1 or m.wexp:
            raise MalformedInput("expected a homogeneous linear polynomial")
        if any(m.zexp):
            j = m.zexp.index(1)
            cx[j] = cx[j] + c
            cy[j] = cy[j] + c * i_unit
        else:
            j = m.zbarexp.index(1)
            cx[j] = cx[j] + c
            cy[j] = cy[j] - c * i_unit
    row_re = [gr(v.re) for v in cx] + [gr(v.re) for v in cy]
    row_im = [gr(v.im) for v in cx] + [gr(v.im) for v in cy]
    return row_re, row_im


def cr_singular_set(model):
    """Solve dQ/dzbar_j = 0 for all j as an exact real-linear system."""
    if not model.is_nondegenerate():
        raise Degenerate("CR singular set analysis requires nondegenerate A")
    quad = model.quadric()
    n = quad.n
    q = quad.q_polynomial()
    rows = []
    for j in range(1, n + 1):
        partial = q.partial_derivative(f"zbar{j}")
        r1, r2 = _real_linear_rows(partial, n)
        rows.append(r1)
        rows.append(r2)
    system = ExactMatrix(rows, cols=2 * n)
    reduced, pivots = rref(system)
    nonzero_rows = [row for row in reduced.entries if any(row)]
    equations = ExactMatrix(nonzero_rows, cols=2 * n)
    basis = nullspace(system)
    dim = len(basis)

    totally_real = True
    if dim:
        rows_vi = [list(v) for v in basis]
        for v in basis:
            x = [v[j] for j in range(n)]
            y = [v[n + j] for j in range(n)]
            iv = [-y[j] for j in range(n)] + list(x)
            rows_vi.append(iv)
        totally_real = rank(ExactMatrix(rows_vi, cols=2 * n)) == 2 * dim

    return LinearSet(
        n=n,
        equations=equations,
        dimension=dim,
        totally_real=totally_real,
        basis=tuple(basis),
    )


def is_completely_parabolic(model):
    return cr_singular_set(model).dimension == model.n


# ---------------------------------------------------------------------------
# Slices, Bishop invariants, elliptic directions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SliceModel:
    """One-variable slice w = rho(c xi + v, conj(c xi + v)).

    alpha, beta are the |xi|^2 and xi^2 coefficients (translation does not
    change them); `rho` is the full composed polynomial in xi.
    """

    alpha: GaussianRational
    beta: GaussianRational
    rho: Polynomial
    c: tuple
    v: tuple
    from_quadric: bool

    def is_translated(self):
        return any(x for x in self.v)


def slice_model(model, c, v=None):
    n = model.n
    c = [as_scalar(x) for x in c]
    if len(c) != n:
        raise DimensionMismatch(f"direction has length {len(c)}, model has n={n}")
    if all(not x for x in c):
        raise ZeroDirection("slice direction must be nonzero")
    if v is None:
        v = [ZERO] * n
    else:
        v = [as_scalar(x) for x in v]
        if len(v) != n:
            raise DimensionMismatch("translation vector has wrong length")
    alpha = model.A.value(c)
    beta = model.B.value(c)
    rho = model.rho_polynomial().substitute_linear([[cj] for cj in c], consts=v, new_n=1)
    return SliceModel(
        alpha=alpha,
        beta=beta,
        rho=rho,
        c=tuple(c),
        v=tuple(v),
        from_quadric=not model.perturbation(),
    )


BISHOP_INFINITY = "infinity"


def bishop_invariant_squared(s):
    """lambda^2 = |beta|^2 / alpha^2 as an exact rational, or the infinity
    flag when alpha = 0 (and beta != 0)."""
    if not s.from_quadric:
        raise MalformedInput("Bishop invariant is defined for quadric slices")
    if not s.alpha and not s.beta:
        raise DegenerateSlice("slice quadratic part vanishes")
    if not s.alpha:
        return BISHOP_INFINITY
    value = s.beta.modulus_squared() / s.alpha.modulus_squared()
    return value.re


def classify_slice(s):
    """Exact trichotomy: elliptic iff 4|beta|^2 < alpha^2."""
    if not s.from_quadric:
        raise MalformedInput("slice classification is defined for quadric slices")
    if not s.alpha and not s.beta:
        raise DegenerateSlice("slice quadratic part vanishes")
    four_beta = 4 * s.beta.modulus_squared().re
    alpha_sq = s.alpha.modulus_squared().re
    if four_beta < alpha_sq:
        return "elliptic"
    if four_beta == alpha_sq:
        return "parabolic"
    return "hyperbolic"


def is_elliptic_direction(model, c):
    c = [as_scalar(x) for x in c]
    if all(not x for x in c):
        raise ZeroDirection("direction must be nonzero")
    s = slice_model(model.quadric(), c)
    if not s.alpha and not s.beta:
        return False
    return classify_slice(s) == "elliptic"


def _gaussian_sqrt(d):
    """Exact square root in Q(i), or None."""
    if d.im == 0:
        r = rational_sqrt(d.re)
        if r is not None:
            return gr(r)
        r = rational_sqrt(-d.re)
        if r is not None:
            return gr(0, r)
        return None
    mod = rational_sqrt(d.modulus_squared().re)
    if mod is None:
        return None
    xx = (d.re + mod) / 2
    x = rational_sqrt(xx)
    if x is None or x == 0:
        return None
    y = d.im / (2 * x)
    return gr(x, y)


def _rationalize_complex(value, max_den):
    return gr(
        Fraction(value.real).limit_denominator(max_den),
        Fraction(value.imag).limit_denominator(max_den),
    )


def _quadratic_roots_exact(p, q, r):
    """Exact roots of p t^2 + q t + r over Q(i) when the discriminant has
    an exact square root; otherwise None."""
    disc = q * q - 4 * p * r
    sq = _gaussian_sqrt(disc)
    if sq is None:
        return None
    inv = ONE / (2 * p)
    return [(-q + sq) * inv, (-q - sq) * inv]


def _quadratic_roots_float(p, q, r):
    pf = complex(float(p.re), float(p.im))
    qf = complex(float(q.re), float(q.im))
    rf = complex(float(r.re), float(r.im))
    disc = cmath.sqrt(qf * qf - 4 * pf * rf)
    return [(-qf + disc) / (2 * pf), (-qf - disc) / (2 * pf)]


def _search_plane(model, e1, e2):
    """Find a rational elliptic direction in span{e1, e2}, where e1, e2 are
    A-orthogonal with same-sign A-values.

    On such a plane alpha never vanishes, so any direction near a zero of
    the restricted B is elliptic; a zero always exists (the restriction is
    a binary quadratic).  Exact roots are used when the discriminant has a
    square root in Q(i); otherwise a float root is rationalized with
    growing precision and re-verified exactly.
    """
    B = model.B
    p = B.pair(e1, e1)
    q = 2 * B.pair(e1, e2)
    r = B.pair(e2, e2)

    def combine(t):
        return tuple(t * a + b for a, b in zip(e1, e2))

    if not p:
        # beta(e1) = 0 and alpha(e1) != 0: e1 itself is elliptic
        return tuple(e1) if is_elliptic_direction(model, e1) else None
    if not r:
        return tuple(e2) if is_elliptic_direction(model, e2) else None
    exact = _quadratic_roots_exact(p, q, r)
    if exact is not None:
        for t in exact:
            cand = combine(t)
            if is_elliptic_direction(model, cand):
                return cand
        return None
    for root in _quadratic_roots_float(p, q, r):
        den = 16
        for _ in range(40):
            t = _rationalize_complex(root, den)
            cand = combine(t)
            if any(x for x in cand) and is_elliptic_direction(model, cand):
                return cand
            den *= 8
    return None


def _mixed_n2_direction(model, diag):
    """n = 2, signature (1,1): decide via the diagonalized presentation."""
    e_plus = diag.column(0)
    e_minus = diag.column(1)
    d1 = diag.diagonal[0].re
    d2 = diag.diagonal[1].re
    B = model.B
    b11 = B.pair(e_plus, e_plus)
    b12 = B.pair(e_plus, e_minus)
    b22 = B.pair(e_minus, e_minus)

    # cheap exact candidates first (covers M.II, M.III and small invariants)
    for cand in (
        e_plus,
        e_minus,
        tuple(a - b * gr(Fraction(1, 2)) for a, b in zip(e_plus, e_minus)),
        tuple(a + b * gr(Fraction(1, 2)) for a, b in zip(e_plus, e_minus)),
        tuple(a + b for a, b in zip(e_plus, e_minus)),
        tuple(a - b for a, b in zip(e_plus, e_minus)),
    ):
        if is_elliptic_direction(model, cand):
            return tuple(cand)

    if not b12:
        # diagonalizable type: the two invariants are lam_j^2 = |b_jj|^2/d_j^2.
        # Past the candidate loop both coordinate slices are non-elliptic,
        # so both lambdas are >= 1/2 (forcing b11, b22 != 0).
        l1sq = b11.modulus_squared().re / (d1 * d1)
        l2sq = b22.modulus_squared().re / (d2 * d2)
        if l1sq == l2sq:
            return None  # diagonal type with lambda_1 = lambda_2 >= 1/2: none exists
        # chase the zero of b11 t^2 + b22 along t*e_plus + e_minus; there
        # alpha = d1|t|^2 + d2 != 0 exactly because the lambdas differ
        exact = _quadratic_roots_exact(b11, ZERO, b22)
        if exact is not None:
            for t in exact:
                cand = tuple(t * a + b for a, b in zip(e_plus, e_minus))
                if is_elliptic_direction(model, cand):
                    return cand
            return None
        for root in _quadratic_roots_float(b11, ZERO, b22):
            den = 16
            for _ in range(40):
                t = _rationalize_complex(root, den)
                cand = tuple(t * a + b for a, b in zip(e_plus, e_minus))
                if any(x for x in cand) and is_elliptic_direction(model, cand):
                    return cand
                den *= 8
        return None
    raise UnsupportedModel(
        "mixed-signature n=2 model outside the recognized normal-form families; "
        "full quadratic normal-form reduction is out of scope"
    )


def find_elliptic_direction(model):
    """A rational direction c with an elliptic slice, or None when the
    model certifiably has none.  Every returned c is verified exactly."""
    quad = model.quadric()
    if quad.n < 2:
        raise UnsupportedDimension("elliptic directions need n >= 2")
    if not quad.is_nondegenerate():
        raise Degenerate("elliptic-direction search requires nondegenerate A")
    diag = diagonalize_hermitian(quad.A)
    pos, neg = diag.signature
    if pos >= 2 or neg >= 2:
        # two A-eigendirections of equal sign span a definite plane
        if pos >= 2:
            e1, e2 = diag.column(0), diag.column(1)
        else:
            e1, e2 = diag.column(pos), diag.column(pos + 1)
        found = _search_plane(quad, e1, e2)
        if found is None:
            raise UnsupportedModel("definite-plane search failed to certify a direction")
        return found
    return _mixed_n2_direction(quad, diag)


# ---------------------------------------------------------------------------
# Conic fibers of slices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConicFiber:
    """The set {w = w0} in a slice, classified exactly.

    kind: empty | point | ellipse | hyperbola | degenerate_lines | parabola
    For ellipses with a rational |beta| the exact semi-axis squares and
    axis directions are present; otherwise axes_rational is False and only
    the classification data (trace, det of the real form) is exact.
    """

    kind: str
    center: Optional[GaussianRational] = None
    semi_axes_squared: Optional[tuple] = None
    axis_directions: Optional[tuple] = None
    axes_rational: bool = True
    form_trace: Optional[object] = None
    form_det: Optional[object] = None


def conic_fiber(s, w0):
    """Classify {w = w0} in the slice plane, in exact arithmetic.

    The slice polynomial alpha|xi|^2 + 2Re(beta xi^2) + 2Re(gamma xi) + delta
    becomes the real quadratic u^T S u + L.u + delta in u = (x, y), with
    S = [[alpha+2Re(beta), -2Im(beta)], [-2Im(beta), alpha-2Re(beta)]], so
    trace S = 2 alpha and det S = alpha^2 - 4|beta|^2.
    """
    if not s.from_quadric:
        raise MalformedInput("conic fibers are defined for quadric slices")
    w0 = as_scalar(w0)
    if w0.im != 0:
        raise MalformedInput("w0 must be real")
    w0 = w0.re
    rho = s.rho
    if rho.total_degree() > 2:
        raise MalformedInput("slice polynomial is not quadratic")
    if not s.alpha and not s.beta:
        raise DegenerateSlice("slice quadratic part vanishes")

    alpha = s.alpha.re
    b1, b2 = s.beta.re, s.beta.im
    gamma = rho.coefficient(Monomial((1,), (0,), 0))
    delta = rho.coefficient(Monomial((0,), (0,), 0)).re

    s11 = alpha + 2 * b1
    s22 = alpha - 2 * b1
    s12 = -2 * b2
    det = s11 * s22 - s12 * s12
    trace = s11 + s22
    lx = 2 * gamma.re
    ly = -2 * gamma.im

    def residual_level(cx, cy):
        # S(u0 + h) quadratic in h equals level at the fiber:
        # h^T S h = w0 - delta - L.u0 - u0^T S u0
        quad = s11 * cx * cx + 2 * s12 * cx * cy + s22 * cy * cy
        return w0 - delta - (lx * cx + ly * cy) - quad

    if det != 0:
        cx = (-lx * s22 + ly * s12) / (2 * det)
        cy = (lx * s12 - ly * s11) / (2 * det)
        center = gr(cx, cy)
        level = residual_level(cx, cy)
        if det > 0:
            if level == 0:
                return ConicFiber(kind="point", center=center,
                                  form_trace=trace, form_det=det)
            if (level > 0) == (trace > 0):
                return _ellipse(center, alpha, b1, b2, level, trace, det)
            return ConicFiber(kind="empty", form_trace=trace, form_det=det)
        if level == 0:
            return ConicFiber(kind="degenerate_lines", center=center,
                              form_trace=trace, form_det=det)
        return ConicFiber(kind="hyperbola", center=center,
                          form_trace=trace, form_det=det)

    # det == 0 with S != 0: rank-one quadratic part
    smat = ExactMatrix([[gr(s11), gr(s12)], [gr(s12), gr(s22)]])
    kdir = nullspace(smat)[0]
    if lx * kdir[0].re + ly * kdir[1].re != 0:
        # linear part along the kernel: a genuine parabola (only reachable
        # for translated parabolic slices)
        return ConicFiber(kind="parabola", form_trace=trace, form_det=det)
    sol = solve(smat, [gr(-lx / 2), gr(-ly / 2)])
    cx, cy = sol[0].re, sol[1].re
    level = residual_level(cx, cy)
    if level == 0 or (level > 0) == (trace > 0):
        return ConicFiber(kind="degenerate_lines", center=gr(cx, cy),
                          form_trace=trace, form_det=det)
    return ConicFiber(kind="empty", form_trace=trace, form_det=det)


def _ellipse(center, alpha, b1, b2, level, trace, det):
    beta_mod = rational_sqrt(b1 * b1 + b2 * b2)
    if beta_mod is None:
        # |beta| irrational: classification stays exact but the axis data
        # has no rational representation
        return ConicFiber(
            kind="ellipse", center=center, axes_rational=False,
            form_trace=trace, form_det=det,
        )
    eig_hi = alpha + 2 * beta_mod
    eig_lo = alpha - 2 * beta_mod
    if beta_mod == 0:
        semi = (level / eig_hi, level / eig_lo)
        directions = (gr(1), gr(0, 1))
    else:
        smat = ExactMatrix(
            [
                [gr(2 * b1 - 2 * beta_mod), gr(-2 * b2)],
                [gr(-2 * b2), gr(-2 * b1 - 2 * beta_mod)],
            ]
        )
        v = nullspace(smat)[0]
        dir_hi = gr(v[0].re, v[1].re)
        dir_lo = gr(-v[1].re, v[0].re)
        pairs = sorted(
            [(level / eig_hi, dir_hi), (level / eig_lo, dir_lo)],
            key=lambda t: t[0],
        )
        semi = (pairs[0][0], pairs[1][0])
        directions = (pairs[0][1], pairs[1][1])
    return ConicFiber(
        kind="ellipse",
        center=center,
        semi_axes_squared=semi,
        axis_directions=directions,
        form_trace=trace,
        form_det=det,
    )


# ---------------------------------------------------------------------------
# Normal-form classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Recognition result for the quadratic normal-form families.

    kind: "bishop" | "P" | "M.I" | "M.II" | "M.III" | "unclassified".
    Parameters are exact rationals in exact mode and floats in numeric
    mode (`exact` records which).  `flipped_w` is set when recognition
    used the w -> -w move.
    """

    kind: str
    lam: object = None
    lambda1: object = None
    lambda2: object = None
    infinite: bool = False
    exact: bool = True
    flipped_w: bool = False
    report: Optional[dict] = None


def _unclassified(model, exact=True, extra=None):
    diag = diagonalize_hermitian(model.A)
    report = {
        "signature": diag.signature,
        "majority": diag.majority,
        "b_is_diagonal": all(
            not model.B.entries[j][k]
            for j in range(model.n)
            for k in range(model.n)
            if j != k
        ),
    }
    if extra:
        report.update(extra)
    return NormalForm(kind="unclassified", exact=exact, report=report)


def _modulus_rational(x):
    """|x| as an exact rational, or None when irrational."""
    return rational_sqrt(x.modulus_squared().re)


def _classify_exact_n1(model, normalize_signature):
    a = model.A.entries[0][0].re
    b = model.B.entries[0][0]
    flipped = False
    if a < 0 and normalize_signature:
        a, b, flipped = -a, -b, True
    if a < 0:
        return _unclassified(model, extra={"hint": "negative-definite A; pass normalize_signature"})
    mod = _modulus_rational(b)
    if mod is None:
        return _unclassified(model, extra={"bishop_lambda_squared": b.modulus_squared().re / (a * a)})
    return NormalForm(kind="bishop", lam=mod / a, flipped_w=flipped)


def _classify_exact_n2(model, normalize_signature):
    A, B = model.A, model.B
    if A.entries[0][1] or A.entries[1][0]:
        return _unclassified(model, extra={"hint": "A not diagonal"})
    a1 = A.entries[0][0].re
    a2 = A.entries[1][1].re
    b = [[B.entries[j][k] for k in range(2)] for j in range(2)]
    flipped = False

    if a1 < 0 and a2 < 0:
        if not normalize_signature:
            return _unclassified(
                model, extra={"hint": "negative-definite A; pass normalize_signature"}
            )
        a1, a2 = -a1, -a2
        b = [[-x for x in row] for row in b]
        flipped = True

    if a1 > 0 and a2 > 0:
        if a1 != a2:
            return _unclassified(model, extra={"hint": "A = diag(a1, a2) with a1 != a2"})
        if b[0][1]:
            return _unclassified(model, extra={"hint": "definite A with non-diagonal B"})
        m1 = _modulus_rational(b[0][0])
        m2 = _modulus_rational(b[1][1])
        if m1 is None or m2 is None:
            return _unclassified(model, extra={"hint": "irrational |b_jj|"})
        l1, l2 = sorted([m1 / a1, m2 / a1])
        return NormalForm(kind="P", lambda1=l1, lambda2=l2, flipped_w=flipped)

    # mixed signature: arrange the positive direction first (plain swap)
    if a1 < 0 < a2:
        a1, a2 = a2, a1
        b = [[b[1][1], b[1][0]], [b[0][1], b[0][0]]]
    if a1 != -a2:
        return _unclassified(model, extra={"hint": "mixed A with unequal magnitudes"})
    a = a1

    if not b[0][1]:
        m1 = _modulus_rational(b[0][0])
        m2 = _modulus_rational(b[1][1])
        if m1 is None or m2 is None:
            return _unclassified(model, extra={"hint": "irrational |b_jj|"})
        l_plus, l_minus = m1 / a, m2 / a
        if l_plus <= l_minus:
            return NormalForm(kind="M.I", lambda1=l_plus, lambda2=l_minus, flipped_w=flipped)
        # w-flip + coordinate swap + phases: exact and signature-preserving
        return NormalForm(kind="M.I", lambda1=l_minus, lambda2=l_plus, flipped_w=not flipped)

    if not b[0][0] and not b[1][1]:
        m = _modulus_rational(b[0][1])
        if m is None:
            return _unclassified(model, extra={"hint": "irrational |b_12|"})
        return NormalForm(kind="M.II", lam=2 * m / a, flipped_w=flipped)

    if b[0][0] == b[0][1] == b[1][1]:
        t = b[0][0] / gr(a / 2)
        if t.modulus_squared().re == 1 and _gaussian_sqrt(t.conjugate()) is not None:
            return NormalForm(kind="M.III", flipped_w=flipped)

    return _unclassified(model, extra={"hint": "mixed-signature B outside recognized patterns"})


def _classify_numeric_n2(model, tol):
    import numpy as np

    n = model.n
    gram = np.array(
        [[complex(float(x.re), float(x.im)) for x in row] for row in model.A.entries],
        dtype=complex,
    ).T
    bmat = np.array(
        [[complex(float(x.re), float(x.im)) for x in row] for row in model.B.entries],
        dtype=complex,
    )
    eig = np.linalg.eigvalsh(gram)
    if all(e > tol for e in eig):
        flipped = False
    elif all(e < -tol for e in eig):
        gram, bmat, flipped = -gram, -bmat, True
    else:
        return NormalForm(
            kind="unclassified",
            exact=False,
            report={"signature_numeric": [float(e) for e in eig]},
        )
    chol = np.linalg.cholesky(gram)
    change = np.linalg.inv(chol.conj().T)
    b_new = change.T @ bmat @ change
    sv = np.linalg.svd(b_new, compute_uv=False)
    lams = sorted(0.0 if s < tol else float(s) for s in sv)
    return NormalForm(kind="P", lambda1=lams[0], lambda2=lams[1], exact=False, flipped_w=flipped)


def classify_normal_form(model, mode="exact", tol=1e-9, normalize_signature=False):
    """Recognize canonical quadratic shapes (exact mode) or classify
    definite models numerically via a Takagi decomposition of B."""
    quad = model.quadric()
    if quad.n > 2:
        raise UnsupportedDimension("classification covers n = 1 and n = 2")
    if not quad.is_nondegenerate():
        raise Degenerate("classification requires nondegenerate A")
    if mode == "exact":
        if quad.n == 1:
            return _classify_exact_n1(quad, normalize_signature)
        return _classify_exact_n2(quad, normalize_signature)
    if mode == "numeric":
        if quad.n != 2:
            raise UnsupportedDimension("numeric classification supports n = 2 only")
        return _classify_numeric_n2(quad, tol)
    raise MalformedInput(f"unknown classification mode {mode!r}")
