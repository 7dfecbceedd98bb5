"""Exact polynomial arithmetic in several real variables.

Everything in this module is exact: coefficients are rational numbers
and every operator (partial derivatives, the flat Laplacian, averages
over the unit sphere) keeps them rational.  Floating point enters only
when a polynomial is evaluated at a numeric point.  That is what makes
the eigenvalue and kernel computations downstream exact instead of
tolerance-based.

Monomials are exponent tuples.  Within a fixed total degree they are
ordered by descending exponent tuple (graded lexicographic order); the
order is fixed once so matrices, bases and reports are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _as_fraction(c):
    if isinstance(c, float):
        raise TypeError("exact coefficients only; got a float (%r)" % c)
    return Fraction(c)


def monomial_key(exps):
    """Sort key: graded lexicographic, bigger first within a degree."""
    return (sum(exps), exps)


def monomial_basis(num_vars, degree):
    """All exponent tuples of the given total degree, grlex order."""
    if degree < 0:
        return []
    if num_vars == 1:
        return [(degree,)]
    out = []
    for head in range(degree, -1, -1):
        for tail in monomial_basis(num_vars - 1, degree - head):
            out.append((head,) + tail)
    return out


def dim_homogeneous(num_vars, degree):
    """Dimension of the space of homogeneous polynomials of one degree."""
    if degree < 0:
        return 0
    return math.comb(degree + num_vars - 1, num_vars - 1)


class Polynomial:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars, terms=None):
        self.num_vars = int(num_vars)
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = _as_fraction(c)
                if not c:
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != self.num_vars:
                    raise ValueError("exponent tuple of wrong length")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                clean[exps] = c
        self.terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, num_vars):
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars, c):
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars, i):
        exps = [0] * num_vars
        exps[i] = 1
        return cls(num_vars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, num_vars, exps, c=1):
        return cls(num_vars, {tuple(exps): c})

    # ---- structure ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_components(self):
        """Split into degree -> Polynomial (degrees with terms only)."""
        parts = {}
        for exps, c in self.terms.items():
            parts.setdefault(sum(exps), {})[exps] = c
        return {d: Polynomial(self.num_vars, t) for d, t in sorted(parts.items())}

    def leading_monomial(self):
        if not self.terms:
            return None
        return max(self.terms, key=monomial_key)

    # ---- arithmetic ---------------------------------------------------

    def _check_compatible(self, other):
        if self.num_vars != other.num_vars:
            raise ValueError("mixed numbers of variables")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        out = Polynomial.__new__(Polynomial)
        out.num_vars = self.num_vars
        out.terms = terms
        return out

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.num_vars = self.num_vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            terms = {}
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    s = terms.get(e, 0) + ca * cb
                    if s:
                        terms[e] = s
                    else:
                        terms.pop(e, None)
            out = Polynomial.__new__(Polynomial)
            out.num_vars = self.num_vars
            out.terms = terms
            return out
        c = _as_fraction(other)
        if not c:
            return Polynomial(self.num_vars)
        out = Polynomial.__new__(Polynomial)
        out.num_vars = self.num_vars
        out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        bits = []
        for exps in sorted(self.terms, key=monomial_key, reverse=True)[:4]:
            bits.append("%s*q^%s" % (self.terms[exps], list(exps)))
        if len(self.terms) > 4:
            bits.append("...")
        return "Polynomial(%s)" % " + ".join(bits)

    # ---- calculus and evaluation --------------------------------------

    def partial(self, i):
        terms = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = list(exps)
            new[i] = e - 1
            terms[tuple(new)] = c * e
        return Polynomial(self.num_vars, terms)

    def gradient(self):
        return [self.partial(i) for i in range(self.num_vars)]

    def evaluate(self, point):
        """Float value at a numeric point (array-like of length num_vars)."""
        point = getattr(point, "coords", point)
        if len(point) != self.num_vars:
            raise ValueError(
                "point of dimension %d for a polynomial in %d variables"
                % (len(point), self.num_vars)
            )
        total = 0.0
        for exps, c in self.terms.items():
            m = float(c)
            for e, x in zip(exps, point):
                if e == 1:
                    m *= x
                elif e:
                    m *= x**e
            total += m
        return total

    def evaluate_exact(self, point):
        """Exact value at a point with rational coordinates."""
        point = [_as_fraction(x) for x in point]
        if len(point) != self.num_vars:
            raise ValueError("dimension mismatch")
        total = Fraction(0)
        for exps, c in self.terms.items():
            m = c
            for e, x in zip(exps, point):
                if e:
                    m *= x**e
            total += m
        return total


class HomogeneousPolynomial(Polynomial):
    """Polynomial whose terms all share one declared total degree."""

    __slots__ = ("_degree",)

    def __init__(self, num_vars, degree, terms=None):
        super().__init__(num_vars, terms)
        degree = int(degree)
        if degree < 0:
            raise ValueError("degree must be >= 0")
        for exps in self.terms:
            if sum(exps) != degree:
                raise ValueError(
                    "term of degree %d in a homogeneous polynomial of degree %d"
                    % (sum(exps), degree)
                )
        self._degree = degree

    @property
    def degree(self):
        return self._degree

    @classmethod
    def from_polynomial(cls, p, degree=None):
        if degree is None:
            degree = max(p.degree, 0)
        return cls(p.num_vars, degree, p.terms)


def directional_derivative(p, point, direction):
    """<grad p (point), direction>, linear in the direction."""
    point = getattr(point, "coords", point)
    direction = getattr(direction, "vec", direction)
    if len(direction) != p.num_vars:
        raise ValueError("direction of wrong dimension")
    return sum(
        p.partial(i).evaluate(point) * float(direction[i])
        for i in range(p.num_vars)
        if direction[i]
    )


def euclidean_laplacian(p):
    """Flat Laplacian; drops the degree by two, exactly."""
    out = Polynomial(p.num_vars)
    for i in range(p.num_vars):
        out = out + p.partial(i).partial(i)
    if isinstance(p, HomogeneousPolynomial):
        return HomogeneousPolynomial(p.num_vars, max(p.degree - 2, 0), out.terms)
    return out


# ----------------------------------------------------------------------
# Exact rational linear algebra (desk scale).
# ----------------------------------------------------------------------


def rref(rows):
    """In-place reduced row echelon form over Q; returns pivot columns."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def matrix_rank(rows):
    return len(rref([list(r) for r in rows]))


def null_space(rows, ncols):
    """Basis of the kernel of the matrix, echelon-reduced, exact.

    Each basis vector has a 1 in one free column and the compensating
    pivot entries; vectors are ordered by their free column.
    """
    work = [list(r) for r in rows]
    pivots = rref(work)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -work[row_idx][free]
        basis.append(vec)
    return basis


def mat_mul(a, b):
    if not a or not b:
        return []
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


# ----------------------------------------------------------------------
# Subspaces of a fixed homogeneous degree.
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceBasis:
    """Independent list of homogeneous polynomials of one degree."""

    n: int
    degree: int
    polys: tuple

    def __post_init__(self):
        num_vars = 2 * self.n + 2
        for p in self.polys:
            if p.num_vars != num_vars:
                raise ValueError("basis element in the wrong number of variables")
            if not p.is_zero() and p.degree != self.degree:
                raise ValueError("basis element of the wrong degree")
        if any(p.is_zero() for p in self.polys):
            raise ValueError("zero polynomial in a basis")
        leading = [p.leading_monomial() for p in self.polys]
        if len(set(leading)) != len(leading):
            # Not echelon; certify independence the slow exact way.
            mons = monomial_basis(num_vars, self.degree)
            index = {m: i for i, m in enumerate(mons)}
            rows = []
            for p in self.polys:
                row = [Fraction(0)] * len(mons)
                for exps, c in p.terms.items():
                    row[index[exps]] = c
                rows.append(row)
            if matrix_rank(rows) != len(self.polys):
                raise ValueError("basis is not linearly independent")

    def __len__(self):
        return len(self.polys)

    @property
    def dimension(self):
        return len(self.polys)

    def coefficient_matrix(self):
        """Rows = basis elements, columns = grlex monomials of the degree."""
        num_vars = 2 * self.n + 2
        mons = monomial_basis(num_vars, self.degree)
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        for p in self.polys:
            row = [Fraction(0)] * len(mons)
            for exps, c in p.terms.items():
                row[index[exps]] = c
            rows.append(row)
        return rows, mons

    def contains(self, poly):
        """Exact membership of a polynomial in the span."""
        if poly.is_zero():
            return True
        if poly.degree != self.degree:
            return False
        rows, mons = self.coefficient_matrix()
        index = {m: i for i, m in enumerate(mons)}
        target = [Fraction(0)] * len(mons)
        for exps, c in poly.terms.items():
            if exps not in index:
                return False
            target[index[exps]] = c
        rank0 = matrix_rank(rows)
        return matrix_rank(rows + [target]) == rank0


def harmonic_basis(n, degree):
    """Exact basis of harmonic homogeneous polynomials of one degree.

    Kernel of the flat Laplacian inside P_degree on R^(2n+2); the
    dimension is dim P_degree - dim P_(degree-2).
    """
    num_vars = 2 * n + 2
    mons = monomial_basis(num_vars, degree)
    if degree < 2:
        polys = [HomogeneousPolynomial(num_vars, degree, {m: 1}) for m in mons]
        return SubspaceBasis(n, degree, tuple(polys))
    targets = monomial_basis(num_vars, degree - 2)
    tindex = {m: i for i, m in enumerate(targets)}
    # Row per target monomial, column per source monomial.
    cols = []
    for m in mons:
        lap = euclidean_laplacian(Polynomial.monomial(num_vars, m))
        col = [Fraction(0)] * len(targets)
        for exps, c in lap.terms.items():
            col[tindex[exps]] = c
        cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    kernel = null_space(rows, len(mons))
    polys = []
    for vec in kernel:
        terms = {m: c for m, c in zip(mons, vec) if c}
        polys.append(HomogeneousPolynomial(num_vars, degree, terms))
    return SubspaceBasis(n, degree, tuple(polys))


# ----------------------------------------------------------------------
# Exact integration over the unit sphere (normalized measure).
# ----------------------------------------------------------------------


def _even_monomial_average(num_vars, exps):
    # E[prod u_i^(2 b_i)] over the unit sphere, via the Gaussian trick:
    # prod (2 b_i - 1)!! / (m (m+2) ... (m + 2|b| - 2)).
    halves = [e // 2 for e in exps]
    total = sum(halves)
    num = 1
    for b in halves:
        num *= math.prod(range(1, 2 * b, 2))
    den = 1
    for k in range(total):
        den *= num_vars + 2 * k
    return Fraction(num, den)


def sphere_integral(p):
    """Average of the polynomial over the unit sphere, exact.

    Normalized (probability) measure; a monomial with any odd exponent
    averages to zero, even monomials have a rational closed form.
    """
    total = Fraction(0)
    for exps, c in p.terms.items():
        if any(e % 2 for e in exps):
            continue
        total += c * _even_monomial_average(p.num_vars, exps)
    return total
