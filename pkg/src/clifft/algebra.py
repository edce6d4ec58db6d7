"""Dense Clifford algebra Cl(p,q) over real coefficient vectors.

Basis blades are indexed by bitmasks in [0, 2^n): bit i-1 of the mask is set
exactly when the basis vector e_i is a factor of the blade, and factors are
always written in ascending index order (e1 e2 e4, never e2 e1 e4).  A
multivector is a dense float64 vector of length 2^n over that basis, with
the scalar at mask 0 and the pseudoscalar at mask 2^n - 1.  This blade
ordering is the contract every other module (fields, file format, CLI)
relies on.

The first p basis vectors square to +1, the remaining q to -1.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NotARootError, SignatureMismatchError, SingularElementError

MAX_DIMENSION = 12

# Full 2^n x 2^n sign tables are memoized up to this dimension; larger
# algebras compute sign rows/columns on demand.
SIGN_TABLE_MAX_DIM = 8

DEFAULT_INVERSE_CONDITION = 1e12


def _popcount(masks: np.ndarray) -> np.ndarray:
    masks = np.array(masks, dtype=np.int64, copy=True)
    out = np.zeros_like(masks)
    while masks.any():
        out += masks & 1
        masks >>= 1
    return out


def _reorder_signs(a, b) -> np.ndarray:
    """Sign from sorting the concatenated factors of blades a and b.

    Counts, for every factor of a, the factors of b it must be transposed
    past to reach ascending order; even count -> +1, odd -> -1.
    """
    a = np.array(a, dtype=np.int64, copy=True) >> 1
    b = np.asarray(b, dtype=np.int64)
    swaps = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    while a.any():
        swaps = swaps + _popcount(a & b)
        a = a >> 1
    return np.where(swaps & 1, -1.0, 1.0)


class Algebra:
    """The Clifford algebra Cl(p,q) with cached blade product tables.

    Instances are immutable and compare equal when their signatures match.
    All heavy lifting happens on raw coefficient arrays ("stacks") whose
    leading axis runs over the 2^n blade masks; :class:`Multivector` is a
    thin wrapper for single elements.
    """

    def __init__(self, p: int, q: int):
        if p < 0 or q < 0:
            raise ValueError("p and q must be nonnegative")
        n = p + q
        if not 1 <= n <= MAX_DIMENSION:
            raise ValueError(f"dimension n = p + q must be in [1, {MAX_DIMENSION}], got {n}")
        self.p = p
        self.q = q
        self.n = n
        self.dim = 1 << n

        squares = np.ones(n)
        squares[p:] = -1.0
        squares.setflags(write=False)
        #: e_k^2 for k = 1..n (0-indexed array)
        self.vector_squares = squares

        masks = np.arange(self.dim)
        self.grades = _popcount(masks)
        self.grades.setflags(write=False)

        # Product of e_k^2 over the factors of each blade; also the sign of
        # the bar involution (negate every negative-square vector factor).
        metric = np.ones(self.dim)
        for k in range(n):
            metric[(masks >> k) & 1 == 1] *= squares[k]
        metric.setflags(write=False)
        self.bar_signs = metric

        rev = np.where((self.grades * (self.grades - 1) // 2) & 1, -1.0, 1.0)
        rev.setflags(write=False)
        #: grade-k part picks up (-1)^(k(k-1)/2)
        self.reverse_signs = rev

        pr = rev * metric
        pr.setflags(write=False)
        self.principal_reverse_signs = pr

        if n <= SIGN_TABLE_MAX_DIM:
            table = _reorder_signs(masks[:, None], masks[None, :])
            table *= metric[masks[:, None] & masks[None, :]]
            table.setflags(write=False)
            self._sign_table = table
        else:
            self._sign_table = None

    # -- identity / hashing -------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Algebra) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"Algebra({self.p}, {self.q})"

    # -- blade tables --------------------------------------------------------

    def blade_sign_row(self, mask: int) -> np.ndarray:
        """Signs of e_mask * e_b for every blade b."""
        if self._sign_table is not None:
            return self._sign_table[mask]
        b = np.arange(self.dim)
        return _reorder_signs(mask, b) * self.bar_signs[mask & b]

    def blade_sign_col(self, mask: int) -> np.ndarray:
        """Signs of e_a * e_mask for every blade a."""
        if self._sign_table is not None:
            return self._sign_table[:, mask]
        a = np.arange(self.dim)
        return _reorder_signs(a, mask) * self.bar_signs[a & mask]

    def blade_name(self, mask: int) -> str:
        if mask == 0:
            return "1"
        idx = [str(i + 1) for i in range(self.n) if mask >> i & 1]
        sep = "," if self.n > 9 else ""
        return "e" + sep.join(idx)

    # -- constructors ---------------------------------------------------------

    def multivector(self, coeffs) -> "Multivector":
        return Multivector(self, coeffs)

    def zero(self) -> "Multivector":
        return Multivector(self, np.zeros(self.dim), copy=False)

    def scalar(self, value: float) -> "Multivector":
        c = np.zeros(self.dim)
        c[0] = value
        return Multivector(self, c, copy=False)

    def blade(self, mask: int, coeff: float = 1.0) -> "Multivector":
        if not 0 <= mask < self.dim:
            raise ValueError(f"blade mask {mask} out of range for n = {self.n}")
        c = np.zeros(self.dim)
        c[mask] = coeff
        return Multivector(self, c, copy=False)

    def basis_vector(self, i: int) -> "Multivector":
        """e_i for i = 1..n."""
        if not 1 <= i <= self.n:
            raise ValueError(f"basis vector index {i} out of range")
        return self.blade(1 << (i - 1))

    def pseudoscalar(self) -> "Multivector":
        return self.blade(self.dim - 1)

    # -- stack kernels ---------------------------------------------------------

    def gp_stack(self, A, B) -> np.ndarray:
        """Geometric product of blade-coefficient stacks.

        A and B have the blade axis first (length 2^n); trailing axes
        broadcast, so this one kernel covers single elements, element-field
        products, and pointwise field-field products.
        """
        A = np.asarray(A, dtype=np.float64)
        B = np.asarray(B, dtype=np.float64)
        if A.shape[0] != self.dim or B.shape[0] != self.dim:
            raise ValueError("stack leading axis must equal the blade count")
        rest = np.broadcast_shapes(A.shape[1:], B.shape[1:])
        A = np.broadcast_to(A, (self.dim,) + rest)
        B = np.broadcast_to(B, (self.dim,) + rest)
        out = np.zeros((self.dim,) + rest)
        row_shape = (self.dim,) + (1,) * len(rest)
        targets = np.arange(self.dim)
        for a in range(self.dim):
            Aa = A[a]
            if not Aa.any():
                continue
            row = self.blade_sign_row(a).reshape(row_shape)
            # a ^ targets is a permutation, so the fancy-indexed += is safe
            out[a ^ targets] += Aa * (row * B)
        return out

    def left_matrix(self, coeffs) -> np.ndarray:
        """Matrix L with (m x) = L @ x for the element m with these coeffs."""
        coeffs = np.asarray(coeffs, dtype=np.float64)
        L = np.zeros((self.dim, self.dim))
        cols = np.arange(self.dim)
        for a in np.flatnonzero(coeffs):
            L[a ^ cols, cols] += coeffs[a] * self.blade_sign_row(a)
        return L

    def right_matrix(self, coeffs) -> np.ndarray:
        """Matrix R with (x m) = R @ x for the element m with these coeffs."""
        coeffs = np.asarray(coeffs, dtype=np.float64)
        R = np.zeros((self.dim, self.dim))
        rows = np.arange(self.dim)
        for b in np.flatnonzero(coeffs):
            R[rows ^ b, rows] += coeffs[b] * self.blade_sign_col(b)
        return R


def blade_product(algebra: Algebra, a: int, b: int) -> tuple[float, int]:
    """Product of two basis blades: (sign, result mask).

    The result mask is a XOR b; the sign collects the transposition parity
    of merging the factor lists plus one e_k^2 per repeated vector.
    """
    if not (0 <= a < algebra.dim and 0 <= b < algebra.dim):
        raise ValueError("blade mask out of range")
    sign = float(_reorder_signs(a, b)) * algebra.bar_signs[a & b]
    return float(sign), a ^ b


class Multivector:
    """Immutable element of Cl(p,q): algebra reference plus 2^n coefficients."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs, copy: bool = True):
        arr = np.array(coeffs, dtype=np.float64, copy=copy)
        if arr.shape != (algebra.dim,):
            raise ValueError(f"expected {algebra.dim} coefficients, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("multivector coefficients must be finite")
        arr.setflags(write=False)
        self.algebra = algebra
        self.coeffs = arr

    def _same_algebra(self, other: "Multivector") -> None:
        if self.algebra != other.algebra:
            raise SignatureMismatchError(
                f"mixing Cl({self.algebra.p},{self.algebra.q}) with "
                f"Cl({other.algebra.p},{other.algebra.q})"
            )

    # -- arithmetic -----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._same_algebra(other)
            return Multivector(self.algebra, self.algebra.gp_stack(self.coeffs, other.coeffs), copy=False)
        if isinstance(other, (int, float)):
            return Multivector(self.algebra, self.coeffs * other, copy=False)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(self.algebra, self.coeffs * other, copy=False)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(self.algebra, self.coeffs / other, copy=False)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._same_algebra(other)
            return Multivector(self.algebra, self.coeffs + other.coeffs, copy=False)
        if isinstance(other, (int, float)):
            c = self.coeffs.copy()
            c[0] += other
            return Multivector(self.algebra, c, copy=False)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Multivector):
            self._same_algebra(other)
            return Multivector(self.algebra, self.coeffs - other.coeffs, copy=False)
        if isinstance(other, (int, float)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return (-1.0) * self + other
        return NotImplemented

    def __neg__(self):
        return Multivector(self.algebra, -self.coeffs, copy=False)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = self.algebra.scalar(1.0)
        for _ in range(exponent):
            out = out * self
        return out

    def __xor__(self, other):
        return outer_product(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, Multivector)
            and self.algebra == other.algebra
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.algebra, self.coeffs.tobytes()))

    # -- grade and involution operations ---------------------------------------

    def grade(self, k: int) -> "Multivector":
        """Grade-k part: keep coefficients whose mask has popcount k."""
        if not 0 <= k <= self.algebra.n:
            raise ValueError(f"grade {k} out of range for n = {self.algebra.n}")
        out = np.where(self.algebra.grades == k, self.coeffs, 0.0)
        return Multivector(self.algebra, out, copy=False)

    @property
    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    @property
    def pseudoscalar_coeff(self) -> float:
        return float(self.coeffs[-1])

    def reverse(self) -> "Multivector":
        return Multivector(self.algebra, self.coeffs * self.algebra.reverse_signs, copy=False)

    def bar(self) -> "Multivector":
        """Negate every negative-square vector factor in each blade."""
        return Multivector(self.algebra, self.coeffs * self.algebra.bar_signs, copy=False)

    def principal_reverse(self) -> "Multivector":
        """reverse composed with bar (the two sign maps commute)."""
        return Multivector(self.algebra, self.coeffs * self.algebra.principal_reverse_signs, copy=False)

    def modulus_squared(self) -> float:
        """|M|^2 = sum of squared coefficients = M * principal_reverse(M) scalar part."""
        return float(np.dot(self.coeffs, self.coeffs))

    def scalar_product(self, other: "Multivector") -> float:
        """Grade-0 part of the geometric product."""
        self._same_algebra(other)
        masks = np.arange(self.algebra.dim)
        if self.algebra._sign_table is not None:
            squares = self.algebra._sign_table[masks, masks]
        else:
            squares = np.array([self.algebra.blade_sign_row(int(m))[m] for m in masks])
        return float(np.sum(self.coeffs * other.coeffs * squares))

    def inverse(self, max_condition: float = DEFAULT_INVERSE_CONDITION) -> "Multivector":
        """Solve m x = 1 for x; raises SingularElementError for zero divisors.

        A pseudo-inverse is deliberately not offered: callers that sample by
        conjugation must stay inside the group of invertible elements.
        """
        L = self.algebra.left_matrix(self.coeffs)
        cond = np.linalg.cond(L)
        if not np.isfinite(cond) or cond > max_condition:
            raise SingularElementError(f"condition number {cond:.3e} exceeds {max_condition:.1e}")
        e0 = np.zeros(self.algebra.dim)
        e0[0] = 1.0
        return Multivector(self.algebra, np.linalg.solve(L, e0), copy=False)

    def __repr__(self):
        terms = []
        for mask in np.flatnonzero(self.coeffs):
            c = self.coeffs[mask]
            name = self.algebra.blade_name(int(mask))
            terms.append(f"{c:+g}" if mask == 0 else f"{c:+g}*{name}")
        body = " ".join(terms) if terms else "0"
        return f"<{body} in Cl({self.algebra.p},{self.algebra.q})>"


# -- spec-level free functions ----------------------------------------------


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def grade_project(a: Multivector, k: int) -> Multivector:
    return a.grade(k)


def scalar_part(a: Multivector) -> float:
    return a.scalar_part


def scalar_product(a: Multivector, b: Multivector) -> float:
    return a.scalar_product(b)


def outer_product(a: Multivector, b: Multivector) -> Multivector:
    """Bilinear extension of the grade-(k+s) selected blade product.

    On basis blades this keeps exactly the disjoint-mask products, so it is
    the geometric product with overlapping factor pairs zeroed out.
    """
    a._same_algebra(b)
    alg = a.algebra
    out = np.zeros(alg.dim)
    targets = np.arange(alg.dim)
    for m in np.flatnonzero(a.coeffs):
        row = alg.blade_sign_row(int(m)) * (targets & m == 0)
        out[m ^ targets] += a.coeffs[m] * row * b.coeffs
    return Multivector(alg, out, copy=False)


def reverse(a: Multivector) -> Multivector:
    return a.reverse()


def bar(a: Multivector) -> Multivector:
    return a.bar()


def principal_reverse(a: Multivector) -> Multivector:
    return a.principal_reverse()


def modulus_squared(a: Multivector) -> float:
    return a.modulus_squared()


def inverse(a: Multivector, max_condition: float = DEFAULT_INVERSE_CONDITION) -> Multivector:
    return a.inverse(max_condition)


def exp_root(f, angle: float, tol: float = 1e-12) -> Multivector:
    """exp(angle * f) = cos(angle) + sin(angle) f for f with f^2 = -1.

    Closed form, no series truncation.  Accepts a Multivector or anything
    with a ``.value`` multivector attribute (a certified root).
    """
    if hasattr(f, "value"):
        f = f.value
    ff = f * f
    residual = (ff + 1.0).modulus_squared()
    if residual > tol:
        raise NotARootError(math.sqrt(residual))
    return math.cos(angle) + math.sin(angle) * f


def random_multivector(algebra: Algebra, rng: np.random.Generator, scale: float = 1.0) -> Multivector:
    """Coefficients i.i.d. uniform in [-scale, scale]."""
    return Multivector(algebra, rng.uniform(-scale, scale, algebra.dim), copy=False)
