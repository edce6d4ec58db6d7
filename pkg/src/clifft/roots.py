"""Square roots of -1 in Cl(p,q): construction, sampling, classification.

Every Cl(p,q) is isomorphic to a square matrix algebra over one of the
rings R, R^2, C, H, H^2, selected by (p - q) mod 8.  Roots of -1 fall into
conjugacy classes; sampling therefore works by conjugating a fixed base
root with random invertible elements, which stays inside one class and
preserves f^2 = -1 exactly.  Classification reads the pseudoscalar
coefficient: nonzero values of the form k/d (k a nonzero integer) mark the
exceptional classes that exist only over the ring C.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Multivector
from .errors import NoCanonicalRootError, NotARootError, OffManifoldError, SingularElementError

RING_BY_S8 = {0: "R", 1: "R2", 2: "R", 3: "C", 4: "H", 5: "H2", 6: "H", 7: "C"}

DEFAULT_ROOT_TOL = 1e-10
SAMPLING_CONDITION_LIMIT = 1e6


@dataclass(frozen=True)
class RingClass:
    """Matrix-algebra fingerprint of Cl(p,q).

    ``d`` is the block parameter: the algebra is d x d (rings H, H^2) or
    2d x 2d (rings R, R^2, C) matrices over the ring.  For n = 1 the odd
    formula gives d = 1/2, i.e. the 1 x 1 degenerate cases R^2 and C.
    """

    s8: int
    ring: str
    d: float


@dataclass(frozen=True)
class RootOfMinusOne:
    """A certified root: f with |f^2 + 1| <= tolerance.

    ``spec`` is the pseudoscalar coefficient of f; ``kind`` is one of
    "ordinary", "exceptional(k)" (nonzero integer k), or "unknown".
    """

    value: Multivector
    residual: float
    spec: float
    kind: str

    @property
    def algebra(self) -> Algebra:
        return self.value.algebra

    def negated(self) -> "RootOfMinusOne":
        return verify_root(-self.value)


def classify_algebra(algebra: Algebra) -> RingClass:
    s8 = (algebra.p - algebra.q) % 8
    n = algebra.n
    if n % 2 == 0:
        d = 2.0 ** ((n - 2) / 2)
    else:
        d = 2.0 ** ((n - 3) / 2)
    return RingClass(s8=s8, ring=RING_BY_S8[s8], d=d)


def _classify_kind(algebra: Algebra, spec: float, tol: float = 1e-8) -> str:
    ring = classify_algebra(algebra)
    if ring.ring != "C":
        # Exceptional classes exist only over C.
        return "ordinary"
    if abs(spec) <= tol:
        return "ordinary"
    k = round(spec * ring.d)
    if k != 0 and abs(k) <= ring.d and abs(spec - k / ring.d) <= tol:
        return f"exceptional({k})"
    return "unknown"


def verify_root(f: Multivector, tol: float = DEFAULT_ROOT_TOL) -> RootOfMinusOne:
    """Certify f^2 = -1 within tol, or raise NotARootError.

    The residual is |f^2 + 1| (the coefficient-space modulus).
    """
    ff = f * f
    residual = float(np.sqrt((ff + 1.0).modulus_squared()))
    if residual > tol:
        raise NotARootError(residual)
    spec = f.pseudoscalar_coeff
    return RootOfMinusOne(value=f, residual=residual, spec=spec, kind=_classify_kind(f.algebra, spec))


def as_root(f, tol: float = DEFAULT_ROOT_TOL) -> RootOfMinusOne:
    """Coerce a Multivector (verifying it) or pass a certified root through."""
    if isinstance(f, RootOfMinusOne):
        return f
    return verify_root(f, tol)


def root_family_n2(algebra: Algebra, b1: float, b2: float, branch: int = 1) -> RootOfMinusOne:
    """The two-parameter root family of any n = 2 algebra.

    f = b1 e1 + b2 e2 + branch * sqrt(beta2) e12 with
    beta2 = b1^2 e2^2 + b2^2 e1^2 + e1^2 e2^2.  Points with beta2 < 0 lie
    off the manifold (e.g. outside the unit disk for Cl(0,2)).
    """
    if algebra.n != 2:
        raise ValueError("root_family_n2 requires an n = 2 algebra")
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    e1sq, e2sq = algebra.vector_squares
    beta2 = b1 * b1 * e2sq + b2 * b2 * e1sq + e1sq * e2sq
    if beta2 < -1e-12:
        raise OffManifoldError(f"beta^2 = {beta2:.6g} < 0 at (b1, b2) = ({b1}, {b2})")
    beta = float(np.sqrt(max(beta2, 0.0)))
    coeffs = np.array([0.0, b1, b2, branch * beta])
    return verify_root(Multivector(algebra, coeffs, copy=False))


def canonical_root(algebra: Algebra) -> Multivector:
    """Default base root: a negative-square generator if one exists, else e12.

    Cl(1,0) = R + R contains no square root of -1 at all, so it has no
    canonical root and sampling refuses instead of inventing one.
    """
    if algebra.q >= 1:
        return algebra.basis_vector(algebra.p + 1)
    if algebra.p >= 2:
        # e12 squares to -(e1^2)(e2^2) = -1 here since both squares are +1
        return algebra.blade(0b11)
    raise NoCanonicalRootError(f"Cl({algebra.p},{algebra.q}) has no square roots of -1")


def conjugate_root(
    base: Multivector,
    a: Multivector,
    tol: float = DEFAULT_ROOT_TOL,
    condition_limit: float = 1e12,
) -> RootOfMinusOne:
    """a * base * a^-1, certified.  Conjugation preserves f^2 = -1."""
    f = a * base * a.inverse(condition_limit)
    return verify_root(f, tol)


def sample_root(
    algebra: Algebra,
    seed: int,
    base: Multivector | None = None,
    tol: float = DEFAULT_ROOT_TOL,
    condition_limit: float = SAMPLING_CONDITION_LIMIT,
    max_tries: int = 256,
) -> RootOfMinusOne:
    """Deterministic random root: conjugate the base by a seeded invertible draw.

    Draws have coefficients i.i.d. uniform in [-1, 1]; draws whose
    left-multiplication matrix is worse conditioned than ``condition_limit``
    are rejected, as are (rare) draws whose conditioning pushes the
    conjugated residual past ``tol``.
    """
    if base is None:
        base = canonical_root(algebra)
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        a = Multivector(algebra, rng.uniform(-1.0, 1.0, algebra.dim), copy=False)
        try:
            return conjugate_root(base, a, tol, condition_limit)
        except (SingularElementError, NotARootError):
            continue
    raise NotARootError(float("inf"), f"no acceptable draw after {max_tries} tries")


# -- JSON records --------------------------------------------------------------

_KIND_RE = re.compile(r"^(ordinary|unknown|exceptional\((-?\d+)\))$")


def root_to_record(root: RootOfMinusOne) -> dict:
    return {
        "p": root.algebra.p,
        "q": root.algebra.q,
        "coeffs": [float(c) for c in root.value.coeffs],
        "residual": root.residual,
        "spec": root.spec,
        "kind": root.kind,
    }


def root_from_record(record: dict, tol: float = DEFAULT_ROOT_TOL) -> RootOfMinusOne:
    """Rebuild and re-verify a root from its JSON record."""
    try:
        algebra = Algebra(int(record["p"]), int(record["q"]))
        coeffs = np.asarray(record["coeffs"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed root record: {exc}") from exc
    if "kind" in record and not _KIND_RE.match(str(record["kind"])):
        raise ValueError(f"malformed root kind: {record['kind']!r}")
    return verify_root(Multivector(algebra, coeffs), tol)


def save_roots(path, roots) -> None:
    records = [root_to_record(r) for r in roots]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(records, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_roots(path, tol: float = DEFAULT_ROOT_TOL) -> list[RootOfMinusOne]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = [data]
    return [root_from_record(rec, tol) for rec in data]
