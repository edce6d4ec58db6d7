"""Plus/minus splits of multivectors and fields by two roots of -1.

Given roots f, g the map x -> f x g is an involution; its eigenspaces give
the split x = x_plus + x_minus with x_pm = (x +- f x g) / 2.  The special
case g = -f is the commuting/anticommuting decomposition with respect to a
single root.  Splits are computed on demand and never cached inside field
objects.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Multivector
from .errors import SignatureMismatchError
from .field import MultivectorField
from .roots import RootOfMinusOne, as_root


@dataclass(frozen=True)
class SplitPair:
    """The two halves of x = plus + minus with f plus g = +plus, f minus g = -minus."""

    plus: Multivector
    minus: Multivector
    f: RootOfMinusOne
    g: RootOfMinusOne


def split_pm(x: Multivector, f, g) -> SplitPair:
    """x_pm = (x +- f x g) / 2.

    The minus half is computed as x - plus so the two halves resum to x at
    ulp level even when the sandwich term dwarfs a coefficient of x.
    """
    f = as_root(f)
    g = as_root(g)
    fxg = f.value * x * g.value
    plus = (x + fxg) / 2
    return SplitPair(plus=plus, minus=x - plus, f=f, g=g)


def split_commuting(x: Multivector, f) -> tuple[Multivector, Multivector]:
    """Decompose x into parts commuting / anticommuting with f.

    Uses f^-1 = -f: the commuting part is (x + f^-1 x f) / 2 = (x - f x f) / 2.
    """
    f = as_root(f)
    s = f.value * x * f.value
    return (x - s) / 2, (x + s) / 2


def split_field(h: MultivectorField, f, g) -> tuple[MultivectorField, MultivectorField]:
    """Pointwise split of a sampled field; returns (h_plus, h_minus)."""
    f = as_root(f)
    g = as_root(g)
    alg = h.algebra
    if f.algebra != alg or g.algebra != alg:
        raise SignatureMismatchError("roots and field must share one algebra")
    sandwich = alg.left_matrix(f.value.coeffs) @ alg.right_matrix(g.value.coeffs)
    fxg = (sandwich @ h.stack).reshape(h.data.shape)
    plus = (h.data + fxg) / 2
    return (
        MultivectorField(alg, h.grid, plus),
        MultivectorField(alg, h.grid, h.data - plus),
    )
