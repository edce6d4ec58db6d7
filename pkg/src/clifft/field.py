"""Multivector-valued signals sampled on rectangular grids.

A field stores one real scalar grid per blade channel, blade-major
(shape (2^n, N_1, ..., N_n)), so each channel is contiguous and can be
handed to a batched FFT as-is.  Grids come in two flavors:

* cyclic: samples at integer indices j_l in [0, N_l), unit volume element;
* quadrature: samples at x_l = lo_l + j_l * spacing_l, uniform Riemann rule
  with volume element prod(spacing_l).

The algebra dimension must equal the number of grid axes (each signal axis
pairs with one basis direction).

On-disk format "CFLD1": one JSON header line, then the raw little-endian
float64 payload (blade channels in ascending mask order, row-major per
channel), then the CRC32 of the payload as 4 little-endian bytes.
"""

from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Multivector
from .errors import FieldFormatError, GeometryMismatchError, SignatureMismatchError

_MAGIC = "CFLD1"


@dataclass(frozen=True)
class GridGeometry:
    dims: tuple[int, ...]
    mode: str = "cyclic"
    lo: tuple[float, ...] | None = None
    spacing: tuple[float, ...] | None = None

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) == 0:
            raise ValueError("grid needs at least one axis")
        if any(d < 1 for d in dims):
            raise ValueError(f"axis sample counts must be positive: {dims}")
        if self.mode not in ("cyclic", "quadrature"):
            raise ValueError(f"unknown grid mode {self.mode!r}")
        if self.mode == "quadrature":
            if self.lo is None or self.spacing is None:
                raise ValueError("quadrature grids need lo and spacing per axis")
            lo = tuple(float(v) for v in self.lo)
            sp = tuple(float(v) for v in self.spacing)
            if len(lo) != len(dims) or len(sp) != len(dims):
                raise ValueError("lo/spacing length must match dims")
            if any(s <= 0 for s in sp):
                raise ValueError("spacings must be positive")
            object.__setattr__(self, "lo", lo)
            object.__setattr__(self, "spacing", sp)
        elif self.lo is not None or self.spacing is not None:
            raise ValueError("cyclic grids take no lo/spacing")

    @classmethod
    def cyclic(cls, *dims: int) -> "GridGeometry":
        return cls(dims=tuple(dims), mode="cyclic")

    @classmethod
    def quadrature(cls, dims, lo, hi) -> "GridGeometry":
        """Uniform grid of dims[l] samples covering [lo_l, hi_l)."""
        dims = tuple(int(d) for d in dims)
        lo = tuple(float(v) for v in lo)
        hi = tuple(float(v) for v in hi)
        spacing = tuple((h - a) / d for a, h, d in zip(lo, hi, dims))
        return cls(dims=dims, mode="quadrature", lo=lo, spacing=spacing)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    @property
    def volume_element(self) -> float:
        if self.mode == "cyclic":
            return 1.0
        return float(np.prod(self.spacing))

    def axis_coords(self, axis: int) -> np.ndarray:
        """Sample coordinates along a 0-based axis."""
        j = np.arange(self.dims[axis], dtype=np.float64)
        if self.mode == "cyclic":
            return j
        return self.lo[axis] + j * self.spacing[axis]

    def points(self) -> np.ndarray:
        """All sample coordinates, shape (size, ndim), C-order raveling."""
        axes = [self.axis_coords(l) for l in range(self.ndim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)


class MultivectorField:
    """Sampled multivector signal: blade-major data of shape (2^n, *dims)."""

    __slots__ = ("algebra", "grid", "data")

    def __init__(self, algebra: Algebra, grid: GridGeometry, data, copy: bool = False):
        if grid.ndim != algebra.n:
            raise GeometryMismatchError(
                f"grid has {grid.ndim} axes but Cl({algebra.p},{algebra.q}) needs {algebra.n}"
            )
        arr = np.array(data, dtype=np.float64, copy=copy)
        expected = (algebra.dim, *grid.dims)
        if arr.shape != expected:
            raise ValueError(f"field data shape {arr.shape} != {expected}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("field data must be finite")
        arr.setflags(write=False)
        self.algebra = algebra
        self.grid = grid
        self.data = arr

    @classmethod
    def zeros(cls, algebra: Algebra, grid: GridGeometry) -> "MultivectorField":
        return cls(algebra, grid, np.zeros((algebra.dim, *grid.dims)))

    @property
    def stack(self) -> np.ndarray:
        """View of the data as (2^n, total points)."""
        return self.data.reshape(self.algebra.dim, -1)

    def point(self, index) -> Multivector:
        """Multivector value at one grid index tuple."""
        idx = (slice(None),) + tuple(int(i) for i in np.atleast_1d(index))
        return Multivector(self.algebra, self.data[idx])

    def map_channels(self, matrix: np.ndarray) -> "MultivectorField":
        """Apply a (2^n, 2^n) blade-mixing matrix at every grid point."""
        out = (matrix @ self.stack).reshape(self.data.shape)
        return MultivectorField(self.algebra, self.grid, out)

    def _compatible(self, other: "MultivectorField") -> None:
        if self.algebra != other.algebra:
            raise SignatureMismatchError("fields live in different algebras")
        if self.grid != other.grid:
            raise GeometryMismatchError("fields live on different grids")

    def __add__(self, other):
        if not isinstance(other, MultivectorField):
            return NotImplemented
        self._compatible(other)
        return MultivectorField(self.algebra, self.grid, self.data + other.data)

    def __sub__(self, other):
        if not isinstance(other, MultivectorField):
            return NotImplemented
        self._compatible(other)
        return MultivectorField(self.algebra, self.grid, self.data - other.data)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float)):
            return MultivectorField(self.algebra, self.grid, self.data * scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return MultivectorField(self.algebra, self.grid, -self.data)


# -- generators -----------------------------------------------------------------


def _amplitude_coeffs(algebra: Algebra, amplitude) -> np.ndarray:
    if isinstance(amplitude, Multivector):
        if amplitude.algebra != algebra:
            raise SignatureMismatchError("amplitude algebra mismatch")
        return amplitude.coeffs
    return algebra.scalar(float(amplitude)).coeffs


def delta_field(algebra: Algebra, grid: GridGeometry, amplitude=1.0, index=None) -> MultivectorField:
    """Amplitude at one grid index (default the origin), zero elsewhere."""
    data = np.zeros((algebra.dim, *grid.dims))
    idx = tuple(int(i) for i in (index if index is not None else (0,) * grid.ndim))
    data[(slice(None),) + idx] = _amplitude_coeffs(algebra, amplitude)
    return MultivectorField(algebra, grid, data)


def constant_field(algebra: Algebra, grid: GridGeometry, amplitude=1.0) -> MultivectorField:
    shape = (algebra.dim,) + (1,) * grid.ndim
    data = np.broadcast_to(_amplitude_coeffs(algebra, amplitude).reshape(shape), (algebra.dim, *grid.dims))
    return MultivectorField(algebra, grid, data, copy=True)


def gaussian_field(algebra: Algebra, grid: GridGeometry, amplitude=1.0, sigmas=1.0) -> MultivectorField:
    """Separable gaussian envelope prod_l exp(-x_l^2 / (2 sigma_l^2)) times amplitude.

    Quadrature grids only; cyclic index coordinates have no meaningful origin.
    """
    if grid.mode != "quadrature":
        raise ValueError("gaussian fields require a quadrature grid")
    sigmas = np.broadcast_to(np.asarray(sigmas, dtype=np.float64), (grid.ndim,))
    envelope = np.ones(grid.dims)
    for l in range(grid.ndim):
        x = grid.axis_coords(l)
        shape = [1] * grid.ndim
        shape[l] = grid.dims[l]
        envelope = envelope * np.exp(-(x**2) / (2.0 * sigmas[l] ** 2)).reshape(shape)
    amp = _amplitude_coeffs(algebra, amplitude).reshape((algebra.dim,) + (1,) * grid.ndim)
    return MultivectorField(algebra, grid, amp * envelope[np.newaxis])


def random_field(algebra: Algebra, grid: GridGeometry, seed: int) -> MultivectorField:
    """Coefficients i.i.d. uniform in [-1, 1]; bit-reproducible per seed."""
    rng = np.random.default_rng(seed)
    return MultivectorField(algebra, grid, rng.uniform(-1.0, 1.0, (algebra.dim, *grid.dims)))


def generate(kind: str, algebra: Algebra, grid: GridGeometry, **params) -> MultivectorField:
    """Dispatcher over the named generators: delta, constant, gaussian, random."""
    makers = {
        "delta": delta_field,
        "constant": constant_field,
        "gaussian": gaussian_field,
        "random": random_field,
    }
    try:
        maker = makers[kind]
    except KeyError:
        raise ValueError(f"unknown field kind {kind!r}") from None
    return maker(algebra, grid, **params)


# -- inner products ---------------------------------------------------------------


def field_inner_product(a: MultivectorField, b: MultivectorField) -> Multivector:
    """(a, b) = sum_x a(x) * principal_reverse(b(x)) * volume element.

    Returns a single multivector; its scalar part is the squared norm when
    b = a.
    """
    a._compatible(b)
    alg = a.algebra
    bt = b.stack * alg.principal_reverse_signs[:, None]
    gram = a.stack @ bt.T
    out = np.zeros(alg.dim)
    targets = np.arange(alg.dim)
    for m in range(alg.dim):
        out[m ^ targets] += alg.blade_sign_row(m) * gram[m]
    return Multivector(alg, out * a.grid.volume_element, copy=False)


def field_scalar_inner(a: MultivectorField, b: MultivectorField) -> float:
    """Symmetric scalar inner product: channel-wise dot times volume element."""
    a._compatible(b)
    return float(np.vdot(a.data, b.data)) * a.grid.volume_element


def field_norm(a: MultivectorField) -> float:
    return float(np.sqrt(field_scalar_inner(a, a)))


# -- CFLD1 file io ------------------------------------------------------------------


def save_field(field: MultivectorField, path) -> None:
    header = {
        "magic": _MAGIC,
        "p": field.algebra.p,
        "q": field.algebra.q,
        "dims": list(field.grid.dims),
        "mode": field.grid.mode,
        "layout": "blade-major",
        "dtype": "f64-le",
    }
    if field.grid.mode == "quadrature":
        header["domain"] = [
            [lo, lo + n * sp]
            for lo, n, sp in zip(field.grid.lo, field.grid.dims, field.grid.spacing)
        ]
    payload = np.ascontiguousarray(field.data, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode("utf-8") + b"\n")
        fh.write(payload)
        fh.write(struct.pack("<I", zlib.crc32(payload)))


def load_field(path) -> MultivectorField:
    with open(path, "rb") as fh:
        blob = fh.read()
    newline = blob.find(b"\n")
    if newline < 0:
        raise FieldFormatError("missing header line")
    try:
        header = json.loads(blob[:newline].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FieldFormatError(f"unreadable header: {exc}") from exc
    if not isinstance(header, dict) or header.get("magic") != _MAGIC:
        raise FieldFormatError("bad magic; not a CFLD1 file")
    try:
        p, q = int(header["p"]), int(header["q"])
        dims = tuple(int(d) for d in header["dims"])
        mode = header["mode"]
        if header.get("layout", "blade-major") != "blade-major":
            raise FieldFormatError(f"unsupported layout {header['layout']!r}")
        if header.get("dtype", "f64-le") != "f64-le":
            raise FieldFormatError(f"unsupported dtype {header['dtype']!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise FieldFormatError(f"malformed header: {exc}") from exc

    try:
        algebra = Algebra(p, q)
        if mode == "quadrature":
            domain = header["domain"]
            grid = GridGeometry.quadrature(dims, [d[0] for d in domain], [d[1] for d in domain])
        else:
            grid = GridGeometry(dims=dims, mode=mode)
    except (KeyError, TypeError, ValueError) as exc:
        raise FieldFormatError(f"malformed header: {exc}") from exc

    n_bytes = algebra.dim * grid.size * 8
    body = blob[newline + 1 :]
    if len(body) < n_bytes + 4:
        raise FieldFormatError(
            f"truncated payload: expected {n_bytes} data bytes + 4 checksum bytes, have {len(body)}"
        )
    payload, tail = body[:n_bytes], body[n_bytes : n_bytes + 4]
    (crc,) = struct.unpack("<I", tail)
    if crc != zlib.crc32(payload):
        raise FieldFormatError("payload checksum mismatch")
    data = np.frombuffer(payload, dtype="<f8").reshape(algebra.dim, *dims)
    return MultivectorField(algebra, grid, data, copy=True)
