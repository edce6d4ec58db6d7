import numpy as np
import pytest

from clifft import (
    FieldFormatError,
    GeometryMismatchError,
    GridGeometry,
    MultivectorField,
    constant_field,
    delta_field,
    field_inner_product,
    field_norm,
    field_scalar_inner,
    gaussian_field,
    generate,
    load_field,
    random_field,
    save_field,
)
from conftest import mv_close


def test_grid_validation():
    with pytest.raises(ValueError):
        GridGeometry(dims=())
    with pytest.raises(ValueError):
        GridGeometry(dims=(0, 4))
    with pytest.raises(ValueError):
        GridGeometry(dims=(4,), mode="fancy")
    with pytest.raises(ValueError):
        GridGeometry(dims=(4,), mode="quadrature")  # missing lo/spacing
    with pytest.raises(ValueError):
        GridGeometry(dims=(4,), mode="cyclic", lo=(0.0,), spacing=(1.0,))
    g = GridGeometry.quadrature((8,), (-4.0,), (4.0,))
    assert g.spacing == (1.0,)
    assert g.volume_element == 1.0
    assert np.array_equal(g.axis_coords(0), np.arange(-4.0, 4.0))


def test_field_shape_and_rank_checks(cl02):
    grid = GridGeometry.cyclic(4)  # 1 axis for a 2-dim algebra
    with pytest.raises(GeometryMismatchError):
        MultivectorField.zeros(cl02, grid)
    grid = GridGeometry.cyclic(4, 4)
    with pytest.raises(ValueError):
        MultivectorField(cl02, grid, np.zeros((3, 4, 4)))


def test_generators(cl02):
    grid = GridGeometry.cyclic(4, 5)
    d = delta_field(cl02, grid, amplitude=cl02.basis_vector(1), index=(1, 2))
    assert np.count_nonzero(d.data) == 1
    assert mv_close(d.point((1, 2)), cl02.basis_vector(1), 0)
    c = constant_field(cl02, grid, 2.5)
    assert np.all(c.data[0] == 2.5) and not c.data[1:].any()

    qgrid = GridGeometry.quadrature((128, 128), (-8.0, -8.0), (8.0, 8.0))
    gauss = gaussian_field(cl02, qgrid, amplitude=1.0, sigmas=1.0)
    # value at the origin sample is exp(0) = 1
    i0 = (64, 64)
    assert gauss.data[(0, *i0)] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        gaussian_field(cl02, grid)  # cyclic grid

    r1 = random_field(cl02, grid, seed=7)
    r2 = random_field(cl02, grid, seed=7)
    assert np.array_equal(r1.data, r2.data)
    assert generate("random", cl02, grid, seed=7).data is not None
    with pytest.raises(ValueError):
        generate("sine", cl02, grid)


def test_inner_products(cl02):
    grid = GridGeometry.cyclic(4, 4)
    h = random_field(cl02, grid, seed=11)
    ip = field_inner_product(h, h)
    assert ip.scalar_part == pytest.approx(field_norm(h) ** 2, rel=1e-12)

    d1 = delta_field(cl02, grid, amplitude=1.0, index=(0, 0))
    d2 = delta_field(cl02, grid, amplitude=cl02.blade(0b11), index=(2, 2))
    assert field_scalar_inner(d1, d2) == 0.0
    assert mv_close(field_inner_product(d1, d2), cl02.zero(), 0)
    assert field_norm(d2) == 1.0

    one = constant_field(cl02, grid, 1.0)
    assert field_inner_product(one, one).scalar_part == pytest.approx(16.0)

    # symmetry of the scalar inner product
    g = random_field(cl02, grid, seed=12)
    assert field_scalar_inner(h, g) == pytest.approx(field_scalar_inner(g, h), rel=1e-14)


def test_inner_product_quadrature_volume(cl02):
    grid = GridGeometry.quadrature((10, 10), (0.0, 0.0), (1.0, 1.0))
    one = constant_field(cl02, grid, 1.0)
    # 100 samples times volume element 0.01
    assert field_scalar_inner(one, one) == pytest.approx(1.0)


def test_inner_product_matches_brute_force(cl02):
    grid = GridGeometry.cyclic(3, 3)
    a = random_field(cl02, grid, seed=1)
    b = random_field(cl02, grid, seed=2)
    acc = cl02.zero()
    for i in range(3):
        for j in range(3):
            acc = acc + a.point((i, j)) * b.point((i, j)).principal_reverse()
    assert mv_close(field_inner_product(a, b), acc, 1e-13)


def test_cyclic_translation_invariance(cl02):
    grid = GridGeometry.cyclic(4, 4)
    a = random_field(cl02, grid, seed=3)
    b = random_field(cl02, grid, seed=4)
    a2 = MultivectorField(cl02, grid, np.roll(a.data, (1, 2), axis=(1, 2)))
    b2 = MultivectorField(cl02, grid, np.roll(b.data, (1, 2), axis=(1, 2)))
    assert field_scalar_inner(a, b) == pytest.approx(field_scalar_inner(a2, b2), rel=1e-12)


def test_save_load_roundtrip(tmp_path, cl02):
    for grid in (
        GridGeometry.cyclic(4, 6),
        GridGeometry.quadrature((8, 4), (-1.0, 0.0), (1.0, 2.0)),
    ):
        h = random_field(cl02, grid, seed=5)
        path = tmp_path / "h.cfld"
        save_field(h, path)
        back = load_field(path)
        assert back.algebra == cl02
        assert back.grid == h.grid
        assert np.array_equal(back.data, h.data)  # bit-exact


def test_load_errors(tmp_path, cl02):
    grid = GridGeometry.cyclic(4, 4)
    h = random_field(cl02, grid, seed=6)
    path = tmp_path / "h.cfld"
    save_field(h, path)
    blob = path.read_bytes()

    bad = tmp_path / "bad.cfld"
    bad.write_bytes(b"not json\n" + blob.split(b"\n", 1)[1])
    with pytest.raises(FieldFormatError):
        load_field(bad)

    bad.write_bytes(blob.replace(b"CFLD1", b"NOPE1"))
    with pytest.raises(FieldFormatError):
        load_field(bad)

    bad.write_bytes(blob[:-40])  # truncated payload
    with pytest.raises(FieldFormatError, match="truncated"):
        load_field(bad)

    corrupted = bytearray(blob)
    corrupted[len(blob) // 2] ^= 0xFF
    bad.write_bytes(bytes(corrupted))
    with pytest.raises(FieldFormatError, match="checksum"):
        load_field(bad)

    # header dims inconsistent with payload size (wrong blade count on disk)
    header, rest = blob.split(b"\n", 1)
    tampered = header.replace(b'"q": 2', b'"q": 3')
    bad.write_bytes(tampered + b"\n" + rest)
    with pytest.raises(FieldFormatError):
        load_field(bad)

    empty_dims = header.replace(b'"dims": [4, 4]', b'"dims": []')
    bad.write_bytes(empty_dims + b"\n" + rest)
    with pytest.raises(FieldFormatError):
        load_field(bad)
