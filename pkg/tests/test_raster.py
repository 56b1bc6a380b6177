import os
import subprocess
import sys
from fractions import Fraction as F

import numpy as np
import pytest

from crosstopo import _pykernels, kernels, raster
from crosstopo.exactset import SetDesc, SinglePoint, closed, hseg, pt, unit_square, vseg

KERNELS = [pytest.param(_pykernels.label4, id="python")]
try:
    from crosstopo import _ckernels
except ImportError:  # pragma: no cover - extension not built
    pass
else:
    KERNELS.append(pytest.param(_ckernels.label4, id="cython"))


def test_compiled_backend_is_selected_when_built():
    if len(KERNELS) == 2:
        assert kernels.BACKEND == "cython"


def test_rasterize_examples():
    assert raster.rasterize(unit_square(), 4).cell_count == 16
    assert raster.rasterize(SetDesc(), 4).cell_count == 0
    seg = SetDesc([vseg(F(1, 2), closed(0, 1))])
    assert raster.rasterize(seg, 4).cell_count == 0
    g = raster.rasterize(seg, 5)
    assert g.cell_count == 5 and g.mask[:, 2].all()


def test_rasterize_rejects_tiny_grids():
    with pytest.raises(ValueError):
        raster.rasterize(unit_square(), 1)


def test_mask_is_read_only():
    g = raster.rasterize(unit_square(), 4)
    with pytest.raises(ValueError):
        g.mask[0, 0] = False


def test_cell_of_boundary():
    assert raster.cell_of(pt(1, 1), 8) == (7, 7)
    assert raster.cell_of(pt(F(1, 2), 0), 8) == (4, 0)


@pytest.mark.parametrize("label4", KERNELS)
def test_two_corner_cells_are_two_components(label4):
    mask = np.zeros((4, 4), dtype=bool)
    mask[0, 0] = mask[3, 3] = True
    labels, count = label4(mask)
    assert count == 2
    assert labels[0, 0] == 1 and labels[3, 3] == 2


@pytest.mark.parametrize("label4", KERNELS)
def test_diagonal_neighbors_are_not_4_connected(label4):
    mask = np.eye(5, dtype=bool)
    assert label4(mask)[1] == 5


@pytest.mark.parametrize("label4", KERNELS)
def test_kernels_agree_on_random_masks(label4):
    rng = np.random.default_rng(7)
    for _ in range(20):
        mask = rng.random((23, 31)) < 0.55
        ref_labels, ref_count = _pykernels.label4(mask)
        labels, count = label4(mask)
        assert count == ref_count
        assert np.array_equal(labels, ref_labels)


def test_full_square_is_connected():
    ok, comps = raster.is_connected(raster.rasterize(unit_square(), 16))
    assert ok and comps.count == 1


def test_dense_cross_superset_is_connected():
    n = 64
    cols = [vseg(F(2 * i + 1, 2 * n), closed(0, 1)) for i in range(0, n, 3)]
    rows = [hseg(F(2 * j + 1, 2 * n), closed(0, 1)) for j in range(0, n, 5)]
    extra = [SinglePoint(pt(F(1, 128), F(3, 128)))]
    ok, _ = raster.is_connected(raster.rasterize(SetDesc(cols + rows + extra), n))
    assert ok


def test_puncture_examples():
    sq = unit_square()
    assert raster.c1_component_count(sq, [pt(F(1, 2), F(1, 2))], 64) == 1
    three = [pt(F(1, 3), F(1, 3)), pt(F(1, 2), F(2, 3)), pt(F(3, 4), F(1, 5))]
    assert raster.c1_component_count(sq, three, 64) == 1


def test_segment_minus_midpoint_splits():
    n = 64
    level = F(65, 128)
    seg = SetDesc([hseg(level, closed(0, 1))])
    assert raster.c1_component_count(seg, [pt(F(1, 2), level)], n) == 2


def test_segment_at_half_vanishes_at_even_resolution():
    seg = SetDesc([hseg(F(1, 2), closed(0, 1))])
    assert raster.c1_component_count(seg, [pt(F(1, 2), F(1, 2))], 64) == 0


def test_puncture_records_provenance():
    g = raster.puncture(raster.rasterize(unit_square(), 8), [pt(F(1, 2), F(1, 8))])
    assert g.provenance["punctured_cells"] == [[4, 1]]
    assert not g.mask[1, 4]


def test_pure_python_fallback_can_be_forced():
    code = "from crosstopo import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, CROSSTOPO_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
