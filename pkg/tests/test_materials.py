# Copyright 2026 The wgsq-lib Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest

from tests import get_test_data, get_test_path
from wgsq.exceptions import DispersionError, RangeError
from wgsq.materials import (
    Axis,
    ConstantIndexModel,
    MaterialModel,
    PoleModel,
    SellmeierModel,
    builtin_materials,
    constant_index,
    get_material,
    group_index_and_gvd,
    load_materials,
    refractive_index,
)

index_cases = [
    pytest.param(name, float(wavelength), expected, id="{}-{}".format(name, wavelength))
    for name, table in sorted(get_test_data("material_index.json").items())
    for wavelength, expected in sorted(table.items())
]


@pytest.mark.parametrize("name,wavelength,expected", index_cases)
def test_builtin_index_regression(name, wavelength, expected):
    assert refractive_index(get_material(name), wavelength) == pytest.approx(
        expected, abs=1e-7
    )


def test_builtin_library_contents():
    materials = builtin_materials()

    assert {"lithium_niobate_e", "lithium_niobate_o", "lithium_tantalate_e", "air"} <= set(
        materials
    )
    assert materials["lithium_niobate_o"].axis == Axis.ordinary
    assert isinstance(materials["lithium_tantalate_e"], PoleModel)
    assert materials["lithium_tantalate_e"].temperature_c == 20.0
    assert materials["lithium_niobate_e"].reference


def test_extraordinary_index_below_ordinary():
    ne = get_material("lithium_niobate_e")
    no = get_material("lithium_niobate_o")
    for wavelength in (0.5, 1.064, 1.55, 3.0):
        assert ne.refractive_index(wavelength) < no.refractive_index(wavelength)


def test_normal_dispersion_in_the_visible_and_near_ir():
    model = get_material("lithium_niobate_e")
    values = model.refractive_index([0.5, 0.775, 1.064, 1.55, 2.0])
    assert list(values) == sorted(values, reverse=True)


@pytest.mark.parametrize(
    "name,wavelength",
    [
        pytest.param("lithium_niobate_e", 0.3, id="ln_below"),
        pytest.param("lithium_niobate_e", 5.5, id="ln_above"),
        pytest.param("lithium_tantalate_e", 4.2, id="lt_above"),
    ],
)
def test_out_of_range_raises(name, wavelength):
    with pytest.raises(RangeError) as excinfo:
        get_material(name).refractive_index(wavelength)

    assert excinfo.value.name == name
    assert "outside valid range" in str(excinfo.value)


def test_range_bounds_are_inclusive():
    model = get_material("lithium_niobate_e")
    low, high = model.valid_range

    assert model.refractive_index(low) > model.refractive_index(high)


def test_group_index_and_gvd_lithium_niobate():
    n_g, beta2 = group_index_and_gvd(get_material("lithium_niobate_e"), 1.55)

    assert n_g == pytest.approx(2.182319, rel=1e-5)
    assert beta2 == pytest.approx(9.9487e-26, rel=1e-3)


def test_gvd_converges_with_step():
    model = get_material("lithium_niobate_e")
    _, coarse = model.group_index_and_gvd(1.55, relative_step=1e-3)
    _, fine = model.group_index_and_gvd(1.55, relative_step=5e-4)

    assert fine == pytest.approx(coarse, rel=1e-2)


def test_dispersion_stencil_must_fit_in_range():
    model = get_material("lithium_niobate_e")
    with pytest.raises(RangeError):
        model.group_index_and_gvd(model.valid_range[1])


def test_constant_index_has_no_dispersion():
    model = constant_index("glass", 1.5)
    n_g, beta2 = model.group_index_and_gvd(1.0)

    assert model.refractive_index(1.0) == 1.5
    assert n_g == pytest.approx(1.5, rel=1e-9)
    assert beta2 == pytest.approx(0.0, abs=1e-30)


@pytest.mark.parametrize(
    "model_cls,coefficients,valid_range",
    [
        pytest.param(SellmeierModel, [2.98, 0.02, 0.59], (0.4, 5.0), id="odd_sellmeier"),
        pytest.param(PoleModel, [4.5, 0.01, 0.25], (0.4, 4.0), id="short_pole"),
        pytest.param(ConstantIndexModel, [1.5, 1.6], (0.4, 4.0), id="two_constants"),
        pytest.param(ConstantIndexModel, [0.5], (0.4, 4.0), id="index_below_one"),
        pytest.param(ConstantIndexModel, [1.5], (4.0, 0.4), id="reversed_range"),
        # pole at λ² = 1 μm² inside the range
        pytest.param(SellmeierModel, [1.0, 1.0], (0.4, 4.0), id="pole_in_range"),
    ],
)
def test_invalid_models_rejected(model_cls, coefficients, valid_range):
    with pytest.raises(DispersionError):
        model_cls(name="bad", coefficients=coefficients, valid_range=valid_range)


def test_from_coefficient_data_selects_form():
    model = MaterialModel.from_coefficient_data(
        form="pole",
        name="lt",
        coefficients=[4.5284, 0.009547493901, 0.2466951, 0.07769, 0.1838, -0.02367],
        valid_range=[0.4, 4.0],
    )
    assert isinstance(model, PoleModel)
    assert model.refractive_index(1.55) == pytest.approx(2.12330130, abs=1e-7)


def test_unknown_form():
    with pytest.raises(DispersionError) as excinfo:
        MaterialModel.from_coefficient_data(
            form="cauchy", name="x", coefficients=[1.5], valid_range=[0.4, 2.0]
        )

    assert "Unrecognized dispersion form" in str(excinfo.value)


def test_unknown_material_lists_known_names():
    with pytest.raises(DispersionError) as excinfo:
        get_material("unobtainium")

    assert "lithium_niobate_e" in str(excinfo.value)


def test_user_models_searched_first():
    extra = load_materials(get_test_path("coefficients_custom.json"))

    assert get_material("test_slab_core", extra).refractive_index(1.55) == 2.2
    assert get_material("fused_silica", extra).refractive_index(1.55) == pytest.approx(
        1.444, abs=1e-3
    )
    assert get_material("air", extra).refractive_index(1.55) == 1.0


def test_doped_core_is_an_offset_host():
    host = get_material("lithium_niobate_e")
    doped = get_material("zno_lithium_niobate_e")
    wavelengths = [0.775, 1.064, 1.55, 2.0]

    assert doped.index_offset == -0.0025
    np.testing.assert_allclose(
        doped.refractive_index(wavelengths), host.refractive_index(wavelengths) - 0.0025, atol=1e-12
    )

    n_g_host, beta2_host = host.group_index_and_gvd(1.55)
    n_g_doped, beta2_doped = doped.group_index_and_gvd(1.55)
    assert n_g_doped == pytest.approx(n_g_host - 0.0025, rel=1e-9)
    assert beta2_doped == pytest.approx(beta2_host, rel=1e-3)


def test_doped_core_still_guides_over_lithium_tantalate():
    doped = get_material("zno_lithium_niobate_e")
    substrate = get_material("lithium_tantalate_e")

    for wavelength in (0.775, 1.55):
        contrast = doped.refractive_index(wavelength) - substrate.refractive_index(wavelength)
        assert 0.01 < contrast < 0.016


@pytest.mark.parametrize(
    "offset,valid",
    [
        pytest.param(-0.01, True, id="small_shift"),
        pytest.param(-0.6, False, id="index_below_one"),
    ],
)
def test_index_offset_validation(offset, valid):
    def build():
        return ConstantIndexModel(
            name="shifted", coefficients=[1.5], valid_range=(0.4, 4.0), index_offset=offset
        )

    if valid:
        assert build().refractive_index(1.0) == pytest.approx(1.5 + offset)
    else:
        with pytest.raises(DispersionError):
            build()
