import math

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from core.enums import InductanceSource
from schemas.lumped import CalibrationDataset, CalibrationRow, LumpedModel, PpcSpec, PredictionInput
from services.exceptions import ConfigurationError, InfeasibleDesignError
from services.lumped import (
    CHARACTERIZED_INDUCTANCE,
    c0_from_dielectric,
    calibrate_c0,
    characteristic_impedance,
    design_tadpole,
    implied_inductance,
    ppc_capacitance,
    prediction_report,
    required_area,
    resonance_frequency,
)
from services.traces import read_calibration_dataset

C0 = 1.39e-3
C_CPW = 0.26e-12


@pytest.fixture
def characterized(characterization_path) -> pd.DataFrame:
    return pd.read_csv(characterization_path, comment="#")


class TestPpcCapacitance:
    def test_resonator_a(self):
        assert ppc_capacitance(spec=PpcSpec(area=206721e-12, c0=C0)) * 1e12 == pytest.approx(287.34, abs=0.01)

    def test_zero_area_rejected(self):
        with pytest.raises(ValidationError):
            PpcSpec(area=0.0, c0=C0)

    def test_linear_in_area(self):
        single = ppc_capacitance(spec=PpcSpec(area=1e-8, c0=C0))
        assert ppc_capacitance(spec=PpcSpec(area=2e-8, c0=C0)) == pytest.approx(2 * single, rel=1e-15)

    def test_from_dielectric(self):
        assert c0_from_dielectric(eps_d=6.6, thickness=42e-9) * 1e3 == pytest.approx(1.39, abs=0.005)


class TestResonanceFrequency:
    def test_resonator_a(self):
        model = LumpedModel(inductance=CHARACTERIZED_INDUCTANCE, c_ppc=287.34e-12, c_cpw=C_CPW)
        assert resonance_frequency(model=model) / 1e6 == pytest.approx(286.8, abs=0.1)

    def test_unit_case(self):
        model = LumpedModel(inductance=1.0, c_ppc=0.75, c_cpw=0.25)
        assert resonance_frequency(model=model) == pytest.approx(1 / (2 * math.pi), rel=1e-15)

    def test_quadrupled_capacitance_halves_frequency(self):
        base = LumpedModel(inductance=1e-9, c_ppc=100e-12, c_cpw=1e-12)
        quad = LumpedModel(inductance=1e-9, c_ppc=400e-12, c_cpw=4e-12)
        assert resonance_frequency(model=quad) == pytest.approx(resonance_frequency(model=base) / 2, rel=1e-14)

    @pytest.mark.parametrize("field", ["inductance", "c_ppc", "c_cpw"])
    def test_decreasing_in_each_element(self, field):
        base = LumpedModel(inductance=1e-9, c_ppc=100e-12, c_cpw=1e-12)
        larger = base.model_copy(update={field: getattr(base, field) * 1.01})
        assert resonance_frequency(model=larger) < resonance_frequency(model=base)


class TestCharacteristicImpedance:
    def test_resonator_a(self):
        model = LumpedModel(inductance=CHARACTERIZED_INDUCTANCE, c_ppc=287.34e-12, c_cpw=C_CPW)
        assert characteristic_impedance(model=model) == pytest.approx(1.93, abs=0.005)

    def test_unit_case(self):
        model = LumpedModel(inductance=1e-9, c_ppc=0.5e-9, c_cpw=0.5e-9)
        assert characteristic_impedance(model=model) == pytest.approx(1.0, rel=1e-15)

    def test_reactance_identity(self):
        model = LumpedModel(inductance=1.2e-9, c_ppc=80e-12, c_cpw=0.3e-12)
        omega = 2 * math.pi * resonance_frequency(model=model)
        assert characteristic_impedance(model=model) == pytest.approx(omega * model.inductance, rel=1e-14)

    def test_monotonicity(self):
        base = LumpedModel(inductance=1e-9, c_ppc=100e-12, c_cpw=1e-12)
        assert characteristic_impedance(model=base.model_copy(update={"c_ppc": 110e-12})) < characteristic_impedance(model=base)
        assert characteristic_impedance(model=base.model_copy(update={"inductance": 1.1e-9})) > characteristic_impedance(model=base)


class TestRequiredArea:
    def test_resonator_a(self):
        area = required_area(f_target=286.8e6, inductance=CHARACTERIZED_INDUCTANCE, c0=C0, c_cpw=C_CPW)
        assert area * 1e12 == pytest.approx(206721, rel=1e-3)

    @pytest.mark.parametrize("f_target", [100e6, 286.8e6, 1e9, 3e9])
    def test_inverse_of_resonance_frequency(self, f_target):
        area = required_area(f_target=f_target, inductance=0.85e-9, c0=C0, c_cpw=0.34e-12)
        model = LumpedModel(inductance=0.85e-9, c_ppc=C0 * area, c_cpw=0.34e-12)
        assert resonance_frequency(model=model) == pytest.approx(f_target, rel=1e-12)

    def test_infeasible_target(self):
        with pytest.raises(InfeasibleDesignError):
            required_area(f_target=1e12, inductance=CHARACTERIZED_INDUCTANCE, c0=C0, c_cpw=C_CPW)


class TestImpliedInductance:
    def test_resonator_a(self):
        assert implied_inductance(f=286.8e6, c_total=287.60e-12) * 1e9 == pytest.approx(1.0706, abs=2e-4)

    def test_resonator_l(self):
        assert implied_inductance(f=1086.6e6, c_total=20.04e-12) * 1e9 == pytest.approx(1.071, abs=1e-3)

    def test_unit_case(self):
        assert implied_inductance(f=1 / (2 * math.pi), c_total=1.0) == pytest.approx(1.0, rel=1e-15)

    def test_consistent_across_rows(self, characterized):
        c_total = C0 * characterized.area_um2 * 1e-12 * (1 + characterized.c_cpw_ratio_percent / 100)
        values = np.array(
            [implied_inductance(f=f * 1e6, c_total=c) for f, c in zip(characterized.f_pred_mhz, c_total)]
        )
        assert values.std(ddof=1) / values.mean() < 0.005

    def test_impedance_column(self, characterized):
        c_total = C0 * characterized.area_um2 * 1e-12 * (1 + characterized.c_cpw_ratio_percent / 100)
        for row, c in zip(characterized.itertuples(), c_total):
            inductance = implied_inductance(f=row.f_pred_mhz * 1e6, c_total=c)
            model = LumpedModel(inductance=inductance, c_ppc=c - C_CPW, c_cpw=C_CPW)
            # printed impedances of the mid-size rows are rounded loosely
            tolerance = 0.05 if row.label in "ABCDF" else 0.25
            assert characteristic_impedance(model=model) == pytest.approx(row.z_c_ohm, abs=tolerance)


class TestCalibrateC0:
    def test_table1(self, characterization_path):
        record = calibrate_c0(
            data=read_calibration_dataset(path=characterization_path), inductance=CHARACTERIZED_INDUCTANCE, c_cpw=C_CPW
        )
        assert record.c0 * 1e3 == pytest.approx(1.39, abs=0.05)
        assert record.c0_sigma > 0
        assert len(record.residuals) == 12
        assert record.line_fit.r_squared > 0.99
        assert record.residuals[0].label == "A"
        assert record.residuals[0].c_cpw_ratio * 100 == pytest.approx(0.09, abs=0.01)

    def test_noiseless_recovery(self):
        areas = np.geomspace(1e4, 2e5, 8) * 1e-12
        rows = [
            CalibrationRow(
                area=area,
                f_meas=resonance_frequency(
                    model=LumpedModel(inductance=CHARACTERIZED_INDUCTANCE, c_ppc=1.40e-3 * area, c_cpw=C_CPW)
                ),
            )
            for area in areas
        ]
        record = calibrate_c0(
            data=CalibrationDataset(rows=rows), inductance=CHARACTERIZED_INDUCTANCE, c_cpw=C_CPW
        )
        assert record.c0 == pytest.approx(1.40e-3, rel=1e-12)
        assert record.line_fit.intercept == pytest.approx(C_CPW, rel=1e-6)

    def test_single_row_rejected(self):
        with pytest.raises(ValidationError):
            CalibrationDataset(rows=[CalibrationRow(area=1e-8, f_meas=3e8)])

    def test_repeated_areas_rejected(self):
        with pytest.raises(ValidationError):
            CalibrationDataset(rows=[CalibrationRow(area=1e-8, f_meas=3e8), CalibrationRow(area=1e-8, f_meas=3.1e8)])


class TestPredictionReport:
    def _designs(self, characterized):
        return [
            PredictionInput(
                label=row.label,
                model=LumpedModel(
                    inductance=CHARACTERIZED_INDUCTANCE,
                    c_ppc=C0 * row.area_um2 * 1e-12,
                    c_cpw=C_CPW,
                ),
                eps_eff=6.45,
            )
            for row in characterized.itertuples()
        ]

    def test_resonator_a_error(self):
        design = PredictionInput(
            label="A",
            model=LumpedModel(inductance=CHARACTERIZED_INDUCTANCE, c_ppc=287.34e-12, c_cpw=C_CPW),
            eps_eff=6.45,
        )
        report = prediction_report(designs=[design], measured=[290.5e6])
        assert report.rows[0].relative_error_percent == pytest.approx(1.27, abs=0.05)
        assert report.metadata.conventions["relative_error"] == "(f_meas - f_pred) / f_meas"

    def test_error_column(self, characterized):
        designs = []
        for row in characterized.itertuples():
            # element values that reproduce the printed predicted frequency
            c_total = 1.0 / ((2 * math.pi * row.f_pred_mhz * 1e6) ** 2 * CHARACTERIZED_INDUCTANCE)
            model = LumpedModel(inductance=CHARACTERIZED_INDUCTANCE, c_ppc=c_total - C_CPW, c_cpw=C_CPW)
            designs.append(PredictionInput(label=row.label, model=model, eps_eff=6.45))
        report = prediction_report(designs=designs, measured=[f * 1e6 for f in characterized.f_meas_mhz])
        for row, printed in zip(report.rows, characterized.rel_error_percent):
            # row E's printed error does not follow from its printed frequencies
            tolerance = 0.3 if row.label == "E" else 0.05
            assert abs(row.relative_error_percent) == pytest.approx(printed, abs=tolerance)

    def test_zero_error(self):
        design = PredictionInput(model=LumpedModel(inductance=1e-9, c_ppc=1e-10, c_cpw=1e-13), eps_eff=6.45)
        f_pred = resonance_frequency(model=design.model)
        assert prediction_report(designs=[design], measured=[f_pred]).rows[0].relative_error_percent == 0.0

    def test_size_ratio_uses_measured_frequency(self, characterized):
        designs = [
            design.model_copy(update={"total_length": 2000e-6 + math.sqrt(row.area_um2 * 1e-12)})
            for design, row in zip(self._designs(characterized), characterized.itertuples())
        ]
        report = prediction_report(designs=designs, measured=[f * 1e6 for f in characterized.f_meas_mhz])
        for row, printed in zip(report.rows, characterized.size_ratio):
            assert row.size_ratio == pytest.approx(printed, rel=0.06)

    def test_length_mismatch(self, characterized):
        with pytest.raises(ConfigurationError):
            prediction_report(designs=self._designs(characterized), measured=[290.5e6])


class TestDesignTadpole:
    def test_with_overrides(self, reference_geometry):
        record = design_tadpole(
            f_target=286.8e6, geom=reference_geometry, c0=C0, inductance=CHARACTERIZED_INDUCTANCE, c_cpw=C_CPW
        )
        assert record.area * 1e12 == pytest.approx(206.7e3, rel=1e-3)
        assert record.impedance == pytest.approx(1.93, abs=0.01)
        assert record.frequency_check == pytest.approx(286.8e6, rel=1e-12)
        assert record.inductance_source == InductanceSource.OVERRIDE

    def test_analytic_inductance(self, reference_geometry):
        record = design_tadpole(f_target=286.8e6, geom=reference_geometry, c0=C0)
        assert record.inductance_source == InductanceSource.ANALYTIC
        assert record.inductance * 1e9 == pytest.approx(0.847, abs=1e-3)
        assert record.c_cpw * 1e12 == pytest.approx(0.3387, abs=2e-4)
        assert any("1.0706 nH" in note for note in record.notes)
