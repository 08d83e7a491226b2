# Standard library
import math

# Third party
import pytest

# Local
from qubitradiometer import constants
from qubitradiometer.config import ExperimentConfig, load_config, validate_config
from qubitradiometer.errors import ConfigError


def test_defaults_describe_the_reference_device():
    config = load_config(None)
    assert config.mode_params.chi == pytest.approx(constants.TWO_PI * 3.1e6)
    assert config.bath_populations.t_loss == constants.T_LOSS
    assert config.a0 == pytest.approx(0.923)

    grid = config.detunings()
    assert grid.size == 41
    assert grid[0] == pytest.approx(-3 * config.mode_params.chi)
    assert grid[-1] == pytest.approx(3 * config.mode_params.chi)


def test_yaml_overrides(tmp_path):
    path = tmp_path / "experiment.yaml"
    path.write_text(
        "baths:\n"
        "  t_loss: 0.57\n"
        "timing:\n"
        "  tau_p: 2.5e-6\n"
        "sweep:\n"
        "  delta_a_hz: [-1.0e+6, 0.0, 1.0e+6]\n"
        "metrics:\n"
        "  a0: 0.9\n"
        "seed: 11\n"
    )

    config = load_config(path)
    assert config.bath_populations.t_loss == 0.57
    assert config.pulse_timing.tau_p == 2.5e-6
    assert config.a0 == 0.9
    assert config.seed == 11
    assert config.detunings()[-1] == pytest.approx(constants.TWO_PI * 1e6)


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_config(path) == ExperimentConfig()


@pytest.mark.parametrize(
    "data",
    [
        {"mode": {"chi_mhz": 3.1}},
        {"unknown": 1},
        {"sweep": {"detuning_points": 0}},
        {"sweep": {"delta_a_hz": []}},
        {"sweep": {"tau_p_values": [2.5e-6, 1.08e-6]}},
        {"baths": {"t_loss": 0.0}},
        {"baths": {"n_vts": -0.1}},
        {"qubit": {"t2r": 0.0}},
        {"timing": {"tau_p": -1e-6}},
        {"mode": {"kappa_r_c_hz": 0.0, "kappa_r_i_hz": 0.0}},
        {"qubit": {"f_ge": 4.4e9, "f_ef": 4.6e9}},
        {"qubit": {"f_ef": 4.682e9}},
    ],
)
def test_invalid_configs_rejected(data):
    with pytest.raises(ConfigError):
        validate_config(data)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "absent.yaml")


def test_invalid_yaml(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("baths: [unclosed\n")
    with pytest.raises(ConfigError, match="invalid YAML"):
        load_config(path)


def test_top_level_must_be_a_mapping(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError, match="mapping"):
        load_config(path)


def test_with_overrides():
    config = ExperimentConfig().with_overrides(seed=5, tau_p=0.54e-6)
    assert config.seed == 5
    assert config.pulse_timing.tau_p == 0.54e-6
    assert config.sweep.tau_p_values == [0.54e-6]
    assert config.pulse_timing.tau_w == pytest.approx(constants.TAU_W)


def test_without_overrides_nothing_changes():
    config = ExperimentConfig()
    assert config.with_overrides() == config


def test_detection_floor_scales_with_readout_linewidth():
    config = validate_config({"qubit": {"detection_floor": 2e-3}})
    expected = 2e-3 * config.mode_params.kappa_r
    assert math.isclose(config.qubit_params.delta_gamma_2r, expected)
