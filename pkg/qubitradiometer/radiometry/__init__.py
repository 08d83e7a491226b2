try:
    from qubitradiometer.radiometry.main import (
        compare_oracle,
        run_calibration_seeds,
        sweep_spectra,
    )
except ImportError:
    from radiometry.main import compare_oracle, run_calibration_seeds, sweep_spectra
