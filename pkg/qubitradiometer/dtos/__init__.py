try:
    from qubitradiometer.dtos.Measurement import Measurement
    from qubitradiometer.dtos.ModeParams import ModeParams
    from qubitradiometer.dtos.BathPopulations import BathPopulations
    from qubitradiometer.dtos.PulseTiming import PulseTiming
    from qubitradiometer.dtos.QubitParams import QubitParams
    from qubitradiometer.dtos.SpectralDensity import SpectralDensity
    from qubitradiometer.dtos.DephasingSpectrum import DephasingSpectrum
    from qubitradiometer.dtos.ReadoutModel import ReadoutModel
    from qubitradiometer.dtos.RamseyFringe import RamseyFringe
    from qubitradiometer.dtos.SweepRecord import SweepRecord
    from qubitradiometer.dtos.FitLine import FitLine
    from qubitradiometer.dtos.EtaProfile import EtaProfile
    from qubitradiometer.dtos.CalibrationResult import CalibrationResult
    from qubitradiometer.dtos.DetectorFigures import DetectorFigures
    from qubitradiometer.dtos.PrecisionInputs import PrecisionInputs
    from qubitradiometer.dtos.OracleConfig import OracleConfig
    from qubitradiometer.dtos.GaussianAnsatzState import GaussianAnsatzState
    from qubitradiometer.dtos.ProgressStep import ProgressStep
except ImportError:
    from dtos.Measurement import Measurement
    from dtos.ModeParams import ModeParams
    from dtos.BathPopulations import BathPopulations
    from dtos.PulseTiming import PulseTiming
    from dtos.QubitParams import QubitParams
    from dtos.SpectralDensity import SpectralDensity
    from dtos.DephasingSpectrum import DephasingSpectrum
    from dtos.ReadoutModel import ReadoutModel
    from dtos.RamseyFringe import RamseyFringe
    from dtos.SweepRecord import SweepRecord
    from dtos.FitLine import FitLine
    from dtos.EtaProfile import EtaProfile
    from dtos.CalibrationResult import CalibrationResult
    from dtos.DetectorFigures import DetectorFigures
    from dtos.PrecisionInputs import PrecisionInputs
    from dtos.OracleConfig import OracleConfig
    from dtos.GaussianAnsatzState import GaussianAnsatzState
    from dtos.ProgressStep import ProgressStep
