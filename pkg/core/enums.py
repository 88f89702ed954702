import enum


class TraceFormat(str, enum.Enum):
    """Формат файла трассы"""
    CSV = "csv"
    TOUCHSTONE = "touchstone"


class TouchstoneDataFormat(str, enum.Enum):
    """Представление комплексных чисел в Touchstone"""
    RI = "RI"  # действительная и мнимая части
    MA = "MA"  # модуль и угол в градусах
    DB = "DB"  # модуль в дБ и угол в градусах


class FrequencyUnit(str, enum.Enum):
    HZ = "HZ"
    KHZ = "KHZ"
    MHZ = "MHZ"
    GHZ = "GHZ"

    @property
    def scale(self) -> float:
        return {
            FrequencyUnit.HZ: 1.0,
            FrequencyUnit.KHZ: 1e3,
            FrequencyUnit.MHZ: 1e6,
            FrequencyUnit.GHZ: 1e9,
        }[self]


class QiConvention(str, enum.Enum):
    """Способ вычисления внутренней добротности"""
    DIAMETER_CORRECTED = "diameter_corrected"  # 1/Qi = 1/QL - Re(e^{i phi}/|Qe|), поправка на диаметр


class TlsLogConvention(str, enum.Enum):
    """Частота под логарифмом в температурной модели"""
    F0 = "ln_f0"


class InductanceSource(str, enum.Enum):
    ANALYTIC = "analytic"
    OVERRIDE = "override"


class FitStage(str, enum.Enum):
    """Стадия конвейера подгонки"""
    DELAY = "delay"
    CIRCLE = "circle"
    PHASE = "phase"
    REFINE = "refine"
    EXTRACTION = "extraction"
    TLS = "tls"
    CALIBRATION = "calibration"
