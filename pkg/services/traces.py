import io
import logging
import re
from pathlib import Path
from typing import TypeVar

import numpy as np
import pandas as pd
from pydantic import BaseModel

from core.enums import FrequencyUnit, TouchstoneDataFormat, TraceFormat
from core.units import mhz_to_hz, um2_to_m2
from schemas.lumped import CalibrationDataset, CalibrationRow
from schemas.tls import TemperatureDataset, TemperaturePoint
from schemas.traces import FrequencyTrace, find_trace_violation
from services.exceptions import ConfigurationError, TraceParseError

logger = logging.getLogger(__name__)

RecordType = TypeVar("RecordType", bound=BaseModel)

TRACE_COLUMNS = ["freq_hz", "re", "im"]
CALIBRATION_COLUMNS = ["label", "area_um2", "f_meas_mhz"]
TEMPERATURE_COLUMNS = ["temperature_k", "f_r_hz"]
FLOAT_FORMAT = "%.17g"

_TOUCHSTONE_SUFFIX = re.compile(r"\.s(\d+)p$", re.IGNORECASE)


def read_trace(
    *,
    path: Path | str,
    trace_format: TraceFormat | None = None,
    power_dbm: float | None = None,
    temperature_k: float | None = None,
) -> FrequencyTrace:
    path = Path(path)
    if trace_format is None:
        trace_format = TraceFormat.TOUCHSTONE if _TOUCHSTONE_SUFFIX.search(path.name) else TraceFormat.CSV
    if trace_format == TraceFormat.TOUCHSTONE:
        trace = _read_touchstone(path)
    else:
        trace = _read_csv_trace(path)
    updates = {}
    if power_dbm is not None:
        updates["power_dbm"] = power_dbm
    if temperature_k is not None:
        updates["temperature_k"] = temperature_k
    if updates:
        trace = trace.with_samples(trace.samples, **updates)
    logger.debug("read %d points from %s", len(trace), path)
    return trace


def write_trace(*, trace: FrequencyTrace, path: Path | str, trace_format: TraceFormat = TraceFormat.CSV) -> None:
    if trace_format != TraceFormat.CSV:
        raise ConfigurationError("only CSV traces can be written")
    lines = [f"# label={trace.label}"]
    if trace.power_dbm is not None:
        lines.append(f"# power_dbm={trace.power_dbm!r}")
    if trace.temperature_k is not None:
        lines.append(f"# temperature_k={trace.temperature_k!r}")
    for key, value in sorted(trace.extra.items()):
        lines.append(f"# {key}={value}")
    lines.append(",".join(TRACE_COLUMNS))
    for freq, sample in zip(trace.frequencies, trace.samples):
        lines.append(f"{freq:.17g},{sample.real:.17g},{sample.imag:.17g}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def window_trace(*, trace: FrequencyTrace, f_min: float, f_max: float) -> FrequencyTrace:
    mask = (trace.frequencies >= f_min) & (trace.frequencies <= f_max)
    return FrequencyTrace(
        frequencies=trace.frequencies[mask],
        samples=trace.samples[mask],
        power_dbm=trace.power_dbm,
        temperature_k=trace.temperature_k,
        label=trace.label,
        extra=dict(trace.extra),
    )


def write_json(*, record: BaseModel, path: Path | str) -> None:
    Path(path).write_text(record.model_dump_json(indent=2) + "\n", encoding="utf-8")


def read_json(*, path: Path | str, model: type[RecordType]) -> RecordType:
    return model.model_validate_json(Path(path).read_text(encoding="utf-8"))


def write_table(*, frame: pd.DataFrame, path: Path | str) -> None:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def read_calibration_dataset(*, path: Path | str) -> CalibrationDataset:
    frame = _read_table(path, CALIBRATION_COLUMNS)
    rows = [
        CalibrationRow(
            label=None if pd.isna(item.label) else str(item.label),
            area=um2_to_m2(float(item.area_um2)),
            f_meas=mhz_to_hz(float(item.f_meas_mhz)),
        )
        for item in frame.itertuples(index=False)
    ]
    return CalibrationDataset(rows=rows)


def read_temperature_dataset(*, path: Path | str, label: str = "") -> TemperatureDataset:
    frame = _read_table(path, TEMPERATURE_COLUMNS)
    has_sigma = "sigma_f_hz" in frame.columns
    points = [
        TemperaturePoint(
            temperature=float(item.temperature_k),
            f_r=float(item.f_r_hz),
            sigma_f=float(item.sigma_f_hz) if has_sigma and not pd.isna(item.sigma_f_hz) else None,
        )
        for item in frame.itertuples(index=False)
    ]
    return TemperatureDataset(label=label or Path(path).stem, points=points)


def _read_table(path: Path | str, required: list[str]) -> pd.DataFrame:
    path = Path(path)
    frame = pd.read_csv(path, comment="#", skipinitialspace=True)
    if list(frame.columns[: len(required)]) != required:
        raise TraceParseError(str(path), None, f"expected header starting with {','.join(required)}")
    return frame


def _read_csv_trace(path: Path) -> FrequencyTrace:
    text = path.read_text(encoding="utf-8")
    metadata: dict[str, str] = {}
    lines = text.splitlines()
    header_index = None
    for index, raw in enumerate(lines):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if sep:
                metadata[key.strip()] = value.strip()
            continue
        header_index = index
        break
    if header_index is None:
        raise TraceParseError(str(path), None, "missing header")
    header = [column.strip() for column in lines[header_index].split(",")]
    if header != TRACE_COLUMNS:
        raise TraceParseError(str(path), header_index + 1, f"expected header {','.join(TRACE_COLUMNS)}")

    data_lines = []
    line_numbers = []
    for index in range(header_index + 1, len(lines)):
        if lines[index].strip() and not lines[index].lstrip().startswith("#"):
            data_lines.append(lines[index])
            line_numbers.append(index + 1)
    frame = pd.read_csv(
        io.StringIO("\n".join(data_lines)), header=None, names=TRACE_COLUMNS, dtype=str, keep_default_na=False
    )
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    unparsed = numeric.isna() & ~frame.apply(lambda column: column.str.strip().str.lower().isin(["nan"]))
    if unparsed.to_numpy().any():
        row = int(np.argmax(unparsed.to_numpy().any(axis=1)))
        raise TraceParseError(str(path), line_numbers[row], "value is not a number")

    frequencies = numeric["freq_hz"].to_numpy(dtype=float)
    samples = numeric["re"].to_numpy(dtype=float) + 1j * numeric["im"].to_numpy(dtype=float)
    _raise_on_violation(path, frequencies, samples, line_numbers)

    power = metadata.pop("power_dbm", None)
    temperature = metadata.pop("temperature_k", None)
    label = metadata.pop("label", path.stem)
    try:
        return FrequencyTrace(
            frequencies=frequencies,
            samples=samples,
            power_dbm=None if power is None else float(power),
            temperature_k=None if temperature is None else float(temperature),
            label=label,
            extra=metadata,
        )
    except ValueError as exc:
        raise TraceParseError(str(path), None, f"invalid metadata: {exc}") from exc


def _read_touchstone(path: Path) -> FrequencyTrace:
    match = _TOUCHSTONE_SUFFIX.search(path.name)
    ports = int(match.group(1)) if match else 1
    if ports not in (1, 2):
        raise TraceParseError(str(path), None, "only .s1p and .s2p Touchstone files are supported")
    values_per_row = 1 + 2 * ports * ports

    unit = FrequencyUnit.GHZ
    data_format = TouchstoneDataFormat.MA
    option_seen = False
    rows: list[list[float]] = []
    line_numbers: list[int] = []
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            raise TraceParseError(str(path), number, "Touchstone v2 keywords are not supported")
        if line.startswith("#"):
            if option_seen:
                continue
            option_seen = True
            unit, data_format = _parse_option_line(path, number, line)
            continue
        try:
            values = [float(token) for token in line.split()]
        except ValueError as exc:
            raise TraceParseError(str(path), number, f"malformed data line: {exc}") from exc
        if len(values) != values_per_row:
            raise TraceParseError(
                str(path), number, f"expected {values_per_row} values per line, got {len(values)}"
            )
        rows.append(values)
        line_numbers.append(number)

    if not rows:
        raise TraceParseError(str(path), None, "no data lines")
    table = np.array(rows)
    frequencies = table[:, 0] * unit.scale
    # two-port order in v1 is S11 S21 S12 S22
    first, second = (1, 2) if ports == 1 else (3, 4)
    samples = _to_complex(table[:, first], table[:, second], data_format)
    _raise_on_violation(path, frequencies, samples, line_numbers)
    return FrequencyTrace(
        frequencies=frequencies,
        samples=samples,
        label=path.stem,
        extra={"source_format": f"touchstone_s{ports}p"},
    )


def _parse_option_line(path: Path, number: int, line: str) -> tuple[FrequencyUnit, TouchstoneDataFormat]:
    unit = FrequencyUnit.GHZ
    data_format = TouchstoneDataFormat.MA
    tokens = line[1:].upper().split()
    index = 0
    while index < len(tokens):
        token = tokens[index]
        if token in FrequencyUnit.__members__:
            unit = FrequencyUnit(token)
        elif token in TouchstoneDataFormat.__members__:
            data_format = TouchstoneDataFormat(token)
        elif token == "R":
            index += 1
        elif token != "S":
            raise TraceParseError(str(path), number, f"unsupported option {token!r}")
        index += 1
    return unit, data_format


def _to_complex(first: np.ndarray, second: np.ndarray, data_format: TouchstoneDataFormat) -> np.ndarray:
    if data_format == TouchstoneDataFormat.RI:
        return first + 1j * second
    angle = np.deg2rad(second)
    magnitude = first if data_format == TouchstoneDataFormat.MA else np.power(10.0, first / 20.0)
    return magnitude * np.exp(1j * angle)


def _raise_on_violation(path: Path, frequencies: np.ndarray, samples: np.ndarray, line_numbers: list[int]) -> None:
    violation = find_trace_violation(frequencies, samples)
    if violation is None:
        return
    index, reason = violation
    raise TraceParseError(str(path), None if index is None else line_numbers[index], reason)

