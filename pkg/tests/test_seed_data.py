from scripts.seed_data import RESONATORS, SWEEP, seed_multiplexed, seed_sweeps, seed_temperature
from services.traces import read_temperature_dataset, read_trace


def test_sweep_traces(tmp_path):
    count = seed_sweeps(directory=tmp_path, seed=3)
    assert count == len(RESONATORS) * sum(step["repeats"] for step in SWEEP)
    trace = read_trace(path=tmp_path / "A_-60dBm_0.csv")
    assert trace.power_dbm == -60.0
    assert trace.label == "A"


def test_multiplexed_and_temperature(tmp_path):
    seed_multiplexed(directory=tmp_path, seed=3)
    seed_temperature(directory=tmp_path, seed=3)
    assert read_trace(path=tmp_path / "multiplexed.csv").label == "feedline"
    data = read_temperature_dataset(path=tmp_path / "F_temperature.csv")
    assert len(data.points) == 20
    assert all(point.sigma_f == 1e3 for point in data.points)
