import json

import numpy as np

from Border_Peeling.logging_utils import configure_logging, get_logger, log_duration, run_context


def _records(path) -> list[dict]:
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]


def test_configure_logging_writes_json_with_run_id(tmp_path) -> None:
    log_file = tmp_path / "logs" / "bp.log"
    configure_logging(level="INFO", log_file=log_file)
    logger = get_logger("test")
    with run_context("run-123"):
        logger.info("example", k=np.int64(20), tau=np.float64(0.25), ids=np.arange(3))
    logger.info("outside")
    first, second = _records(log_file)[-2:]
    assert first["event"] == "example"
    assert first["run_id"] == "run-123"
    assert first["k"] == 20
    assert first["tau"] == 0.25
    assert first["ids"] == [0, 1, 2]
    assert first["level"] == "info"
    assert "run_id" not in second


def test_long_lists_are_truncated(tmp_path) -> None:
    log_file = tmp_path / "bp.log"
    configure_logging(level="INFO", log_file=log_file)
    get_logger("test").info("peeled", ids=list(range(50)))
    record = _records(log_file)[-1]
    assert record["ids"][:3] == [0, 1, 2]
    assert len(record["ids"]) == 21
    assert record["ids"][-1] == "... (+30)"


def test_level_filters_events(tmp_path) -> None:
    log_file = tmp_path / "bp.log"
    configure_logging(level="WARNING", log_file=log_file)
    logger = get_logger("test")
    logger.info("hidden")
    logger.warning("shown")
    assert [record["event"] for record in _records(log_file)] == ["shown"]


def test_log_duration_reports_seconds(tmp_path) -> None:
    log_file = tmp_path / "bp.log"
    configure_logging(level="INFO", log_file=log_file)
    with log_duration(get_logger("test"), "step_done", n_points=4):
        pass
    record = _records(log_file)[-1]
    assert record["event"] == "step_done"
    assert record["n_points"] == 4
    assert record["duration_seconds"] >= 0
