import json
import logging
from datetime import datetime, timezone
from fractions import Fraction
from types import SimpleNamespace

from log import LogContext, RunLogContext, logger
from log.log import json_default, record_to_json


def test_run_context_is_scoped():
    assert LogContext.get_run_id() is None
    with RunLogContext(command="derive") as context:
        assert LogContext.get_run_id() == context.run_id
        assert len(context.run_id) == 12
        assert LogContext.get_context("command") == "derive"
    assert LogContext.get_run_id() is None
    assert LogContext.get_context("command") is None


def test_standard_logging_reaches_loguru_with_run_context():
    records = []
    handler_id = logger.add(lambda message: records.append(message.record), level="DEBUG", format="{message}")
    try:
        with RunLogContext(run_id="abc123", command="simulate"):
            logging.getLogger("test.log.sample").info("packet ready")
    finally:
        logger.remove(handler_id)

    matched = [r for r in records if r["message"] == "packet ready"]
    assert len(matched) == 1
    assert matched[0]["extra"]["run_id"] == "abc123"
    assert matched[0]["extra"]["command"] == "simulate"


def test_json_default_numbers():
    assert json_default(complex(1, -2)) == {"re": 1.0, "im": -2.0}
    assert json_default(Fraction(-1, 3)) == "-1/3"
    assert json_default(ValueError("bad")) == {"error": "bad", "type": "ValueError"}


def test_record_to_json_flattens_context():
    record = {
        "time": datetime(2024, 1, 1, tzinfo=timezone.utc),
        "level": SimpleNamespace(name="INFO"),
        "name": "services.base",
        "line": 10,
        "message": "done",
        "extra": {"run_id": "r1", "C1": complex(0, 1)},
        "exception": None,
    }
    entry = json.loads(record_to_json(record))
    assert entry["level"] == "INFO"
    assert entry["run_id"] == "r1"
    assert entry["C1"] == {"re": 0.0, "im": 1.0}
    assert "exception" not in entry
