import json
import logging

import pytest
from dotenv import load_dotenv

import core
from config import EXIT_CODES
from error_handler import (
    CCMError,
    CheckFailedError,
    ConstraintError,
    DimensionError,
    ErrorCategory,
    ErrorCodes,
    HermitianError,
    InputFileError,
    LineSearchError,
    NonFiniteError,
    OracleRefusalError,
    TangencyError,
    error_handler,
)


@pytest.fixture
def debug_on():
    previous = core.global_state.debug_mode
    core.toggle_debug_mode(True)
    yield
    core.toggle_debug_mode(previous)


def test_log_entry_shape():
    entry = core.log_debug("Solve finished", {"status": "converged"})
    assert entry["message"] == "Solve finished"
    assert entry["data"] == {"status": "converged"}
    assert "timestamp" in entry


def test_debug_mode_emits_json_lines(debug_on, caplog):
    core.logger.propagate = True
    try:
        with caplog.at_level(logging.DEBUG, logger="ccm"):
            core.log_debug("Matrix file read", {"n": 3})
    finally:
        core.logger.propagate = False
    payload = json.loads(caplog.records[-1].getMessage())
    assert payload["message"] == "Matrix file read"
    assert payload["data"] == {"n": 3}


def test_toggle_debug_mode():
    previous = core.global_state.debug_mode
    assert core.toggle_debug_mode() is (not previous)
    assert core.toggle_debug_mode() is previous


def test_function_tracking():
    before = core.global_state.get_status()["function_calls"].get("cmd_example", 0)
    core.track_function_entry("cmd_example")
    assert core.global_state.get_status()["function_calls"]["cmd_example"] == before + 1


def test_log_level_follows_environment(monkeypatch):
    monkeypatch.setenv("CCM_LOG_LEVEL", "warning")
    assert core.resolve_log_level() == logging.WARNING
    monkeypatch.setenv("CCM_LOG_LEVEL", "chatty")
    assert core.resolve_log_level() == logging.DEBUG


def test_log_level_picked_up_from_env_file(tmp_path, monkeypatch):
    """A level set only in .env is honored once the file is loaded"""
    monkeypatch.setenv("CCM_LOG_LEVEL", "DEBUG")
    monkeypatch.delenv("CCM_LOG_LEVEL")
    env_file = tmp_path / ".env"
    env_file.write_text("CCM_LOG_LEVEL=ERROR\n", encoding="utf-8")
    load_dotenv(env_file)
    assert core.resolve_log_level() == logging.ERROR


def test_error_details_and_codes():
    e = DimensionError("lengths differ", left=2, right=3)
    assert str(e) == "lengths differ"
    assert e.code == ErrorCodes.DIMENSION_MISMATCH.code
    assert e.details == {"left": 2, "right": 3}


def test_error_default_message():
    assert str(LineSearchError()) == ErrorCodes.LINE_SEARCH_FAILED.message


def test_details_do_not_leak_between_instances():
    DimensionError(left=1)
    assert DimensionError().details == {}


def test_error_hierarchy():
    assert issubclass(TangencyError, ConstraintError)
    assert issubclass(HermitianError, ConstraintError)
    assert issubclass(ConstraintError, CCMError)
    assert HermitianError().category is ErrorCategory.CONSTRAINT


@pytest.mark.parametrize("exc, code", [
    (InputFileError(), EXIT_CODES["input_error"]),
    (DimensionError(), EXIT_CODES["input_error"]),
    (HermitianError(), EXIT_CODES["input_error"]),
    (OracleRefusalError(), EXIT_CODES["input_error"]),
    (LineSearchError(), EXIT_CODES["line_search_failed"]),
    (CheckFailedError(), EXIT_CODES["check_failed"]),
    (NonFiniteError(), EXIT_CODES["internal_error"]),
    (RuntimeError("boom"), EXIT_CODES["internal_error"]),
])
def test_exit_codes(exc, code):
    assert error_handler.exit_code_for(exc) == code


def test_error_record_is_json_ready():
    record = error_handler.create_error_record(
        ConstraintError("off the circle", index=2, modulus=1.1, phase=1 + 2j)
    )
    assert record["code"] == "CON_2001"
    assert record["category"] == "constraint"
    assert record["details"]["phase"] == [1.0, 2.0]
    json.dumps(record)


def test_unexpected_exception_record():
    record = error_handler.create_error_record(KeyError("x"))
    assert record["code"] == "SYS_9001"
    assert record["details"]["exception_type"] == "KeyError"
