import logging

import pytest

from sas_bayes_core import log


@pytest.fixture(autouse=True)
def _capture_debug(caplog):
    caplog.set_level(logging.DEBUG, logger="sas_bayes")


def test_context_is_attached_to_the_record(caplog):
    log.info("adapted", sweep=3000)

    (record,) = caplog.records
    assert record.levelno == logging.INFO
    assert record.getMessage() == "adapted"
    assert record.sweep == 3000


@pytest.mark.parametrize(
    "func, level",
    [
        (log.debug, logging.DEBUG),
        (log.info, logging.INFO),
        (log.warning, logging.WARNING),
        (log.error, logging.ERROR),
    ],
)
def test_level_helpers(caplog, func, level):
    func("message")

    assert [r.levelno for r in caplog.records] == [level]


def test_exception_carries_traceback(caplog):
    try:
        raise ValueError("boom")
    except ValueError:
        log.exception("failed")

    (record,) = caplog.records
    assert record.levelno == logging.ERROR
    assert record.exc_info[0] is ValueError


def test_timed_logs_even_when_the_block_raises(caplog):
    with pytest.raises(RuntimeError):
        with log.timed("sampling"):
            raise RuntimeError

    (record,) = caplog.records
    assert record.getMessage().startswith("sampling took ")
    assert record.seconds >= 0
