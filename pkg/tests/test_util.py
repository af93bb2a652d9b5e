import logging
import sys

from app import util
from app.config import Config
from app.util import configure_logging, run_tasks, worker_count


def square(v):
    return v * v


def test_worker_count(mocker):
    mocker.patch.dict(Config.WORKERS, {"threads": None})
    assert worker_count() == Config.WORKERS["default_threads"]
    mocker.patch.dict(Config.WORKERS, {"threads": "3"})
    assert worker_count() == 3
    mocker.patch.dict(Config.WORKERS, {"threads": "many"})
    assert worker_count() == Config.WORKERS["default_threads"]
    mocker.patch.dict(Config.WORKERS, {"threads": "0"})
    assert worker_count() == Config.WORKERS["default_threads"]


def test_run_tasks_keeps_order():
    assert run_tasks(square, [3, 1, 2], workers=1) == [9, 1, 4]
    assert run_tasks(square, [3, 1, 2], workers=2) == [9, 1, 4]
    assert run_tasks(square, [], workers=2) == []


def test_configure_logging(mocker):
    spy = mocker.spy(util, "setup_logging")
    configure_logging("debug")
    spy.assert_called_once_with()
    assert logging.getLogger().level == logging.DEBUG
    configure_logging()
    assert logging.getLogger().level == getattr(logging, Config.LOGGING["level"].upper())


def test_configure_logging_keeps_stdout_clean(mocker):
    handler = logging.StreamHandler(sys.stdout)
    mocker.patch.object(util, "setup_logging", lambda: logging.getLogger().addHandler(handler))
    try:
        configure_logging()
        assert handler.stream is sys.stderr
    finally:
        logging.getLogger().removeHandler(handler)
