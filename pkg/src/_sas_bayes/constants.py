"""Module for constants used throughout the sas-bayes application.

.. module:: constants
    :synopsis: Constants used throughout the sas-bayes application.
"""

import pathlib

import appdirs  # type: ignore

import _sas_bayes

LOG_DIR = pathlib.Path(
    appdirs.user_log_dir(
        appname=_sas_bayes._external_package_name,
        appauthor=_sas_bayes.__author__,
    )
)
LOG_FILE_NAME = f"{_sas_bayes._external_package_name}.log"
MAX_LOGFILE_SIZE = 1024 * 1024 * 10  # 10 MiB

THREADS_ENV = "SAS_BAYES_THREADS"

DESK_SWEEPS = 20_000
FULL_SCALE_SWEEPS = 100_000

DATASET_FILE = "dataset.csv"
CONFIG_FILE = "config.json"
MANIFEST_FILE = "manifest.json"
ERROR_FILE = "error.json"
LOCK_FILE = ".lock"
