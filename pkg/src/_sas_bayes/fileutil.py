"""Utility functions for dealing with files and run directories.

.. module:: fileutil
    :synopsis: Utility functions for dealing with files and run directories.
"""

import contextlib
import os
import pathlib
import shutil
import tempfile
from typing import Iterator

from sas_bayes_core import FileError, OutputLockedError, log

from _sas_bayes import constants

__all__ = ["atomic_write", "run_directory", "ensure_size_less"]


def atomic_write(content: str, dst: pathlib.Path) -> None:
    """Write the given contents to the destination "atomically". Achieved by
    writing in a temporary directory and then moving the file to the
    destination.

    Args:
        content: The content to write to the new file.
        dst: Path to the file.
    """
    with tempfile.TemporaryDirectory() as tmpdir:
        with tempfile.NamedTemporaryFile(
            delete=False, dir=tmpdir, mode="w", encoding="utf8"
        ) as file:
            file.write(content)

        shutil.move(file.name, str(dst))


@contextlib.contextmanager
def run_directory(out_dir: pathlib.Path) -> Iterator[pathlib.Path]:
    """Create ``out_dir`` if needed and hold its lock file while the block
    runs.

    Raises:
        :py:class:`~sas_bayes_core.exceptions.OutputLockedError` if another
        command holds the lock.
    """
    out_dir = pathlib.Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise FileError(
            f"can't create output directory at {out_dir}", path=str(out_dir)
        ) from exc

    lock = out_dir / constants.LOCK_FILE
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError as exc:
        raise OutputLockedError(
            f"{out_dir} is in use by another command, remove {lock} if it "
            "is stale",
            path=str(out_dir),
        ) from exc
    with os.fdopen(fd, "w") as file:
        file.write(str(os.getpid()))
    log.debug(f"locked {out_dir}")
    # a failure of an earlier command is superseded
    (out_dir / constants.ERROR_FILE).unlink(missing_ok=True)

    try:
        yield out_dir
    finally:
        lock.unlink(missing_ok=True)
        log.debug(f"unlocked {out_dir}")


def ensure_size_less(path: pathlib.Path, max_size: int) -> None:
    """Drop the oldest lines of a file until it is smaller than
    ``max_size`` bytes, keeping roughly half of the limit.
    """
    if not path.exists():
        return
    file_size = path.stat().st_size
    if file_size < max_size:
        return
    target = file_size - max_size // 2
    with open(path, mode="rb") as f:
        cur = target
        f.seek(cur)
        while f.read(1) != b"\n" and cur < file_size:
            cur += 1
            f.seek(cur)

        tmp_path = path.parent / (path.name + ".tmp")
        with open(tmp_path, mode="wb") as tmp_file:
            for line in f.readlines():
                tmp_file.write(line)

    path.unlink()
    tmp_path.rename(path)
