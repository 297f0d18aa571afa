"""Content hashes of run outputs."""

import hashlib
import pathlib
from typing import Dict, Iterable

from sas_bayes_core import serialize

from _sas_bayes import constants, fileutil

_CHUNK_SIZE = 1 << 16


def file_hash(path: pathlib.Path) -> str:
    """Return the hexdigest of a sha256 hash of the file's content."""
    digest = hashlib.sha256()
    with open(path, mode="rb") as file:
        for chunk in iter(lambda: file.read(_CHUNK_SIZE), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(
    out_dir: pathlib.Path, files: Iterable[pathlib.Path]
) -> pathlib.Path:
    """Write ``manifest.json`` mapping every file of a run directory,
    relative to it, to its sha256 hash. Files listed in an existing manifest
    are kept, so commands that add to a run directory extend its manifest.

    Args:
        out_dir: The run directory.
        files: Files just written into ``out_dir``.
    Returns:
        Path to the manifest.
    """
    out_dir = pathlib.Path(out_dir)
    manifest_path = out_dir / constants.MANIFEST_FILE
    root = out_dir.resolve()
    names = {
        pathlib.Path(f).resolve().relative_to(root).as_posix() for f in files
    }
    names.update(_listed_files(manifest_path))
    manifest = {
        name: file_hash(out_dir / name)
        for name in sorted(names)
        if (out_dir / name).is_file()
    }
    fileutil.atomic_write(
        serialize.dumps({"files": manifest}), manifest_path
    )
    return manifest_path


def _listed_files(manifest_path: pathlib.Path) -> Dict[str, str]:
    if not manifest_path.is_file():
        return {}
    return serialize.load_json(manifest_path).get("files", {})
