import contextlib
import logging
import os
import tempfile
from pathlib import Path


@contextlib.contextmanager
def atomic_write(destination, mode="w"):
    """
    Write a file through a temporary sibling and move it into place only
    when the block finishes without error. On failure the temporary file
    is removed and the destination is left untouched.
    :param destination: target path.
    :param mode: "w" for text, "wb" for bytes.
    """
    destination = Path(destination)
    directory = destination.parent if str(destination.parent) else Path('.')
    fd, temp_path = tempfile.mkstemp(prefix="." + destination.name + ".",
                                     suffix=".tmp", dir=directory)
    try:
        if "b" in mode:
            handle = os.fdopen(fd, mode)
        else:
            handle = os.fdopen(fd, mode, newline="\n")
        with handle:
            yield handle
        os.replace(temp_path, destination)
    except BaseException:
        logging.debug("Discarding partial output for %s", destination)
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise
