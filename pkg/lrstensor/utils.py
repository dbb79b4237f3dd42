import hashlib
import math
import os
import tempfile
import warnings
from pathlib import Path

import numpy as np
import yaml

from .errors import ConfigError, LRSTWarning, OutputExistsError


def parse_int_list(text, name="value"):
    """
    Parse "2,2,2" (or an int, or a list) into a tuple of ints.
    """
    if isinstance(text, (list, tuple)):
        items = list(text)
    elif isinstance(text, (int, np.integer)):
        items = [text]
    else:
        items = [item for item in str(text).replace(" ", "").split(",") if item]
    try:
        values = tuple(int(item) for item in items)
    except (TypeError, ValueError) as e:
        raise ConfigError(
            f"{name}: expected comma-separated integers, got {text!r}"
        ) from e
    if not values:
        raise ConfigError(f"{name}: empty list")
    return values


def parse_float_list(text, name="value"):
    if isinstance(text, (list, tuple)):
        items = list(text)
    elif isinstance(text, (int, float, np.floating)):
        items = [text]
    else:
        items = [item for item in str(text).replace(" ", "").split(",") if item]
    try:
        values = tuple(parse_float(item) for item in items)
    except (TypeError, ValueError) as e:
        raise ConfigError(
            f"{name}: expected comma-separated numbers, got {text!r}"
        ) from e
    if not values:
        raise ConfigError(f"{name}: empty list")
    return values


def parse_float(value):
    """float() that also understands "inf"/"infinity" written in spec files."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "+inf"):
        return math.inf
    return float(value)


def log_dbar(shape):
    """Natural log of the largest dimension."""
    return math.log(max(shape))


def default_mu1(shape):
    return 2 ** len(shape) + log_dbar(shape)


def kth_largest(values, k):
    """
    k-th largest entry (1-based) of a flat array using a selection algorithm.
    """
    flat = np.ravel(values)
    n = flat.size
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside [1, {n}]")
    return float(np.partition(flat, n - k)[n - k])


def budget(alpha, n):
    """floor(alpha * n), robust to 0.2 * 25 = 4.999... style rounding."""
    return int(math.floor(alpha * n + 1e-9))


def format_float(value):
    if value is None:
        return ""
    return repr(float(value))


def atomic_write_bytes(path, data):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as tmp:
            tmp.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def atomic_write_text(path, text):
    atomic_write_bytes(path, text.encode("utf-8"))


def canonical_yaml(data):
    return yaml.safe_dump(data, sort_keys=True, default_flow_style=False)


def digest(data):
    """
    SHA-256 of the canonical YAML dump of a plain mapping.
    """
    return hashlib.sha256(canonical_yaml(data).encode("utf-8")).hexdigest()


def warn(message):
    warnings.warn(message, LRSTWarning, stacklevel=3)


def prepare_output_dir(directory, force=False):
    """
    Create ``directory``; refuse a non-empty one unless ``force``.
    """
    directory = Path(directory)
    if directory.is_file():
        raise OutputExistsError(f"{directory} is a file")
    if directory.exists() and any(directory.iterdir()) and not force:
        raise OutputExistsError(f"{directory} is not empty (use --force)")
    directory.mkdir(parents=True, exist_ok=True)
    return directory
