"""Export utilities for JSON and CSV formats.

Numbers are written locale-independently: floats use their shortest round-trip repr,
infinities the literal tokens ``inf``/``-inf``, and NaN is refused.
"""

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def format_number(value: Any) -> str:
    """Render one CSV field.

    Raises:
        ValueError: If the value is NaN
    """
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        number = float(value)
        if math.isnan(number):
            raise ValueError("Refusing to export NaN")
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        return repr(number)
    if value is None:
        return ""
    return str(value)


def json_safe(data: Any) -> Any:
    """Convert numpy scalars/arrays and infinities into plain JSON values.

    Raises:
        ValueError: If a NaN is encountered
    """
    if isinstance(data, dict):
        return {str(k): json_safe(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [json_safe(v) for v in data]
    if isinstance(data, np.ndarray):
        return [json_safe(v) for v in data.tolist()]
    if isinstance(data, (bool, np.bool_)):
        return bool(data)
    if isinstance(data, (int, np.integer)):
        return int(data)
    if isinstance(data, (float, np.floating)):
        number = float(data)
        if math.isnan(number):
            raise ValueError("Refusing to export NaN")
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        return number
    return data


def export_to_json(data: Any, filepath: PathLike) -> Path:
    """Export data to JSON file.

    Args:
        data: Data to export (dicts, lists, numbers, numpy values)
        filepath: Destination file path

    Returns:
        Path to exported file
    """
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, "w", encoding="utf-8") as f:
        json.dump(json_safe(data), f, indent=2)
        f.write("\n")

    logger.info(f"Exported data to JSON: {path}")
    return path


def export_to_csv(data: List[Dict[str, Any]], filepath: PathLike) -> Path:
    """Export list of dictionaries to CSV file.

    Args:
        data: List of dictionaries to export, all with the keys of the first
        filepath: Destination file path

    Returns:
        Path to exported file

    Raises:
        ValueError: If data is empty, not a list of dicts, or contains NaN
    """
    if not data:
        raise ValueError("Cannot export empty data to CSV")

    if not isinstance(data, list) or not isinstance(data[0], dict):
        raise ValueError("Data must be a list of dictionaries for CSV export")

    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)

    fieldnames = list(data[0].keys())
    rows = [[format_number(row[name]) for name in fieldnames] for row in data]

    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(fieldnames)
        writer.writerows(rows)

    logger.info(f"Exported {len(data)} rows to CSV: {path}")
    return path


def flatten_dict(d: Dict[str, Any], parent_key: str = "", sep: str = ".") -> Dict[str, Any]:
    """Flatten a nested dictionary into dotted keys.

    Args:
        d: Dictionary to flatten
        parent_key: Parent key for nested items
        sep: Separator for concatenating keys

    Returns:
        Flattened dictionary
    """
    items: List[Tuple[str, Any]] = []
    for k, v in d.items():
        new_key = f"{parent_key}{sep}{k}" if parent_key else str(k)
        if isinstance(v, dict):
            items.extend(flatten_dict(v, new_key, sep=sep).items())
        elif isinstance(v, list):
            items.append((new_key, ", ".join(str(x) for x in v)))
        else:
            items.append((new_key, v))
    return dict(items)


def detect_format(filepath: PathLike) -> str:
    """
    Detect export format from file extension.

    Args:
        filepath: Path to file

    Returns:
        Format string: 'json' or 'csv'

    Raises:
        ValueError: If format is not supported
    """
    extension = Path(filepath).suffix.lower()

    if extension == ".json":
        return "json"
    elif extension == ".csv":
        return "csv"
    else:
        raise ValueError(f"Unsupported export format '{extension}'. Supported formats: .json, .csv")
