"""JSON output helpers shared by the report writers."""
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Union

import numpy as np

SIGNIFICANT_DIGITS = 10


def to_jsonable(obj: Any) -> Any:
    """Convert numpy values, tuples and enums to JSON types.

    Floats are rounded to 10 significant digits; NaN and infinities become None.
    """
    if isinstance(obj, Enum):
        return to_jsonable(obj.value)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        return float(format(value, f".{SIGNIFICANT_DIGITS}g"))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(item) for item in obj]
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(data: Any, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        json.dump(to_jsonable(data), f, indent=2)
        f.write("\n")
    return path
