from typing import Any, Dict, Optional
import json
from pathlib import Path


def pretty_print_json(data: Dict[str, Any]) -> str:
    """Pretty print JSON data with stable key order."""
    return json.dumps(data, indent=2, sort_keys=True, default=str)


def read_code_argument(code: Optional[str], input_file: Optional[Path]) -> Optional[str]:
    """Gauss code from an argument or a file; None when neither is given."""
    if code is not None:
        return code
    if input_file is None:
        return None
    with open(input_file, 'r', encoding='utf-8') as f:
        return f.read().strip()


def truncate_string(text: str, max_length: int = 50) -> str:
    """Truncate string to max length with ellipsis."""
    if len(text) <= max_length:
        return text
    return text[:max_length - 3] + "..."
