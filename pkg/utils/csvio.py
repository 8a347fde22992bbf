"""
CSV output and input helpers.

All tabular output is CSV with a header row; floats are printed to a fixed
number of significant digits so identical inputs give byte-identical files.
"""

from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, Sequence, TextIO
import csv
import io
import math
import sys

from ..core.exceptions import DomainError

FLOAT_DIGITS = 12


def format_value(value: Any, digits: int = FLOAT_DIGITS) -> str:
    """
    Format a single CSV cell.

    Floats use `digits` significant digits; None and NaN become empty cells.
    """
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return ''
        return format(value, f'.{digits}g')
    if hasattr(value, 'dtype'):
        # numpy scalar
        return format_value(value.item(), digits)
    return str(value)


def render_rows(
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    digits: int = FLOAT_DIGITS
) -> str:
    """Render header and rows to a CSV string with '\\n' line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v, digits) for v in row])
    return buffer.getvalue()


def write_rows(
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    path: Optional[str] = None,
    digits: int = FLOAT_DIGITS,
    stream: TextIO = None
) -> str:
    """
    Write CSV rows to a file or a stream.

    Args:
        header: Column names.
        rows: Row sequences.
        path: Output file; when None the text goes to stream (stdout).
        digits: Significant digits for floats.
        stream: Alternative output stream.

    Returns:
        The rendered CSV text.
    """
    text = render_rows(header, rows, digits)

    if path:
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    else:
        (stream or sys.stdout).write(text)

    return text


def read_table(path: str, header: Sequence[str], converters: Sequence[Callable[[str], Any]]) -> List[tuple]:
    """
    Read a CSV file with a fixed header, converting each data column.

    Blank lines are skipped; errors name the file and line.

    Args:
        path: CSV file.
        header: Expected header cells.
        converters: One converter per column (e.g. int, float).

    Returns:
        One tuple per data row.

    Raises:
        DomainError: If the file cannot be read, the header differs, or a
                     row has the wrong width or an unparsable cell.
    """
    try:
        with open(path, newline='') as f:
            reader = csv.reader(f)
            first = next((row for row in reader if row), None)
            if first is None or [c.strip() for c in first] != list(header):
                raise DomainError(f"{path}: expected header '{','.join(header)}'")

            parsed = []
            for row in reader:
                if not row:
                    continue
                if len(row) != len(converters):
                    raise DomainError(
                        f"{path}:{reader.line_num}: expected {len(converters)} columns, got {len(row)}"
                    )
                try:
                    parsed.append(tuple(convert(cell.strip()) for convert, cell in zip(converters, row)))
                except ValueError:
                    raise DomainError(f"{path}:{reader.line_num}: cannot parse '{','.join(row)}'")
            return parsed
    except OSError as e:
        raise DomainError(f"Cannot read {path}: {e}")
    except csv.Error as e:
        raise DomainError(f"{path}: {e}")
