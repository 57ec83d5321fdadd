"""
CSV data pipeline.

Files are read row-major (one observation per row) and returned column-major:
X has shape (d, n), the layout every model in gpkit expects.
"""
import numpy as np
import pandas as pd
from loguru import logger

from gpkit.errors import DataError

_BOOLEANS = {"true": 1.0, "false": 0.0}


def _to_float(cell):
    text = cell.strip()
    if text.lower() in _BOOLEANS:
        return _BOOLEANS[text.lower()]
    return float(text)


def _is_number(cell):
    try:
        _to_float(cell)
        return True
    except (TypeError, ValueError):
        return False


def _is_index(selector):
    return isinstance(selector, (int, np.integer)) or (isinstance(selector, str) and selector.strip().isdigit())


def _default_inputs(ncols, y_pos):
    return [i for i in range(ncols) if i != y_pos]


def _select(selector, names):
    """Map a column name or a 1-based index onto a 0-based position."""
    if _is_index(selector):
        pos = int(selector) - 1
        if not 0 <= pos < len(names):
            raise DataError(f"column {selector} out of range (file has {len(names)} columns)", column=selector)
        return pos
    try:
        return names.index(str(selector).strip())
    except ValueError:
        raise DataError(f"missing column {selector!r} (have {', '.join(names)})", column=selector)


def _parse_selectors(value):
    if value is None:
        return None
    if isinstance(value, str):
        return [s for s in (part.strip() for part in value.split(",")) if s]
    return list(value)


def load_csv(path, x_cols=None, y_col=None, with_y=True):
    """
    Read inputs and responses from a comma-separated file.

    Parameters:
        path: File to read.
        x_cols: Input columns, names or 1-based indices (list or comma
            separated string). Defaults to every column except the response.
        y_col: Response column. Defaults to the last column.
        with_y: False reads inputs only (prediction grids); y is then None.

    Returns:
        (X, y) with X of shape (d, n) and y of shape (n,).

    Raises:
        DataError: Unreadable or empty file, missing column, non-numeric cell.
            Row numbers are 1-based file lines.
    """
    try:
        raw = pd.read_csv(path, header=None, dtype=str, skip_blank_lines=True, keep_default_na=False)
    except FileNotFoundError:
        raise DataError(f"no such file: {path}")
    except pd.errors.EmptyDataError:
        raise DataError(f"{path}: file is empty")
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataError(f"{path}: cannot read CSV ({e})")

    ncols = raw.shape[1]
    first = [str(c) for c in raw.iloc[0]]
    x_sel = _parse_selectors(x_cols)
    selectors = (x_sel or []) + ([y_col] if with_y and y_col is not None else [])
    if all(_is_index(s) for s in selectors):
        # only the selected cells of the first row decide whether it is a header
        numbered = [str(i + 1) for i in range(ncols)]
        y_pos = (_select(y_col, numbered) if y_col is not None else ncols - 1) if with_y else None
        x_pos = _default_inputs(ncols, y_pos) if x_sel is None else [_select(s, numbered) for s in x_sel]
        used = x_pos + ([y_pos] if with_y else [])
        header = not all(_is_number(first[p]) for p in used)
    else:
        header = True
    names = [c.strip() for c in first] if header else [str(i + 1) for i in range(ncols)]
    body = raw.iloc[1:] if header else raw
    if body.shape[0] == 0:
        raise DataError(f"{path}: no data rows")

    y_pos = None
    if with_y:
        y_pos = _select(y_col, names) if y_col is not None else ncols - 1
    if x_sel is None:
        x_pos = _default_inputs(ncols, y_pos)
    else:
        x_pos = [_select(s, names) for s in x_sel]
    if not x_pos:
        raise DataError(f"{path}: no input columns")

    line0 = 2 if header else 1

    def column(pos):
        values = np.empty(body.shape[0])
        for i, cell in enumerate(body.iloc[:, pos]):
            try:
                values[i] = _to_float(cell)
            except (TypeError, ValueError):
                raise DataError(f"{path}: non-numeric cell {cell!r} at row {line0 + i}, column {names[pos]!r}",
                                row=line0 + i, column=names[pos])
        return values

    X = np.vstack([column(p) for p in x_pos])
    y = column(y_pos) if with_y else None
    logger.debug("read {} rows, {} inputs from {}", X.shape[1], X.shape[0], path)
    return X, y


def write_csv(path, columns):
    """
    Write named columns to a CSV file with a header row.

    Parameters:
        path: Destination file.
        columns: Mapping of column name to 1-D array, in output order.
    """
    frame = pd.DataFrame({name: np.asarray(values) for name, values in columns.items()})
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info("wrote {} rows to {}", len(frame), path)
    return path
