"""File formats: Matrix Market matrices, plain vectors, schedules, CSV histories.

Reals are written with ``repr`` (shortest round-trip decimal), so a
write/read cycle reproduces every float bit for bit.
"""
from __future__ import annotations

import csv
import io as _io
import os
from typing import Iterable, Sequence

import numpy as np

from .control import AlmostCyclic


class FormatError(ValueError):
    """Malformed input file; the message carries the file name and line number."""

    def __init__(self, path, lineno, msg):
        self.path, self.lineno = path, lineno
        where = f"{path}:{lineno}" if lineno is not None else str(path)
        super().__init__(f"{where}: {msg}")


HISTORY_HEADER = ("k", "j_k", "i_k", "y_err", "gamma_norm", "x_err", "dist_lss",
                  "row_resid_corrected", "row_resid_clean")


def _fmt(v) -> str:
    return repr(float(v))


def _data_lines(path):
    """Yield ``(lineno, text)`` for non-comment, non-blank lines."""
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if s and not s.startswith("%"):
                yield lineno, s


def read_matrix_market(path) -> np.ndarray:
    """Read a real general Matrix Market file in ``coordinate`` or ``array`` format."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline()
    parts = header.split()
    if len(parts) != 5 or parts[0] != "%%MatrixMarket" or parts[1].lower() != "matrix":
        raise FormatError(path, 1, "missing '%%MatrixMarket matrix <format> real general' banner")
    fmt, field, sym = (p.lower() for p in parts[2:])
    if fmt not in ("coordinate", "array"):
        raise FormatError(path, 1, f"unsupported format {fmt!r}")
    if field not in ("real", "integer", "double"):
        raise FormatError(path, 1, f"unsupported field {field!r}")
    if sym != "general":
        raise FormatError(path, 1, f"unsupported symmetry {sym!r}")

    lines = _data_lines(path)
    try:
        lineno, size = next(lines)
    except StopIteration:
        raise FormatError(path, None, "missing size line") from None
    try:
        dims = [int(t) for t in size.split()]
    except ValueError:
        raise FormatError(path, lineno, f"bad size line {size!r}") from None

    if fmt == "coordinate":
        if len(dims) != 3:
            raise FormatError(path, lineno, "coordinate size line needs 'rows cols nnz'")
        m, n, nnz = dims
        A = np.zeros((m, n))
        count = 0
        for lineno, s in lines:
            tok = s.split()
            try:
                i, j, v = int(tok[0]), int(tok[1]), float(tok[2])
            except (ValueError, IndexError):
                raise FormatError(path, lineno, f"bad entry {s!r}") from None
            if not (1 <= i <= m and 1 <= j <= n):
                raise FormatError(path, lineno, f"index ({i}, {j}) outside {m}x{n}")
            A[i - 1, j - 1] += v
            count += 1
        if count != nnz:
            raise FormatError(path, None, f"expected {nnz} entries, found {count}")
        return A

    if len(dims) != 2:
        raise FormatError(path, lineno, "array size line needs 'rows cols'")
    m, n = dims
    vals = []
    for lineno, s in lines:
        try:
            vals.append(float(s))
        except ValueError:
            raise FormatError(path, lineno, f"bad value {s!r}") from None
    if len(vals) != m * n:
        raise FormatError(path, None, f"expected {m * n} values, found {len(vals)}")
    # array format is column-major
    return np.array(vals).reshape((n, m)).T.copy()


def write_matrix_market(path, A, fmt: str = "coordinate") -> None:
    A = np.asarray(getattr(A, "data", A), dtype=np.float64)
    m, n = A.shape
    buf = _io.StringIO()
    if fmt == "coordinate":
        rows, cols = np.nonzero(A)
        buf.write("%%MatrixMarket matrix coordinate real general\n")
        buf.write(f"{m} {n} {rows.size}\n")
        for i, j in zip(rows, cols):
            buf.write(f"{i + 1} {j + 1} {_fmt(A[i, j])}\n")
    elif fmt == "array":
        buf.write("%%MatrixMarket matrix array real general\n")
        buf.write(f"{m} {n}\n")
        for v in A.T.ravel():
            buf.write(_fmt(v) + "\n")
    else:
        raise ValueError(f"unknown Matrix Market format {fmt!r}")
    _write_text(path, buf.getvalue())


def read_vector(path) -> np.ndarray:
    """Whitespace-separated reals, any number per line; ``#`` starts a comment."""
    vals = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            for tok in line.split("#", 1)[0].split():
                try:
                    vals.append(float(tok))
                except ValueError:
                    raise FormatError(path, lineno, f"bad value {tok!r}") from None
    return np.array(vals)


def write_vector(path, v) -> None:
    _write_text(path, "".join(_fmt(x) + "\n" for x in np.ravel(v)))


def read_schedule(path, m0: int | None = None, n0: int | None = None) -> AlmostCyclic:
    """Read an almost-cyclic schedule file.

    One 1-based index per line: the row schedule, a blank line, then the
    column schedule.  Window lengths default to the schedule lengths.
    """
    sections: list[list[int]] = [[]]
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.split("#", 1)[0].strip()
            if not s:
                if sections[-1]:
                    sections.append([])
                continue
            try:
                idx = int(s)
            except ValueError:
                raise FormatError(path, lineno, f"bad index {s!r}") from None
            if idx < 1:
                raise FormatError(path, lineno, f"indices are 1-based, got {idx}")
            sections[-1].append(idx - 1)
    sections = [sec for sec in sections if sec]
    if len(sections) != 2:
        raise FormatError(path, None, f"expected 2 sections (rows, columns), found {len(sections)}")
    return AlmostCyclic(tuple(sections[0]), tuple(sections[1]), m0, n0)


def write_schedule(path, spec: AlmostCyclic) -> None:
    rows = "".join(f"{i + 1}\n" for i in spec.row_schedule)
    cols = "".join(f"{j + 1}\n" for j in spec.col_schedule)
    _write_text(path, rows + "\n" + cols)


def history_rows(records: Iterable) -> list[list[str]]:
    """CSV cells for iteration records; missing quantities become empty cells."""
    out = []
    for rec in records:
        row = []
        for name in HISTORY_HEADER:
            v = getattr(rec, name)
            if v is None:
                row.append("")
            elif name in ("k", "j_k", "i_k"):
                row.append(str(v + 1) if name != "k" else str(v))
            else:
                row.append(_fmt(v))
        out.append(row)
    return out


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _write_text(path, buf.getvalue())


def write_history_csv(path, records: Iterable) -> None:
    """Iteration history; row and column indices are written 1-based."""
    write_csv(path, HISTORY_HEADER, history_rows(records))


def _write_text(path, text: str) -> None:
    d = os.path.dirname(os.fspath(path))
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
