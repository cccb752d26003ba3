"""Versioned CSV ingestion for the figure renderers.

Files start with a comment header line ``# mimoee-csv v1 <kind>`` followed
by a column-name row.  Any other schema version fails loudly: the figures
are bound to exactly one revision of the data contract.
"""
import csv

import numpy as np

SUPPORTED_VERSION = "v1"

#: string-typed columns; everything else is parsed as float
_TEXT_COLUMNS = frozenset({"scheme", "csi"})


class SchemaError(ValueError):
    """The CSV file does not match the supported data contract."""


def read_table(path, kind, required_columns=()):
    """Read one versioned CSV into a dict of column name -> numpy array.

    ``kind`` must match the kind tag in the file header.  Raises
    SchemaError on a version/kind mismatch or when any of
    ``required_columns`` is absent.
    """
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}")
    with fh:
        header = fh.readline().rstrip("\n")
        parts = header.split()
        if (
            len(parts) != 4
            or parts[0] != "#"
            or parts[1] != "mimoee-csv"
        ):
            raise SchemaError(f"{path}: missing '# mimoee-csv <version> <kind>' header")
        if parts[2] != SUPPORTED_VERSION:
            raise SchemaError(
                f"{path}: schema version {parts[2]!r} is not supported "
                f"(expected {SUPPORTED_VERSION!r})"
            )
        if parts[3] != kind:
            raise SchemaError(f"{path}: kind {parts[3]!r}, expected {kind!r}")
        reader = csv.reader(fh)
        try:
            columns = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: no column row")
        rows = [row for row in reader if row]
    for name in required_columns:
        if name not in columns:
            raise SchemaError(f"{path}: required column {name!r} is missing")
    table = {}
    for j, name in enumerate(columns):
        values = [row[j] for row in rows]
        if name in _TEXT_COLUMNS:
            table[name] = np.array(values, dtype=object)
        else:
            try:
                table[name] = np.array(values, dtype=float)
            except ValueError as exc:
                raise SchemaError(f"{path}: column {name!r}: {exc}")
    return table


def pivot_surface(table):
    """Arrange surface rows into rectangular (m_axis, k_axis, ee) grids.

    Cells absent from the file (e.g. the infeasible M < K triangle) are
    NaN, which the renderers leave blank.
    """
    m_axis = np.unique(table["m"])
    k_axis = np.unique(table["k"])
    ee = np.full((m_axis.size, k_axis.size), np.nan)
    mi = np.searchsorted(m_axis, table["m"])
    ki = np.searchsorted(k_axis, table["k"])
    ee[mi, ki] = table["ee_bit_per_joule"]
    return m_axis, k_axis, ee
