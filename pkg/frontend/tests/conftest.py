import pytest


def write_versioned_csv(path, kind, columns, rows):
    """Hand-rolled writer for the v1 CSV contract used in tests."""
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# mimoee-csv v1 {kind}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(str(v) for v in row) + "\n")
    return path


@pytest.fixture()
def surface_csv(tmp_path):
    """Tiny 3x2 ZF-style surface with a unique maximum at (3, 2)."""
    rows = []
    for m in (1, 2, 3):
        for k in (1, 2):
            if m < k:
                continue
            ee = 100.0 * m + 10.0 * k
            rows.append(("zf", "perfect", m, k, 1.5, ee, ee / 1e6))
    return write_versioned_csv(
        tmp_path / "surface_zf.csv", "surface",
        ["scheme", "csi", "m", "k", "rho", "ee_bit_per_joule", "ee_mbit_per_joule"],
        rows,
    )


@pytest.fixture()
def curves_csv(tmp_path):
    rows = [
        ("zf", "perfect", 20, 5, 1.0, 1e-7, 5e6),
        ("zf", "perfect", 100, 20, 2.0, 5e-7, 7e6),
        ("mrt", "perfect", 20, 1, 10.0, 2e-7, 2e6),
        ("mrt", "perfect", 100, 1, 30.0, 6e-7, 1e6),
    ]
    return write_versioned_csv(
        tmp_path / "power_scaling.csv", "power_scaling",
        ["scheme", "csi", "m", "k", "rho", "tx_power_j_per_cu", "ee_bit_per_joule"],
        rows,
    )
