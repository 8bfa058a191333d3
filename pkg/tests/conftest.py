import csv
import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def load_rows(name):
    with open(FIXTURES / name) as fh:
        return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(fh)]


@pytest.fixture(scope="session")
def faddeeva_fixture():
    return load_rows("faddeeva.csv")


@pytest.fixture(scope="session")
def dawson_fixture():
    return load_rows("dawson.csv")


@pytest.fixture(scope="session")
def voigt_fixture():
    return load_rows("voigt.csv")


@pytest.fixture(scope="session")
def stable_pdf_fixture():
    return load_rows("stable_half_pdf.csv")


@pytest.fixture(scope="session")
def stable_cdf_fixture():
    return load_rows("stable_half_cdf.csv")


@pytest.fixture(scope="session")
def anchors():
    return json.loads((FIXTURES / "anchors.json").read_text())


def rel_err(got: float, want: float) -> float:
    """Relative error with an absolute reading when the true value is 0."""
    if want == 0.0:
        return abs(got)
    return abs(got - want) / abs(want)
