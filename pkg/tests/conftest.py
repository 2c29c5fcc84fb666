"""Shared fixtures and the opt-in switch for scale tests."""

import os
from pathlib import Path

import numpy as np
import pytest

from helpers import SAMPLE_CLU, SAMPLE_NET


def pytest_configure(config):
    config.addinivalue_line("markers", "scale: large synthetic runs, enabled by RAONET_SCALE_TESTS=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("RAONET_SCALE_TESTS") == "1":
        return
    skip = pytest.mark.skip(reason="set RAONET_SCALE_TESTS=1 to run")
    for item in items:
        if "scale" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def sample_files(tmp_path: Path) -> dict[str, Path]:
    net = tmp_path / "sample.net"
    clu = tmp_path / "sample.clu"
    net.write_text(SAMPLE_NET, encoding="utf-8")
    clu.write_text(SAMPLE_CLU, encoding="utf-8")
    return {"net": net, "clu": clu}


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)
