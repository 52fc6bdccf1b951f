import os
import sys

import pytest


@pytest.fixture(scope="session")
def pcw():
    """Import the compiled extension from the build tree."""
    module_dir = os.environ.get("PCW_MODULE_DIR")
    if module_dir:
        sys.path.insert(0, module_dir)
    try:
        import _pcw
    except ImportError as e:
        pytest.skip(f"_pcw module not importable: {e}")
    return _pcw


@pytest.fixture(scope="session")
def pcw_cli():
    cli = os.environ.get("PCW_CLI")
    if not cli or not os.path.exists(cli):
        pytest.skip("pcw CLI binary not available (set PCW_CLI)")
    return cli
