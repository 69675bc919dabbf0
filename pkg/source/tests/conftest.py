"""Pytest configuration and shared fixtures."""

import os
import sys
from pathlib import Path

import pytest

# Add source to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from shift import (  # noqa: E402
    AlternatingTree, CombWithTail, FlySwatter, Kite, make_homogeneous, make_tree,
)

# Snapshot directory; GRAPHSHIFT_UPDATE_SNAPSHOTS=1 rewrites the stored files
SNAPSHOTS_DIR = Path(__file__).parent / "snapshots"
UPDATE_SNAPSHOTS = os.environ.get("GRAPHSHIFT_UPDATE_SNAPSHOTS") == "1"


@pytest.fixture
def snapshot_dir():
    """Return snapshot directory for CSV and JSON snapshots."""
    return SNAPSHOTS_DIR


@pytest.fixture
def compare_or_write_snapshot(snapshot_dir):
    """Compare text to a stored snapshot; a missing snapshot fails unless updating."""
    def check(name: str, text: str):
        snapshot_file = snapshot_dir / name
        if UPDATE_SNAPSHOTS:
            snapshot_file.write_text(text)
        elif not snapshot_file.exists():
            pytest.fail(f"Missing snapshot {name}; rerun with GRAPHSHIFT_UPDATE_SNAPSHOTS=1")
        else:
            assert text == snapshot_file.read_text(), f"Snapshot mismatch for {name}"
    return check


@pytest.fixture
def square_lattice():
    return make_homogeneous("lattice", d=2)


@pytest.fixture
def ray():
    return make_homogeneous("ray")


@pytest.fixture
def alternating_24():
    """Tree with 2 children at even levels and 4 at odd levels."""
    return make_tree(AlternatingTree(2, 4))


@pytest.fixture(params=[Kite(2), Kite(5), FlySwatter(3), CombWithTail(2), CombWithTail(4)],
                ids=lambda k: f"{k.shape}-{k.n}")
def tail_kind(request):
    return request.param
