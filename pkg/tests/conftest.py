"""Shared fixtures and hypothesis strategies."""

import pytest
from hypothesis import HealthCheck, settings, strategies as st
from hypothesis.strategies import DrawFn, composite

import verify_executor
import verify_storage
from index_core import Index, enumerate_indices

settings.register_profile(
    "zeta",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("zeta")


@composite
def indices(draw: DrawFn, max_weight: int = 5, min_weight: int = 0) -> Index:
    """An index of weight between min_weight and max_weight."""
    w = draw(st.integers(min_value=min_weight, max_value=max_weight))
    return draw(st.sampled_from(enumerate_indices(w)))


@composite
def admissible_indices(draw: DrawFn, max_weight: int = 5) -> Index:
    k = draw(indices(max_weight=max_weight - 2))
    last = draw(st.integers(min_value=2, max_value=max_weight - sum(k)))
    return Index(tuple(k) + (last,))


@composite
def antihook_triples(draw: DrawFn, max_weight: int = 6) -> tuple[Index, Index, int]:
    """(k, l, a) with a >= 2 and total weight at most max_weight."""
    a = draw(st.integers(min_value=2, max_value=max_weight))
    k = draw(indices(max_weight=max_weight - a))
    l = draw(indices(max_weight=max_weight - a - sum(k)))
    return k, l, a


@pytest.fixture(autouse=True)
def isolated_storage(tmp_path, monkeypatch):
    """Keep config, history and run logs out of the source tree and the home directory."""
    monkeypatch.setattr(verify_storage, "CONFIG_FILE", tmp_path / ".zeta_config.json")
    monkeypatch.setattr(verify_storage, "HISTORY_FILE", tmp_path / ".zeta_history.json")
    monkeypatch.setattr(verify_executor, "RUN_LOGS_DIR", tmp_path / "logs")
    return tmp_path
