from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import pytest

from infratop.enumeration import EnumConfig, enumerate_spaces
from infratop.space import InfraSpace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

EX41_OPENS = [[], ["a"], ["b"], ["a", "c"], ["a", "b", "c", "d"]]
EX42_OPENS = [[], ["b"], ["c"], ["b", "c", "d"], ["a", "b", "c", "d"]]
S3_OPENS = [[], ["a"], ["b"], ["a", "b", "c"]]


@lru_cache(maxsize=None)
def labeled(n: int) -> tuple[InfraSpace, ...]:
    return tuple(enumerate_spaces(EnumConfig(n)))


def small_universe(max_n: int = 4) -> list[InfraSpace]:
    return [s for n in range(1, max_n + 1) for s in labeled(n)]


@pytest.fixture
def ex41() -> InfraSpace:
    return InfraSpace.from_names("abcd", EX41_OPENS)


@pytest.fixture
def ex42() -> InfraSpace:
    return InfraSpace.from_names("abcd", EX42_OPENS)


@pytest.fixture
def s3() -> InfraSpace:
    return InfraSpace.from_names("abc", S3_OPENS)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
