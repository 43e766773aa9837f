import pytest

import helpers


@pytest.fixture(scope="session")
def synthesized_problems():
    """50 randomized synthesized curves shared by the bulk property checks."""
    problems = helpers.random_synthesized_problems(50)
    assert len(problems) >= 50, "random problem generation budget exhausted"
    return problems[:50]
