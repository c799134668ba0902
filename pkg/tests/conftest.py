import pytest
import tempfile
from pathlib import Path

@pytest.fixture
def fixture_dir():
    """Get the path to the test fixtures directory."""
    return Path(__file__).parent / "fixtures"

@pytest.fixture
def g_and_x_not(fixture_dir):
    """Path to (G p) & (X ~p)."""
    return str(fixture_dir / "g_and_x_not.ltl")

@pytest.fixture
def g_and_x_not_ltlp(fixture_dir):
    """Path to the annotated core of (G p) & (X ~p)."""
    return str(fixture_dir / "g_and_x_not.ltlp")

@pytest.fixture
def every_second(fixture_dir):
    """Path to the LTL formula with p at every second time point."""
    return str(fixture_dir / "every_second.ltl")

@pytest.fixture
def every_second_ltlp(fixture_dir):
    """Path to the annotated core of the every-second formula."""
    return str(fixture_dir / "every_second.ltlp")

@pytest.fixture
def every_second_snf(fixture_dir):
    """Path to the six clause SNF instance with a at even time points."""
    return str(fixture_dir / "every_second.snf")

@pytest.fixture
def eventually_c(fixture_dir):
    """Path to a satisfiable SNF instance."""
    return str(fixture_dir / "eventually_c.snf")

@pytest.fixture
def clash(fixture_dir):
    """Path to an SNF instance with two clashing initial clauses and an unused one."""
    return str(fixture_dir / "clash.snf")

@pytest.fixture
def lift_always_b1(fixture_dir):
    """Path to the lift model with b1 pressed forever."""
    return str(fixture_dir / "lift_always_b1.ltl")

@pytest.fixture
def lift_next_always_b1(fixture_dir):
    """Path to the lift model with b1 pressed forever from time point 1 on."""
    return str(fixture_dir / "lift_next_always_b1.ltl")

@pytest.fixture
def ordered_config():
    """Config for ordered resolution with c > b > a, the order under which the
    six clause instance gets the labels {0}, 2N, 2N+1, 2N, 2N+1, {0}."""
    from trc_utils import default_config

    return default_config(literal_precedence=("c", "b", "a"))

@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield temp_dir
