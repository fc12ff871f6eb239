"""gtlab: exact failure-probability bounds, designs and Monte Carlo
estimation for non-adaptive group testing."""

__version__ = "0.1.0"
