import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # Expose each phase's report on the item so fixtures can see the outcome.
    outcome = yield
    report = outcome.get_result()
    setattr(item, f"rep_{report.when}", report)
