import pytest

from azter.resources import load_profile, shipped_manifest


def load_language(lang):
    return load_profile(shipped_manifest(lang), lang)


@pytest.fixture(scope="session")
def en():
    return load_language("en")


@pytest.fixture(scope="session")
def es():
    return load_language("es")


@pytest.fixture(scope="session")
def eu():
    return load_language("eu")


@pytest.fixture(scope="session")
def profiles(en, es, eu):
    return {"en": en, "es": es, "eu": eu}


# acceptance lines recorded by test_acceptance.py, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
