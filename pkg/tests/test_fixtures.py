"""Closed-form fixtures one by one; transcriptions with a known erratum must keep disagreeing."""
import pytest

from kstab3.cli import tampered_case
from kstab3.fixtures import fixtures, run_fixture

FIXTURES = fixtures()


@pytest.mark.parametrize("fx", [f for f in FIXTURES if not f.erratum], ids=lambda f: f.name)
def test_fixture_holds(fx):
    r = run_fixture(fx)
    assert r.ok, (r.first_failure, r.message)


@pytest.mark.parametrize("fx", [f for f in FIXTURES if f.erratum], ids=lambda f: f.name)
def test_erratum_still_disagrees(fx):
    r = run_fixture(fx)
    assert not r.ok, f"{fx.name} now agrees; its erratum note ({fx.erratum}) is stale"


def test_tampered_e1_is_caught():
    case = tampered_case("E1:D2,D2,D2=-5")
    assert case.threefold.cube(case.threefold.basis_class("D2")) == -5
    failing = [fx.name for fx in FIXTURES if fx.case_id == "E1" and not fx.erratum
               and not run_fixture(fx, case).ok]
    assert "E1 beta'(D2) derived form" in failing
