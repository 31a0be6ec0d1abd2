import pytest

from mermin_ks import build_pentagram, derive_all_rays, paper_relations_rank1, paper_rank2_proof


@pytest.fixture(scope="session")
def pentagram():
    return build_pentagram()


@pytest.fixture(scope="session")
def derivation(pentagram):
    return derive_all_rays(pentagram)


@pytest.fixture(scope="session")
def rays(derivation):
    return derivation.rays


@pytest.fixture(scope="session")
def rank1():
    return paper_relations_rank1()


@pytest.fixture(scope="session")
def rank2_proof():
    return paper_rank2_proof()
