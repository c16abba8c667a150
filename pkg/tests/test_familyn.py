import numpy as np
import pytest

from curved_nbody import family5, family7, familyn, lemmas
from curved_nbody.errors import Inadmissible


@pytest.mark.parametrize("radii,bullet", [
    ((0.2, 0.4, 0.6, 0.8), "i"),
    ((0.5, 1.2, 1.8), "ii"),
    ((0.5, 0.8), "i"),
    ((0.3, 0.6, 1.5), "iii"),
    ((0.3, 0.6, 0.7, 1.2), "iii"),
    ((0.5, 1.5), "ii"),
])
def test_bullets_give_certificates(radii, bullet):
    v = familyn.nonexistence_general(radii)
    assert v.bullet == bullet
    assert v.n == 2 * len(radii) + 1
    assert v.status == "Nonexistence"
    assert v.certificate.lhs > 0
    assert all(c < 0 for c in v.certificate.rhs_coefficients.values())


@pytest.mark.parametrize("radii", [(0.5, 1.5, 3.0), (2.0, 3.0), (0.5, 3.0), (0.3, 0.6, 2.0)])
def test_not_covered(radii):
    v = familyn.nonexistence_general(radii)
    assert v.status == "NotCovered" and v.certificate is None
    assert familyn.region_verdict(radii).exists is None


def test_seven_body_bullet_ii_matches_family7():
    cert_n = familyn.nonexistence_general((0.5, 1.2, 1.8)).certificate
    cert_7 = family7.nonexistence_witness7(0.5, 1.2, 1.8)
    assert cert_n.lhs == pytest.approx(cert_7.lhs, rel=1e-14)
    assert cert_n.rhs_coefficients == pytest.approx(cert_7.rhs_coefficients, rel=1e-14)


def test_five_body_matches_family5():
    cert_n = familyn.nonexistence_general((0.5, 0.8)).certificate
    cert_5 = family5.nonexistence_witness5(0.5, 0.8)
    assert cert_n.lhs == pytest.approx(cert_5.lhs, rel=1e-14)
    assert cert_n.rhs_coefficients == pytest.approx(cert_5.rhs_coefficients, rel=1e-14)


def test_agreement_with_families_on_random_tuples():
    rng = np.random.default_rng(9)
    for k, fam in ((2, family5), (3, family7)):
        checked = 0
        while checked < 200:
            radii = np.sort(rng.uniform(0.05, 3.0, k))
            try:
                case = fam.region_verdict(*radii)
            except Inadmissible:
                continue
            checked += 1
            general = familyn.region_verdict(radii)
            in_bullet = general.case != "NotCovered"
            assert in_bullet == (case.paper_claim == "none")
            if in_bullet:
                assert general.exists is False and case.exists is False


def test_long_chains():
    rng = np.random.default_rng(1)
    for k in range(4, 9):
        radii = np.sort(rng.uniform(0.05, 0.95, k))
        assert familyn.nonexistence_general(radii).status == "Nonexistence"


def test_pair_difference_kernel_negative():
    rng = np.random.default_rng(2)
    q = rng.uniform(0.01, 0.99, 1000)
    p = rng.uniform(1.01, 30.0, 1000)
    keep = np.abs(p * q - 1) > 1e-3
    k = lemmas.pair_difference_kernel(p[keep], q[keep])
    assert np.all(k < 0)
    assert np.allclose(k, lemmas.pair_difference_factored(p[keep], q[keep]), rtol=1e-9)
    # both sub-regimes are represented
    assert np.any(p[keep] * q[keep] > 1) and np.any(p[keep] * q[keep] < 1)


@pytest.mark.parametrize("radii", [(0.5,), (0.5, 0.5), (0.5, 1.0), (0.5, 2.0), (-0.1, 0.4)])
def test_inadmissible(radii):
    with pytest.raises(Inadmissible):
        familyn.nonexistence_general(radii)
