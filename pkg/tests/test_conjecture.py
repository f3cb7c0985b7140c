from dataclasses import replace
from fractions import Fraction

import pytest

from izeta.conjecture import NotAPoleError, check_conjecture, check_pole, pi_multiple_text, reverify
from izeta.monodromy import monodromy_from_resolution
from izeta.principalization import principalize

from conftest import CHAIN, TWO_IMAGES, BRANCHED


def setup(text):
    res = principalize(text)
    return res.graph, monodromy_from_resolution(res)


def pole(text, s0):
    g, mono = setup(text)
    return check_pole(g, mono.groups, mono.clusters, s0, mono.generic_zetas, mono.cluster_zetas)


def test_witness_for_chain_ideal():
    cert = pole(CHAIN, Fraction(-2, 3))
    assert (cert.variant, cert.witness, cert.order) == ("witness", "E3", 1)
    assert pi_multiple_text(cert.eigenvalue_pi_multiple) == "exp(-4*pi*i/3)"


def test_cluster_witness_for_branched_ideal():
    cert = pole(BRANCHED, Fraction(-5, 6))
    assert (cert.variant, cert.chi_sum, cert.members, cert.order) == ("cluster", -1, ("E3",), -1)
    assert cert.eigenvalue_pi_multiple == Fraction(-5, 3)


def test_witness_for_two_image_ideal():
    cert = pole(TWO_IMAGES, Fraction(-5, 8))
    assert (cert.variant, cert.witness, cert.order) == ("witness", "E3", 1)
    assert cert.to_json()["eigenvalue"] == "exp(-2*pi*i*5/8)"


def test_not_a_pole():
    with pytest.raises(NotAPoleError, match="not a pole"):
        pole(CHAIN, Fraction(-1, 3))


@pytest.mark.parametrize("text", [CHAIN, TWO_IMAGES, BRANCHED])
def test_verified_with_two_certificates(text):
    g, mono = setup(text)
    report = check_conjecture(g, mono)
    assert report.verdict == "VERIFIED"
    assert len(report.certificates) == 2
    assert all(reverify(c, g) == [] for c in report.certificates)


def test_missing_evidence_is_a_violation():
    g, mono = setup(BRANCHED)
    cert = check_pole(g, [], [], Fraction(-5, 6), {}, {})
    assert cert.variant == "violation"
    assert reverify(cert, g)


def test_reverify_catches_tampering():
    g, _ = setup(BRANCHED)
    cert = pole(BRANCHED, Fraction(-5, 6))
    assert reverify(replace(cert, chi_sum=1), g)
    assert reverify(replace(cert, order=3), g)
