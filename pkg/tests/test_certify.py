import pytest

from conftest import CERT_SIZES, cert_text

from cyclepack import certify
from cyclepack.groups import cyclic_group, translation, trivial_group
from cyclepack.orbitgraph import build_conflict_graph
from cyclepack.torus import CycleParams, is_independent_set


def test_parse_shipped_certificates():
    cert = certify.parse_certificate(cert_text(13, 4))
    assert cert.p == 13 and cert.d == 4
    assert cert.generators == [(0, 1, 0, 2)]
    assert len(cert.representatives) == 118
    assert cert.claimed_order == 13
    assert cert.claimed_bound == 1534


def test_parse_empty_certificate():
    cert = certify.parse_certificate("p 5\nd 2\ngenerator 0 0\nclaim 0\n")
    assert cert.representatives == []
    report = certify.verify_certificate(cert)
    assert report.passed and report.expanded_size == 0


def test_parse_errors_carry_line_numbers():
    with pytest.raises(certify.CertificateError) as exc:
        certify.parse_certificate("p 7\nd 5\ngenerator 0 1 1 5 1\n0 5 6 6 7\n")
    assert exc.value.line == 4
    with pytest.raises(certify.CertificateError):
        certify.parse_certificate("p 7\nd 5\ngenerator 0 1 1 5 1\n0 5 6\n")
    with pytest.raises(certify.CertificateError):
        certify.parse_certificate("p 7\nd 5\n")
    with pytest.raises(certify.CertificateError):
        certify.parse_certificate("d 5\ngenerator 0 1\n")
    with pytest.raises(certify.CertificateError) as exc:
        certify.parse_certificate("p 7\nd 2\ngenerator 0 1\n1 1\n1 1\n")
    assert "duplicate representative" in str(exc.value)


@pytest.mark.parametrize("p,d", sorted(CERT_SIZES))
def test_expand_shipped_certificates(p, d):
    cert = certify.parse_certificate(cert_text(p, d))
    words = certify.expand_certificate(cert)
    assert len(words) == CERT_SIZES[(p, d)]
    assert len(cert.representatives) * cert.claimed_order == len(words)


def test_expand_single_rep_trivial_generator():
    cert = certify.parse_certificate("p 5\nd 2\ngenerator 0 0\n3 4\n")
    assert certify.expand_certificate(cert) == [(3, 4)]


@pytest.mark.parametrize("p,d", sorted(CERT_SIZES))
def test_verify_shipped_certificates(p, d):
    cert = certify.parse_certificate(cert_text(p, d))
    report = certify.verify_certificate(cert)
    assert report.passed
    assert report.independent
    assert report.expanded_size == CERT_SIZES[(p, d)]
    assert report.implied_bound == CERT_SIZES[(p, d)]
    assert report.order_matches_claim is True
    assert report.inadmissible_orbits == []
    # the expansion also re-checks under the plain distance test
    words = certify.expand_certificate(cert)
    assert is_independent_set(words, CycleParams(p, d))


def test_verify_detects_broken_certificate():
    cert = certify.parse_certificate(cert_text(7, 5))
    cert.representatives[0] = (0, 0, 0, 0, 0)
    report = certify.verify_certificate(cert)
    # the replacement orbit is independent on its own but collides with the
    # rest of the set, so the union fails the distance criterion
    assert not report.passed
    assert not report.independent
    assert report.implied_bound == 0


def test_verify_detects_shared_orbit():
    cert = certify.parse_certificate(cert_text(7, 5))
    first = cert.representatives[0]
    shifted = tuple((x + o) % 7 for x, o in zip(first, (0, 1, 1, 5, 1)))
    cert.representatives[1] = shifted
    report = certify.verify_certificate(cert)
    assert report.duplicate_defect is not None
    assert not report.passed


def test_verify_reports_order_mismatch():
    cert = certify.parse_certificate("p 5\nd 2\ngenerator 0 1\norder 3\n")
    report = certify.verify_certificate(cert)
    assert report.order_matches_claim is False


def test_verify_claim_shortfall_fails():
    cert = certify.parse_certificate("p 5\nd 2\ngenerator 0 0\nclaim 2\n0 0\n")
    report = certify.verify_certificate(cert)
    assert report.independent
    assert not report.passed


def test_emit_round_trip_from_solution():
    params = CycleParams(15, 3)
    cert = certify.parse_certificate(cert_text(15, 3))
    group = certify.certificate_group(cert)
    graph = build_conflict_graph(group, params)
    vertices = []
    for rep in cert.representatives:
        v = graph.vertex_of_word(rep)
        assert v is not None
        vertices.append(v)
    text = certify.emit_solution(graph, vertices, comment="round trip check")
    reparsed = certify.parse_certificate(text)
    assert sorted(certify.expand_certificate(reparsed)) == \
        sorted(certify.expand_certificate(cert))
    report = certify.verify_certificate(reparsed)
    assert report.passed and report.expanded_size == 381


def test_emit_normalised_parse_emit_identity():
    cert = certify.parse_certificate(cert_text(7, 5))
    norm = certify.normalize(cert)
    group = certify.certificate_group(norm)
    params = norm.params
    from cyclepack.groups import orbit_of

    text1 = certify.emit_certificate(
        params, group,
        [orbit_of(group, r, params).members for r in norm.representatives],
        claim=norm.claimed_bound)
    again = certify.normalize(certify.parse_certificate(text1))
    assert again.representatives == norm.representatives
    text2 = certify.emit_certificate(
        params, group,
        [orbit_of(group, r, params).members for r in again.representatives],
        claim=again.claimed_bound)
    assert text1 == text2


def test_emit_empty_solution_is_header_only():
    params = CycleParams(5, 2)
    group = trivial_group(params)
    text = certify.emit_certificate(params, group, [], claim=0)
    cert = certify.parse_certificate(text)
    assert cert.representatives == []
    assert certify.verify_certificate(cert).passed


def test_emit_rejects_non_translation_groups():
    from cyclepack.groups import GroupElement

    params = CycleParams(5, 2)
    refl = cyclic_group(GroupElement((0, 1), (-1, 1), (0, 0), 5))
    with pytest.raises(ValueError):
        certify.emit_certificate(params, refl, [])


def test_multi_generator_certificate_expands_closure():
    text = "p 5\nd 2\ngenerator 1 0\ngenerator 0 1\n0 0\n"
    cert = certify.parse_certificate(text)
    words = certify.expand_certificate(cert)
    assert len(words) == 25
