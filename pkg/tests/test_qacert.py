"""Tests for certificate generation, verification, and serialization."""

import itertools
import json
import pathlib
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from bridgecover.goeritz import UnsupportedRegimeError, table_formula
from bridgecover import qacert as qc

GOLDEN = pathlib.Path(__file__).parent / "golden"


def _rebuild(node, path, target_path, repl):
    """Copy of the tree with the node at target_path replaced."""
    if path == target_path:
        return repl
    kwargs = {}
    for attr in ("zero", "inf", "child"):
        sub = getattr(node, attr)
        if sub is not None:
            kwargs[attr] = _rebuild(sub, path + "." + attr, target_path, repl)
    return replace(node, **kwargs) if kwargs else node


def _with_node(cert, path, repl):
    return qc.Certificate(cert.claim, _rebuild(cert.root, "root", path, repl),
                          cert.axioms)


# -- generation: positive regimes ------------------------------------------

def test_a_certificates_accept_on_positive_grid():
    for q, s, t in itertools.product((1, 2, 3), repeat=3):
        cert = qc.generate_A_cert(q, s, t)
        want = qc.QUASI_ALTERNATING if s > 1 else qc.L_SPACE
        assert cert.claim == want, (q, s, t)
        assert qc.verify(cert), (q, s, t, str(qc.verify(cert)))


def test_a_cert_rejects_nonpositive_parameters():
    for bad in ((0, 1, 1), (1, 0, 1), (1, 1, 0), (-1, 1, 1), (1, -2, 1)):
        with pytest.raises(UnsupportedRegimeError):
            qc.generate_A_cert(*bad)


def test_a_cert_small_quasi_alternating_case():
    cert = qc.generate_A_cert(1, 2, 1)
    assert cert.claim == qc.QUASI_ALTERNATING
    assert qc.verify(cert)
    used = {n.axiom for _, n in qc.iter_nodes(cert.root) if n.kind == qc.BASE}
    assert used == {"PETERS_QA"}


def test_a_cert_all_ones_grounds_at_named_torus_knot():
    cert = qc.generate_A_cert(1, 1, 1)
    assert cert.claim == qc.L_SPACE
    assert qc.verify(cert)
    bases = [n for _, n in qc.iter_nodes(cert.root) if n.kind == qc.BASE]
    assert [b.link.name for b in bases] == ["T(3,4)"]
    declared = {ax.name for ax in cert.axioms}
    assert {"T(3,4)", "P(2,-3,-2)"} <= declared


def test_a_cert_skein_determinants_come_from_the_tables():
    cert = qc.generate_A_cert(2, 1, 3)
    assert cert.claim == qc.L_SPACE
    assert qc.verify(cert)
    skeins = [n for _, n in qc.iter_nodes(cert.root) if n.kind == qc.SKEIN]
    assert skeins, "expected a nontrivial resolution tree"
    for node in skeins:
        for part in (node, node.zero, node.inf):
            if part.link.family == "NAMED":
                continue
            want = abs(table_formula(part.link.family, part.link.resolution,
                                     part.link.param_map()))
            assert part.det == want, part.link


def test_l_certificates_accept_on_positive_grid():
    for q, s, t, l in itertools.product((1, 2), repeat=4):
        cert = qc.generate_L_cert(q, s, t, l)
        assert qc.verify(cert), (q, s, t, l)


def test_l_cert_all_ones_grounds_at_named_torus_knot():
    cert = qc.generate_L_cert(1, 1, 1, 1)
    assert cert.claim == qc.L_SPACE
    assert qc.verify(cert)
    bases = [n for _, n in qc.iter_nodes(cert.root) if n.kind == qc.BASE]
    assert [b.link.name for b in bases] == ["T(3,5)"]
    assert {ax.name for ax in cert.axioms} == {"T(3,5)", "P(2,-3,-4)"}


def test_l_cert_s_and_t_large_is_quasi_alternating():
    cert = qc.generate_L_cert(1, 2, 2, 1)
    assert cert.claim == qc.QUASI_ALTERNATING
    assert qc.verify(cert)


def test_l_cert_rejects_zero_parameters():
    for bad in ((0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0)):
        with pytest.raises(qc.CertError):
            qc.generate_L_cert(*bad)


# -- generation: sign regimes ----------------------------------------------

def test_alternating_regime_is_a_single_base_node():
    cert = qc.generate_L_cert(-1, 1, -1, 1)
    assert cert.claim == qc.QUASI_ALTERNATING
    assert cert.root.kind == qc.BASE
    assert cert.root.axiom == "ALTERNATING"
    assert qc.node_count(cert) == 1
    assert qc.verify(cert)


def test_expected_claims_per_sign_regime():
    cases = [
        ((2, 2, 2, 2), qc.QUASI_ALTERNATING),
        ((2, 1, 2, 2), qc.L_SPACE),
        ((2, 2, 1, 2), qc.L_SPACE),
        ((-1, 1, -1, 1), qc.QUASI_ALTERNATING),
        ((1, -1, 1, 1), qc.QUASI_ALTERNATING),
        ((-1, -1, -1, 1), qc.L_SPACE),
        ((1, 2, -2, 2), qc.QUASI_ALTERNATING),
        ((1, -2, -2, -2), qc.L_SPACE),
        ((1, -2, -2, 2), qc.L_SPACE),
        ((-2, -2, 2, 2), qc.L_SPACE),
        ((-1, -1, -1, -1), qc.L_SPACE),
        ((-2, -2, -2, -2), qc.QUASI_ALTERNATING),
    ]
    for params, want in cases:
        cert = qc.generate_L_cert(*params)
        assert cert.claim == want, params
        assert qc.verify(cert), (params, str(qc.verify(cert)))


def test_every_sign_pattern_produces_an_accepting_certificate():
    for signs in itertools.product((1, -1), repeat=4):
        for mags in ((1, 2, 1, 2), (2, 1, 2, 3)):
            params = tuple(sg * m for sg, m in zip(signs, mags))
            cert = qc.generate_L_cert(*params)
            assert qc.verify(cert), (params, str(qc.verify(cert)))


def test_mirror_regime_delegates_through_negated_parameters():
    cert = qc.generate_L_cert(-1, -1, -1, -1)
    assert cert.root.kind == qc.IDENTIFY
    assert cert.root.target == qc.LinkId.L(1, 1, 1, 1)
    assert qc.verify(cert)


def test_swap_regime_reorients_before_the_length_induction():
    cert = qc.generate_L_cert(3, 1, 1, 2)
    assert cert.claim == qc.L_SPACE
    assert qc.verify(cert)


# -- verification: structural rejections -----------------------------------

def test_skein_determinant_increment_is_rejected_at_that_node():
    cert = qc.generate_L_cert(2, 1, 1, 1)
    paths = [p for p, n in qc.iter_nodes(cert.root) if n.kind == qc.SKEIN]
    assert paths
    path = paths[-1]
    node = dict(qc.iter_nodes(cert.root))[path]
    verdict = qc.verify(_with_node(cert, path, replace(node, det=node.det + 1)))
    assert not verdict
    assert verdict.path == path


def test_quasi_alternating_claim_may_not_use_l_space_axioms():
    cert = qc.generate_A_cert(1, 1, 1)
    flipped = qc.Certificate(qc.QUASI_ALTERNATING, cert.root, cert.axioms)
    verdict = qc.verify(flipped)
    assert not verdict
    assert "not admissible" in verdict.reason


def test_undeclared_axiom_is_rejected():
    cert = qc.generate_L_cert(1, 1, 1, 1)
    stripped = qc.Certificate(cert.claim, cert.root, ())
    verdict = qc.verify(stripped)
    assert not verdict
    assert "not declared" in verdict.reason


def test_swapped_skein_children_are_rejected():
    cert = qc.generate_L_cert(2, 2, 2, 2)
    for path, node in qc.iter_nodes(cert.root):
        if node.kind == qc.SKEIN:
            swapped = replace(node, zero=node.inf, inf=node.zero)
            assert not qc.verify(_with_node(cert, path, swapped))
            break
    else:
        pytest.fail("no skein node found")


def test_reference_cycles_are_rejected():
    link1 = qc.LinkId.A(2, 1, 3)
    link2 = qc.LinkId.A(3, 1, 2)
    ref1 = qc.CertNode(link1, qc.expected_det(link1), qc.REF)
    id2 = qc.CertNode(link2, qc.expected_det(link2), qc.IDENTIFY,
                      citation=qc.CIT_A_SYM, target=link1, child=ref1)
    id1 = qc.CertNode(link1, qc.expected_det(link1), qc.IDENTIFY,
                      citation=qc.CIT_A_SYM, target=link2, child=id2)
    verdict = qc.verify(qc.Certificate(qc.L_SPACE, id1, ()))
    assert not verdict


def test_reference_to_uncertified_link_is_rejected():
    link1 = qc.LinkId.A(2, 1, 3)
    link2 = qc.LinkId.A(3, 1, 2)
    ref2 = qc.CertNode(link2, qc.expected_det(link2), qc.REF)
    id1 = qc.CertNode(link1, qc.expected_det(link1), qc.IDENTIFY,
                      citation=qc.CIT_A_SYM, target=link2, child=ref2)
    verdict = qc.verify(qc.Certificate(qc.L_SPACE, id1, ()))
    assert not verdict
    assert "never certified" in verdict.reason or "measure" in verdict.reason


def test_malformed_resolution_is_rejected_not_crashed():
    link = qc.LinkId("A", (("q", 1), ("s", 1), ("t", 1)), "0,banana,*")
    node = qc.CertNode(link, 3, qc.BASE, axiom="T(3,4)")
    cert = qc.Certificate(
        qc.L_SPACE, node,
        (qc.AxiomDecl("T(3,4)", qc.L_SPACE, "Claim 5.6 proof"),))
    verdict = qc.verify(cert)
    assert not verdict
    assert "resolution" in verdict.reason


# -- exhaustive single-field mutation soundness ----------------------------

def _target_variants(link):
    if link.family == "NAMED":
        return [qc.LinkId.named(n) for n in ("UNKNOT", "T(3,4)", "T(3,5)",
                                             "P(2,-3,-2)", "P(2,-3,-4)")
                if n != link.name]
    out = []
    for i, (k, v) in enumerate(link.params):
        for nv in (v + 1, v - 1, -v):
            if nv != 0 and nv != v:
                params = list(link.params)
                params[i] = (k, nv)
                out.append(replace(link, params=tuple(params)))
    for res in ("*,*,*", "0,*,*", "inf,*,*", "0,0,*", "0,inf,*",
                "inf,0,*", "inf,inf,*", "0,0,0", "inf,inf,inf"):
        cand = link.with_resolution(res)
        if cand != link:
            out.append(cand)
    return out


def test_single_field_mutations_always_reject():
    samples = [qc.generate_A_cert(2, 1, 1),
               qc.generate_L_cert(1, 1, 1, 1),
               qc.generate_L_cert(1, 2, 2, 1)]
    tried = 0
    for cert in samples:
        assert qc.verify(cert)
        for path, node in qc.iter_nodes(cert.root):
            for det in (node.det + 1, node.det - 1, node.det + 997):
                tried += 1
                assert not qc.verify(_with_node(cert, path,
                                                replace(node, det=det))), path
            if node.kind == qc.BASE:
                for other in qc.AXIOMS:
                    if other == node.axiom:
                        continue
                    tried += 1
                    assert not qc.verify(
                        _with_node(cert, path, replace(node, axiom=other))), \
                        (path, other)
            if node.kind == qc.IDENTIFY:
                for cand in _target_variants(node.target):
                    tried += 1
                    assert not qc.verify(
                        _with_node(cert, path, replace(node, target=cand))), \
                        (path, cand)
    assert tried > 500


# -- serialization ---------------------------------------------------------

def test_serialize_round_trip_and_stability():
    for params in ((1, 1, 1, 1), (2, 2, 2, 2), (-1, 1, -1, 1), (1, -2, 2, -1)):
        cert = qc.generate_L_cert(*params)
        text = qc.serialize(cert)
        assert text == qc.serialize(cert)
        back = qc.deserialize(text)
        assert back == cert
        assert qc.serialize(back) == text
        assert qc.verify(back)


def test_golden_certificate_bytes():
    want = (GOLDEN / "cert_L1111.json").read_bytes()
    got = qc.serialize(qc.generate_L_cert(1, 1, 1, 1)).encode()
    assert got == want


def test_deserialize_accepts_bytes():
    cert = qc.generate_A_cert(1, 2, 1)
    assert qc.deserialize(qc.serialize(cert).encode()) == cert


def test_truncated_input_is_a_parse_error_with_location():
    text = qc.serialize(qc.generate_L_cert(1, 1, 1, 1))
    with pytest.raises(qc.CertParseError, match="line"):
        qc.deserialize(text[:len(text) // 2])


def test_parse_errors_carry_the_field_location():
    good = json.loads(qc.serialize(qc.generate_L_cert(1, 1, 1, 1)))

    missing_det = json.loads(json.dumps(good))
    del missing_det["root"]["det"]
    with pytest.raises(qc.CertParseError, match="root"):
        qc.deserialize(json.dumps(missing_det))

    bad_det = json.loads(json.dumps(good))
    bad_det["root"]["det"] = "seven"
    with pytest.raises(qc.CertParseError, match="root.det"):
        qc.deserialize(json.dumps(bad_det))

    bad_kind = json.loads(json.dumps(good))
    bad_kind["root"]["kind"] = "GUESS"
    with pytest.raises(qc.CertParseError, match="kind"):
        qc.deserialize(json.dumps(bad_kind))

    bad_family = json.loads(json.dumps(good))
    bad_family["root"]["link"] = {"family": "Z", "params": {}, "resolution": "*,*,*"}
    with pytest.raises(qc.CertParseError, match="family"):
        qc.deserialize(json.dumps(bad_family))

    extra_param = json.loads(json.dumps(good))
    extra_param["root"]["link"]["params"]["x"] = 5
    with pytest.raises(qc.CertParseError, match="params"):
        qc.deserialize(json.dumps(extra_param))

    with pytest.raises(qc.CertParseError):
        qc.deserialize("[1, 2, 3]")


def test_hand_written_unknot_certificate_accepts():
    text = json.dumps({
        "claim": "QUASI_ALTERNATING",
        "axioms": [{"name": "UNKNOT", "claim": "QUASI_ALTERNATING",
                    "citation": "Definition 2.3(1)"}],
        "root": {"link": {"family": "NAMED", "name": "UNKNOT"},
                 "det": "1", "kind": "BASE", "axiom": "UNKNOT"},
    })
    cert = qc.deserialize(text)
    assert qc.verify(cert)


# -- size growth -----------------------------------------------------------

def test_certificate_size_is_affine_in_the_length_parameter():
    counts = [qc.node_count(qc.generate_L_cert(2, 2, 2, l))
              for l in range(2, 8)]
    steps = {b - a for a, b in zip(counts, counts[1:])}
    assert len(steps) == 1


def test_certificate_size_is_linearly_bounded():
    for q, s, t, l in itertools.product((1, 2, 3), repeat=4):
        cert = qc.generate_L_cert(q, s, t, l)
        assert qc.node_count(cert) <= 40 * (q + s + t + l)


# -- properties ------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_random_positive_a_certificates_verify(q, s, t):
    cert = qc.generate_A_cert(q, s, t)
    assert qc.verify(cert)
    assert qc.deserialize(qc.serialize(cert)) == cert


_nonzero = st.integers(-3, 3).filter(lambda v: v != 0)


@settings(max_examples=25, deadline=None)
@given(_nonzero, _nonzero, _nonzero, _nonzero)
def test_random_l_certificates_verify(q, s, t, l):
    cert = qc.generate_L_cert(q, s, t, l)
    assert qc.verify(cert)
    assert qc.deserialize(qc.serialize(cert)) == cert
