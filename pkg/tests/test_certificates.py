import json
import random
import re

from invarforms.catalog import load_catalog
from invarforms.certificates import (CertificateChecker, certificate_check,
                                     check_certificate, load_certificate,
                                     shipped_certificate_names)
from invarforms.feasibility import ResidualEntry, ResidualSystem, build_ansatz
from invarforms.scalars import Scalar

EXPECTED_CERTIFICATES = {
    "h3_Jminus_lcht", "h9_lcht", "h19minus_Jplus_lcht", "h19minus_Jminus_lcht",
    "inoue_Spm_lcK_qnz", "class1_lcht_ReA_nonzero",
    "class2_lcht_g1_1", "class2_lcht_g2_1", "class2_lcht_g1_2",
    "class3_lcht_A1_s12_1", "class3_lcht_A1_s12_i", "class3_lcht_A1_s12_2",
    "class4_lcht", "class5_lcht", "class6_lcht", "class7_lcht",
}


def test_shipped_certificates_present_and_valid():
    names = set(shipped_certificate_names())
    assert EXPECTED_CERTIFICATES <= names
    for name in sorted(names):
        res = check_certificate(load_certificate(name))
        assert res.valid, (name, res.failure)


def test_symbolic_certificates_have_no_instantiated_parameters():
    # the nilpotent fixtures, the S+- proof, and classes 1/4/5/6/7 are uniform
    for name in ("h3_Jminus_lcht", "h9_lcht", "h19minus_Jplus_lcht",
                 "h19minus_Jminus_lcht", "inoue_Spm_lcK_qnz",
                 "class1_lcht_ReA_nonzero", "class4_lcht", "class5_lcht",
                 "class6_lcht", "class7_lcht"):
        assert load_certificate(name).get("params", {}) == {}, name


def _expr_sites(node, path=()):
    sites = []
    if isinstance(node, dict):
        for k, v in node.items():
            sites.extend(_expr_sites(v, path + (k,)))
    elif isinstance(node, list):
        for i, v in enumerate(node):
            sites.extend(_expr_sites(v, path + (i,)))
    elif isinstance(node, str) and re.search(r"\d", node):
        sites.append(path)
    return sites


def _get(node, path):
    for p in path:
        node = node[p]
    return node


def _set(node, path, value):
    for p in path[:-1]:
        node = node[p]
    node[path[-1]] = value


def corrupt_one_coefficient(cert: dict, rng: random.Random) -> dict:
    cert = json.loads(json.dumps(cert))
    sites = _expr_sites(cert["tree"])
    site = rng.choice(sites)
    text = _get(cert["tree"], site)
    digits = [m.start() for m in re.finditer(r"\d", text)]
    pos = rng.choice(digits)
    new = rng.choice([d for d in "123456789" if d != text[pos]])
    _set(cert["tree"], site, text[:pos] + new + text[pos + 1:])
    return cert


def test_corrupted_certificates_rejected():
    names = sorted(shipped_certificate_names())
    rng = random.Random(2024)
    rejected = 0
    for _ in range(100):
        cert = corrupt_one_coefficient(load_certificate(rng.choice(names)), rng)
        res = check_certificate(cert)
        assert not res.valid
        rejected += 1
    assert rejected == 100


def test_each_shipped_certificate_rejects_targeted_corruption():
    rng = random.Random(7)
    for name in sorted(EXPECTED_CERTIFICATES):
        cert = corrupt_one_coefficient(load_certificate(name), rng)
        assert not check_certificate(cert).valid, name


def test_degenerate_smoke_certificate():
    """A contradiction leaf on an injected equation r2 = 0 validates."""
    spec = load_catalog("h3_Jplus")
    ansatz = build_ansatz(spec, "lcK")
    system = ResidualSystem(spec, "conformal", 1,
                            [ResidualEntry("smoke", (1,), Scalar.var("r2", ansatz.reg))])
    checker = CertificateChecker(ansatz, system, [])
    tree = {"step": "contradiction", "eq": "mon:smoke",
            "combo": [["1", [{"var": "r2"}]]]}
    assert checker.run(tree).valid


def test_invalid_structures_reported_with_step():
    cert = load_certificate("class7_lcht")
    cert["tree"]["result"] = "i*a"  # claim a result the combination cannot match
    res = check_certificate(cert)
    assert not res.valid and "cancel" in res.failure

    cert2 = load_certificate("class7_lcht")
    cert2["tree"]["factors"] = [{"var": "u"}]  # u is not known nonzero
    assert not check_certificate(cert2).valid

    cert3 = load_certificate("h3_Jminus_lcht")
    # dropping the nonzero branch makes the split malformed
    cert3["tree"]["nonzero"] = {"step": "bogus"}
    res3 = check_certificate(cert3)
    assert not res3.valid

    cert4 = load_certificate("h9_lcht")
    # a contradiction without any strictly positive summand must be rejected
    cert4["tree"]["nonzero"][ "then"]["then"]["combo"] = [["1", [{"sq": "b"}, {"var": "t2"}]]]
    assert not check_certificate(cert4).valid


def test_cancel_requires_declared_nonzero():
    spec = load_catalog("inoue_Spm")
    ansatz = build_ansatz(spec, "lcK")
    cert = load_certificate("inoue_Spm_lcK_qnz")
    cert["assume_nonzero"] = []  # q is no longer assumed nonzero
    res = certificate_check(spec, ansatz, cert)
    assert not res.valid and "nonzero" in res.failure


def test_certificate_applies_to_lck_sublocus():
    """An lcht nonexistence certificate also rules out positive (1,1) forms:
    the lcK ansatz embeds in the taming one with L = M = N = 0."""
    cert = load_certificate("class4_lcht")
    spec = load_catalog("class4")
    ansatz = build_ansatz(spec, "lcht")
    assert certificate_check(spec, ansatz, cert).valid
    names = set(ansatz.unknown_names())
    assert {"L", "M", "N"} <= names


def test_wrong_system_rejected():
    # the h9 proof must not validate against the h3 J- system
    cert = load_certificate("h9_lcht")
    spec = load_catalog("h3_Jminus")
    ansatz = build_ansatz(spec, "lcht", reduce_offdiag=True)
    assert not certificate_check(spec, ansatz, cert).valid
