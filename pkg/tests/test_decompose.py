import numpy as np
import pytest

from altring import build_map, decompose, detect_branch, verify_decomposition
from altring.decompose import INFORMATIONAL_CERTIFICATES
from altring.enumeration import Enumeration
from altring.errors import (BranchUndetermined, CertificationFailed,
                            HypothesisFailed, NotBijective)


def required_failures(res):
    return [c.condition for c in res.certificates
            if not c.ok and c.condition not in INFORMATIONAL_CERTIFICATES]


def test_detect_branch_m2_is_degenerate(m2, id_m2, negtr):
    # every corner of M2 relative to a rank-1 idempotent is 1-dimensional
    # and equals Z*f, so both corner conditions hold for any verified map
    e1 = m2.basis_element(0)
    for m in (id_m2, negtr):
        det = detect_branch(m, e1)
        assert det.dagger and det.ddagger
        assert all(r.ok for r in det.reports)


def test_both_branches_need_explicit_choice(m2, id_m2):
    with pytest.raises(BranchUndetermined):
        decompose(id_m2, m2.basis_element(0))


def test_identity_roundtrip_dagger(m2, id_m2):
    res = decompose(id_m2, m2.basis_element(0), branch="dagger")
    assert res.branch == "dagger"
    assert res.required_pass()
    assert res.psi_matrix == [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert (res.tau == 0).all()


def test_conjugation_roundtrip_recovers_matrix(m2, conj):
    res = decompose(conj, m2.basis_element(0), branch="dagger")
    assert res.required_pass()
    assert res.psi_matrix == conj.matrix
    assert (res.tau == 0).all()


def test_neg_transpose_roundtrip_ddagger(m2, negtr):
    enum = Enumeration(m2)
    res = decompose(negtr, m2.basis_element(0), branch="ddagger")
    assert res.branch == "ddagger"
    assert res.required_pass()
    # psi = -x^T: swaps the off-diagonal coordinates and negates
    assert res.psi_matrix == [[4, 0, 0, 0], [0, 0, 4, 0], [0, 4, 0, 0], [0, 0, 0, 4]]
    # tau = trace * unit on every element
    X = enum.all_coords()
    tr = (X[:, 0] + X[:, 3]) % 5
    expect = np.stack([tr, np.zeros_like(tr), np.zeros_like(tr), tr], axis=1)
    assert (res.tau == expect).all()
    names = [c.condition for c in res.certificates]
    assert "psi_anti_multiplicative" in names
    for case in ("case_diag_offdiag", "case_offdiag_diag", "case_diag_diag",
                 "case_offdiag_same", "case_offdiag_opposite", "sandwich_identity"):
        assert next(c for c in res.certificates if c.condition == case).ok


def test_wrong_branch_value_rejected(m2, id_m2):
    with pytest.raises(ValueError):
        decompose(id_m2, m2.basis_element(0), branch="sideways")


def test_recomposition_always_exact(m2, negtr):
    res = decompose(negtr, m2.basis_element(0), branch="ddagger")
    assert ((res.psi + res.tau) % 5 == negtr.images()).all()
    rec = next(c for c in res.certificates if c.condition == "recomposition")
    assert rec.ok and rec.mode == "exhaustive"


def test_hypothesis_4_failure_on_direct_sum(dsum):
    ident = build_map(dsum, dsum, {"kind": "identity"})
    e_blk = dsum.element([1, 0, 0, 0, 1, 0, 0, 0])
    with pytest.raises(HypothesisFailed) as exc:
        decompose(ident, e_blk)
    assert exc.value.condition == "4"
    assert exc.value.witness["central"] == [1, 0, 0, 1, 0, 0, 0, 0]


def test_non_bijective_rejected(m2):
    zero = build_map(m2, m2, {"kind": "linear", "matrix": [[0] * 4 for _ in range(4)]})
    with pytest.raises(NotBijective):
        decompose(zero, m2.basis_element(0), branch="dagger")


def test_corrupted_entry_breaks_exactly_one_certificate(m2, negtr):
    # swapping the images of two mixed-corner, nonzero-trace elements keeps
    # the table bijective, psi untouched, and no commutator value hit:
    # only centrality of tau can break
    enum = Enumeration(m2)
    x0 = int(enum.index_of(np.array([1, 1, 0, 0])))
    x1 = int(enum.index_of(np.array([1, 2, 0, 0])))
    imgs = negtr.images()
    bad = negtr.replace_entry(x0, imgs[x1]).replace_entry(x1, imgs[x0])
    res = decompose(bad, m2.basis_element(0), branch="ddagger", certify=False)
    assert required_failures(res) == ["tau_central"]
    cert = next(c for c in res.certificates if c.condition == "tau_central")
    assert cert.witness["x"] == [1, 1, 0, 0]
    assert cert.witness["tau"] == [1, 0, 4, 1]


def test_certify_raises_on_corruption(m2, negtr):
    enum = Enumeration(m2)
    x0 = int(enum.index_of(np.array([1, 1, 0, 0])))
    x1 = int(enum.index_of(np.array([1, 2, 0, 0])))
    imgs = negtr.images()
    bad = negtr.replace_entry(x0, imgs[x1]).replace_entry(x1, imgs[x0])
    with pytest.raises(CertificationFailed) as exc:
        decompose(bad, m2.basis_element(0), branch="ddagger")
    assert exc.value.certificate == "tau_central"


def test_corrupted_psi_breaks_named_case_with_witness(m2, negtr):
    res = decompose(negtr, m2.basis_element(0), branch="ddagger")
    enum = Enumeration(m2)
    # corrupt psi at E12 and recertify: the product cases touching R_12 fail
    i = int(enum.index_of(np.array([0, 1, 0, 0])))
    res.psi = res.psi.copy()
    res.psi[i] = (res.psi[i] + np.array([1, 0, 0, 0])) % 5
    certs = verify_decomposition(res)
    by = {c.condition: c for c in certs}
    assert not by["case_diag_offdiag"].ok
    assert by["case_diag_offdiag"].witness is not None
    assert not by["recomposition"].ok   # psi no longer matches phi - tau


def test_zorn_identity_roundtrip_sampled(zorn):
    ident = build_map(zorn, zorn, {"kind": "identity"})
    res = decompose(ident, zorn.basis_element(0), branch="dagger",
                    budget=400_000, seed=7, certify=False)
    assert res.required_pass()
    assert (res.tau == 0).all()
    assert res.psi_matrix == [[1 if i == j else 0 for j in range(8)] for i in range(8)]
    sampled = [c for c in res.certificates if c.mode == "sampled"]
    assert sampled and all(c.seed == 7 for c in sampled)


def test_tau_additivity_reported_not_required(m2, negtr):
    res = decompose(negtr, m2.basis_element(0), branch="ddagger")
    tau_add = next(c for c in res.certificates if c.condition == "tau_additive")
    assert tau_add.ok    # trace*unit is additive here
    assert "tau_additive" in INFORMATIONAL_CERTIFICATES
