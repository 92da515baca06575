import numpy as np
import pytest

from omegalie import (ClassLabel, ParameterOutOfDomain, bianchi,
                      classify, entry, induced_omega, model, validate)
from omegalie.catalog import BIANCHI_TYPES, iter_catalog
from omegalie.errors import ZeroParameter


def test_every_catalog_model_validates_tightly():
    for field in ("complex", "real"):
        for label, alg in iter_catalog(field):
            rep = validate(alg, 1e-12)
            assert rep.passed, label.display()
            assert rep.discrepancy == 0.0


@pytest.mark.parametrize("label,wxy,wxz,wyz", [
    (ClassLabel("L1"), 1, 0, 0),
    (ClassLabel("L2"), 0, 1, 0),
    (ClassLabel("A", 0.7), 0, 0, -1),
    (ClassLabel("B"), 0, 0, 2),
    (ClassLabel("C", 3.0), 0, 0, 1 + 3.0),
    (ClassLabel("C", -0.4), 0, 0, 1 + -0.4),
])
def test_published_form_values_complex(label, wxy, wxz, wyz):
    w = model(label).omega
    assert (w.wxy, w.wxz, w.wyz) == (wxy, wxz, wyz)


@pytest.mark.parametrize("label,wyz", [
    (ClassLabel("B1"), 2),
    (ClassLabel("Bm1"), -2),
    (ClassLabel("EPlus", 1.5), 1.5),
    (ClassLabel("EMinus", 1.5), -1.5),
])
def test_published_form_values_real(label, wyz):
    w = model(label, "real").omega
    assert w.wyz == wyz and w.wxy == 0 and w.wxz == 0


def test_lie_models_have_zero_form():
    for kind in ("Abelian", "G1", "G2", "G3", "G4"):
        assert model(ClassLabel(kind)).omega.max_abs() == 0
    assert model(ClassLabel("H", 2.5)).omega.max_abs() == 0


def test_model_l2_matches_published_constants():
    a = model(ClassLabel("L2"))
    assert np.all(a.bracket.cxy == 0)
    assert np.allclose(a.bracket.cxz, [0, 1, 0], atol=0)
    assert np.allclose(a.bracket.cyz, [0, 0, 1], atol=0)
    assert a.omega.wxz == 1


def test_model_domain_checks():
    with pytest.raises(ZeroParameter):
        ClassLabel("C", 0.0)
    with pytest.raises(ZeroParameter):
        ClassLabel("H", 0.0)
    with pytest.raises(ParameterOutOfDomain):
        model(ClassLabel("CCal", 1.0 + 1.0j), "real")
    with pytest.raises(ParameterOutOfDomain):
        ClassLabel("EPlus", 2.5)
    with pytest.raises(ParameterOutOfDomain):
        model(ClassLabel("B"), "real")
    with pytest.raises(ParameterOutOfDomain):
        model(ClassLabel("B1"), "complex")


def test_entry_stores_consistent_form():
    e = entry(ClassLabel("C", 2.0))
    assert e.convention == "+1"
    assert e.printed_omega == e.algebra.omega
    assert e.params == (2.0,)


# --- the published table rows ----------------------------------------------

def test_bianchi_types_complete():
    assert set(BIANCHI_TYPES) == {
        "IV_T", "VI_T", "VI_S", "VI_N", "VII_T",
        "VIII_a", "VIII_T_a", "VIII_N_a", "IX_a"}


def test_bianchi_iv_t_row():
    e = bianchi("IV_T")
    assert np.allclose(e.algebra.bracket.cxy, [0, 1, 0], atol=0)
    assert np.allclose(e.algebra.bracket.cxz, [0, 0, 1], atol=0)
    assert np.allclose(e.algebra.bracket.cyz, [1, 0, 0], atol=0)
    assert e.printed_omega.wyz == -2
    assert e.convention == "-1"
    assert e.stated_class == "CCal"


def test_bianchi_viii_n_row_at_one():
    e = bianchi("VIII_N_a", 1.0)
    assert np.allclose(e.algebra.bracket.cxy, [0, 1, -1], atol=0)
    assert np.allclose(e.algebra.bracket.cxz, [-1, -1, 1], atol=0)
    assert np.allclose(e.algebra.bracket.cyz, [1, -1, 0], atol=0)
    assert e.printed_omega.wxy == 2 and e.printed_omega.wyz == -2


def test_bianchi_vi_n_row():
    e = bianchi("VI_N")
    assert np.allclose(e.algebra.bracket.cxy, [-1, 1, 0], atol=0)
    assert e.printed_omega.wxz == -2 and e.printed_omega.wyz == -2
    assert e.printed_omega.wxy == 0


def test_every_bianchi_row_validates_with_induced_form():
    for name in BIANCHI_TYPES:
        parametric = name.endswith("_a") or name in ("VIII_a", "IX_a")
        e = bianchi(name, 1.5) if parametric else bianchi(name)
        assert validate(e.algebra, 1e-12).passed


def test_every_bianchi_row_prints_negated_form():
    # the published rows all state the form with the opposite global sign,
    # which the entries record rather than correct
    for name in BIANCHI_TYPES:
        parametric = name.endswith("_a") or name in ("VIII_a", "IX_a")
        e = bianchi(name, 0.5) if parametric else bianchi(name)
        assert e.convention == "-1", name
        got = np.array([e.printed_omega.wxy, e.printed_omega.wxz,
                        e.printed_omega.wyz])
        ind = induced_omega(e.algebra.bracket).triple()
        assert np.abs(got + ind).max() < 1e-14


def test_bianchi_parameter_domain():
    with pytest.raises(ParameterOutOfDomain):
        bianchi("VIII_a")
    with pytest.raises(ParameterOutOfDomain):
        bianchi("VIII_a", -1.0)
    with pytest.raises(ParameterOutOfDomain):
        bianchi("IV_T", 1.0)
    with pytest.raises(ParameterOutOfDomain):
        bianchi("X_q")


def test_bianchi_rows_classify_to_stated_classes():
    for name in BIANCHI_TYPES:
        parametric = name.endswith("_a") or name in ("VIII_a", "IX_a")
        for a_val in ((0.5, 1.0, 2.0) if parametric else (None,)):
            e = bianchi(name, a_val)
            out = classify(e.algebra)
            expected = e.stated_class
            if expected == "L2|CCal":
                expected = "L2" if a_val == 1.0 else "CCal"
            assert out.label.kind == expected, (name, a_val,
                                                out.label.display())
            assert out.witness.residual < 1e-9


def test_classify_of_every_model_round_trips():
    for field in ("complex", "real"):
        for label, alg in iter_catalog(field):
            out = classify(alg)
            assert out.label.kind == label.kind, (field, label.display())
            assert out.witness.residual < 1e-9
