import numpy as np
import pytest

from omegalie import (Algebra, AmbiguousSpectrum, Bracket, ClassLabel,
                      Tolerances, ValidationFailure,
                      adjoint, bianchi, canonicalize_ratio, classify,
                      complexify, induced_omega, lie_classify,
                      max_difference, model, omega_radical,
                      random_basis_change, random_skew_bracket, transform,
                      validate)
from omegalie.errors import ZeroParameter


def assert_sound(report, a, tol=1e-9):
    """The master property: the witness actually carries the input onto
    the canonical model."""
    moved = transform(a, report.witness.matrix)
    target = model(report.label, field=moved.field)
    assert max_difference(moved, target) == pytest.approx(
        report.witness.residual, abs=1e-15)
    assert report.witness.residual < tol


# --- canonicalize_ratio -----------------------------------------------------

def test_canonicalize_examples():
    assert canonicalize_ratio(2.0) == 2.0
    assert canonicalize_ratio(0.5) == 2.0
    assert canonicalize_ratio(1j) == 1j
    assert canonicalize_ratio(-1j) == 1j
    assert canonicalize_ratio(-1.0) == -1.0
    assert canonicalize_ratio(1.0) == 1.0


def test_canonicalize_idempotent(rng):
    for _ in range(200):
        z = complex(rng.standard_normal(), rng.standard_normal())
        if z == 0:
            continue
        c = canonicalize_ratio(z)
        assert canonicalize_ratio(c) == c
        assert min(abs(c - z), abs(c - 1 / z)) < 1e-12


def test_canonicalize_zero_raises():
    with pytest.raises(ZeroParameter):
        canonicalize_ratio(0.0)


# --- fixed points -----------------------------------------------------------

@pytest.mark.parametrize("label,field", [
    (ClassLabel("L1"), "complex"),
    (ClassLabel("L2"), "complex"),
    (ClassLabel("B"), "complex"),
    (ClassLabel("C", 2.0), "complex"),
    (ClassLabel("A", 0.0), "complex"),
    (ClassLabel("Abelian"), "complex"),
    (ClassLabel("G1"), "complex"),
    (ClassLabel("G2"), "complex"),
    (ClassLabel("H", 3.0), "complex"),
    (ClassLabel("G3"), "complex"),
    (ClassLabel("G4"), "complex"),
    (ClassLabel("L1"), "real"),
    (ClassLabel("L2"), "real"),
    (ClassLabel("B1"), "real"),
    (ClassLabel("Bm1"), "real"),
    (ClassLabel("ACal", 0.0), "real"),
    (ClassLabel("CCal", 2.0), "real"),
    (ClassLabel("CCal", -2.0), "real"),
    (ClassLabel("EPlus", 1.5), "real"),
    (ClassLabel("EMinus", 0.5), "real"),
])
def test_catalog_models_are_fixed_points(label, field):
    a = model(label, field)
    out = classify(a)
    assert out.label.kind == label.kind
    if label.param is not None:
        expected = label.param
        if label.kind in ("C", "CCal", "H"):
            expected = canonicalize_ratio(expected)
        elif label.kind in ("EPlus", "EMinus"):
            expected = abs(expected)
        assert abs(out.label.param - expected) < 1e-9
    assert_sound(out, a)


def test_l1_fixed_point_identity_witness():
    out = classify(model(ClassLabel("L1")))
    assert out.witness.residual == 0.0


# --- dispatch structure -----------------------------------------------------

def test_rank2_split_l1_vs_l2():
    # the discriminator is whether the radical line absorbs its brackets
    for kind in ("L1", "L2"):
        a = model(ClassLabel(kind))
        r = omega_radical(a.omega)
        ad = adjoint(a.bracket, r)
        inline = np.abs(ad - np.outer(r, r.conj() @ ad)).max() < 1e-12
        assert inline == (kind == "L1")
        assert classify(a).label.kind == kind


def test_bianchi_rows_spot_checks():
    assert classify(bianchi("VI_T").algebra).label.kind == "B1"
    assert classify(bianchi("VII_T").algebra).label.kind == "Bm1"
    assert classify(bianchi("VI_N").algebra).label.kind == "L1"
    assert classify(bianchi("VIII_T_a", 1.0).algebra).label.kind == "L2"
    out = classify(bianchi("IV_T").algebra)
    assert out.label.kind == "CCal" and abs(out.label.param - 1.0) < 1e-9


def test_bianchi_viii_t_parameter_map():
    # the derived ratio is (a+1)/(a-1) after canonicalization
    for a_val in (0.5, 2.0, 3.0):
        out = classify(bianchi("VIII_T_a", a_val).algebra)
        expected = canonicalize_ratio((a_val + 1.0) / (a_val - 1.0))
        assert out.label.kind == "CCal"
        assert abs(out.label.param - expected) < 1e-9


def test_bianchi_rotation_parameter_map():
    # E-type rows land on parameter 2a / sqrt(1 + a^2)
    for name, kind in (("VIII_a", "EPlus"), ("IX_a", "EMinus")):
        for a_val in (0.5, 1.0, 2.0):
            out = classify(bianchi(name, a_val).algebra)
            assert out.label.kind == kind
            assert abs(out.label.param
                       - 2.0 * a_val / np.sqrt(1.0 + a_val ** 2)) < 1e-9


def test_classification_convention_flag():
    entry = bianchi("IV_T")
    printed = Algebra("real", entry.algebra.bracket, entry.printed_omega)
    out = classify(printed)
    assert out.diagnostics["convention"] == "-1"
    assert out.label.kind == "CCal"


def test_classify_rejects_incompatible_form():
    a = Algebra("complex", model(ClassLabel("B")).bracket,
                __import__("omegalie").OmegaForm(5.0, 0.0, 0.0))
    with pytest.raises(ValidationFailure):
        classify(a)


# --- family identifications -------------------------------------------------

def test_c_family_inversion_witness():
    # explicit map (x, y, z) -> (x/alpha, z, -y/alpha) realizes the
    # reciprocal parameter; residual is exact at representable alphas
    for alpha in (3.0, -2.0, 0.25, 1.5 + 0.5j):
        src = model(ClassLabel("C", alpha))
        p = np.array([[1.0 / alpha, 0, 0], [0, 0, -1.0 / alpha], [0, 1, 0]])
        moved = transform(src, p)
        target = model(ClassLabel("C", 1.0 / alpha))
        assert max_difference(moved, target) < 1e-12


def test_h_family_inversion_witness():
    for alpha in (3.0, 0.25, -4.0):
        src = model(ClassLabel("H", alpha))
        p = np.array([[1.0 / alpha, 0, 0], [0, 0, 1.0], [0, 1.0, 0]])
        moved = transform(src, p)
        target = model(ClassLabel("H", 1.0 / alpha))
        assert max_difference(moved, target) < 1e-12


def test_c_below_unit_classifies_to_canonical_side():
    out = classify(model(ClassLabel("C", 0.5)))
    assert out.label.kind == "C" and abs(out.label.param - 2.0) < 1e-12


def test_h_reciprocal_pair_same_label():
    a = classify(model(ClassLabel("H", 3.0)))
    b = classify(model(ClassLabel("H", 1.0 / 3.0)))
    assert abs(a.label.param - b.label.param) < 1e-10
    assert a.witness.residual < 1e-10 and b.witness.residual < 1e-10


def test_a_family_is_one_class():
    # (x, y, z) -> (x, x+y, (g/2+1)x + y + z) moves the parameter to zero
    for gamma in (3.0, -1.25, 2.0 - 1.0j):
        src = model(ClassLabel("A", gamma))
        p = np.array([[1, 1, gamma / 2 + 1], [0, 1, 1], [0, 0, 1]],
                     dtype=complex)
        assert max_difference(transform(src, p),
                              model(ClassLabel("A", 0.0))) < 1e-12
        out = classify(src)
        assert abs(out.label.param) < 1e-10


def test_e_family_sign_flip_identification():
    # (x, y, z) -> (-x, y, -z) negates the trace parameter
    for kind in ("EPlus", "EMinus"):
        src = model(ClassLabel(kind, -1.5), "real")
        p = np.diag([-1.0, 1.0, -1.0])
        assert max_difference(transform(src, p),
                              model(ClassLabel(kind, 1.5), "real")) < 1e-14
        out = classify(src)
        assert out.label.kind == kind and abs(out.label.param - 1.5) < 1e-10


# --- complexify -------------------------------------------------------------

def test_complexify_bm1_becomes_b():
    out = classify(complexify(model(ClassLabel("Bm1"), "real")))
    assert out.label.kind == "B"
    assert out.witness.residual < 1e-10


def test_complexify_acal_becomes_a():
    out = classify(complexify(model(ClassLabel("ACal", 1.5), "real")))
    assert out.label.kind == "A"


def test_complexify_rotation_becomes_diagonal_family():
    out = classify(complexify(model(ClassLabel("EPlus", 1.0), "real")))
    assert out.label.kind == "C"
    beta = out.label.param
    # eigenvalue ratio of the unit rotation block at trace 1: a primitive
    # sixth root pair, canonicalized to the upper half plane
    expected = complex(-0.5, np.sqrt(3.0) / 2.0)
    assert abs(beta - expected) < 1e-10
    assert beta.imag > 1e-3


def test_complexify_requires_real_input():
    with pytest.raises(ValueError):
        complexify(model(ClassLabel("B")))


# --- lie branch -------------------------------------------------------------

def test_lie_classify_g2():
    out = lie_classify(model(ClassLabel("G2")))
    assert out.label.kind == "G2"


def test_lie_classify_rejects_nontrivial_form():
    with pytest.raises(ValueError):
        lie_classify(model(ClassLabel("B")))


def test_lie_real_rotation_pair_gets_complex_ratio():
    # a real rank-2 algebra whose restricted action rotates: the ratio of
    # the conjugate eigenvalues is complex and the witness leaves real mode
    b = Bracket((0, 1, 1), (0, -1, 1), (0, 0, 0))
    a = Algebra("real", b)
    assert validate(a).is_lie
    out = classify(a)
    assert out.label.kind == "H"
    assert abs(out.label.param.imag) > 1e-6
    assert abs(out.label.param) == pytest.approx(1.0, abs=1e-9)
    assert_sound(out, a)


def test_lie_su2_like_real_form_is_g4_with_complex_witness():
    # compact real form: all real adjoints rotate, so the witness is complex
    b = Bracket((0, 0, 1), (0, -1, 0), (1, 0, 0))
    a = Algebra("real", b)
    out = classify(a)
    assert out.label.kind == "G4"
    assert out.diagnostics["model_field"] == "complex"
    assert_sound(out, a)


# --- transform invariance and witness soundness -----------------------------

CATALOG_SAMPLES = [
    ("complex", ClassLabel("L1")), ("complex", ClassLabel("L2")),
    ("complex", ClassLabel("A", 1.3)), ("complex", ClassLabel("B")),
    ("complex", ClassLabel("C", 2.0)),
    ("complex", ClassLabel("C", complex(-0.8, 1.1))),
    ("complex", ClassLabel("G1")), ("complex", ClassLabel("G2")),
    ("complex", ClassLabel("H", 3.0)), ("complex", ClassLabel("G3")),
    ("complex", ClassLabel("G4")),
    ("real", ClassLabel("B1")), ("real", ClassLabel("Bm1")),
    ("real", ClassLabel("ACal", -0.5)), ("real", ClassLabel("CCal", 2.0)),
    ("real", ClassLabel("EPlus", 1.25)), ("real", ClassLabel("EMinus", 0.75)),
]


@pytest.mark.parametrize("field,label", CATALOG_SAMPLES)
def test_transform_invariance(field, label, rng):
    a = model(label, field)
    for _ in range(40):
        p = random_basis_change(rng, field, 100.0)
        out = classify(transform(a, p))
        assert out.label.kind == label.kind
        assert out.witness.residual < 1e-6


def test_scaled_radical_keeps_dispatch(rng):
    # scaling the anchor vector rescales spectral parameters but not labels
    from omegalie import spectral_type
    a = model(ClassLabel("C", 2.0))
    r = omega_radical(a.omega)
    for _ in range(20):
        c = complex(rng.standard_normal(), rng.standard_normal())
        if abs(c) < 0.1:
            continue
        st = spectral_type(adjoint(a.bracket, c * r), "complex")
        assert st.name == "diag"
        assert classify(a).label.kind == "C"


def test_disjointness_over_catalog():
    seen = {}
    for field in ("complex", "real"):
        from omegalie.catalog import iter_catalog
        for label, alg in iter_catalog(field):
            out = classify(alg)
            assert out.label.kind == label.kind
            seen.setdefault(field, set()).add(out.label.kind)
    assert len(seen["complex"]) == 11
    assert len(seen["real"]) == 14


def test_case_d_never_occurs_on_random_rank3(rng):
    # exclusion sweep: the zero-block-plus shape must never be reached
    # by a nonzero-form algebra's anchored adjoint
    from omegalie import spectral_type, ZeroBlockPlus
    hits = 0
    for _ in range(100_000):
        coeffs = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = Bracket(coeffs[0], coeffs[1], coeffs[2])
        w = induced_omega(b)
        if w.max_abs() < 1e-6:
            continue
        r = omega_radical(w)
        try:
            st = spectral_type(adjoint(b, r), "complex")
        except AmbiguousSpectrum:
            continue
        if isinstance(st, ZeroBlockPlus):
            hits += 1
    assert hits == 0


def test_witness_soundness_on_random_samples(rng):
    tols = Tolerances()
    for field in ("complex", "real"):
        done = 0
        while done < 150:
            b = random_skew_bracket(rng, field)
            a = Algebra(field, b)
            if validate(a).is_lie:
                continue
            try:
                out = classify(a, tols)
            except AmbiguousSpectrum:
                continue
            assert_sound(out, a, tol=tols.witness)
            done += 1


def test_rank1_bracket_is_lie_g1():
    out = classify(Algebra("complex", Bracket((0, 0, 0), (0, 0, 0), (0, 1, 0))))
    assert out.label.kind == "G1"
