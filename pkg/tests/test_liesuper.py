"""Checks for the finite-dimensional Lie superalgebra layer.

Matrix-realized algebras are pinned against their defining invariant
(supertransposed form condition, supertrace), the exceptional family against
its seed brackets, and the zero-mode assignments against the contact algebra.
"""

from fractions import Fraction

import pytest

from vazhu.scalar import Scalar, ZERO, ONE
from vazhu.linalg import SuperMatrix, kernel, solve_membership
from vazhu.liesuper import (
    LieSuperalgebra,
    LieMorphism,
    JacobiError,
    build_algebra,
    pbw_monomials,
    pbw_count,
    MINIMAL_NILPOTENT,
    zero_mode_morphism,
    contact_basis_names,
)

A = Scalar.param("a")
C = Scalar.param("c")
GP = ONE / (A + 1)
GM = A / (A + 1)


def sc(x):
    if isinstance(x, Scalar):
        return x
    return Scalar.from_fraction(Fraction(x))


# ---------------------------------------------------------------------------
# superdimensions


def test_superdimensions():
    expected = {
        "osp12": (3, 2),
        "sl12": (4, 4),
        "psl22": (6, 8),
        "osp32": (6, 6),
        "d21a": (9, 8),
        "R_N1": (1, 1),
        "R_N2": (2, 2),
        "R_N3": (5, 4),
        "R_N4small": (4, 4),
        "R_N4": (9, 8),
        "contact_R1": (1, 1),
        "contact_R2": (2, 2),
        "contact_R3": (4, 4),
        "contact_R4": (7, 8),
    }
    for aid, dims in expected.items():
        assert build_algebra(aid).superdim() == dims, aid


def test_build_algebra_rejects_unknown_id():
    with pytest.raises(ValueError):
        build_algebra("so5")


# ---------------------------------------------------------------------------
# matrix realizations against their defining invariants


def _ortho_sympl_condition(m_dim, n_half):
    """Basis of the full matrix solution space of X^{st} J + J X = 0.

    J is block diag(identity_m, [[0,1],[-1,0]]): the invariant form that the
    orthosymplectic condition preserves.
    """
    total = m_dim + 2 * n_half
    J = SuperMatrix.zero(m_dim, 2 * n_half)
    for i in range(m_dim):
        J.rows[i][i] = ONE
    for b in range(n_half):
        r = m_dim + 2 * b
        J.rows[r][r + 1] = ONE
        J.rows[r + 1][r] = -ONE
    units = []
    for i in range(total):
        for j in range(total):
            u = SuperMatrix.zero(m_dim, 2 * n_half)
            u.rows[i][j] = ONE
            units.append(u)
    flats = []
    for u in units:
        cond = u.supertranspose() * J + J * u
        flats.append(cond.entries_dict())
    out = []
    for combo in kernel(flats):
        m = SuperMatrix.zero(m_dim, 2 * n_half)
        for t, coeff in combo.items():
            i, j = divmod(t, total)
            m.rows[i][j] = coeff
        out.append(m)
    return out


def _span_equal(mats_a, mats_b):
    fa = [m.entries_dict() for m in mats_a]
    fb = [m.entries_dict() for m in mats_b]
    return all(solve_membership(v, fb) is not None for v in fa) and all(
        solve_membership(v, fa) is not None for v in fb
    )


def test_osp12_matrices_span_the_form_condition():
    g = build_algebra("osp12")
    sols = _ortho_sympl_condition(1, 1)
    assert len(sols) == 5
    assert _span_equal(sols, list(g.matrices.values()))


def test_osp32_matrices_span_the_form_condition():
    g = build_algebra("osp32")
    sols = _ortho_sympl_condition(3, 1)
    assert len(sols) == 12
    assert _span_equal(sols, list(g.matrices.values()))


def test_sl12_matrices_have_supertrace_zero():
    g = build_algebra("sl12")
    for name, m in g.matrices.items():
        assert m.supertrace().is_zero(), name
    # and they span the full str = 0 space: dimension (1+2)^2 - 1
    assert len(g.names) == 8


def test_psl22_is_a_quotient_by_the_identity():
    g = build_algebra("psl22")
    assert len(g.modulo_matrices) == 1
    ident = g.modulo_matrices[0]
    assert ident.supertrace().is_zero()
    # ha + hd lifts the identity's diagonal complement: [x, ha+hd] = 0 for all
    center_like = g.bracket(g.element("ha"), g.element("ea"))
    assert center_like == {"ea": Scalar.from_int(2)}


def test_structure_constants_match_supercommutators_spot():
    g = build_algebra("osp12")
    got = g.matrices["q"].supercommutator(g.matrices["q"])
    want = SuperMatrix.zero(1, 2)
    for n, coeff in g.table[("q", "q")].items():
        want = want + coeff * g.matrices[n]
    assert got == want


# ---------------------------------------------------------------------------
# Jacobi validation catches corruption


def test_validation_rejects_a_corrupted_table():
    g = build_algebra("osp12")
    original = g.table[("q", "q")]
    bad = {pair: dict(val) for pair, val in g.table.items()}
    bad[("q", "q")] = {n: -coeff for n, coeff in original.items()}
    with pytest.raises(JacobiError):
        LieSuperalgebra(g.names, g.parity, bad)


def test_antisymmetry_completion_and_check():
    two = Scalar.from_int(2)
    g = LieSuperalgebra(
        ["h", "e", "f"],
        {"h": 0, "e": 0, "f": 0},
        {("h", "e"): {"e": two}, ("h", "f"): {"f": -two}, ("e", "f"): {"h": ONE}},
    )
    assert g.bracket(g.element("e"), g.element("h")) == {"e": -two}
    with pytest.raises(JacobiError):
        LieSuperalgebra(
            ["h", "e"],
            {"h": 0, "e": 0},
            {("h", "e"): {"e": ONE}, ("e", "h"): {"e": ONE}},
        )


# ---------------------------------------------------------------------------
# the exceptional family: seed brackets and invariants


def test_d21a_sl2_pairs_and_odd_action():
    g = build_algebra("d21a")

    def bk(x, y):
        return g.bracket(g.element(x), g.element(y))

    assert bk("h1", "e100") == {"e100": -2 * GP}
    assert bk("h1", "f100") == {"f100": 2 * GP}
    assert bk("e100", "f100") == {"h1": ONE}
    assert bk("h3", "e001") == {"e001": -2 * GM}
    assert bk("h3", "f001") == {"f001": 2 * GM}
    assert bk("e001", "f001") == {"h3": ONE}

    assert bk("h1", "f010") == {"f010": -GP}
    assert bk("h1", "f110") == {"f110": GP}
    assert bk("h1", "f011") == {"f011": -GP}
    assert bk("h1", "f111") == {"f111": GP}
    assert bk("h3", "f010") == {"f010": -GM}
    assert bk("h3", "f110") == {"f110": -GM}
    assert bk("h3", "f011") == {"f011": GM}
    assert bk("h3", "f111") == {"f111": GM}

    assert bk("f100", "f010") == {"f110": GP}
    assert bk("f100", "f011") == {"f111": GP}
    assert bk("f001", "f010") == {"f011": -GM}
    assert bk("f001", "f110") == {"f111": -GM}
    assert bk("f010", "f111") == {"f121": ONE}
    assert bk("f110", "f011") == {"f121": -ONE}


def test_d21a_cartan_pairing_invariant():
    g = build_algebra("d21a")
    gram = [
        [-2 * GP, GP, ZERO],
        [GP, ZERO, GM],
        [ZERO, GM, -2 * GM],
    ]
    roots = {
        "100": (1, 0, 0),
        "010": (0, 1, 0),
        "001": (0, 0, 1),
        "110": (1, 1, 0),
        "011": (0, 1, 1),
        "111": (1, 1, 1),
        "121": (1, 2, 1),
    }

    def form(al, be):
        acc = ZERO
        for i in range(3):
            for j in range(3):
                if al[i] and be[j]:
                    acc = acc + gram[i][j] * Scalar.from_int(al[i] * be[j])
        return acc

    for i, hi in enumerate(("h1", "h2", "h3")):
        unit = tuple(1 if t == i else 0 for t in range(3))
        for tag, beta in roots.items():
            got = g.bracket(g.element(hi), g.element(f"e{tag}"))
            pairing = form(unit, beta)
            want = {} if pairing.is_zero() else {f"e{tag}": pairing}
            assert got == want, (hi, tag)


def test_d21a_composite_diagonal_pairings_are_derived():
    g = build_algebra("d21a")

    def bk(x, y):
        return g.bracket(g.element(x), g.element(y))

    assert bk("e110", "f110") == {"h1": ONE, "h2": ONE}
    assert bk("e011", "f011") == {"h2": ONE, "h3": ONE}
    assert bk("e111", "f111") == {"h1": ONE, "h2": ONE, "h3": ONE}
    assert bk("e121", "f121") == {
        "h1": -ONE,
        "h2": Scalar.from_int(-2),
        "h3": -ONE,
    }


def test_d21a_nested_bracket_matches_composite_cartan():
    g = build_algebra("d21a")
    inner = g.bracket(g.element("f100"), g.element("f010"))
    got = g.bracket(g.element("e110"), inner)
    # [e110, [f100, f010]] lands on the coroot combination scaled by gamma+
    assert got == {"h1": GP, "h2": GP}


# ---------------------------------------------------------------------------
# centralizers of the lowest root vectors


def test_minimal_nilpotent_centralizer_superdims():
    expected = {
        "osp12": (1, 1),
        "sl12": (2, 2),
        "psl22": (4, 4),
        "osp32": (4, 3),
        "d21a": (7, 4),
    }
    for aid, dims in expected.items():
        g = build_algebra(aid)
        cen = g.centralizer(g.element(MINIMAL_NILPOTENT[aid]))
        assert cen.superdim() == dims, aid


def test_osp32_centralizer_embeds_into_the_n3_zero_modes():
    g = build_algebra("osp32")
    r = build_algebra("R_N3")
    sub = g.subalgebra(
        {
            "L": {"fd": ONE},
            "A1": {"a1": ONE},
            "A2": {"a2": ONE},
            "A3": {"a3": ONE},
            "G1": {"u1": ONE},
            "G2": {"u2": ONE},
            "G3": {"u3": ONE},
        }
    )
    assert sub.superdim() == (4, 3)
    mor = LieMorphism(sub, r, {n: {n: ONE} for n in sub.names})
    assert mor.check() is None


def test_d21a_centralizer_embeds_into_the_big_n4_zero_modes():
    d = build_algebra("d21a")
    r = build_algebra("R_N4")
    sub = d.subalgebra(
        {
            "L": {"f121": ONE},
            "Jp": {"e100": ONE},
            "J0": {"h1": -(A + 1)},
            "Jm": {"f100": -(A + 1)},
            "Kp": {"e001": ONE},
            "K0": {"h3": -(A + 1) / A},
            "Km": {"f001": -(A + 1) / A},
            "Gpp": {"f010": ONE},
            "Gmp": {"f110": ONE},
            "Gpm": {"f011": -ONE},
            "Gmm": {"f111": ONE},
        }
    )
    assert sub.superdim() == (7, 4)
    mor = LieMorphism(sub, r, {n: {n: ONE} for n in sub.names})
    assert mor.check() is None
    # the span equals the full centralizer of the lowest root vector
    cen = d.centralizer(d.element("f121"))
    cen_flat = list(cen.embedding.values())
    for v in sub.embedding.values():
        assert solve_membership(v, cen_flat, key_order=lambda k: d.index[k]) is not None


def test_sl12_centralizer_structure():
    g = build_algebra("sl12")
    cen = g.centralizer(g.element("f"))
    assert cen.superdim() == (2, 2)
    # one even direction is f itself, the other a hypercharge-like torus
    flats = list(cen.embedding.values())
    assert solve_membership({"f": ONE}, flats) is not None


# ---------------------------------------------------------------------------
# subalgebra closure detection


def test_subalgebra_rejects_non_closed_span():
    g = build_algebra("osp12")
    with pytest.raises(JacobiError):
        g.subalgebra({"e": {"e": ONE}, "f": {"f": ONE}})


def test_subalgebra_requires_homogeneous_elements():
    g = build_algebra("osp12")
    with pytest.raises(ValueError):
        g.subalgebra({"x": {"e": ONE, "q": ONE}})


# ---------------------------------------------------------------------------
# the central extensions presenting the Zhu algebras


def test_r_n3_bracket_relations():
    g = build_algebra("R_N3")

    def bk(x, y):
        return g.bracket(g.element(x), g.element(y))

    assert bk("A1", "A2") == {"A3": ONE}
    assert bk("A2", "A1") == {"A3": -ONE}
    assert bk("A1", "G2") == {"G3": ONE}
    assert bk("A2", "G1") == {"G3": -ONE}
    for i in (1, 2, 3):
        assert bk(f"G{i}", f"G{i}") == {"L": Scalar.from_int(2)}
        assert bk("Phi", f"G{i}") == {f"A{i}": ONE}
        assert bk(f"G{i}", "Phi") == {f"A{i}": ONE}
    assert bk("Phi", "Phi") == {"Z": -C / 3}
    assert bk("Z", "Phi") == {}


def test_r_n4_g_sigma_sector():
    g = build_algebra("R_N4")
    s = Scalar.param("s")

    def bk(x, y):
        return g.bracket(g.element(x), g.element(y))

    half = sc(Fraction(1, 2))
    assert bk("Gpp", "Smm") == {"J0": GM * half, "K0": -GM * half, "Xi": s}
    assert bk("Gpm", "Smp") == {"J0": GM * half, "K0": GM * half, "Xi": s}
    assert bk("Gmp", "Spm") == {"J0": -GP * half, "K0": -GP * half, "Xi": s / A}
    assert bk("Gmm", "Spp") == {"J0": -GP * half, "K0": GP * half, "Xi": s / A}
    assert bk("Gpp", "Gmm") == {"L": ONE}
    assert bk("Gmp", "Gpm") == {"L": ONE}
    assert bk("Spp", "Smm") == {"Z": -C / 6}
    assert bk("Gpp", "Spp") == {}
    assert bk("Gpm", "Spp") == {"Jp": GP}
    assert bk("Gmp", "Spp") == {"Kp": -GP}


def test_r_n4_displayed_sigma_sign_fails_jacobi():
    # flipping the lowered G against raised sigma entry back to the displayed
    # sign breaks the Jacobi identity: a machine witness for the correction
    g = build_algebra("R_N4")
    half = sc(Fraction(1, 2))
    s = Scalar.param("s")
    bad = {}
    for (x, y), val in g.table.items():
        if g.index[x] <= g.index[y]:
            bad[(x, y)] = dict(val)
    bad[("Gmm", "Spp")] = {"J0": GP * half, "K0": -GP * half, "Xi": s / A}
    bad.pop(("Spp", "Gmm"), None)
    with pytest.raises(JacobiError):
        LieSuperalgebra(g.names, g.parity, bad)


# ---------------------------------------------------------------------------
# zero-mode contact assignments


def test_zero_mode_morphisms_preserve_brackets():
    for tag in ("N1", "N2", "N3", "big4_even"):
        assert zero_mode_morphism(tag).check() is None, tag


def test_zero_mode_displayed_n2_is_not_a_morphism():
    witness = zero_mode_morphism("N2_displayed").check()
    assert witness is not None
    x, y, got, want = witness
    assert {x, y} == {"J", "Gp"}
    assert got != want


def test_zero_mode_n1_images():
    mor = zero_mode_morphism("N1")
    img_g = mor.images["G"]
    target = mor.target
    sq = target.bracket(img_g, img_g)
    assert sq == {"D0": -ONE}


def test_contact_basis_names_order():
    assert contact_basis_names(2) == ["D0", "D12", "D1", "D2"]
    assert contact_basis_names(3) == [
        "D0",
        "D12",
        "D13",
        "D23",
        "D1",
        "D2",
        "D3",
        "D123",
    ]


# ---------------------------------------------------------------------------
# PBW monomial enumeration


def test_pbw_monomials_small_counts():
    names = ["x", "q"]
    parities = {"x": 0, "q": 1}
    assert pbw_count(names, parities, 0) == (1, 0)
    assert pbw_count(names, parities, 1) == (2, 1)
    assert pbw_count(names, parities, 2) == (3, 2)
    monos = pbw_monomials(names, parities, 2)
    assert (("x", 2),) in monos
    assert (("x", 1), ("q", 1)) in monos
    assert (("q", 1),) in monos
    assert all(e == 1 for mono in monos for n, e in mono if n == "q")


def test_pbw_monomials_respect_declared_order():
    names = ["x", "y"]
    parities = {"x": 0, "y": 0}
    monos = pbw_monomials(names, parities, 2)
    assert (("x", 1), ("y", 1)) in monos
    assert (("y", 1), ("x", 1)) not in monos
