from itertools import combinations

import pytest
from hypothesis import given, settings

from arrowkernel import assemble_algebra, load_fixture
from arrowkernel.ideal import (
    CertificateMismatch,
    RemovalCertificate,
    RemovalRefusal,
    arrow_set_removable,
    hom_vanishing_table,
    minimal_generator_space,
    remove_arrows,
    scan_removable,
    trivial_extension_check,
)
from arrowkernel.presentation import PresentationError, UnknownArrow

from conftest import algebra
from oracles import path_algebra_dim, quadratic_generator_count
from strategies import acyclic_presentations


@pytest.mark.parametrize("name, g", [("L1", 3), ("L2", 3), ("L3", 3), ("XU", 4), ("H4", 0), ("C3", 1), ("K1", 0), ("A2", 0)])
def test_generator_count(name, g):
    p = load_fixture(name)
    A = algebra(name)
    assert minimal_generator_space(p, A).g == g
    # independent of the truncation degree
    assert minimal_generator_space(p, A, A.nilpotency + 3).g == g
    if p.relations:
        assert quadratic_generator_count(p)[0] == g


def test_truncation_degree_must_cover_nilpotency():
    with pytest.raises(ValueError):
        minimal_generator_space(load_fixture("L1"), algebra("L1"), degree=1)


def test_lifted_basis_spans_generators():
    mgs = minimal_generator_space(load_fixture("XU"), algebra("XU"))
    assert len(mgs.lifted_basis()) == 4


def test_hom_tables():
    L2 = algebra("L2")
    assert hom_vanishing_table(L2, ["a2"]).vanishes
    assert hom_vanishing_table(algebra("L3"), ["a2", "a3"]).vanishes
    xu = hom_vanishing_table(algebra("XU"), ["a"])
    assert xu.entries[("a", "a")] >= 1 and xu.witnesses[("a", "a")] == "e1"
    h4 = hom_vanishing_table(algebra("H4"), ["a", "b"])
    assert h4.entries == {("a", "a"): 0, ("a", "b"): 0, ("b", "a"): 1, ("b", "b"): 0}
    assert h4.witnesses[("b", "a")] == "x"


def test_certificates():
    cert = arrow_set_removable(load_fixture("L2"), ["a2"], algebra("L2"))
    assert isinstance(cert, RemovalCertificate)
    assert (cert.dim_lambda, cert.dim_gamma, cert.dim_p) == (10, 6, 4)
    assert [str(r) for r in cert.relations] == ["a1*b", "b*g", "g*a1"]
    for name, T in [("L3", ["a2", "a3"]), ("H4", ["a"]), ("C3", ["a"]), ("A2", ["x"])]:
        assert isinstance(arrow_set_removable(load_fixture(name), T, algebra(name)), RemovalCertificate)


def test_refusals():
    r = arrow_set_removable(load_fixture("XU"), ["c"], algebra("XU"))
    assert isinstance(r, RemovalRefusal)
    assert (r.reason, r.deficit, r.generator_count) == ("occurrence", 1, 4)
    assert r.as_dict()["t_free_classes"] == 3
    for n in (2, 3):
        r = arrow_set_removable(load_fixture(f"L{n}"), ["a1"], algebra(f"L{n}"))
        assert r.reason == "occurrence" and r.deficit == 2
    r = arrow_set_removable(load_fixture("H4"), ["a", "b"], algebra("H4"))
    assert r.reason == "hom" and r.witness == "x" and r.witness_pair == ("b", "a")


def test_arrow_set_errors():
    p = load_fixture("L2")
    with pytest.raises(UnknownArrow):
        arrow_set_removable(p, ["zz"])
    with pytest.raises(PresentationError):
        arrow_set_removable(p, [])
    with pytest.raises(PresentationError):
        arrow_set_removable(p, ["a2", "a2"])


def test_removal_presentations():
    L1 = load_fixture("L1")
    for name, T in [("L2", ["a2"]), ("L3", ["a2", "a3"])]:
        p = load_fixture(name)
        q = remove_arrows(p, arrow_set_removable(p, T))
        assert q == L1
        assert assemble_algebra(q).structurally_equal(algebra("L1"))
    p = load_fixture("C3")
    q = remove_arrows(p, arrow_set_removable(p, ["a"]))
    assert q.quiver.arrow_names == ("b", "c")
    assert [str(r) for r in q.relations] == ["b*c"]
    assert assemble_algebra(q).dim == 5
    with pytest.raises(CertificateMismatch):
        remove_arrows(load_fixture("L3"), arrow_set_removable(load_fixture("L2"), ["a2"]))


@pytest.mark.parametrize(
    "name, T, p_basis",
    [
        ("L2", ["a2"], {"a2", "a2*b", "g*a2", "g*a2*b"}),
        ("C3", ["a"], {"a", "a*b", "c*a", "c*a*b"}),
        ("H4", ["a"], {"a", "a*x", "a*x*b"}),
        ("L3", ["a2", "a3"], {"a2", "a2*b", "g*a2", "g*a2*b", "a3", "a3*b", "g*a3", "g*a3*b"}),
    ],
)
def test_trivial_extension(name, T, p_basis):
    p = load_fixture(name)
    cert = arrow_set_removable(p, T)
    G = assemble_algebra(remove_arrows(p, cert))
    rep = trivial_extension_check(algebra(name), G, cert)
    assert rep.passed
    assert set(rep.p_basis) == p_basis
    assert rep.dim_lambda == rep.dim_gamma + rep.formula_dim_p


def test_scans():
    expected = {
        "L2": (("a2",), ("a2",)),
        "L3": (("a2", "a3"), ("a2", "a3")),
        "C3": (("a",), ("a",)),
        "H4": (("a", "x", "b"), ("a",)),
        "XU": ((), ()),
        "L1": ((), ()),
    }
    for name, (single, greedy) in expected.items():
        s = scan_removable(load_fixture(name), algebra(name))
        assert (s.singletons, s.greedy) == (single, greedy), name


@pytest.mark.parametrize("name", ["L2", "L3", "C3", "H4", "XU"])
def test_occurrence_monotone_on_subsets(name):
    p = load_fixture(name)
    A = algebra(name)
    for k in range(1, len(p.quiver.arrow_names) + 1):
        for T in combinations(p.quiver.arrow_names, k):
            r = arrow_set_removable(p, T, A)
            if isinstance(r, RemovalCertificate):
                for j in range(1, k):
                    for S in combinations(T, j):
                        sub = arrow_set_removable(p, S, A)
                        assert isinstance(sub, RemovalCertificate) or sub.reason == "hom"


def test_fields_give_same_certificates():
    for name, T in [("L2", ["a2"]), ("C3", ["a"]), ("XU", ["c"])]:
        a = arrow_set_removable(load_fixture(name), T)
        b = arrow_set_removable(load_fixture(name, "q"), T)
        assert type(a) is type(b)
        assert a.as_dict() == b.as_dict()


@settings(max_examples=30, deadline=None)
@given(acyclic_presentations())
def test_random_quadratic_removals(p):
    A = assemble_algebra(p)
    g = minimal_generator_space(p, A).g
    assert g == (quadratic_generator_count(p)[0] if p.relations else 0)
    for a in p.quiver.arrow_names:
        _, free = quadratic_generator_count(p, free_of=(a,)) if p.relations else (0, 0)
        r = arrow_set_removable(p, [a], A)
        # acyclic: no path runs back from the target to the source, so only occurrence can fail
        assert isinstance(r, RemovalCertificate) == (free == g)
        if isinstance(r, RemovalCertificate):
            q = remove_arrows(p, r)
            G = assemble_algebra(q)
            assert G.dim == path_algebra_dim(q, len(p.quiver.vertices) + 1)
            assert trivial_extension_check(A, G, r).passed
