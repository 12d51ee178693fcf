from fractions import Fraction

import pytest

import reebcount as rc


def worked_path():
    return rc.PathModel(elliptic=[Fraction(41, 100)])


def test_index_examples():
    assert rc.cz_index(rc.PathModel(elliptic=[Fraction(5, 2)]), 1) == 5
    assert rc.cz_index(rc.PathModel(elliptic=[Fraction(-3, 10)]), 1) == -1
    assert rc.cz_index(rc.PathModel(hyperbolic=[2], nondeg_bound=3), 3) == 6
    assert rc.mean_index(rc.PathModel(loop_maslov=1, elliptic=[Fraction(47, 100)]), 1) == Fraction(147, 50)


def test_rationals_must_be_exact():
    with pytest.raises(TypeError):
        rc.PathModel(elliptic=[0.41])


def test_degenerate_iterate_is_reported():
    with pytest.raises(rc.DegenerateIterate):
        rc.PathModel(elliptic=[Fraction(1, 3)], nondeg_bound=3)
    assert issubclass(rc.DegenerateIterate, rc.ReebError)


def test_worked_jump():
    params = rc.JumpParams(eta=Fraction(1, 4), ell0=1, divisor=1)
    cert = rc.JumpCertificate(4, [5], 78, [95], params)
    assert rc.verify_jump([worked_path()], cert).passed
    found = rc.find_common_jump([worked_path()], params)
    assert (found.d_plus, found.k_plus) == (4, [5])
    assert rc.verify_jump([worked_path()], found).passed
    bad = rc.verify_jump([worked_path()], rc.JumpCertificate(5, [5], 78, [95], params))
    assert not bad.passed
    assert bad.first_failure.startswith("(i)")
    assert any("l=1" in c.counterexample for c in bad.checks)


def test_search_exhausted():
    with pytest.raises(rc.SearchExhausted):
        rc.find_common_jump([worked_path()], rc.JumpParams(eta=Fraction(1, 4), search_bound=4))


def test_homology():
    cp2 = rc.complex_projective(2)
    assert rc.hc_rank(cp2, 4) == 1 and rc.hc_rank(cp2, 3) == 0
    assert rc.mean_euler_char(cp2) == Fraction(1, 2)
    assert rc.r_bound(cp2) == 3 and rc.r_nonhyp_bound(cp2) == 2
    assert rc.deg_lower_bound(3, 3) == 2
    names = {e["name"] for e in rc.cross_catalog(3)}
    assert "S*CaP^2" in names


def test_ellipsoid_certify():
    system = rc.ellipsoid_system(rc.near_resonant_weights(1, 1))
    res = rc.resonance_check(system)
    assert res["passed"] and res["lhs"] == Fraction(-1, 2)
    report = rc.certify(system)
    assert report["verdict"] == "CONSISTENT"
    missing = system.without(system.labels[-1])
    assert rc.certify(missing)["verdict"] == "REFUTED"
    again = rc.SystemModel.from_json(system.to_json())
    assert again.labels == system.labels
    with pytest.raises(rc.InvalidInput):
        rc.ellipsoid_system([Fraction(1), Fraction(1)])


def test_cli_entry():
    code, out, _ = rc.run_cli(["bound", "--deg", "-n", "3", "-q", "3"])
    assert (code, out) == (0, "2\n")
    code, out, _ = rc.run_cli(["catalog"])
    assert code == 0 and out == rc.render_catalog_text()
