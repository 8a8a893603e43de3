import numpy as np
import pytest

from hurwitz.groups import make_group
from hurwitz.nielsen import NielsenSpec, enumerate_tuples
from hurwitz.braid import all_orbits, orbit
from hurwitz.reduced import (reduce_orbit, gamma_actions, cusps,
                             reduced_genus, sh_incidence, moduli_checks,
                             wohlfahrt, _sh2, _q1q3inv)

A4 = {"family": "affine2", "ell": 2, "k": 0, "order": 3}
D5 = {"family": "dihedral", "m": 5}


def spec_of(gspec, labels, eq="inner", T=None):
    return NielsenSpec(make_group(gspec), labels, eq, T)


@pytest.fixture(scope="module")
def a4_spec():
    return spec_of(A4, ("C+", "C+", "C-", "C-"))


@pytest.fixture(scope="module")
def a4_orbits(a4_spec):
    return all_orbits(a4_spec)


@pytest.fixture(scope="module")
def a4_reduced(a4_orbits):
    return {o.size: reduce_orbit(o) for o in a4_orbits}


def test_qq_is_klein_four(a4_spec):
    forms = enumerate_tuples(a4_spec)
    for t in forms:
        a = _sh2(a4_spec, t)
        b = _q1q3inv(a4_spec, t)
        assert _sh2(a4_spec, a) == t
        assert _q1q3inv(a4_spec, b) == t
        assert _sh2(a4_spec, b) == _q1q3inv(a4_spec, a)


def test_reduce_needs_r4():
    spec = spec_of({"family": "alternating", "n": 5}, ("5+", "5-", "3"))
    o = all_orbits(spec)[0]
    with pytest.raises(ValueError):
        reduce_orbit(o)


def test_a4_reduced_degrees(a4_reduced):
    assert a4_reduced[18].degree == 9
    assert a4_reduced[12].degree == 6


def test_qq_orbits_partition(a4_reduced):
    for rc in a4_reduced.values():
        total = sum(len(m) for m in rc.qq_orbits.values())
        assert total == rc.orbit.size
        for rep, members in rc.qq_orbits.items():
            assert rep == min(members)
            for t in members:
                assert rc.rep_of(t) == rep


def test_gamma_actions_are_bijections(a4_reduced):
    for rc in a4_reduced.values():
        for g in gamma_actions(rc):
            assert sorted(g.values()) == sorted(rc.reps)


def test_a4_cusp_widths(a4_reduced):
    w9 = sorted(c.width for c in cusps(a4_reduced[18]))
    w6 = sorted(c.width for c in cusps(a4_reduced[12]))
    assert w9 == [2, 3, 4]
    assert w6 == [1, 1, 4]


def test_cusp_internal_relations(a4_reduced):
    for rc in a4_reduced.values():
        for c in cusps(rc):
            assert c.width * c.f == c.v
            assert c.raw_v % c.v == 0
            assert c.u in (1, 2, 3, 4)
            assert sum(1 for _ in c.reps) == c.width


def test_a4_reduced_genus(a4_reduced):
    assert reduced_genus(a4_reduced[18]) == 0
    assert reduced_genus(a4_reduced[12]) == 0


def test_width_multiset_seed_invariance(a4_spec, a4_orbits):
    # rebuild each orbit from a different member; cusp data must agree
    for o in a4_orbits:
        other = sorted(o.members)[-1]
        o2 = orbit(a4_spec, min(o.members))
        assert other in o2.members
        rc1, rc2 = reduce_orbit(o), reduce_orbit(o2)
        assert sorted(c.width for c in cusps(rc1)) == \
            sorted(c.width for c in cusps(rc2))


def test_sh_incidence_a4(a4_reduced):
    for rc in a4_reduced.values():
        M, labels = sh_incidence(rc)
        cl = cusps(rc)
        assert len(labels) == len(cl)
        assert (M == M.T).all()
        assert (M.sum(axis=1) == np.array([c.width for c in cl])).all()
        assert M.sum() == rc.degree


def test_moduli_checks_a4(a4_spec, a4_reduced):
    for rc in a4_reduced.values():
        rep = moduli_checks(a4_spec, rc)
        assert rep["fine_inner"] is True       # trivial center
        assert set(rep["elliptic_fixed_points"]) == {"gamma0", "gamma1"}
        assert isinstance(rep["bfine"], bool)
        assert rep["bfine"] == (rep["qq_free"]
                                and rep["elliptic_fixed_points"]["gamma0"] == 0
                                and rep["elliptic_fixed_points"]["gamma1"] == 0)


def test_wohlfahrt_a4(a4_reduced):
    w9 = wohlfahrt(a4_reduced[18])
    assert w9["N"] == 12 and w9["psl2"] == 576
    assert w9["verdict"] == "not a modular curve"
    assert w9["sylow_cycle_type"] == [3, 6]
    assert w9["sylow_cycle_type"] != w9["widths"]

    w6 = wohlfahrt(a4_reduced[12])
    assert w6["N"] == 4 and w6["psl2"] == 24
    assert w6["verdict"] == "inconclusive"


def test_wohlfahrt_dihedral_modular_case():
    # the genuine modular curve passes the same Sylow test
    spec = spec_of(D5, ("2",) * 4)
    rcs = [reduce_orbit(o) for o in all_orbits(spec)]
    degs = sorted(rc.degree for rc in rcs)
    assert 12 in degs
    rc = next(rc for rc in rcs if rc.degree == 12)
    w = wohlfahrt(rc)
    assert w["N"] == 5
    assert w["widths"] == [1, 1, 5, 5]
    assert w["verdict"] == "inconclusive"
    assert w.get("sylow_cycle_type") == w["widths"]
