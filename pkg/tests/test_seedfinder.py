"""Thurston's chain and the all-roots pipeline."""

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import ev, ghl_match, integer_squarefree, poly_from_roots
from padicroots.errors import NotSquarefree
from padicroots.padic import PadicContext, vp_int
from padicroots.poly import Poly
from padicroots.seedfinder import (
    SeedKind,
    find_all_roots,
    recover_seed,
    thurston_search,
    thurston_transform,
)
from padicroots.solvers import Method, solve


def P(p, cs, prec=20):
    return Poly.from_ints(PadicContext(p, prec), cs)


def test_transform_examples():
    assert thurston_transform(P(5, [0, -1, 1]), 0).exact == (0, -1, 5)
    # x^2 - 7x + 6 at 1: f(1 + 5x) = 25x^2 - 25x, content 2
    assert thurston_transform(P(5, [6, -7, 1]), 1).exact == (0, -1, 1)
    with pytest.raises(ValueError):
        thurston_transform(P(5, [6, -7, 1]), 2)


def test_search_on_double_residue_root():
    res = thurston_search(P(5, [6, -7, 1]), 1)
    assert [r.kind for r in res] == [SeedKind.ADMISSIBLE, SeedKind.ADMISSIBLE]
    assert [(r.digits, r.residue) for r in res] == [((1,), 0), ((1,), 1)]


def test_search_dead_end_and_depth():
    # x^2 - 7 has no root in Z_7: the chain below 0 ends with 7x^2 - 1
    res = thurston_search(P(7, [-7, 0, 1]), 0)
    assert [r.kind for r in res] == [SeedKind.DEAD_END]
    res = thurston_search(P(5, [6, -7, 1]), 1, max_depth=0)
    assert [r.kind for r in res] == [SeedKind.DEPTH_EXCEEDED]


def test_search_requires_squarefree():
    with pytest.raises(NotSquarefree):
        thurston_search(P(7, [-2, 5, -4, 1]), 1)


def test_recover_seed_reassembles():
    f = P(5, [6, -7, 1])
    for res in thurston_search(f, 1):
        F, x1, reassemble = recover_seed(res)
        rec = solve(F, x1, "sjm", 10)
        root = reassemble(rec.gamma)
        assert f.with_context(root.ctx)(root.lift()).valuation() >= 10


def test_recover_seed_rejects_leaves_without_seed():
    res = thurston_search(P(7, [-7, 0, 1]), 0)[0]
    with pytest.raises(ValueError):
        recover_seed(res)


def test_pipeline_examples():
    assert find_all_roots(P(5, [6, -7, 1]), 10).residues() == [1, 6]
    assert find_all_roots(P(7, [-2, 5, -4, 1]), 10).residues() == [1, 2]
    assert find_all_roots(P(7, [1, 0, 1]), 10).residues() == []


def test_close_roots():
    cs = poly_from_roots([1, 15, 155])
    found = find_all_roots(P(7, cs), 12)
    assert found.residues() == [1, 15, 155]
    assert all(len(r.prefix) >= 1 for r in found)


def test_roots_of_unity_in_z7():
    # x^6 - 1 splits completely over Z_7
    found = find_all_roots(P(7, [-1, 0, 0, 0, 0, 0, 1]), 15)
    assert len(found) == 6
    for r in found:
        assert pow(r.root.value, 6, 7 ** 15) == 1


@st.composite
def split_instance(draw):
    p = draw(st.sampled_from([5, 7, 11, 13]))
    roots = draw(st.lists(st.integers(-60, 60), min_size=1, max_size=4, unique=True))
    mults = [draw(st.integers(1, 2)) for _ in roots]
    # optional factor without roots mod p keeps the instance from splitting completely
    extra = draw(st.sampled_from([(1,), "nonres"]))
    if extra == "nonres":
        n = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)
        extra = (-n, 0, 1)
    all_roots = [r for r, m in zip(roots, mults) for _ in range(m)]
    return p, poly_from_roots(all_roots, extra), sorted(roots)


@given(split_instance(), st.sampled_from(list(Method)))
@settings(max_examples=40, deadline=None)
def test_pipeline_finds_exactly_the_integer_roots(inst, method):
    p, cs, roots = inst
    assume(method is Method.NEWTON or p > 3)
    target = 8
    found = find_all_roots(P(p, cs), target, method=method)
    assert not found.depth_exceeded
    assert found.residues() == sorted({r % p ** target for r in roots})


@given(split_instance())
@settings(max_examples=15, deadline=None)
def test_pipeline_matches_bruteforce_ghl_balls(inst):
    p, cs, _ = inst
    assume(p <= 7)
    k = 3
    fs = integer_squarefree(cs)
    found = find_all_roots(P(p, cs), k + 6)
    ghl_match(fs, p, k, [r.root.value for r in found], k + 6)


def test_every_record_certificate_holds():
    for p, cs in ((5, [6, -7, 1]), (7, poly_from_roots([1, 15, 155])), (7, [-2, 5, -4, 1])):
        for rec in find_all_roots(P(p, cs), 10):
            rec.check_certificate()
            seed = rec.seed.value
            # certificate data is relative to the chain polynomial (F_n, a_n)
            assert vp_int(rec.gamma.lift().value - seed, p) > rec.v_fprime_at_root or rec.gamma.value == seed
