"""Acceptance suite: one test per shipped criterion, each printing a
PASS/FAIL line. Everything is exact; there are no tolerances anywhere.

Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import random
from functools import lru_cache

from corpus import corpus
from dgsilt import fixtures
from dgsilt.algebra import algebra_from_quiver, h0_dimension, simple_module
from dgsilt.criteria import (
    ext_simples,
    ext_table,
    global_dimension,
    mutation_check,
    nu_obstruction_cycle,
)
from dgsilt.engine import (
    Morphism,
    cone,
    dri_window,
    endomorphism_algebra,
    ext_engine,
    fine_mutation_check,
    is_d_silting,
    minimal_model_quiver,
    mutate,
    projective_summand,
    resolve,
    seed,
    seed_from_quiver,
    serre_twist,
    silt_order_check,
    _hom,
)
from dgsilt.linalg import cohomology_dims

def _record(number: int, name: str, ok: bool):
    print(f"ACCEPTANCE {number} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {number} ({name}) failed"


class check:
    """Prints the criterion verdict even when an assertion inside fails."""

    def __init__(self, number, name):
        self.number = number
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        _record(self.number, self.name, exc_type is None)
        return False


@lru_cache(maxsize=1)
def _corpus():
    return corpus(100)


def test_criterion_1_rel_example():
    with check(1, "three-vertex relation example"):
        q = fixtures.q_rel()
        assert global_dimension(q) == 2
        admissible = {v.id for v in q.vertices
                      if mutation_check(q, v, 2).admissible}
        assert admissible == {"1", "2"}


def test_criterion_2_tilde_a_example():
    with check(2, "twisted polynomial example"):
        q = fixtures.q_tilde_a()
        admissible = {v.id for v in q.vertices
                      if mutation_check(q, v, 2).admissible}
        assert admissible == {"0", "1"}
        a = algebra_from_quiver(q)
        assert [h0_dimension(a, "0", j) for j in ("0", "1", "2", "3")] == [1, 2, 4, 6]


def test_criterion_3_counterexample_reproduction():
    with check(3, "mutated quiver arrow counts"):
        s = seed_from_quiver(fixtures.q_tilde_a())
        for vertex, expected_fixture in (("0", "b0"), ("1", "b1")):
            m = mutate(s, vertex)
            e = endomorphism_algebra(m)
            got = minimal_model_quiver(e, 2).arrow_counts()
            expected = ext_table(fixtures.load(expected_fixture), 2).arrow_counts()
            assert got == expected, (vertex, got, expected)


def test_criterion_4_oracle_equivalence():
    with check(4, "arrow counting vs engine on random corpus"):
        qs = _corpus()
        assert len(qs) >= 100
        for q in qs:
            a = algebra_from_quiver(q)
            for i in q.vertices:
                for j in q.vertices:
                    for n in range(0, 5):
                        assert ext_engine(a, i.id, j.id, n) == ext_simples(q, i, j, n)


def test_criterion_5_mutation_raises_by_one():
    with check(5, "mutation raises siltingness by at most one"):
        for q in _corpus():
            a = algebra_from_quiver(q)
            s = seed(a)
            d = max(global_dimension(q), 1)
            for i in q.vertices:
                m = mutate(s, i)
                assert is_d_silting(m, d + 1), (q, i.id)
                at_d = is_d_silting(m, d)
                verdict = mutation_check(q, i, d)
                fine = fine_mutation_check(s, i, d)
                assert at_d == fine, (q, i.id)
                assert verdict.admissible == at_d, (q, i.id)


def _random_pool(a, rng, extra=6):
    pool = [projective_summand(a, v) for v in a.vertices]
    pool += [projective_summand(a, v, rng.randrange(-1, 2)) for v in a.vertices]
    for v in a.vertices:
        pool.append(resolve(simple_module(a, v), a).module)
    out = list(pool)
    for _ in range(extra):
        x, y = rng.choice(pool), rng.choice(pool)
        h = _hom(x, y)
        zs = h.cocycle_vecs(0)
        if not zs:
            continue
        flat = {}
        for z in zs:
            c = rng.randrange(-2, 3)
            for k, w in z.items():
                flat[k] = flat.get(k, 0) + c * w
        f = h.flat_to_morphism({k: c for k, c in flat.items() if c}, 0)
        out.append(cone(Morphism(x, y, 0, f.entries)))
    return out


def test_criterion_6_serre_duality():
    with check(6, "Serre duality dimension-wise"):
        rng = random.Random(17)
        for name in ("rel", "a2", "tilde_a"):
            a = algebra_from_quiver(fixtures.load(name))
            pool = _random_pool(a, rng)
            pairs = 0
            while pairs < 50:
                x, y = rng.choice(pool), rng.choice(pool)
                lhs = cohomology_dims(_hom(x, y).chain_spaces())
                rhs = cohomology_dims(_hom(y, serre_twist(x)).chain_spaces())
                for n in set(lhs) | {-d for d in rhs}:
                    assert lhs.get(n, 0) == rhs.get(-n, 0), (name, n)
                pairs += 1


def test_criterion_7_representation_infinite_window():
    with check(7, "representation-infinite window"):
        st = seed_from_quiver(fixtures.q_tilde_a())
        assert dri_window(st, 2, 3).ok
        assert dri_window(mutate(st, "0"), 2, 2).ok
        sr = seed_from_quiver(fixtures.q_rel())
        assert not dri_window(sr, 2, 1).ok


def test_criterion_8_nu_finiteness_obstruction():
    with check(8, "degree -1 cycle obstruction"):
        cyc = nu_obstruction_cycle(fixtures.q_b0(), 2)
        assert cyc is not None
        assert [a.id for a in cyc] == ["loop2"]
        assert all(a.degree == -1 for a in cyc)
        assert nu_obstruction_cycle(fixtures.q_tilde_a(), 2) is None


def test_criterion_9_order_axioms():
    with check(9, "silting order axioms"):
        for name in ("rel", "a2", "tilde_a", "b0", "b1"):
            q = fixtures.load(name)
            try:
                s = seed_from_quiver(q)
            except Exception:
                continue  # cyclic fixtures have no engine seed
            assert silt_order_check(s, s)
        for name in ("rel", "a2"):
            q = fixtures.load(name)
            s = seed_from_quiver(q)
            d = max(global_dimension(q), 1)
            for v in q.vertices:
                if not mutation_check(q, v, d).admissible:
                    continue
                m = mutate(s, v)
                assert silt_order_check(s, m), (name, v.id)
                assert not silt_order_check(m, s), (name, v.id)
