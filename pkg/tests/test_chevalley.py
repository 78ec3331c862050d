import random
from fractions import Fraction

import pytest
import sympy

from rcg.chevalley import AlgebraAxiomError, ChevalleyAlgebra, build_algebra, random_twist
from rcg.quiver import all_orientations, linear_quiver, parse_quiver
from rcg.rootsys import add


def _natural_rep(alg):
    """Images of the basis in gl_{n+1}, built only from the simple generators.

    e_i -> E_{i,i+1}, e_{-i} -> -E_{i+1,i} (so that [e, e_-] = -h),
    h_i -> E_ii - E_{i+1,i+1}; other root vectors are fixed by one
    bracket each and the whole table is then checked against matrices.
    """
    rs = alg.system
    n = rs.rank
    N = n + 1

    def E(a, b):
        m = sympy.zeros(N, N)
        m[a, b] = 1
        return m

    rho = {}
    for idx, lab in enumerate(alg.basis):
        if lab.kind == "h":
            i = lab.vertex - 1
            rho[idx] = E(i, i) - E(i + 1, i + 1)
    roots = sorted((lab.root for lab in alg.basis if lab.kind == "e"), key=lambda r: abs(sum(r)))
    for r in roots:
        idx = alg.index_of_root(r)
        if abs(sum(r)) == 1:
            i = [abs(c) for c in r].index(1)
            rho[idx] = E(i, i + 1) if sum(r) > 0 else -E(i + 1, i)
            continue
        sgn = 1 if sum(r) > 0 else -1
        i = next(i for i in range(n) if r[i] and rs.is_root(add(r, tuple(-sgn * int(j == i) for j in range(n)))))
        simple = tuple(sgn * int(j == i) for j in range(n))
        rest = add(r, tuple(-c for c in simple))
        a, b = rho[alg.index_of_root(simple)], rho[alg.index_of_root(rest)]
        rho[idx] = (a * b - b * a) / alg.structure_constant(simple, rest)
    return rho


@pytest.mark.parametrize("text", ["A2: 1>2", "A3: 1>2, 2>3", "A3: 2>1, 2>3", "A4: 2>1, 2>3, 4>3"])
def test_natural_representation_is_a_homomorphism(text):
    alg = build_algebra(parse_quiver(text))
    rho = _natural_rep(alg)
    for a in range(alg.dim):
        for b in range(alg.dim):
            lhs = sympy.zeros(alg.system.rank + 1, alg.system.rank + 1)
            for k, c in alg.bracket_basis(a, b):
                lhs += c * rho[k]
            assert lhs == rho[a] * rho[b] - rho[b] * rho[a], (alg.basis[a], alg.basis[b])


@pytest.mark.parametrize("name", ["A3", "D4"])
def test_axioms_all_orientations_and_twists(name):
    rng = random.Random(11)
    for q in all_orientations(name[0], int(name[1:])):
        ChevalleyAlgebra(q).verify_axioms()
        ChevalleyAlgebra(q, random_twist(q.system, rng)).verify_axioms()


def test_sampled_jacobi_on_e6():
    build_algebra(linear_quiver("E", 6)).verify_axioms(sample=500, seed=3)


def test_bad_cocycle_is_detected():
    alg = ChevalleyAlgebra(linear_quiver("A", 3))
    # flip a single structure constant: Jacobi must notice
    key = next(k for k, t in alg._table.items() if alg.basis[k[0]].kind == "e" and alg.basis[k[1]].kind == "e"
               and alg.basis[k[0]].root == (1, 0, 0) and alg.basis[k[1]].root == (0, 1, 0))
    (idx, c), = alg._table[key]
    alg._table[key] = ((idx, -c),)
    alg._table[(key[1], key[0])] = ((idx, c),)
    with pytest.raises(AlgebraAxiomError):
        alg.verify_axioms()


def test_basis_order_and_cartan_bracket():
    alg = build_algebra(linear_quiver("A", 2))
    heights = [sum(lab.root) if lab.kind == "e" else 0 for lab in alg.basis]
    assert heights == sorted(heights)
    e, f = alg.unit(alg.index_of_root((1, 0))), alg.unit(alg.index_of_root((-1, 0)))
    h = alg.bracket(e, f)
    assert h[alg.index_of_cartan(1)] == Fraction(-1) and sum(abs(x) for x in h) == 1


def test_twist_changes_fingerprint():
    q = linear_quiver("A", 3)
    base = build_algebra(q)
    tw = build_algebra(q, (1, 1, 1, -1, 1, 1))
    assert base.fingerprint() != tw.fingerprint()
    assert base.fingerprint() == build_algebra(q).fingerprint()
