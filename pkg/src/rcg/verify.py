"""Randomized verification suites.

Each case draws its data from ``random.Random(f"{seed}:{suite}:{type}:{index}")``
so a failing case can be replayed on its own with ``--case``.  A case
raises ``CaseFailure`` (or any exception) to report a counterexample.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .chevalley import ChevalleyAlgebra, build_algebra, random_twist
from .group import (
    Letter,
    NotInBigCell,
    eta_root,
    gauss_decompose,
    gen_E,
    gen_h,
    gen_h_multi,
    gen_h_root,
    gen_n,
    gen_n_root,
    h_character,
    root_product,
)
from .positivity.chain import (
    ImageConditionError,
    beta_chain,
    phi_forward,
    phi_inverse,
    repeat_sum,
    sample_region,
)
from .positivity.monoid import braid, canonical_part, decompose_nonneg, flip
from .positivity.signs import sign_move_law, tits_signs, twist_factor
from .positivity.symbolic import region_symbolic
from .positivity.theorems import (
    cell_element,
    converse_check,
    positive_element,
    region_transport,
    simple_product,
    suffix_region,
    verify_flag,
)
from .quiver import Quiver, admissible_order, all_orientations, leftmost_word
from .rootsys import (
    RootSystem,
    add,
    applicable_moves,
    apply_move,
    demazure_product,
    height,
    negate,
    pairing,
    parse_type,
)


class CaseFailure(AssertionError):
    pass


def check(cond: bool, message: str) -> None:
    if not cond:
        raise CaseFailure(message)


# --------------------------------------------------------------------------
# random data
# --------------------------------------------------------------------------

def rand_pos(rng: random.Random, top: int = 9) -> Fraction:
    return Fraction(rng.randint(1, top), rng.randint(1, top))


def rand_nonzero(rng: random.Random) -> Fraction:
    return rand_pos(rng) * rng.choice((1, -1))


def rand_root(rng: random.Random, rs: RootSystem):
    r = rng.choice(rs.positive_roots)
    return r if rng.random() < 0.5 else negate(r)


def rand_quiver(rng: random.Random, letter: str, rank: int) -> Quiver:
    return rng.choice(_orientations(letter, rank))


_OR_CACHE: dict = {}


def _orientations(letter, rank):
    key = (letter, rank)
    if key not in _OR_CACHE:
        _OR_CACHE[key] = list(all_orientations(letter, rank))
    return _OR_CACHE[key]


def rand_algebra(rng: random.Random, letter: str, rank: int) -> ChevalleyAlgebra:
    return build_algebra(rand_quiver(rng, letter, rank))


def x(alg, i, a):
    return gen_E(alg, alg.system.simple(i), a)


def y(alg, i, a):
    return gen_E(alg, negate(alg.system.simple(i)), -a)


# --------------------------------------------------------------------------
# suites
# --------------------------------------------------------------------------

def case_algebra(rng, letter, rank):
    """Chevalley axioms (antisymmetry, Cartan action, Jacobi) for a random
    orientation and a random sign twist."""
    q = rand_quiver(rng, letter, rank)
    alg = ChevalleyAlgebra(q, random_twist(q.system, rng))
    alg.verify_axioms(sample=300, seed=rng.randrange(10**9))
    rs = q.system
    g, d = rand_root(rng, rs), rand_root(rng, rs)
    if rs.is_root(add(g, d)):
        check(alg.structure_constant(g, d) == -alg.structure_constant(d, g), "N is not antisymmetric")
        check(abs(alg.structure_constant(g, d)) == 1, "N is not ±1")


def case_generators(rng, letter, rank):
    """Commutator formula, torus relations, the elementary flip, the H kernel law."""
    alg = rand_algebra(rng, letter, rank)
    rs = alg.system
    n = rs.rank
    # commutator formula for a random pair of non-opposite roots
    pairs = [(g, d) for g in rs.roots for d in rs.roots if g != d and add(g, d) != (0,) * n]
    if pairs:
        g, d = rng.choice(pairs)
        s, t = rand_nonzero(rng), rand_nonzero(rng)
        lhs = gen_E(alg, g, s) * gen_E(alg, d, t)
        rhs = gen_E(alg, d, t) * gen_E(alg, g, s)
        if rs.is_root(add(g, d)):
            rhs = rhs * gen_E(alg, add(g, d), alg.structure_constant(g, d) * s * t)
        check(lhs == rhs, f"commutator formula fails for {g}, {d}")
    # additivity and the torus
    i, j = rng.randint(1, n), rng.randint(1, n)
    a, b = rand_nonzero(rng), rand_nonzero(rng)
    check(x(alg, i, a) * x(alg, i, b) == x(alg, i, a + b), "x_i(a)x_i(b) ≠ x_i(a+b)")
    check(y(alg, i, a) * y(alg, i, b) == y(alg, i, a + b), "y_i(a)y_i(b) ≠ y_i(a+b)")
    check(gen_h(alg, i, a) * gen_h(alg, i, b) == gen_h(alg, i, a * b), "h_i(a)h_i(b) ≠ h_i(ab)")
    check(gen_h(alg, i, a) * gen_h(alg, j, b) == gen_h(alg, j, b) * gen_h(alg, i, a), "h's do not commute")
    c = rs.cartan[j - 1][i - 1]
    check(
        gen_h(alg, j, a) * x(alg, i, b) == x(alg, i, a**c * b) * gen_h(alg, j, a),
        "h_j x_i ≠ x_i h_j with the torus weight",
    )
    check(
        gen_h(alg, j, a) * y(alg, i, b) == y(alg, i, a ** (-c) * b) * gen_h(alg, j, a),
        "h_j y_i ≠ y_i h_j with the torus weight",
    )
    if i != j:
        check(x(alg, i, a) * y(alg, j, b) == y(alg, j, b) * x(alg, i, a), "x_i and y_j do not commute")
    # the flip x(a) h(b) y(c) = y(c') h(b') x(a') for positive data
    a, b, cc = rand_pos(rng), rand_pos(rng), rand_pos(rng)
    c2, b2, a2 = flip(a, b, cc)
    check(
        x(alg, i, a) * gen_h(alg, i, b) * y(alg, i, cc) == y(alg, i, c2) * gen_h(alg, i, b2) * x(alg, i, a2),
        "flip relation fails",
    )
    # the same flip for an arbitrary root, with the torus of that root
    g = rand_root(rng, rs)
    a, cc = rand_pos(rng), rand_pos(rng)
    d = 1 + a * cc
    check(
        gen_E(alg, g, a) * gen_E(alg, negate(g), -cc)
        == gen_E(alg, negate(g), -cc / d) * gen_h_root(alg, g, d) * gen_E(alg, g, a / d),
        f"E/T flip fails for {g}",
    )
    # kernel of the torus: Π h_i(t_i) = 1  iff  Π_i t_i^{a_ij} = 1 for all j
    ts = [rng.choice((Fraction(1), Fraction(-1), Fraction(-1), rand_nonzero(rng))) for _ in range(n)]
    trivial = gen_h_multi(alg, ts).is_identity()
    check(trivial == all(v == 1 for v in h_character(alg, ts)), f"torus kernel law fails at {ts}")
    if n == 1:
        check(gen_h(alg, 1, -1).is_identity(), "h(-1) is not trivial in rank 1")


def case_conjugation(rng, letter, rank):
    """The six conjugation rules for n_X(t), h_X(t) acting on E_Y, n_Y, h_Y."""
    alg = rand_algebra(rng, letter, rank)
    rs = alg.system
    X, Y = rand_root(rng, rs), rand_root(rng, rs)
    t, s = rand_nonzero(rng), rand_nonzero(rng)
    A = pairing(rs, X, Y)
    eta = eta_root(alg, X, Y).sign
    wY = reflect_root(rs, X, Y)
    nX, hX = gen_n_root(alg, X, t), gen_h_root(alg, X, t)
    nXi, hXi = nX.inv(), hX.inv()
    check(nX * gen_E(alg, Y, s) * nXi == gen_E(alg, wY, eta * t ** (-A) * s), f"n E n⁻¹ fails for {X}, {Y}")
    check(hX * gen_E(alg, Y, s) * hXi == gen_E(alg, Y, t**A * s), f"h E h⁻¹ fails for {X}, {Y}")
    check(nX * gen_n_root(alg, Y, s) * nXi == gen_n_root(alg, wY, eta * t ** (-A) * s), f"n n n⁻¹ fails for {X}, {Y}")
    check(nX * gen_h_root(alg, Y, s) * nXi == gen_h_root(alg, wY, s), f"n h n⁻¹ fails for {X}, {Y}")
    check(hX * gen_h_root(alg, Y, s) * hXi == gen_h_root(alg, Y, s), f"h h h⁻¹ fails for {X}, {Y}")
    check(hX * gen_n_root(alg, Y, s) * hXi == gen_n_root(alg, Y, t**A * s), f"h n h⁻¹ fails for {X}, {Y}")


def reflect_root(rs, x, y):
    p = pairing(rs, x, y)
    return tuple(b - p * a for a, b in zip(x, y))


def case_braid(rng, letter, rank):
    """Braid and commutation relations for x, y and n, plus the h-twisted flip."""
    alg = rand_algebra(rng, letter, rank)
    rs = alg.system
    n = rs.rank
    i = rng.randint(1, n)
    nbrs = rs.neighbors(i)
    far = [j for j in range(1, n + 1) if j != i and j not in nbrs]
    a, b, c = rand_pos(rng), rand_pos(rng), rand_pos(rng)
    for u in (x, y):
        if nbrs:
            j = rng.choice(nbrs)
            lhs = u(alg, i, a) * u(alg, j, b) * u(alg, i, c)
            a2, b2, c2 = braid(a, b, c)
            check(lhs == u(alg, j, a2) * u(alg, i, b2) * u(alg, j, c2), f"{u.__name__} braid fails at {i},{j}")
        if far:
            j = rng.choice(far)
            check(u(alg, i, a) * u(alg, j, b) == u(alg, j, b) * u(alg, i, a), f"{u.__name__} commutation fails")
    if nbrs:
        j = rng.choice(nbrs)
        ni, nj = gen_n(alg, i), gen_n(alg, j)
        check(ni * nj * ni == nj * ni * nj, f"n braid fails at {i},{j}")
    if far:
        j = rng.choice(far)
        check(gen_n(alg, i) * gen_n(alg, j) == gen_n(alg, j) * gen_n(alg, i), "n commutation fails")
    # n_i² = h_i(-1)
    check(gen_n(alg, i) * gen_n(alg, i) == gen_h(alg, i, -1), "n_i² ≠ h_i(-1)")


def _random_moves(rng, rs, word, k):
    seq = []
    for _ in range(k):
        moves = applicable_moves(rs, word)
        if not moves:
            break
        mv = rng.choice(moves)
        seq.append(mv)
        word = apply_move(rs, word, mv)
    return seq


def case_signs(rng, letter, rank):
    """Move laws for Tits signs along a random move sequence of length <= 5."""
    q = rand_quiver(rng, letter, rank)
    alg = build_algebra(q)
    rs = alg.system
    w = leftmost_word(q)
    start = tits_signs(alg, w)
    check(not start.eps or start.eps[0] == 1, "ε_1 ≠ 1")
    cur = w
    path = []
    for mv in _random_moves(rng, rs, w, rng.randint(1, 5)):
        sign_move_law(alg, cur, mv)
        path.append((cur, mv))
        cur = apply_move(rs, cur, mv)
    # undo the path: moves are involutions on the touched letters
    for prev, mv in reversed(path):
        cur = apply_move(rs, cur, mv)
        check(cur == prev, "move is not an involution")
    check(tits_signs(alg, cur).eps == start.eps, "signs change along a closed move sequence")


def case_phi(rng, letter, rank):
    """Round trips of φ_k, the image condition and locality of the chain."""
    q = rand_quiver(rng, letter, rank)
    alg = build_algebra(q)
    rs = alg.system
    w = leftmost_word(q)
    m = len(w)
    eps = tits_signs(alg, w).eps
    for k in range(m):
        a = [eps[l] * rand_pos(rng) if l < k else rand_pos(rng) for l in range(m)]
        f = phi_forward(rs, w, k, a, eps)
        check(f[:k] == a[:k], f"φ_{k} moved a slot below {k}")
        check(phi_inverse(rs, w, k, f, eps) == a, f"φ_{k}⁻¹ φ_{k} ≠ id")
        rest = repeat_sum(w, k, f)
        check(rest is None or eps[k] * f[k] > rest, f"image of φ_{k} violates the partial-sum inequality")
        # a point of the image region, built directly
        g = [eps[l] * rand_pos(rng) if l <= k else rand_pos(rng) for l in range(m)]
        rest = repeat_sum(w, k, g)
        if rest is not None:
            g[k] = eps[k] * (rest + rand_pos(rng))
        check(phi_forward(rs, w, k, phi_inverse(rs, w, k, g, eps), eps) == g, f"φ_{k} φ_{k}⁻¹ ≠ id")
        if rest is not None:
            bad = list(g)
            bad[k] = eps[k] * rest
            try:
                phi_inverse(rs, w, k, bad, eps)
            except ImageConditionError:
                pass
            else:
                raise CaseFailure(f"φ_{k}⁻¹ accepted a point outside its domain")
    # locality: a^{(j)}_s depends only on b_j..b_s
    b = sample_region(rs, w, [rand_pos(rng) for _ in range(m)])
    base = beta_chain(rs, w, b)
    j = rng.randrange(m)
    s = rng.randrange(j, m)
    outside = [l for l in range(m) if l < j or l > s]
    if outside:
        l = rng.choice(outside)
        pert = list(b)
        pert[l] = pert[l] * rand_pos(rng, 3)
        other = beta_chain(rs, w, pert)
        if j in other.values:
            check(other.values[j][s] == base.values[j][s], f"a^({j})_{s + 1} depends on b_{l + 1}")


def case_region(rng, letter, rank):
    """Symbolic/numeric agreement, twist independence, independence of the β's."""
    q = rand_quiver(rng, letter, rank)
    alg = build_algebra(q)
    rs = alg.system
    w = leftmost_word(q)
    m = len(w)
    reg = _symbolic(rs, w)
    point = [rand_pos(rng) for _ in range(m)]
    ch = beta_chain(rs, w, point)
    check(reg.contains(point) == ch.member, f"symbolic and numeric verdicts differ at {point}")
    b = sample_region(rs, w, [rand_pos(rng) for _ in range(m)])
    ch = beta_chain(rs, w, b)
    check(ch.member and reg.contains(b), "sampled point is not in the region")
    for k, beta in enumerate(reg.betas):
        check(beta.evaluate(b) == ch.betas[k], f"symbolic β_{k + 1} disagrees with the chain")
    # a random twist of the basis: signs move by the predicted pattern, nothing else does
    tw = build_algebra(q, random_twist(rs, rng))
    s0, s1 = tits_signs(alg, w), tits_signs(tw, w)
    f0, f1 = twist_factor(alg, w), twist_factor(tw, w)
    check(all(a * fa == c * fc for a, fa, c, fc in zip(s0.eps, f0, s1.eps, f1)), "twisted signs off pattern")
    for pt in (point, b):
        plain = beta_chain(rs, w, pt)
        signed = beta_chain(rs, w, pt, s1.eps)
        check(plain.status == signed.status and plain.betas == signed.betas, "twist changed a β value")
        for j, vec in signed.values.items():
            check(tuple(vec[j:]) == tuple(plain.values[j][j:]), f"twist changed a^({j})")
    check(verify_flag(tw, w, b, 1) and verify_flag(tw, w, b, -1), "flag check fails under a twist")


_SYM_CACHE: dict = {}


def _symbolic(rs, w):
    key = (rs.name, w)
    if key not in _SYM_CACHE:
        _SYM_CACHE[key] = region_symbolic(rs, w)
    return _SYM_CACHE[key]


def independence_witness(rs, w, k: int, rng: random.Random, tries: int = 20000):
    """A positive point with β_k < 0 and every other β_j > 0 (k 0-based)."""
    reg = _symbolic(rs, w)
    m = len(w)
    for _ in range(tries):
        pt = [Fraction(rng.randint(1, 30), rng.randint(1, 30)) for _ in range(m)]
        vals = []
        try:
            for beta in reg.betas:
                vals.append(beta.evaluate(pt))
        except ZeroDivisionError:
            continue
        if vals[k] < 0 and all(v > 0 for j, v in enumerate(vals) if j != k):
            return pt
    return None


def case_theorem(rng, letter, rank):
    """Flag checks on both sides, the converse chain, and transport around a σ-cycle."""
    q = rand_quiver(rng, letter, rank)
    alg = build_algebra(q)
    w = leftmost_word(q)
    m = len(w)
    a = [rand_pos(rng) for _ in range(m)]
    b = converse_check(alg, w, a)
    check(verify_flag(alg, w, b, 1), f"flag check (+) fails at {b}")
    check(verify_flag(alg, w, b, -1), f"flag check (-) fails at {b}")
    u = positive_element(alg, w, b, 1)
    cur_q, cur_b = q, b
    for v in admissible_order(q):
        tr = region_transport(alg, cur_q, cur_b, v)
        check(tr.element == u, "transport changed the element")
        cur_q, cur_b = tr.quiver, tr.point
    check(cur_q == q and cur_b == b, "σ-cycle does not return to the starting point")


def case_cells(rng, letter, rank):
    """Gauss decomposition round trips, big-cell probes, suffix regions and cells."""
    alg = rand_algebra(rng, letter, rank)
    rs = alg.system
    pos = sorted(rs.positive_roots, key=lambda r: (height(r), r))
    lower = [(negate(r), rand_nonzero(rng)) for r in pos if rng.random() < 0.7]
    upper = [(r, rand_nonzero(rng)) for r in pos if rng.random() < 0.7]
    ts = [rand_pos(rng) for _ in range(rs.rank)]
    um, h, up = root_product(alg, lower), gen_h_multi(alg, ts), root_product(alg, upper)
    g = um * h * up
    res = gauss_decompose(g)
    check(list(res.lower_coords) == lower and list(res.upper_coords) == upper, "Gauss coordinates differ")
    check(res.h_matrix == h and res.h_character == h_character(alg, ts), "Gauss torus part differs")
    i = rng.randint(1, rs.rank)
    try:
        gauss_decompose(um * h * gen_n(alg, i) * up)
    except NotInBigCell:
        pass
    else:
        raise CaseFailure(f"u⁻ h n_{i} u⁺ was placed in the big cell")
    # suffix regions and the B⁺ factor
    w = leftmost_word(alg.quiver)
    m = len(w)
    t = rng.randint(0, m)
    suffix = w[t:]
    bs = sample_region(rs, suffix, [rand_pos(rng) for _ in suffix]) if suffix else ()
    sr = suffix_region(alg, w, t, bs)
    check(sr.chain.member, "sampled suffix point is not a member")
    ce = cell_element(alg, w, t, bs)
    check(ce.element * ce.b_factor == ce.lower, "cell element does not factor u⁻")
    full = sample_region(rs, w, [rand_pos(rng) for _ in w])
    tail = beta_chain(rs, suffix, full[t:]) if suffix else None
    whole = beta_chain(rs, w, full)
    if tail is not None:
        check(tail.a0 == whole.values[t][t:], "suffix chain disagrees with the full chain")
    # distinct cells never meet
    v1 = tuple(rng.randint(1, rs.rank) for _ in range(rng.randint(1, 6)))
    v2 = tuple(rng.randint(1, rs.rank) for _ in range(rng.randint(1, 6)))
    if demazure_product(rs, v1) != demazure_product(rs, v2):
        p1 = simple_product(alg, v1, [rand_pos(rng) for _ in v1], 1)
        p2 = simple_product(alg, v2, [rand_pos(rng) for _ in v2], 1)
        check(p1 != p2, "elements of distinct cells coincide")


def random_monoid_word(rng, rs, length):
    letters = []
    for _ in range(length):
        kind = rng.choice("xyh")
        i = rng.randint(1, rs.rank)
        p = Fraction(rng.randint(0, 6), rng.randint(1, 4))
        if kind == "x":
            letters.append(Letter("E", root=rs.simple(i), param=p))
        elif kind == "y":
            letters.append(Letter("E", root=negate(rs.simple(i)), param=-p))
        else:
            letters.append(Letter("H", vertex=i, param=p + Fraction(1, 2)))
    return tuple(letters)


def case_monoid(rng, letter, rank):
    """Normal form of random nonnegative words; independence of the reduced word."""
    alg = rand_algebra(rng, letter, rank)
    rs = alg.system
    word = random_monoid_word(rng, rs, rng.randint(0, 16))
    d = decompose_nonneg(alg, word)
    check(d.h_positive, "torus part is not positive")
    for part in (d.minus, d.plus):
        check(all(c > 0 for c in part.coords), "cell coordinates are not positive")
        if part.cell:
            check(beta_chain(rs, part.cell, part.region_point).a0 == part.coords, "region round trip fails")
    # a braid or commutation move does not change the canonical form
    w = leftmost_word(alg.quiver)
    c = [rand_pos(rng) for _ in w]
    moves = applicable_moves(rs, w)
    if not moves:
        return
    mv = rng.choice(moves)
    w2 = apply_move(rs, w, mv)
    c2 = list(c)
    k = mv.position
    if mv.kind == "commutation":
        c2[k], c2[k + 1] = c2[k + 1], c2[k]
    else:
        c2[k : k + 3] = braid(*c[k : k + 3])
    check(simple_product(alg, w, c, 1) == simple_product(alg, w2, c2, 1), "move map changes the element")
    check(canonical_part(rs, w, c) == canonical_part(rs, w2, c2), "canonical form depends on the word")


SUITES: dict[str, Callable] = {
    "algebra": case_algebra,
    "generators": case_generators,
    "conjugation": case_conjugation,
    "braid": case_braid,
    "signs": case_signs,
    "phi": case_phi,
    "region": case_region,
    "theorem": case_theorem,
    "cells": case_cells,
    "monoid": case_monoid,
}

DEFAULT_TYPES = ("A2", "A3", "D4")


@dataclass
class Failure:
    suite: str
    type: str
    index: int
    message: str

    def reproducer(self, seed: int) -> str:
        return f"rcg verify --suite {self.suite} --type {self.type} --seed {seed} --case {self.index}"


@dataclass
class SuiteReport:
    suite: str
    type: str
    cases: int = 0
    seconds: float = 0.0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def case_rng(seed: int, suite: str, type_name: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{type_name}:{index}")


def run_suite(suite: str, type_name: str, cases: int, seed: int, only: int | None = None, stop_on_failure: bool = True) -> SuiteReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    letter, rank = parse_type(type_name)
    fn = SUITES[suite]
    name = f"{letter}{rank}"
    report = SuiteReport(suite, name)
    t0 = time.perf_counter()
    indices = [only] if only is not None else range(cases)
    for idx in indices:
        rng = case_rng(seed, suite, name, idx)
        report.cases += 1
        try:
            fn(rng, letter, rank)
        except Exception as exc:  # any exception is a counterexample
            report.failures.append(Failure(suite, name, idx, f"{type(exc).__name__}: {exc}"))
            if stop_on_failure:
                break
    report.seconds = time.perf_counter() - t0
    return report
