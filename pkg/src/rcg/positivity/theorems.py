"""Root-ordered products over a region and their constructive checks.

For a reduced word of w0 with β-roots β_k and Tits signs ε, ε̃, a region
point b gives

    u⁺(b) = Π_k E(β_k, ε_k b_k),     u⁻(b) = Π_k E(-β_k, -ε̃_k b_k).

The flag check: with a = a^{(0)} from the inverse chain,

    (Π E(-α_{i_k}, -a_k))⁻¹ · u⁺(b) · n_{i_1}⁻¹⋯n_{i_m}⁻¹  ∈ B⁺
    (Π E( α_{i_k},  a_k))⁻¹ · u⁻(b) · n_{i_1}⋯n_{i_m}      ∈ B⁻

which says u⁺(b) (resp. u⁻(b)) lies in U⁻_{>0} n̂ B⁺ (resp. U⁺_{>0} ñ B⁻),
i.e. is the totally positive element with those flag coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..chevalley import ChevalleyAlgebra
from ..exact import as_rational
from ..group import ConventionError, GroupElement, collect_reorder, identity, in_borel, n_word, root_product
from ..quiver import Quiver, admissible_order, leftmost_word, sigma
from ..rootsys import Word, beta_roots, is_reduced, negate
from .chain import RegionChain, beta_chain
from .signs import TitsSigns, _chain_sign, tits_signs


class RegionError(ValueError):
    """The point is not in the region."""


class TheoremViolation(RuntimeError):
    """A check that the positivity theorems guarantee has failed."""


def _member_chain(alg: ChevalleyAlgebra, word: Sequence[int], b: Sequence) -> RegionChain:
    chain = beta_chain(alg.system, word, b)
    if not chain.member:
        raise RegionError(f"{tuple(format(x) for x in b)} is not in the region ({chain.status} at β_{chain.index})")
    return chain


def positive_element(alg: ChevalleyAlgebra, word: Sequence[int], b: Sequence, side: int = 1, signs: TitsSigns | None = None) -> GroupElement:
    rs = alg.system
    word = rs.check_word(word)
    _member_chain(alg, word, b)
    signs = signs or tits_signs(alg, word)
    betas = beta_roots(rs, word)
    b = [as_rational(x) for x in b]
    if side > 0:
        return root_product(alg, [(r, e * x) for r, e, x in zip(betas, signs.eps, b)])
    return root_product(alg, [(negate(r), -e * x) for r, e, x in zip(betas, signs.eps_tilde, b)])


def simple_product(alg: ChevalleyAlgebra, word: Sequence[int], a: Sequence, side: int) -> GroupElement:
    """Π_k E(±α_{i_k}, ±a_k): x_{i_1}(a_1)⋯ or y_{i_1}(a_1)⋯."""
    rs = alg.system
    if side > 0:
        return root_product(alg, [(rs.simple(i), x) for i, x in zip(word, a)])
    return root_product(alg, [(negate(rs.simple(i)), -as_rational(x)) for i, x in zip(word, a)])


def verify_flag(alg: ChevalleyAlgebra, word: Sequence[int], b: Sequence, side: int = 1) -> bool:
    rs = alg.system
    word = rs.check_word(word)
    a0 = _member_chain(alg, word, b).a0
    u = positive_element(alg, word, b, side)
    if side > 0:
        probe = simple_product(alg, word, a0, -1).inv() * u * n_word(alg, word, inverse=True)
        return in_borel(probe, 1)
    probe = simple_product(alg, word, a0, 1).inv() * u * n_word(alg, word)
    return in_borel(probe, -1)


def converse_check(alg: ChevalleyAlgebra, word: Sequence[int], a: Sequence) -> tuple[Fraction, ...]:
    """Forward chain from a ∈ ℝ₊^m: signs must be ε and b must be a member
    whose flag check holds.  Returns b."""
    from .chain import forward_chain

    rs = alg.system
    signs = tits_signs(alg, word)
    c = forward_chain(rs, word, a, signs.eps)
    for k, (x, e) in enumerate(zip(c, signs.eps)):
        if x * e <= 0:
            raise TheoremViolation(f"slot {k + 1} has sign {'+' if x > 0 else '-'}, ε_{k + 1} = {e}")
    b = tuple(e * x for e, x in zip(signs.eps, c))
    chain = beta_chain(rs, word, b)
    if not chain.member or list(chain.a0) != [as_rational(x) for x in a]:
        raise TheoremViolation(f"forward image {b} is not a member with a^(0) = a")
    return b


# --------------------------------------------------------------------------
# transport along a source reflection
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Transport:
    quiver: Quiver
    word: Word
    point: tuple[Fraction, ...]
    element: GroupElement


def region_transport(alg: ChevalleyAlgebra, q: Quiver, b: Sequence, source: int | None = None) -> Transport:
    """Map b ∈ Ω_q to the point of Ω_{σ(q)} with the same u⁺.

    The group (Φ⁺, B⁺ and the structure constants of ``alg``) stays fixed;
    only the reduced word changes, to the leftmost word of the reflected
    quiver, and u⁺ is recollected in its β-order.
    """
    rs = alg.system
    word = leftmost_word(q)
    u = positive_element(alg, word, b, 1)
    if source is None:
        source = admissible_order(q)[0]
    if not q.is_source(source):
        raise ValueError(f"vertex {source} is not a source")
    q2 = sigma(q, source) if rs.rank > 1 else q
    word2 = leftmost_word(q2)
    signs = tits_signs(alg, word)
    signs2 = tits_signs(alg, word2)
    betas, betas2 = beta_roots(rs, word), beta_roots(rs, word2)
    factors = [(r, e * as_rational(x)) for r, e, x in zip(betas, signs.eps, b)]
    found = dict(collect_reorder(alg, factors, betas2))
    coords = [found.get(r, Fraction(0)) for r in betas2]
    for k, (c, e) in enumerate(zip(coords, signs2.eps)):
        if c * e <= 0:
            raise TheoremViolation(
                f"coordinate {k + 1} of the recollected element is {c}, expected sign {e}"
            )
    b2 = tuple(e * c for e, c in zip(signs2.eps, coords))
    if not beta_chain(rs, word2, b2).member:
        raise TheoremViolation(f"transported point {b2} is not in the region of {word2}")
    if root_product(alg, zip(betas2, coords)) != u:
        raise ConventionError("recollection changed the element")
    return Transport(q2, word2, b2, u)


# --------------------------------------------------------------------------
# suffix regions and cells
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SuffixRegion:
    word: Word
    t: int
    chain: RegionChain
    eps_bar: tuple[int, ...]
    delta: tuple[int, ...]

    @property
    def suffix(self) -> Word:
        return self.word[self.t :]


def suffix_region(alg: ChevalleyAlgebra, word: Sequence[int], t: int, b_suffix: Sequence) -> SuffixRegion:
    """Membership of b_suffix in the region of (i_{t+1}, ..., i_m).

    With n̄ = n_{i_1}⋯n_{i_t}, each full-word sign splits as ε_k = δ_k ε̄_k,
    where n_{i_t}⋯n_{i_1} e_{β_k} = δ_k e_{β'_k} and ε̄ are the signs of the
    suffix word itself.
    """
    rs = alg.system
    word = rs.check_word(word)
    if not is_reduced(rs, word):
        raise ValueError(f"{word} is not a reduced word")
    m = len(word)
    if not 0 <= t <= m:
        raise ValueError(f"prefix length {t} out of range 0..{m}")
    suffix = word[t:]
    if len(b_suffix) != m - t:
        raise ValueError(f"suffix point needs {m - t} coordinates")
    full = tits_signs(alg, word)
    bar = tits_signs(alg, suffix) if suffix else TitsSigns((), (), (), full.convention)
    betas = beta_roots(rs, word)
    rel = beta_roots(rs, suffix)
    delta = []
    for k in range(t, m):
        s, img = _chain_sign(alg, word[:t], betas[k])
        if img != rel[k - t]:
            raise ConventionError(f"n̄⁻¹ sends β_{k + 1} to {img}, not to {rel[k - t]}")
        if full.eps[k] != s * bar.eps[k - t]:
            raise ConventionError(f"ε_{k + 1} ≠ δ_{k + 1} ε̄_{k + 1}")
        delta.append(s)
    chain = beta_chain(rs, suffix, b_suffix)
    return SuffixRegion(word, t, chain, bar.eps, tuple(delta))


@dataclass(frozen=True)
class CellElement:
    element: GroupElement
    b_factor: GroupElement
    lower: GroupElement


def cell_element(alg: ChevalleyAlgebra, word: Sequence[int], t: int, b_suffix: Sequence) -> CellElement:
    """u⁻ = Π_{k>t} E(-α_{i_k}, -a_k) equals element · b with b ∈ B⁺, where
    element = Π_{k>t} E(β'_k, ε̄_k b_k) · n_{i_{t+1}}⁻¹⋯n_{i_m}⁻¹."""
    rs = alg.system
    sr = suffix_region(alg, word, t, b_suffix)
    if not sr.chain.member:
        raise RegionError(f"suffix point is not in the region ({sr.chain.status} at β_{sr.chain.index})")
    suffix = sr.suffix
    if not suffix:
        one = identity(alg)
        return CellElement(one, one, one)
    rel = beta_roots(rs, suffix)
    b = [as_rational(x) for x in b_suffix]
    element = root_product(alg, [(r, e * x) for r, e, x in zip(rel, sr.eps_bar, b)]) * n_word(alg, suffix, inverse=True)
    lower = simple_product(alg, suffix, sr.chain.a0, -1)
    bf = element.inv() * lower
    if not in_borel(bf, 1):
        raise TheoremViolation(f"the factor for {tuple(b)} on {suffix} is not in B⁺")
    if element * bf != lower:
        raise ConventionError("element · b_factor does not reconstruct u⁻")
    return CellElement(element, bf, lower)
