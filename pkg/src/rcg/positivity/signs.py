"""Tits signs of a reduced word.

For a word (i_1, ..., i_m) with β-roots β_k = s_{i_1}⋯s_{i_{k-1}} α_{i_k}::

    n_{i_{k-1}} ⋯ n_{i_1} e_{β_k}   = ε_k  e_{α_{i_k}}
    n_{i_1} ⋯ n_{i_{k-1}} e_{α_{i_k}} = ε̃_k e_{β_k}

Both are read off the matrices of the n_i acting on root vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..chevalley import ChevalleyAlgebra
from ..group import ConventionError, eta
from ..rootsys import Move, Word, apply_move, applicable_moves, beta_roots, is_reduced, reflect, simple_pairing


@dataclass(frozen=True)
class TitsSigns:
    word: Word
    eps: tuple[int, ...]
    eps_tilde: tuple[int, ...]
    convention: str

    def to_json(self) -> dict:
        return {"eps": list(self.eps), "eps_tilde": list(self.eps_tilde), "convention": self.convention}


def _chain_sign(alg: ChevalleyAlgebra, letters: Sequence[int], start) -> tuple[int, tuple]:
    """Apply n_{letters[0]} first, then n_{letters[1]}, ... to e_start."""
    sign, gamma = 1, tuple(start)
    for i in letters:
        r = eta(alg, i, gamma)
        sign *= r.sign
        gamma = r.image
    return sign, gamma


def _tilde_exponent(rs, word: Sequence[int], k: int) -> int:
    """Σ_{j<k} (α_{i_j}, s_{i_{j+1}} ⋯ s_{i_{k-1}} α_{i_k}), 0-based k."""
    total = 0
    gamma = rs.simple(word[k])
    for j in range(k - 1, -1, -1):
        total += simple_pairing(rs, word[j], gamma)
        gamma = reflect(rs, word[j], gamma)
    return total


def tits_signs(alg: ChevalleyAlgebra, word: Sequence[int]) -> TitsSigns:
    rs = alg.system
    word = rs.check_word(word)
    if not is_reduced(rs, word):
        raise ValueError(f"{word} is not a reduced word")
    betas = beta_roots(rs, word)
    eps, eps_t = [], []
    for k, beta in enumerate(betas):
        target = rs.simple(word[k])
        s, img = _chain_sign(alg, word[:k], beta)
        if img != target:
            raise ConventionError(f"n-chain sends e{list(beta)} to e{list(img)}, not e{list(target)}")
        st, img = _chain_sign(alg, reversed(word[:k]), target)
        if img != beta:
            raise ConventionError(f"n-chain sends e{list(target)} to e{list(img)}, not e{list(beta)}")
        if st != s * (-1) ** (_tilde_exponent(rs, word, k) % 2):
            raise ConventionError(f"ε̃_{k + 1} disagrees with the closed form")
        eps.append(s)
        eps_t.append(st)
    if eps and eps[0] != 1:
        raise ConventionError("ε_1 must be 1")
    return TitsSigns(word, tuple(eps), tuple(eps_t), alg.fingerprint())


def predicted_move(signs: TitsSigns, move: Move) -> tuple[int, ...]:
    """Signs of the moved word as the move laws predict them."""
    e = list(signs.eps)
    k = move.position
    if move.kind == "commutation":
        e[k], e[k + 1] = e[k + 1], e[k]
    else:
        e[k], e[k + 1], e[k + 2] = e[k + 2], -e[k + 1], e[k]
    return tuple(e)


def sign_move_law(alg: ChevalleyAlgebra, word: Sequence[int], move: Move) -> TitsSigns:
    """Recompute the signs after ``move`` and assert the swap/flip law."""
    rs = alg.system
    word = rs.check_word(word)
    if move not in applicable_moves(rs, word):
        raise ValueError(f"{move} is not applicable to {word}")
    before = tits_signs(alg, word)
    after = tits_signs(alg, apply_move(rs, word, move))
    if after.eps != predicted_move(before, move):
        raise ConventionError(
            f"move {move} on {word}: signs {before.eps} -> {after.eps}, expected {predicted_move(before, move)}"
        )
    return after


def twist_factor(alg: ChevalleyAlgebra, word: Sequence[int]) -> tuple[int, ...]:
    """ε'_k / ε_k for the twisted basis e'_γ = ζ(γ) e_γ of ``alg``.

    With z_i = ζ(α_i) one has n'_i = h_i(z_i) n_i, so each step of the
    chain picks up z_i^{(α_i, γ)} on the image γ, and the ζ's telescope to
    ζ(β_k) ζ(α_{i_k}).
    """
    rs = alg.system
    word = rs.check_word(word)
    out = []
    for k, beta in enumerate(beta_roots(rs, word)):
        f = alg.zeta(beta) * alg.zeta(rs.simple(word[k]))
        gamma = beta
        for i in word[:k]:
            gamma = reflect(rs, i, gamma)
            if alg.zeta(rs.simple(i)) < 0 and simple_pairing(rs, i, gamma) % 2:
                f = -f
        out.append(f)
    return tuple(out)
