"""The φ_k coordinate changes, the β chain and region membership.

Slots are 0-based.  φ_k acts on a vector whose slots < k carry signs ε_l
and whose slots >= k are positive.  With P the running sum

    P = a_k + Σ_{k < s < l, i_s = i_k} a_s

φ_k sends a_k to ε_k/a_k, a_l to a_l P^{-A(i_k, i_l)} for a different letter
i_l, and a_l to a_l / (P (P + a_l)) for a repeat of i_k.  The inverse runs
the same recursion on Q = 1/P, which starts at ε_k a'_k and drops by a'_l at
each repeat; its last value is the β function of slot k.

Everything here is generic over ``Fraction`` and ``AtomFraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..exact import as_rational, format_rational
from ..rootsys import RootSystem, Word, is_reduced


class ImageConditionError(ValueError):
    """A partial sum of the inverse recursion is not positive."""

    def __init__(self, slot: int, upto: int, value):
        super().__init__(
            f"partial sum for slot {slot + 1} up to slot {upto + 1} is {value}, not positive"
        )
        self.slot = slot
        self.upto = upto
        self.value = value


def _signs(eps, m):
    return (1,) * m if eps is None else tuple(eps)


def _check_positive(slot: int, upto: int, x):
    if x <= 0:
        raise ImageConditionError(slot, upto, x)
    return x


def phi_forward(rs: RootSystem, word: Sequence[int], k: int, a: Sequence, eps=None) -> list:
    m = len(word)
    eps = _signs(eps, m)
    if not 0 <= k < m:
        raise IndexError(f"slot {k} out of range for a word of length {m}")
    if isinstance(a[k], Fraction) or isinstance(a[k], int):
        for l in range(k, m):
            if a[l] <= 0:
                raise ValueError(f"φ_{k}: slot {l + 1} must be positive, got {a[l]}")
    c = rs.cartan
    i = word[k]
    out = list(a)
    out[k] = eps[k] / a[k]
    p = a[k]
    for l in range(k + 1, m):
        if word[l] == i:
            out[l] = a[l] / (p * (p + a[l]))
            p = p + a[l]
        else:
            e = -c[i - 1][word[l] - 1]
            out[l] = a[l] * p**e if e else a[l]
    return out


def phi_inverse(
    rs: RootSystem,
    word: Sequence[int],
    k: int,
    a: Sequence,
    eps=None,
    positive: Callable | None = None,
) -> list:
    """Inverse of φ_k.  ``positive(slot, upto, x)`` certifies each partial sum."""
    m = len(word)
    eps = _signs(eps, m)
    if positive is None:
        positive = _check_positive
    c = rs.cartan
    i = word[k]
    out = list(a)
    q = positive(k, k, eps[k] * a[k])
    out[k] = eps[k] / a[k]
    for l in range(k + 1, m):
        if word[l] == i:
            nxt = positive(k, l, q - a[l])
            out[l] = a[l] / (q * nxt)
            q = nxt
        else:
            e = -c[i - 1][word[l] - 1]
            out[l] = a[l] * q**e if e else a[l]
    return out


def repeat_sum(word: Sequence[int], k: int, a: Sequence):
    """Σ_{s >= k+2, i_s = i_k} a_s (None when the sum is empty)."""
    total = None
    for s in range(k + 2, len(word)):
        if word[s] == word[k]:
            total = a[s] if total is None else total + a[s]
    return total


@dataclass
class RegionChain:
    """Outcome of the downward chain.

    ``values[j]`` is the vector a^{(j)} (slots >= j inverted); it exists for
    j from m down to the slot where the chain stopped.  ``betas[k]`` is None
    for slots never reached.  ``index`` is 1-based.
    """

    word: Word
    values: dict[int, tuple] = field(default_factory=dict)
    betas: list = field(default_factory=list)
    status: str = "member"
    index: int | None = None

    @property
    def member(self) -> bool:
        return self.status == "member"

    @property
    def a0(self) -> tuple:
        if not self.member:
            raise ValueError("the chain stopped before a^(0)")
        return self.values[0]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "violated_index": self.index,
            "betas": [None if b is None else format_rational(b) for b in self.betas],
        }


def beta_chain(rs: RootSystem, word: Sequence[int], b: Sequence, eps=None) -> RegionChain:
    """Run a^{(m)} = (ε_k b_k) down to a^{(0)}, stopping at the first β <= 0.

    With ``eps`` omitted the chain is unsigned; the signs only ever touch
    the slots below the current one.
    """
    word = rs.check_word(word)
    m = len(word)
    eps = _signs(eps, m)
    b = [as_rational(x) for x in b]
    if len(b) != m:
        raise ValueError(f"point has {len(b)} coordinates, word has {m} letters")
    if any(x <= 0 for x in b):
        raise ValueError("region coordinates must be positive")
    state = [e * x for e, x in zip(eps, b)]
    chain = RegionChain(word, {m: tuple(state)}, [None] * m)
    for k in range(m - 1, -1, -1):
        rest = repeat_sum(word, k, state)
        beta = b[k] - rest if rest is not None else b[k]
        chain.betas[k] = beta
        if beta <= 0:
            chain.status = "boundary" if beta == 0 else "violated"
            chain.index = k + 1
            return chain
        state = phi_inverse(rs, word, k, state, eps)
        chain.values[k] = tuple(state)
    return chain


def forward_chain(rs: RootSystem, word: Sequence[int], a: Sequence, eps=None) -> list:
    """φ_{m-1} ∘ ⋯ ∘ φ_0 (a)."""
    word = rs.check_word(word)
    out = [as_rational(x) for x in a]
    if len(out) != len(word):
        raise ValueError(f"point has {len(out)} coordinates, word has {len(word)} letters")
    for k in range(len(word)):
        out = phi_forward(rs, word, k, out, eps)
    return out


def sample_region(rs: RootSystem, word: Sequence[int], a: Sequence, eps=None) -> tuple[Fraction, ...]:
    """The region point whose inverse chain ends at ``a``."""
    word = rs.check_word(word)
    if not is_reduced(rs, word):
        raise ValueError(f"{word} is not a reduced word")
    m = len(word)
    signs = _signs(eps, m)
    c = forward_chain(rs, word, a, eps)
    for k, (e, x) in enumerate(zip(signs, c)):
        if x * e <= 0:
            raise ArithmeticError(f"forward chain gave slot {k + 1} the wrong sign")
    b = tuple(e * x for e, x in zip(signs, c))
    chain = beta_chain(rs, word, b)
    if not chain.member or list(chain.a0) != [as_rational(x) for x in a]:
        raise ArithmeticError(f"forward chain left the region at {b}")
    return b
