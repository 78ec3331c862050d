"""The region as explicit polynomial inequalities in b_1, ..., b_m.

The chain runs over ``AtomFraction``; every partial sum that the inverse
recursion divides by is positive on the region, so it is registered as an
atom before the division.  Denominators are then products of positive
atoms and each β_k > 0 clears to its numerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exact import AtomFraction, AtomRegistry, Poly, region_variables
from ..rootsys import RootSystem, Word, is_reduced
from .chain import phi_inverse, repeat_sum


@dataclass(frozen=True)
class Region:
    word: Word
    registry: AtomRegistry
    betas: tuple[AtomFraction, ...]
    corrections: tuple[AtomFraction | None, ...]  # β_k = b_k - correction
    inequalities: tuple[Poly, ...]  # cleared numerators, positive content removed
    trivial: tuple[bool, ...]

    @property
    def variables(self) -> tuple[str, ...]:
        return self.registry.variables

    def beta_text(self, k: int) -> str:
        """β_k (1-based) written as b_k - correction."""
        c = self.corrections[k - 1]
        v = self.variables[k - 1]
        return v if c is None else f"{v} - {c}"

    def nontrivial(self) -> list[Poly]:
        return [p for p, t in zip(self.inequalities, self.trivial) if not t]

    def contains(self, b: Sequence) -> bool:
        return all(p.evaluate(b) > 0 for p in self.inequalities)

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "inequalities": [
                {"poly": str(p), "trivial": t, "beta": self.beta_text(k + 1)}
                for k, (p, t) in enumerate(zip(self.inequalities, self.trivial))
            ],
        }


def region_symbolic(rs: RootSystem, word: Sequence[int]) -> Region:
    word = rs.check_word(word)
    if not is_reduced(rs, word):
        raise ValueError(f"{word} is not a reduced word")
    m = len(word)
    reg = AtomRegistry(region_variables(m))

    def positive(slot, upto, x):
        return reg.certify(x)

    state = [reg.var(k) for k in range(m)]
    betas: list = [None] * m
    corr: list = [None] * m
    for k in range(m - 1, -1, -1):
        rest = repeat_sum(word, k, state)
        beta = state[k] - rest if rest is not None else state[k]
        betas[k] = reg.certify(beta)
        corr[k] = rest
        state = phi_inverse(rs, word, k, state, positive=positive)
    ineqs = []
    for beta in betas:
        num = beta.numerator
        ineqs.append(num * (1 / num.content()))
    trivial = tuple(c is None for c in corr)
    return Region(word, reg, tuple(betas), tuple(corr), tuple(ineqs), trivial)
