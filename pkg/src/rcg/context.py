"""Resolve user input (a quiver, or a type plus a word) to an algebra and a word."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .chevalley import ChevalleyAlgebra, Twist, build_algebra
from .quiver import Quiver, leftmost_word, linear_quiver, parse_quiver
from .rootsys import Word, is_reduced, parse_type, parse_word


@dataclass(frozen=True)
class Context:
    algebra: ChevalleyAlgebra
    quiver: Quiver
    word: Word

    @property
    def system(self):
        return self.algebra.system


def resolve(
    quiver: str | Quiver | None = None,
    type: str | None = None,
    word: str | Sequence[int] | None = None,
    twist: Twist | None = None,
) -> Context:
    """Exactly one of ``quiver`` or ``type`` must be given.

    A quiver supplies the sign convention and, unless ``word`` is given, its
    leftmost word.  A bare type stands for the orientation i -> j (i < j).
    """
    if (quiver is None) == (type is None):
        raise ValueError("give exactly one of a quiver or a type")
    if quiver is not None:
        q = parse_quiver(quiver) if isinstance(quiver, str) else quiver
    else:
        letter, rank = parse_type(type)
        q = linear_quiver(letter, rank)
    alg = build_algebra(q, twist)
    rs = q.system
    if word is None:
        w = leftmost_word(q)
    else:
        w = parse_word(word, rs.rank) if isinstance(word, str) else rs.check_word(word)
        if not is_reduced(rs, w):
            raise ValueError(f"{','.join(map(str, w))} is not a reduced word")
    return Context(alg, q, w)
