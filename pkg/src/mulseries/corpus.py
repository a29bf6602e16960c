"""Deterministic enumeration of valid maximal contact sequences.

The sweep is bounded by the first value (the multiplicity of the valuation)
and by the terminal value; intermediate values are forced by the validity
rules, so the recursion depth is at most the 2-adic length of the
multiplicity.  Sequences come out in lexicographic order.
"""

from __future__ import annotations

from math import gcd
from typing import Iterator

from .errors import InputError
from .model import MaximalContactSequence, ResolutionModel, model_from_contact


def iter_contact_sequences(
    max_multiplicity: int, max_terminal: int
) -> Iterator[MaximalContactSequence]:
    """Yield every valid contact sequence within the bounds, in order."""
    if max_multiplicity < 1 or max_terminal < 1:
        raise InputError("corpus bounds must be positive")
    for k in range(1, max_terminal + 1):
        yield MaximalContactSequence((1, k))
    for b0 in range(2, max_multiplicity + 1):
        yield from _extend((b0,), (b0,), max_terminal)


def _extend(
    prefix: tuple[int, ...], gcds: tuple[int, ...], max_terminal: int
) -> Iterator[MaximalContactSequence]:
    i = len(prefix) - 1
    e = gcds[-1]
    # Lower bound for the next non-terminal value: strict growth at stage 0,
    # beyond the stage quotient times the last value afterwards.
    low = prefix[-1] + 1 if i == 0 else gcds[-2] // e * prefix[-1] + 1
    for v in range(low, max_terminal + 1):
        e2 = gcd(e, v)
        if e2 == e:
            continue
        if e2 == 1:
            terminal_low = e * v  # quotient at the last stage equals e / 1
            for t in range(terminal_low, max_terminal + 1):
                yield MaximalContactSequence(prefix + (v, t))
        else:
            yield from _extend(prefix + (v,), gcds + (e2,), max_terminal)


def corpus_models(max_multiplicity: int, max_terminal: int) -> list[ResolutionModel]:
    """Resolution models of the whole corpus, in enumeration order."""
    return [
        model_from_contact(seq.values)
        for seq in iter_contact_sequences(max_multiplicity, max_terminal)
    ]
