"""Free commutative monoids (multisets) and free monoids (words) over string symbols.

Symbols are plain strings.  Their total order is supplied by whoever owns the
alphabet (a net, a rewriting system, a polygraph) as a sequence of names;
without one, names are ordered lexicographically.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence

from .errors import Underflow

Word = tuple  # tuple[str, ...]

_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?([A-Za-z_][\w']*)$")


def order_key(order: Sequence[str] | None):
    """Sort key placing symbols in `order`, unknown ones after, by name."""
    if order is None:
        return lambda s: (0, s)
    rank = {s: i for i, s in enumerate(order)}
    return lambda s: (0, rank[s], s) if s in rank else (1, 0, s)


class Multiset:
    """Finite formal sum of symbols with natural coefficients.

    Immutable and hashable; zero counts are never stored.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping[str, int] | Iterable[str] | None = None):
        data: dict[str, int] = {}
        if counts is None:
            pass
        elif isinstance(counts, Mapping):
            for s, k in counts.items():
                k = int(k)
                if k < 0:
                    raise ValueError(f"negative count {k} for {s!r}")
                if k:
                    data[s] = data.get(s, 0) + k
        else:
            for s in counts:
                data[s] = data.get(s, 0) + 1
        self._counts = data
        self._hash = None

    @classmethod
    def of(cls, **counts: int) -> Multiset:
        return cls(counts)

    def __getitem__(self, symbol: str) -> int:
        return self._counts.get(symbol, 0)

    count = __getitem__

    def support(self, order: Sequence[str] | None = None) -> list[str]:
        return sorted(self._counts, key=order_key(order))

    def items(self, order: Sequence[str] | None = None) -> list[tuple[str, int]]:
        return [(s, self._counts[s]) for s in self.support(order)]

    def size(self) -> int:
        return sum(self._counts.values())

    def __len__(self) -> int:
        return len(self._counts)

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __iter__(self):
        return iter(self.support())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __add__(self, other: Multiset) -> Multiset:
        out = dict(self._counts)
        for s, k in other._counts.items():
            out[s] = out.get(s, 0) + k
        return Multiset(out)

    def __sub__(self, other: Multiset) -> Multiset:
        out = dict(self._counts)
        for s in sorted(other._counts):
            left = out.get(s, 0) - other._counts[s]
            if left < 0:
                raise Underflow(s)
            out[s] = left
        return Multiset(out)

    def __le__(self, other: Multiset) -> bool:
        return all(k <= other[s] for s, k in self._counts.items())

    def __ge__(self, other: Multiset) -> bool:
        return other <= self

    def __mul__(self, k: int) -> Multiset:
        return Multiset({s: c * k for s, c in self._counts.items()})

    __rmul__ = __mul__

    def render(self, order: Sequence[str] | None = None) -> str:
        if not self._counts:
            return "0"
        return "+".join(s if k == 1 else f"{k}*{s}" for s, k in self.items(order))

    def __repr__(self) -> str:
        return f"Multiset({self.render()!r})"

    def __str__(self) -> str:
        return self.render()


EMPTY = Multiset()


def ms_add(a: Multiset, b: Multiset) -> Multiset:
    return a + b


def ms_sub(a: Multiset, b: Multiset) -> Multiset:
    """Count-wise difference; raises `Underflow` naming the first short symbol."""
    return a - b


def ms_leq(a: Multiset, b: Multiset) -> bool:
    return a <= b


def parikh(word: Iterable[str]) -> Multiset:
    """Letter counts of a word (the projection from the free monoid)."""
    return Multiset(list(word))


def parse_multiset(text: str) -> Multiset:
    """Parse `0` or `k*sym` terms joined by `+` (`k*` optional)."""
    text = text.strip()
    if text == "0":
        return EMPTY
    if not text:
        raise ValueError("empty multiset literal")
    counts: dict[str, int] = {}
    for term in text.split("+"):
        m = _TERM.match(term.strip())
        if m is None:
            raise ValueError(f"bad multiset term {term.strip()!r}")
        k = int(m.group(1)) if m.group(1) is not None else 1
        counts[m.group(2)] = counts.get(m.group(2), 0) + k
    return Multiset(counts)


def render_word(word: Sequence[str]) -> str:
    return ".".join(word) if word else "~"


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("~", ""):
        return ()
    return tuple(part.strip() for part in text.split("."))
