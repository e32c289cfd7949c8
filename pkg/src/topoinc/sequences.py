"""Bi-infinite binary sequences with eventually periodic tails.

A :class:`BitSeqSpec` describes ``g: Z -> {0, 1}`` by three words::

    ... left left left | core | right right right ...
                       ^ index 0

For ``k < 0`` the left word repeats leftward, ending at index -1; the core
starts at index 0; after the core the right word repeats forever.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import DomainError


def primitive_root(word: str) -> str:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def _check_bits(name, word, allow_empty):
    if not isinstance(word, str) or any(c not in "01" for c in word):
        raise DomainError(f"{name} must be a binary word, got {word!r}")
    if not word and not allow_empty:
        raise DomainError(f"{name} must be nonempty")


@dataclass(frozen=True)
class BitSeqSpec:
    left: str
    core: str
    right: str

    def __post_init__(self):
        _check_bits("left", self.left, False)
        _check_bits("core", self.core, True)
        _check_bits("right", self.right, False)
        left = primitive_root(self.left)
        core, right = self.core, primitive_root(self.right)
        # absorb a trailing core bit into the right tail by rotating it
        while core and core[-1] == right[-1]:
            core = core[:-1]
            right = right[-1] + right[:-1]
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "right", right)

    def __call__(self, k: int) -> int:
        if k < 0:
            return int(self.left[k % len(self.left)])
        if k < len(self.core):
            return int(self.core[k])
        return int(self.right[(k - len(self.core)) % len(self.right)])

    @classmethod
    def from_window(cls, word: str, K: int, right: str | None = None) -> "BitSeqSpec":
        """A spec whose window ``g(-K..K)`` equals ``word``.

        Outside the window the left side repeats ``word[:K]`` and the right
        side repeats ``right`` (default: the last bit of ``word``).
        """
        if len(word) != 2 * K + 1:
            raise DomainError(f"window word must have length {2 * K + 1}")
        left = word[:K] or word[0]
        return cls(left, word[K:], right or word[-1])

    def to_json(self) -> dict:
        return {"left": self.left, "core": self.core, "right": self.right}

    @classmethod
    def from_json(cls, data: dict) -> "BitSeqSpec":
        try:
            return cls(data["left"], data.get("core", ""), data["right"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed sequence spec: {data!r}") from exc


@dataclass(frozen=True)
class MSetSpec:
    """Finite window of an infinite set of integers >= 4."""

    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise DomainError(f"M must be strictly increasing, got {list(vals)}")
        if vals and vals[0] < 4:
            raise DomainError(f"M must contain integers >= 4, got {list(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, values: Iterable[int]) -> "MSetSpec":
        return cls(tuple(sorted(set(int(v) for v in values))))

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def evaluate(s: BitSeqSpec, k: int) -> int:
    return s(k)


def word_window(s: BitSeqSpec, K: int) -> str:
    if K < 0:
        raise DomainError("K must be >= 0")
    return "".join(str(s(k)) for k in range(-K, K + 1))


def decision_bound(s1: BitSeqSpec, s2: BitSeqSpec) -> int:
    """B = |core1| + |core2| + 2 lcm(all tail periods)."""
    periods = [len(s1.left), len(s1.right), len(s2.left), len(s2.right)]
    return len(s1.core) + len(s2.core) + 2 * math.lcm(*periods)


def _agrees(f: Callable[[int], int], g: Callable[[int], int], lo: int, hi: int) -> bool:
    return all(f(k) == g(k) for k in range(lo, hi + 1))


def _candidates(bound: int):
    yield 0
    for m in range(1, bound + 1):
        yield m
        yield -m


def shift_equiv(s1: BitSeqSpec, s2: BitSeqSpec) -> int | None:
    """Least-|m| integer with ``s1(m + k) == s2(k)`` for all k, or None.

    For a fixed m both sides are periodic with period L = lcm of the tail
    periods outside ``[min(0, -m), max(|core2|, |core1| - m))``, so agreement
    on that interval widened by L on each side is agreement everywhere.
    """
    bound = decision_bound(s1, s2)
    L = math.lcm(len(s1.left), len(s1.right), len(s2.left), len(s2.right))
    for m in _candidates(bound):
        lo = min(0, -m) - L
        hi = max(len(s2.core), len(s1.core) - m) + L
        if _agrees(lambda k: s1(m + k), s2, lo, hi):
            return m
    return None


def reflect_equiv(s1: BitSeqSpec, s2: BitSeqSpec) -> int | None:
    """Least-|m| integer with ``s1(m - k) == s2(k)`` for all k, or None."""
    bound = decision_bound(s1, s2)
    L = math.lcm(len(s1.left), len(s1.right), len(s2.left), len(s2.right))
    for m in _candidates(bound):
        # s1(m - k) is left-periodic for m - k >= |core1|, i.e. k <= m - |core1|
        lo = min(0, m - len(s1.core)) - L
        hi = max(len(s2.core), m + 1) + L
        if _agrees(lambda k: s1(m - k), s2, lo, hi):
            return m
    return None


def omega_star_check(s: BitSeqSpec) -> bool:
    """g(0) = 0, g(k) = 1 for all k < 0, and infinitely many zeros to the right."""
    return s(0) == 0 and s.left == "1" and "0" in s.right


def reflected(s: BitSeqSpec, c: int | None = None) -> BitSeqSpec:
    """The sequence ``k -> s(c - k)``.

    The left side of a spec must be purely periodic, so ``c`` must be at
    least ``len(s.core) - 1``; that is also the default.
    """
    if c is None:
        c = max(len(s.core) - 1, 0)
    if c < len(s.core) - 1:
        raise DomainError(f"c={c} too small: the reflection would not have a periodic left side")
    q, p = len(s.right), len(s.left)
    left = "".join(str(s(c - k)) for k in range(-q, 0))
    core = "".join(str(s(c - k)) for k in range(0, c + 1))
    right = "".join(str(s(c - k)) for k in range(c + 1, c + 1 + p))
    return BitSeqSpec(left, core, right)


def shifted(s: BitSeqSpec, m: int) -> BitSeqSpec:
    """The sequence ``k -> s(k - m)``, so that ``shift_equiv(result, s) == m``.

    Negative shifts move core bits to negative indices; that is only
    representable when those bits continue the left tail.
    """
    p, q = len(s.left), len(s.right)
    core_len = max(0, m + len(s.core))
    left = "".join(str(s(k - m)) for k in range(-p, 0))
    core = "".join(str(s(k - m)) for k in range(0, core_len))
    right = "".join(str(s(k - m)) for k in range(core_len, core_len + q))
    out = BitSeqSpec(left, core, right)
    span = p + q + abs(m) + len(s.core)
    if any(out(k) != s(k - m) for k in range(-2 * span, 2 * span)):
        raise DomainError(f"shift by {m} does not leave a periodic left side")
    return out
