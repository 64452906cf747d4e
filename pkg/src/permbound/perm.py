"""Permutations of {0..n-1} and the plain-text generator format.

Permutations act on the right: ``p * q`` means "apply p, then q", so
``(p * q)(i) == q(p(i))``.
"""
from __future__ import annotations

import math
import re
from typing import Iterable, Sequence


class PermutationError(ValueError):
    pass


class Permutation:
    """An immutable bijection of ``range(degree)`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise PermutationError(f"not a bijection of 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> Permutation:
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise PermutationError(f"point {a} out of range for degree {degree}")
                if a in seen:
                    raise PermutationError(f"point {a} repeated in cycle notation")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a] = b
        return cls(img, check=False)

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return self.inverse()

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Permutation:
        return Permutation(invert(self.images), check=False)

    def conjugate(self, g: Permutation) -> Permutation:
        """``g^-1 * self * g``."""
        return Permutation(conjugate(self.images, g.images), check=False)

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def cycles(self, *, include_fixed: bool = False) -> list[tuple[int, ...]]:
        return cycles_of(self.images, include_fixed=include_fixed)

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return perm_order(self.images)

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.images) if i != a]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_cycles(self.images)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self.images)!r}, degree={self.degree})"


# Tuple-level helpers; the group kernel works on raw tuples for speed.

def compose(p: Permutation, q: Permutation) -> Permutation:
    if len(p.images) != len(q.images):
        raise PermutationError(f"degree mismatch: {len(p.images)} vs {len(q.images)}")
    return Permutation(mul(p.images, q.images), check=False)


def mul(p: tuple, q: tuple) -> tuple:
    return tuple([q[i] for i in p])


def invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, a in enumerate(p):
        inv[a] = i
    return tuple(inv)


def conjugate(p: tuple, g: tuple) -> tuple:
    # g^-1 p g maps g(i) -> g(p(i))
    out = [0] * len(p)
    for i, a in enumerate(p):
        out[g[i]] = g[a]
    return tuple(out)


def cycles_of(p: Sequence[int], *, include_fixed: bool = False) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        if len(cyc) > 1 or include_fixed:
            out.append(tuple(cyc))
    return out


def perm_order(p: Sequence[int]) -> int:
    return math.lcm(*(len(c) for c in cycles_of(p, include_fixed=True))) if len(p) else 1


def format_cycles(p: Sequence[int]) -> str:
    cyc = cycles_of(p)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``(0 1 2)(3 4)``; ``()`` is the identity."""
    s = text.strip()
    if not s:
        raise PermutationError("empty permutation text")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise PermutationError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cycles.append([int(tok) for tok in body])
        except ValueError as exc:
            raise PermutationError(f"non-integer point in {text!r}") from exc
        pos = m.end()
    if s[pos:].strip() or not cycles:
        raise PermutationError(f"malformed cycle notation {text!r}")
    return Permutation.from_cycles([c for c in cycles if c], degree)


def parse_generator_text(text: str) -> tuple[int, list[Permutation]]:
    """Parse the generator file format.

    The first non-blank, non-comment line is ``degree: n``; every following
    line holds one generator in cycle notation. Lines starting with ``#`` are
    ignored, as is anything after ``#`` on a line. Errors name the offending line number.
    """
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s*:\s*(\d+)", line)
            if not m:
                raise PermutationError(f"line {lineno}: expected 'degree: n', got {line!r}")
            degree = int(m.group(1))
            if degree < 1:
                raise PermutationError(f"line {lineno}: degree must be positive")
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except PermutationError as exc:
            raise PermutationError(f"line {lineno}: {exc}") from None
    if degree is None:
        raise PermutationError("missing 'degree: n' header")
    return degree, gens


def format_generator_text(degree: int, gens: Iterable[Permutation]) -> str:
    lines = [f"degree: {degree}"]
    lines.extend(str(g) for g in gens)
    return "\n".join(lines) + "\n"
