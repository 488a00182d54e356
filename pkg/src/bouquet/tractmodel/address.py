"""External addresses: eventually periodic sequences of tract references.

Grammar: whitespace-separated tokens, each an optional letter (T or S), a
base index and an optional signed offset, e.g. ``0``, ``T1+2``, ``S3-1``.
A ``|`` separates the prefix from the periodic cycle; without it the whole
token list is the cycle.
"""
import random
import re
from collections import namedtuple

from ..errors import AddressParseError

TractRef = namedtuple("TractRef", "base offset")

_TOKEN = re.compile(r"([TS]?)(\d+)([+-]\d+)?$")


def base_name(base):
    return base if isinstance(base, str) else "T%d" % base


def format_ref(ref):
    off = "" if ref.offset == 0 else "%+d" % ref.offset
    return base_name(ref.base) + off


class ExternalAddress:
    def __init__(self, prefix, cycle):
        if not cycle:
            raise ValueError("the periodic cycle must be nonempty")
        self.prefix = tuple(prefix)
        self.cycle = tuple(cycle)

    def __getitem__(self, k):
        if k < len(self.prefix):
            return self.prefix[k]
        return self.cycle[(k - len(self.prefix)) % len(self.cycle)]

    def entries(self, depth):
        return [self[k] for k in range(depth)]

    def shift(self, k=1):
        """sigma^k of the address."""
        if k <= len(self.prefix):
            return ExternalAddress(self.prefix[k:], self.cycle)
        r = (k - len(self.prefix)) % len(self.cycle)
        return ExternalAddress((), self.cycle[r:] + self.cycle[:r])

    def agree_until(self, other, depth):
        for k in range(depth):
            if self[k] != other[k]:
                return k
        return depth

    def __eq__(self, other):
        if not isinstance(other, ExternalAddress):
            return NotImplemented
        n = len(self.prefix) + len(other.prefix) + len(self.cycle) * len(other.cycle)
        return all(self[k] == other[k] for k in range(n))

    def __hash__(self):
        return hash((self.prefix, self.cycle))

    def __str__(self):
        head = " ".join(format_ref(r) for r in self.prefix)
        tail = " ".join(format_ref(r) for r in self.cycle)
        return (head + " | " + tail) if head else ("| " + tail)

    def __repr__(self):
        return "ExternalAddress(%r)" % str(self)


def _parse_token(tok, pos):
    m = _TOKEN.match(tok)
    if not m:
        raise AddressParseError(pos, "malformed tract token %r" % tok)
    letter, idx, off = m.groups()
    idx = int(idx)
    base = "S%d" % idx if letter == "S" else idx
    return TractRef(base, int(off) if off else 0)


def parse_address(text):
    """Parse an address string; errors carry the 0-based character position."""
    if text.count("|") > 1:
        raise AddressParseError(text.index("|", text.index("|") + 1), "more than one '|'")
    groups = [[]]
    for m in re.finditer(r"\S+", text):
        tok, pos = m.group(), m.start()
        pieces = re.split(r"(\|)", tok)
        offset = pos
        for piece in pieces:
            if piece == "|":
                groups.append([])
            elif piece:
                groups[-1].append(_parse_token(piece, offset))
            offset += len(piece)
    if len(groups) == 1:
        if not groups[0]:
            raise AddressParseError(0, "empty address")
        return ExternalAddress((), groups[0])
    prefix, cycle = groups
    if not cycle:
        raise AddressParseError(len(text.rstrip()), "empty cycle after '|'")
    return ExternalAddress(prefix, cycle)


def random_address(rng, bases, max_offset=2, max_prefix=4, max_cycle=3):
    """A random eventually periodic address over the given base ids."""
    def ref():
        return TractRef(rng.choice(bases), rng.randint(-max_offset, max_offset))
    prefix = [ref() for _ in range(rng.randint(0, max_prefix))]
    cycle = [ref() for _ in range(rng.randint(1, max_cycle))]
    return ExternalAddress(prefix, cycle)


def default_rng(seed=0):
    return random.Random(seed)
