"""Seedable deterministic pseudo-random generator (splitmix64).

Every stochastic choice in the package draws from this generator so that
runs are reproducible from a single 64-bit seed.
"""

_MASK = (1 << 64) - 1

DEFAULT_SEED = 0x5EED


class SplitMix64:
    """The splitmix64 generator: 64-bit state, one additive constant."""

    __slots__ = ("state",)

    def __init__(self, seed=DEFAULT_SEED):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def coin(self):
        """Fair coin: True with probability 1/2."""
        return bool(self.next_u64() >> 63)

    def randrange(self, n):
        """Uniform integer in [0, n). Rejection-free modulo is fine here:
        n is tiny compared to 2^64, bias is far below observability."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items):
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
