"""Shared test helpers: graph builders and a scriptable RNG stand-in."""

import random

K4_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

PETERSEN_PAIRS = [
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
]

# degrees (3,4,4,3,3,3); removing edge (0,1) leaves vertex 0 with a
# parallel pair to vertex 2, the auto-correction trigger
AC_GADGET_PAIRS = [
    (0, 1), (0, 2), (0, 2), (1, 3), (1, 4),
    (1, 5), (2, 3), (3, 4), (4, 5), (5, 2),
]


class ScriptedRng:
    """Feeds scripted values to random(), then falls back to a real RNG.

    A value (i + 0.5) / k forces index i when the consumer picks from a
    list of length k via int(random() * k).
    """

    def __init__(self, values, tail_seed=0):
        self._values = list(values)
        self._tail = random.Random(tail_seed)

    def random(self):
        if self._values:
            return self._values.pop(0)
        return self._tail.random()

    @staticmethod
    def pick(index, size):
        return (index + 0.5) / size
