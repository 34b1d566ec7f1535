"""
Normal forms two ways
=====================

One route rewrites a word using x_i^-1 x_j x_i = x_{j+1}.  The other reads
the normal form off the tree pair of the map.  They must agree.
"""

import random

from thompsonf import Word, homeo_to_normalform, homeo_to_word, standard_marking, word_to_normalform

std = standard_marking(0, 1)
rng = random.Random(7)

for _ in range(6):
    w = Word([rng.randrange(4) for _ in range(8)])
    f = std.evaluate(w)
    by_rewriting = word_to_normalform(w)
    by_tree_pair = homeo_to_normalform(f)
    back = homeo_to_word(f)
    print(f"{str(w):24} {str(by_rewriting):28} agree={by_rewriting == by_tree_pair}  word back: {back}")
