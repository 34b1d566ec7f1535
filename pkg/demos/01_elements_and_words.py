"""
Elements of F as exact maps
===========================

The generators x_n are piecewise-linear maps of [0, 1] with dyadic
breakpoints.  Everything below is exact; nothing is ever rounded.
"""

from thompsonf import Word, compose, generator, standard_marking, support
from thompsonf.dyadic import parse

# x_1 fixes [0, 1/2] and acts like a shrunken x_0 on [1/2, 1]
x0, x1 = generator(0), generator(1)
print("x1(5/8) =", x1(parse("5/8")))
print("x0 squared:", [(str(x), str(y)) for x, y in compose(x0, x0).interior_breakpoints])

# supports shrink towards 1
for n in range(1, 6):
    print(f"support(x{n}) = {support(generator(n))}")

# words act right to left; lowercase a, b are x0, x1 and uppercase inverts
std = standard_marking(0, 1)
w = Word.parse("A b a")
print(w, "evaluates to x2:", std.evaluate(w) == generator(2))

# the two defining relators of F die
for text in ("b A A b a a B A B a", "b A^2 B a^2 b A^3 b a^2"):
    print(text, "->", std.evaluate(Word.parse(text)).is_identity())
