"""
Witnesses near zero
===================

Given a list of nontrivial words, build u_1, u_2 supported in [0, eps) so
that every word moves a point of [0, eps) in the marking (x0, u_1, u_2).
"""

from thompsonf import Word, construct_witnesses_multi, enumerate_reduced, support
from thompsonf.dyadic import Dyadic

eps = Dyadic(1, 6)
words = list(enumerate_reduced(3, 3))
wit = construct_witnesses_multi(words, eps, 3)
for i, u in enumerate(wit.elements, 1):
    s = support(u)
    lo, hi = s.hull()
    print(f"u_{i}: {len(u)} breakpoints, {len(s)} support intervals inside [{lo}, {hi}]")

for w in words[:8]:
    c = wit.certificate_for(w)
    print(f"{str(w):10} moves {c.point} to {c.image}")

w = Word.parse("b c B")
print("certificate for b c B:", wit.certificate_for(w).to_dict())
