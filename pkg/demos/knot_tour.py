#!/usr/bin/env python3
"""A short tour of two-bridge knot arithmetic.

Every two-bridge knot is encoded by a fraction p/q, which in turn is the
value of a continued fraction.  This script walks one knot through the
basic conversions: evaluating term lists, normalizing to the canonical
all-even expansion, reading off the determinant, and checking the
determinant law |Alexander(-1)| = |p| on a small family.
"""
from fractions import Fraction

from bridgecover.twobridge import (
    alexander,
    cf_value,
    even_expansion_from_fraction,
    h1_cyclic_cover_order,
    knot_name,
    link_determinant,
    mirror_terms,
    same_knot,
)


def main():
    terms = [-2, 2, -2, 2]
    fr = cf_value(terms)
    print(f"continued fraction {terms} evaluates to {fr}")
    print(f"catalogued class: {knot_name(fr)}  (determinant {abs(fr.numerator)})")
    print(f"mirror image has terms {mirror_terms(terms)},"
          f" value {cf_value(mirror_terms(terms))}")
    print()

    # The same knot hides behind many fractions (q matters only through the
    # classification congruences); the even expansion is the canonical
    # representative used by the Seifert-matrix constructions.
    print(f"5/2 and 5/3 describe the same knot: "
          f"{same_knot(Fraction(5, 2), Fraction(5, 3))}")
    print(f"5/2 and 5/1 describe the same knot: "
          f"{same_knot(Fraction(5, 2), Fraction(5, 1))}")
    expansion = even_expansion_from_fraction(fr)
    print(f"canonical even expansion of {fr}: {expansion.terms}"
          f" (genus {expansion.genus})")
    print()

    # Alexander polynomial from the plumbing Seifert matrix, and the
    # determinant law: evaluating at -1 recovers |p|, which is also the
    # homology order of the double branched cover.
    delta = alexander(expansion)
    print(f"Alexander coefficients (ascending): {delta}")
    print(f"|Alexander(-1)| = {link_determinant(expansion)}")
    print(f"double-cover homology order       = "
          f"{h1_cyclic_cover_order(expansion, 2)}")
    print()

    print("determinant law on the two-term family [2a, 2b]:")
    for a in (1, 2, 3):
        for b in (-2, -1, 1):
            terms = [2 * a, 2 * b]
            p = abs(cf_value(terms).numerator)
            det = link_determinant(terms)
            print(f"  {terms}: |p| = {p:3d}  det = {det:3d}"
                  f"  {'ok' if p == det else 'MISMATCH'}")


if __name__ == "__main__":
    main()
