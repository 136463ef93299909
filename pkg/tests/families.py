"""Printed composition factors of the four weight families, transcribed by hand.

Each entry (m, n) stands for the factor with highest weight lambda - m alpha1 - n alpha2.
Kept separate from the shipped claim file so the two transcriptions check each other.
"""

from b2verma.verma import Weight


def family_weight(name, l, a=0, b=0):
    return {
        "thm3.1": Weight(l * a, l * b),
        "thm3.2": Weight(l * a, l * b - 3),
        "thm3.3": Weight(l * a + l - 2, l * b + 1),
        "thm3.4": Weight(l * a + 2, l * b + l - 2),
    }[name]


def listed_factors(name, l):
    if name == "thm3.1":
        return [
            (0, 0), (1, 0), (0, 1), (1, 2), (3, 1), (3, 3), (4, 2), (4, 3),
            (3, l + 1), (l + 3, l + 3), (l + 3, 3), (l + 1, 2), (2 * l + 4, l + 2), (l + 4, l + 2),
            (4, l + 2), (l + 3, l + 1), (l, l), (l + 1, l), (2 * l, 2 * l), (2 * l, l),
        ]
    if name == "thm3.2":
        return [
            (0, 0), (1, 0), (0, l - 2), (1, l - 1), (l - 3, l - 2), (l - 2, l - 1),
            (2 * l - 3, 2 * l - 3), (2 * l - 2, 2 * l - 3), (l - 3, l - 3), (l - 2, l - 3),
            (3 * l - 3, 3 * l - 3), (3 * l - 3, 2 * l - 3), (l + 1, l - 1), (2 * l - 2, l - 1),
            (2 * l + 1, 2 * l - 1), (2 * l + 1, l - 1), (l, l), (l, 2 * l - 2), (l, l - 2), (2 * l, l),
        ]
    if name == "thm3.3":
        return [
            (0, 0), (l - 1, 0), (0, 2), (l - 1, 1), (3, 2), (l + 2, l + 1), (3, 3), (2 * l + 2, l + 3),
            (2, 1), (2, 3), (l, 2), (2 * l - 1, l), (l - 1, l), (l, l), (l + 2, 3),
            (2 * l + 3, l + 2), (l + 3, l + 2), (3, l + 2), (2 * l + 2, l + 1), (3 * l - 1, 2 * l),
        ]
    if name == "thm3.4":
        return [
            (0, 0), (3, 0), (0, l - 1), (3, 2), (1, l - 1), (4, 2), (l + 1, l + 1), (2 * l + 4, 2 * l + 1),
            (1, 1), (4, 1), (l, l - 1), (2 * l, 2 * l - 1), (l + 3, l), (3, l), (4, l + 1),
            (l + 4, l + 1), (l + 1, l - 1), (l + 3, l + 2), (l + 3, 2), (2 * l, l - 1),
        ]
    raise KeyError(name)


def listed_weights(name, l, a=0, b=0):
    lam = family_weight(name, l, a, b)
    return [lam.minus(m, n) for m, n in listed_factors(name, l)]


# The one printed factor of the second family that does not occur, and the one that does instead.
def second_family_discrepancy(l, a=0, b=0):
    lam = family_weight("thm3.2", l, a, b)
    return lam.minus(l, 2 * l - 2), lam.minus(2 * l, 2 * l - 2)
