"""Existence and nonexistence of good deformation data of a given type.

Compares the lift criteria with a direct search over small fields.
"""
from defdatum.search import search_good_deformation
from defdatum.types import ResidueType, existence_window, nonexistence_certificate


def survey(p, entries, max_d):
    a = ResidueType(p, 1, entries)
    print(f"p = {p}, type {entries}")
    print(f"  certificate against existence: {nonexistence_certificate(a)}")
    print(f"  lift in the existence window:  {existence_window(a)}")
    for d in range(1, max_d + 1):
        rep = search_good_deformation(p, 1, a, d)
        print(f"  F_{p}^{d}: {rep.candidates} candidates, {rep.raw_count} solutions, {rep.orbit_count} orbits")
        if rep.solutions:
            config = rep.orbit_representatives[0]
            print(f"    first orbit: poles {config.to_json()}  omega = {rep.witness(config)}")


if __name__ == "__main__":
    survey(7, (1, 1, 5), 1)
    survey(5, (1, 1, 4, 4), 2)
    survey(5, (1, 2, 3, 4), 2)
    survey(3, (1, 1, 1, 2, 2, 2), 3)
