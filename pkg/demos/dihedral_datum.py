"""The m = 2 datum of type (1, 1, 3) over F_7 and its reduced three-point cover."""
from defdatum.forms import EquivariantContext, goodness
from defdatum.search import m2_reduce, search_good_deformation, search_prime_field_forms, verify_prop4
from defdatum.types import ResidueType

a = ResidueType(7, 2, (1, 1, 3))

for d in (1, 2):
    rep = search_good_deformation(7, 2, a, d)
    print(f"poles in F_7^{d}: {rep.raw_count} solutions, {rep.orbit_count} orbits")

rep = search_prime_field_forms(7, 2, a)
print(f"forms with coefficients in F_7: {rep.raw_count} solutions, {rep.orbit_count} orbit")
for omega, config in zip(rep.forms, rep.solutions):
    g = goodness(omega, EquivariantContext.for_field(omega.field, 2))
    print(f"  omega = {omega}  conductor {g.conductor_h}, poles over F_7^{config.field.d}")

config = rep.orbit_representatives[0]
gt = m2_reduce((1, 1, 3), config)
check = verify_prop4(gt, (1, 1, 3), config.poles)
print(f"reduced map of degree {gt.degree}: {gt}")
for over, pts in check.portrait.to_json()["fibers"].items():
    print(f"  over {over}: {pts}")
print(f"fiber structure as predicted: {check.ok}")
