"""Tour of the structure theory behind the classification.

Builds the two extremal codes, exhibits their distinguished prime-order
automorphisms, and walks through the fixed-code / complement
decomposition that the searches exploit.
"""

from ternary48.autom import (cycle_type, fixed_code, invariant_complement,
                             project_fixed)
from ternary48.codes import weight_enumerator
from ternary48.constructions import (golay12, p48,
                                     p48_multiplier_automorphism,
                                     p48_translation_automorphism, q48,
                                     q48_shift_automorphism)
from ternary48.gf3 import dot_weighted


def main():
    g = golay12()
    print(f"golay12: [{g.n},{g.k}] self-dual={g.is_self_dual()}")
    a = weight_enumerator(g)
    print("  enumerator:", {i: int(x) for i, x in enumerate(a) if x})

    for name, c, s, p in [
        ("Q48", q48(), q48_shift_automorphism(), 47),
        ("P48", p48(), p48_translation_automorphism(), 23),
        ("P48", p48(), p48_multiplier_automorphism(), 11),
    ]:
        ct = cycle_type(s, p)
        fc = fixed_code(c, s)
        e = invariant_complement(c, s)
        print(f"\n{name} with sigma of order {p}: cycle type "
              f"(t, f) = ({ct.t}, {ct.f})")
        print(f"  dim C(sigma) = {fc.k} = (t+f)/2, "
              f"dim E = {e.k} = t(p-1)/2, direct sum -> {fc.k + e.k} = 24")
        proj, weights = project_fixed(fc, s, p)
        pairs = [(x, y) for x in proj.gen for y in proj.gen]
        ok = all(dot_weighted(x, y, weights) == 0 for x, y in pairs)
        print(f"  projected fixed code: [{proj.n},{proj.k}] weighted "
              f"self-dual (weights {weights.tolist()}): {ok}")


if __name__ == "__main__":
    main()
