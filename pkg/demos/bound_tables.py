"""Print the minimal row counts for the Margulis and PG grids next to the tabulated values.

Run: python3 demos/bound_tables.py
"""

from fractions import Fraction

from trapredund import bounds, cli


def grid(preset):
    if "codes" in preset:
        for label, spec in preset["codes"].items():
            for a, b in spec["cells"]:
                yield label, spec["n"], spec["k"], spec["d"], a, b, preset["reference_m"][(label, a)]
    else:
        for a, b in preset["cells"]:
            yield preset["code"], preset["n"], preset["k"], preset["d"], a, b, preset["reference_m"][a]


for name, preset in cli.PRESETS.items():
    el = preset["elementary"]
    std = bounds.min_m_std_elementary if el else bounds.min_m_std
    hp = bounds.min_m_hp_elementary if el else bounds.min_m_hp
    print(f"== {name} ({'elementary' if el else 'general'} sets; std, eps=0.01, eps=1e-20)")
    for label, n, k, d, a, b, ref in grid(preset):
        got = (std(n, a, b, k=k, d=d).m,) + tuple(hp(n, a, b, Fraction(e), k=k, d=d).m for e in cli.HP_EPSILONS)
        flag = "" if got == ref else "  <- differs"
        print(f"  {label:>12} a={a:<3} b={b:<4} m={got}  tabulated={ref}{flag}")

# the asymptotic fixed point lands near the exact std value for moderate a
est = bounds.asymptotic_m("std", 2640, 6, 5)
print(f"\nasymptotic std estimate for a=6, b=5: {est.value:.1f} (exact 75)")
