"""Find elementary (12,4) sets in the p=11 Margulis code and the rows that break their (14,4) extensions.

Run: python3 demos/margulis_expansion.py   (about a second)
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from helpers import beam_trapping_sets  # heuristic search lives with the tests

from trapredund import codes, gf2core, trapping

H = codes.build_margulis(11).H
print("Margulis p=11:", H.shape, "girth", codes.girth(H))

found = beam_trapping_sets(H, seed=0, size=12, width=500, max_b=4)
print(f"beam search found {len(found)} elementary sets with b<=4")

for cols in found:
    exp = trapping.margulis_expansion(H, cols)
    if exp.config != "a":
        continue
    ext = trapping.measure(H, exp.extended_columns)
    print(f"\nbasic {tuple(cols)} -> extended ({ext.a},{ext.b})")
    for r in exp.rows:
        Hx = H.append_row(gf2core.combine_rows(H, r.rows))
        lift = (trapping.measure(Hx, cols).b, trapping.measure(Hx, exp.extended_columns).b)
        print(f"  {r.method} {'+'.join(r.checks):<16} weight {r.full_weight:>3}  b after: {lift}")
    break
