"""When is the normal approximation trustworthy, and when does it break?

The approximation rests on the maximum degree staying small next to
sqrt(m).  Regular graphs satisfy that with room to spare at every size;
a family with one vertex of degree ~ sqrt(n) violates it at every size.
The condition statistics make the contrast quantitative, and the
exponential tail bound shows how aggressively the edge-kernel sum
concentrates regardless.
"""

import math

from modnull import condition_statistics, gen_hub, gen_regular, tail_bound

print("6-regular family (well behaved):")
print(f"{'n':>7} {'stat_31':>9} {'stat_c1':>9} {'holds_c1':>9}")
for n in (100, 1000, 10000):
    rep = condition_statistics(gen_regular(n, 6, 1))
    print(f"{n:>7} {rep.stat_31:>9.3f} {rep.stat_c1:>9.4f} {str(rep.holds_c1):>9}")
print("stat_31 is pinned at sqrt(12) = %.3f on every 6-regular graph," % math.sqrt(12))
print("and stat_c1 falls well under 1, the sufficient regime.")

print("\nhub family, one vertex wired to ~sqrt(n) others (broken by design):")
print(f"{'n':>7} {'kmax':>6} {'stat_31':>9} {'stat_c1':>9} {'holds_c1':>9}")
for n in (100, 1000, 10000):
    rep = condition_statistics(gen_hub(n, 3.0 / n, 2))
    print(f"{n:>7} {rep.kmax:>6} {rep.stat_31:>9.2f} {rep.stat_c1:>9.4f} "
          f"{str(rep.holds_c1):>9}")
print("stat_31 grows without bound: the max-degree condition fails at every size.")

g = gen_regular(1000, 6, 3)
d_n = 2.0 * math.sqrt(g.m)
print(f"\ntail bound on the edge-kernel sum for {g} (scale D = 2 sqrt(m) = {d_n:.1f}):")
print(f"{'x':>10} {'bound':>12}")
for mult in (1.05, 1.5, 2.0, 3.0, 5.0):
    x = 8 * math.e * d_n * mult
    print(f"{x:>10.0f} {tail_bound(g, x):>12.3e}")
print("valid for x above 8 e D; the bound is crude but certain, and the")
print("observed exceedance frequency in simulation is zero well before it bites.")
