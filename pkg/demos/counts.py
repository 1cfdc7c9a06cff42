"""Component counts of H_{4,g} under both readings of the G8 boundary."""

from quartichilb.components import asymptotic_check, count_report

for g in (-2, -6, -9, -100, -1000):
    r = count_report(g)
    print(f"g={g:>6}: {r['total_inclusive']:>6} inclusive, {r['total_strict']:>6} strict, "
          f"{r['four_line']:>6} from 4-lines")

for r in asymptotic_check([-100, -1000, -5000]):
    print(f"g={r['g']}: total/(g^2/24) = {r['total_ratio']:.4f}, other/(-3g/2) = {r['other_ratio']:.4f}")
