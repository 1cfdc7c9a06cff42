"""Spectra and Rao j-invariants of a few curves of degree 4."""

from quartichilb import atlas
from quartichilb.cohomology import n_of_g, rao_presentation, spectrum

for g in (0, -3, -5):
    print(f"extremal g={g}: spectrum {sorted(spectrum(atlas.extremal_quartic(g)))}")
for g in (-3, -5, -7):
    T = atlas.general_thick_4line(g)
    print(f"thick g={g}: spectrum {sorted(spectrum(T))}, j={rao_presentation(T).j}, n(g)={n_of_g(g)}")
    for j in (2, 3):
        print(f"  witness j={j}: j={rao_presentation(atlas.thick_witness(g, j)).j}")
