"""
Temporal shape gallery
======================

Hand-crafted level trajectories that trigger each of the eight shape
labels, classified and rendered as miniature strips.  Levels are bin
indices: 0 is the top of the map, larger is worse.

Run from the repository root: ``python3 demos/shape_gallery.py``
"""
from pathlib import Path

from timerank import ClassifierParams, LevelProfile, classify, detect_plateaus, render_profile_strip

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# delta_spike=2: a point "dominates" when it sits 2+ bins above;
# equiv_tol=1: levels one bin apart still merge into a plateau;
# lambda=2, rho=0.5: EMERGING when half the levels reach the top 3 bins.
params = ClassifierParams(delta_spike=2, epsilon=0, lambda_level=2, rho=0.5, equiv_tol=1)

gallery = {
    "spike": (6, 6, 0, 6, 6),
    "fluttering": (1, 6, 1, 6, 1, 6),
    "progressive_decreasing": (0, 1, 3, 4, 6),
    "progressive_increasing": (6, 4, 3, 1, 0),
    "multistagnant": (5, 5, 5, 7, 6, 6, 6),
    "late_monostagnant": (5, None, 6, None, 4, 4, 4),
    "early_monostagnant": (4, 4, 4, None, 6, None, 5),
    "emerging": (9, 1, 0, 2, 1),
    "with_gaps": (2, None, 2, 2, 2, None, 8),
}

for name, levels in gallery.items():
    profile = LevelProfile.from_levels(name, levels)
    labels = classify(profile, params)
    plateaus = detect_plateaus(profile, params.equiv_tol)
    print(f"{name:24s} levels={levels}")
    print(f"{'':24s} primary={labels.primary.value if labels.primary else 'NONE'}  "
          f"matched={sorted(l.value for l in labels.matched)}  "
          f"plateaus={[(p.start, p.end) for p in plateaus]}")
    (OUT / f"strip_{name}.svg").write_text(render_profile_strip(profile, labels))

print(f"\nstrips written to {OUT}/strip_*.svg")
