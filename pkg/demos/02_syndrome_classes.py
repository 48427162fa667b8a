"""How many distinct syndromes actually need to be evaluated.

A raw syndrome has q^((m-1)(n-1)) possible values, but every probability
depends only on its multiset of values, and the full-table entropy only on
the k-profile.
"""
from ghzdistill.classes import (enumerate_multiset_classes, enumerate_profiles,
                                multiset_class_count, profile_count)

for q, m, n in [(2, 3, 7), (2, 4, 15), (2, 5, 15), (3, 3, 7)]:
    raw = q ** ((m - 1) * (n - 1))
    print(f"q={q} m={m} n={n}: raw {raw:.3e}  multisets {multiset_class_count(q, m, n):>8}"
          f"  profiles {profile_count(q, m, n):>4}")

print()
print("profiles for q=2, m=3, n=3 (f[i] = number of bit-flip patterns with i flipped copies)")
for prof in enumerate_profiles(2, 3, 3):
    print(f"  f={prof.f}  raw syndromes={prof.cardinality}")

print()
print("multiset classes for q=2, m=3, n=3")
for cls in enumerate_multiset_classes(2, 3, 3):
    print(f"  {cls.as_dict()}  raw syndromes={cls.cardinality}")
