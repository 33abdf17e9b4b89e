"""
Searching for difference partitions
===================================

A difference partition of ``Z_v`` splits the group into difference sets. The
search collects every difference set, prunes by block-size arithmetic, and
runs an exact cover over what is left. Each run produces a certificate.
"""

import json

from schurlab import diffsets as DS

print("Paley set mod 11:", sorted(DS.paley_set(11)))

for v in (7, 11, 13, 21):
    search = DS.search_difference_partitions(v, "non-trivial-only")
    rec = search.to_record()
    print(f"v={v}: sizes {rec['admissible_block_sizes']}, size multisets {rec['size_multisets']}, "
          f"found {len(rec['partitions'])}")

# Trivial partitions always exist; {0}, QR, QNR is the classic one for v = 7.
parts = DS.find_difference_partitions(7)
print(json.dumps(parts[0].to_record(), indent=1))
