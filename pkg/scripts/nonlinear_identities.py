"""Print the LLL-reduced degree-6 identities in x^6 and x^5 y with their linearizations' sizes."""

from symdias.expansion import collapsed_matrix
from symdias.pipeline import degree6_nonlinear, linearize

for pattern in ("x6", "x5y"):
    E = collapsed_matrix(pattern)
    ids = degree6_nonlinear(pattern)
    print(f"{pattern}: matrix {E.shape[0]} x {E.shape[1]}, nullity {len(ids)}")
    for f in ids:
        lin = linearize(f)
        print(f"  {f.format()}")
        print(f"    linearization: {sum(1 for c in lin if c)} multilinear terms")
