"""Compute relation bases for the worked-example sizes and report timings.

    python scripts/run_fixtures.py [--show]

``--show`` also prints the relations for the small cases.
"""

import argparse
import time

from symrel import field_new, kernel_dim, relation_basis, wm_count
from symrel.relations import coeffs_in_prime_field, full_point_values

CASES = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3), (2, 2, 2), (2, 2, 3),
         (2, 3, 2), (3, 2, 2), (5, 1, 5), (7, 1, 4)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--show", action="store_true", help="print relations with at most 20 elements")
    args = ap.parse_args()
    print(f"{'q':>3} {'n':>2} {'wm':>5} {'dim':>6} {'basis s':>8} {'check s':>8}  prime-field")
    for p, k, n in CASES:
        F = field_new(p, k)
        t = time.perf_counter()
        B = relation_basis(F, n)
        built = time.perf_counter() - t
        t = time.perf_counter()
        assert not full_point_values(F, n, B.kernel).any()
        checked = time.perf_counter() - t
        assert B.dim == kernel_dim(F.q, n)
        prime = all(coeffs_in_prime_field(P) for P in B.basis)
        print(f"{F.q:>3} {n:>2} {wm_count(F.q, n):>5} {B.dim:>6} {built:>8.3f} {checked:>8.3f}  {prime}")
        if args.show and B.dim <= 20:
            print("".join("      " + line + "\n" for line in B.to_text().splitlines()), end="")


if __name__ == "__main__":
    main()
