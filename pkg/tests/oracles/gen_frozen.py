"""Regenerate tests/data/classical_chart_oracle.json from the lambda-complex
oracle.  Run from the repository root:

    python tests/oracles/gen_frozen.py

The output is committed; tests compare the resolution engine against it.
"""

from __future__ import annotations

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from lambda_complex import check_dd_zero, cocycle_basis, ext_dim  # noqa: E402

SPOT_STEMS = [0, 1, 2, 3, 7, 14, 15, 17]
SPOT_MAX_F = 16
BLOCK_MAX_STEM = 21
BLOCK_MAX_F = 12


def product_fact(s1, f1, s2, f2) -> bool:
    """Whether the product of the unique classes at the two spots is nonzero
    (both spots must be one-dimensional)."""
    [a] = cocycle_basis(s1, f1)
    [b] = cocycle_basis(s2, f2)
    return not a.multiply(b).is_zero_class()


def main():
    assert check_dd_zero(14, 9), "oracle differential is broken"
    data = {
        "spot_columns": {
            str(s): [ext_dim(s, f) for f in range(SPOT_MAX_F + 1)] for s in SPOT_STEMS
        },
        "block": {},
        "products_nonzero": {},
    }
    for s in range(BLOCK_MAX_STEM + 1):
        for f in range(BLOCK_MAX_F + 1):
            d = ext_dim(s, f)
            if d:
                data["block"][f"{s},{f}"] = d
    # Independent product facts used by the chart-structure tests:
    # h0 ladders on the stem-7 and stem-15 towers, and the multiplication
    # h1 * (8k+2, 4k+2) -> (8k+3, 4k+3).
    facts = {
        "h0*(7,1)": (0, 1, 7, 1),
        "h0*(7,2)": (0, 1, 7, 2),
        "h0*(7,3)": (0, 1, 7, 3),
        "h0*(15,6)": (0, 1, 15, 6),
        "h1*(2,2)": (1, 1, 2, 2),
        "h1*(10,6)": (1, 1, 10, 6),
        "h1*(18,10)": (1, 1, 18, 10),
        "h1*(1,1)": (1, 1, 1, 1),
        "h0*(1,1)": (0, 1, 1, 1),
        "h1*(14,4)": (1, 1, 14, 4),
        "h1*(17,4)": (1, 1, 17, 4),
    }
    for name, (s1, f1, s2, f2) in facts.items():
        data["products_nonzero"][name] = product_fact(s1, f1, s2, f2)
    out = pathlib.Path(__file__).parent.parent / "data" / "classical_chart_oracle.json"
    out.write_text(json.dumps(data, indent=1, sort_keys=True))
    print(f"wrote {out}")
    for name, value in data["products_nonzero"].items():
        print(f"  {name}: {value}")


if __name__ == "__main__":
    main()
