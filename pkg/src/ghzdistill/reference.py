"""Published threshold fidelities bundled for side-by-side comparison.

Values are stored as 4-decimal strings exactly as printed.  They are
comparison data only: nothing in the library reads them to compute a result.
"""
from __future__ import annotations

from decimal import Decimal

_M = (2, 3, 4, 5, 6)


def _grid(rows: dict[int, str]) -> dict[tuple[int, int], Decimal]:
    out = {}
    for n, line in rows.items():
        for m, cell in zip(_M, line.split()):
            out[(m, n)] = Decimal(cell)
    return out


# keyed by (m, n)
THRESHOLDS: dict[str, dict[tuple[int, int], Decimal]] = {
    "ss-q2": _grid({
        2: "0.8113 0.8109 0.8103 0.8115 0.8142",
        3: "0.8099 0.7870 0.7699 0.7593 0.7536",
        4: "0.8102 0.7753 0.7486 0.7301 0.7184",
        5: "0.8097 0.7675 0.7351 0.7118 0.6961",
        6: "0.8100 0.7622 0.7256 0.6992 0.6808",
        7: "0.8098 0.7582 0.7185 0.6898 0.6696",
        11: "0.8104 0.7492 0.7021 0.6677 0.6435",
        15: "0.8110 0.7449 0.6938 0.6565 0.6301",
        21: "0.8118 0.7416 0.6870 0.6471 0.6188",
        31: "0.8128 0.7391 0.6814 0.6390 0.6089",
    }),
    "ms-q2": _grid({
        2: "0.8137 0.7788 0.7541 0.7369 0.7253",
        3: "0.8101 0.7631 0.7261 0.6991 0.6781",
        4: "0.8102 0.7551 0.7091 0.6781 0.6571",
        5: "0.8095 0.7566 0.7111 0.6771 0.6521",
        6: "0.8100 0.7522 0.7081 0.6721 0.6421",
        7: "0.8098 0.7501 0.7051 0.6711 0.6441",
        11: "0.8104 0.7475 0.6951 0.6581 0.6311",
        15: "0.8110 0.7446 0.6901 0.6511 0.6221",
    }),
    "cl-q2": _grid({
        2: "0.8137 0.7084 0.6655 0.6378 0.6204",
        3: "0.8101 0.7122 0.6793 0.6584 0.6501",
        4: "0.8102 0.7165 0.6906 0.6680 0.6532",
        5: "0.8095 0.7111 0.6776 0.6582 0.6357",
        6: "0.8100 0.7099 0.6684 0.6551 0.6217",
        7: "0.8098 0.7086 0.6650 0.6480 0.6133",
        11: "0.8104 0.7081 0.6642 0.6372 0.6062",
        15: "0.8110 0.7074 0.6601 0.6284 0.6036",
    }),
    "ss-q3": _grid({
        2: "0.7462 0.7538 0.7609 0.7693 0.7778",
        3: "0.7445 0.7243 0.7145 0.7127 0.7148",
        4: "0.7445 0.7089 0.6885 0.6799 0.6779",
        5: "0.7442 0.6994 0.6722 0.6588 0.6539",
        6: "0.7441 0.6927 0.6611 0.6443 0.6370",
        7: "0.7441 0.6877 0.6530 0.6337 0.6246",
        11: "0.7444 0.6759 0.6338 0.6096 0.5962",
        15: "0.7449 0.6700 0.6238 0.5974 0.5823",
    }),
    "ms-q3": _grid({
        2: "0.7499 0.7114 0.6892 0.6780 0.6728",
        3: "0.7450 0.7034 0.6776 0.6640 0.6575",
        4: "0.7448 0.6944 0.6591 0.6389 0.6289",
        5: "0.7444 0.6849 0.6452 0.6234 0.6127",
        6: "0.7443 0.6829 0.6418 0.6172 0.6041",
        7: "0.7443 0.6810 0.6390 0.6121 0.5967",
        11: "0.7446 0.6738 0.6289 0.5997 0.5808",
        15: "0.7451 0.6692 0.6212 0.5927 0.5740",
    }),
    "cl-q3": _grid({
        2: "0.7499 0.6419 0.6120 0.5981 0.5921",
        3: "0.7450 0.6222 0.5908 0.5762 0.5697",
        4: "0.7448 0.6282 0.6016 0.5821 0.5868",
        5: "0.7444 0.6337 0.6104 0.5916 0.5895",
        6: "0.7443 0.6334 0.6061 0.5896 0.5855",
        7: "0.7443 0.6304 0.6023 0.5877 0.5829",
        11: "0.7446 0.6249 0.5910 0.5790 0.5670",
        15: "0.7451 0.6235 0.5865 0.5701 0.5560",
    }),
}

# q = 2 lower bounds keyed by m
BOUNDS = {2: Decimal("0.7500"), 3: Decimal("0.6111"), 4: Decimal("0.5500")}

# single-copy hashing thresholds, q = 2, keyed by (protocol, m)
BASELINES = {("d1", 3): Decimal("0.8075"), ("d2", 3): Decimal("0.7554")}

TABLE_IDS = tuple(THRESHOLDS) + ("bounds", "baselines")


def table_spec(table_id: str) -> tuple[str, int]:
    """``(protocol, q)`` for a threshold-grid id such as ``"cl-q2"``."""
    if table_id not in THRESHOLDS:
        raise KeyError(f"no threshold grid {table_id!r}; choose from {TABLE_IDS}")
    protocol, qtag = table_id.split("-")
    return protocol, int(qtag[1:])


def lookup(protocol: str, q: int, m: int, n: int | None = None) -> Decimal | None:
    protocol = protocol.lower()
    if protocol in ("d1", "d2"):
        return BASELINES.get((protocol, m)) if q == 2 else None
    return THRESHOLDS.get(f"{protocol}-q{q}", {}).get((m, n))
