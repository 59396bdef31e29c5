#!/usr/bin/env python3
"""Write the scenario code files codes/Z1.stab .. codes/Z4.stab.

Z1  [[8,3,3]]   the [[2^m, 2^m-m-2, 3]] family member for m=3
Z2  [[10,4,3]]  first code found by a seeded random search over commuting
                generator sets (distance checked exhaustively)
Z3  [[13,1,5]]  quadratic-residue cyclic code, p = 13
Z4  [[29,1,11]] quadratic-residue cyclic code, p = 29 (distance checked
                only up to weight 6 here)

Every file is validated and distance-checked before being written.
"""

import argparse
import random
from pathlib import Path

from quatqec.decode import verify_distance
from quatqec.pauli import (
    PauliString,
    StabilizerCode,
    find_logicals,
    format_code_file,
    gf2_rank,
    parse_pauli,
    symplectic,
    validate,
)


def code_8_3_3() -> StabilizerCode:
    gens = [parse_pauli(s) for s in ("XXXXXXXX", "ZZZZZZZZ", "IXIXYZYZ", "IXZYIXZY", "IYXZXZIY")]
    lx, lz = find_logicals(8, gens)
    return StabilizerCode(8, 3, 3, tuple(gens), tuple(lx), tuple(lz))


def quadratic_residue_code(p: int, d: int) -> StabilizerCode:
    """Cyclic shifts of the string with X on quadratic residues, Z on non-residues."""
    residues = {(i * i) % p for i in range(1, p)}
    base = ["I"] + ["X" if a in residues else "Z" for a in range(1, p)]
    shifts = ["".join(base[(i - s) % p] for i in range(p)) for s in range(p - 1)]
    gens = tuple(parse_pauli(s) for s in shifts)
    return StabilizerCode(p, 1, d, gens, (parse_pauli("X" * p),), (parse_pauli("Z" * p),))


def random_code(n: int, k: int, d: int, seed: int, max_tries: int = 20000) -> tuple[StabilizerCode, int]:
    rng = random.Random(seed)
    for attempt in range(max_tries):
        vecs: list[int] = []
        while len(vecs) < n - k:
            v = rng.getrandbits(2 * n)
            if v and all(symplectic(v, u, n) == 0 for u in vecs) and gf2_rank(vecs + [v]) == len(vecs) + 1:
                vecs.append(v)
        gens = [PauliString.from_vector(n, v) for v in vecs]
        lx, lz = find_logicals(n, gens)
        code = StabilizerCode(n, k, d, tuple(gens), tuple(lx), tuple(lz))
        if not verify_distance(code, d - 1).found:
            return code, attempt
    raise RuntimeError("no code found")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=Path(__file__).resolve().parent.parent / "codes", type=Path)
    ap.add_argument("--seed", default=2024, type=int)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    z2, attempt = random_code(10, 4, 3, args.seed)
    codes = {
        "Z1": (code_8_3_3(), "[[8,3,3]] code, m=3 member of the [[2^m,2^m-m-2,3]] family", 2),
        "Z2": (z2, f"[[10,4,3]] from seeded random search (seed {args.seed}, attempt {attempt})", 2),
        "Z3": (quadratic_residue_code(13, 5), "[[13,1,5]] quadratic-residue cyclic code", 4),
        "Z4": (quadratic_residue_code(29, 11), "[[29,1,11]] quadratic-residue cyclic code", 6),
    }
    for label, (code, comment, checked) in codes.items():
        validate(code)
        report = verify_distance(code, checked, budget=10**9)
        if report.found:
            raise SystemExit(f"{label}: {report}")
        note = f"{comment}\nno logical operator of weight <= {checked} (exhaustive check)"
        path = args.out / f"{label}.stab"
        path.write_text(format_code_file(code, note))
        print(f"{label}: wrote {path} ({note.splitlines()[-1]})")


if __name__ == "__main__":
    main()
