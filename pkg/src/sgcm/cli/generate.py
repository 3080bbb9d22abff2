"""Seeded random monomial quotients used for the property corpus."""

from __future__ import annotations

import argparse
import random
from pathlib import Path
from typing import List, Optional

from ..exactalg import Ideal, PolyRing

VARIABLES = ("a", "b", "c", "d")


def random_monomial_ideal(rng: random.Random, nvars: int, max_degree: int = 3, max_gens: int = 4, squarefree: bool = False) -> Ideal:
    """A nonzero proper monomial ideal with generators of degree 1..max_degree."""
    ring = PolyRing(VARIABLES[:nvars])
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        deg = rng.randint(1, max_degree)
        exps = [0] * nvars
        if squarefree:
            for i in rng.sample(range(nvars), min(deg, nvars)):
                exps[i] = 1
        else:
            for _ in range(deg):
                exps[rng.randrange(nvars)] += 1
        gens.append(tuple(exps))
    return Ideal(ring, [ring.monomial(e) for e in dict.fromkeys(gens)])


def instance_text(I: Ideal, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"ring Q[{','.join(I.ring.variables)}]")
    lines.append("ideal I = " + ", ".join(str(g) for g in I.generators))
    lines.append("module M = quot(I)")
    return "\n".join(lines) + "\n"


def random_corpus(seed: int, count: int, max_vars: int = 4, max_degree: int = 3) -> List[Ideal]:
    """``count`` instances in 2..max_vars variables, reproducible from ``seed``."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(2, max_vars)
        out.append(random_monomial_ideal(rng, n, max_degree, squarefree=(k % 2 == 0)))
    return out


def write_corpus(directory, seed: int, count: int, max_vars: int = 4, max_degree: int = 3) -> List[Path]:
    """Write ``count`` session files ``monomial_<seed>_<k>.sgcm`` into ``directory``."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, I in enumerate(random_corpus(seed, count, max_vars, max_degree)):
        path = out_dir / f"monomial_{seed}_{k:03d}.sgcm"
        path.write_text(instance_text(I, f"random monomial quotient, seed {seed}, instance {k}"), encoding="utf-8")
        paths.append(path)
    return paths


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(prog="python3 -m sgcm.cli.generate", description="Write a seeded monomial corpus.")
    parser.add_argument("directory")
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--count", type=int, default=24)
    args = parser.parse_args(argv)
    for path in write_corpus(args.directory, args.seed, args.count):
        print(path)


if __name__ == "__main__":
    main()


__all__ = ["instance_text", "random_corpus", "random_monomial_ideal", "write_corpus"]
