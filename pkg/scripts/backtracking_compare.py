"""Compare top-down generation effort before and after the left-corner
transformation.

Both grammars describe the same derivation trees, but the transformed
one surfaces root-adjunction constraints at the first rewrite of a
substitution site instead of at the closing ε-rule.  Dead branches are
therefore pruned earlier, which shows up as fewer attempted and fewer
failed rule applications for the same language slice.

Usage:
    python3 scripts/backtracking_compare.py [--grammar PATH] [--depths 4 5 6 7]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from tagrtg.leftcorner import lc_fbrtg
from tagrtg.rtg import enumerate_trees, reduce_grammar
from tagrtg.tag import bundled_grammar, load_tag
from tagrtg.translate import to_fbrtg


def measure(grammar, depth):
    stats = {}
    trees = sum(1 for _ in enumerate_trees(grammar, depth, stats=stats))
    return trees, stats["steps"], stats["failures"]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grammar", default=str(bundled_grammar("fig2")),
                        help="a .tag file (default: the bundled fragment)")
    parser.add_argument("--depths", type=int, nargs="+", default=[4, 5, 6, 7])
    args = parser.parse_args(argv)

    tag = load_tag(args.grammar)
    grammars = {
        "standard": reduce_grammar(to_fbrtg(tag)),
        "left-corner": reduce_grammar(lc_fbrtg(tag)),
    }

    print(f"{'form':<12} {'depth':>5} {'trees':>6} {'steps':>7} {'failures':>9} {'fail rate':>10}")
    totals = {}
    for name, grammar in grammars.items():
        steps_total = failures_total = 0
        for depth in args.depths:
            trees, steps, failures = measure(grammar, depth)
            steps_total += steps
            failures_total += failures
            print(f"{name:<12} {depth:>5} {trees:>6} {steps:>7} {failures:>9} "
                  f"{failures / steps if steps else 0.0:>10.3f}")
        totals[name] = (steps_total, failures_total)

    std_steps, std_failures = totals["standard"]
    lc_steps, lc_failures = totals["left-corner"]
    if std_steps and std_failures:
        print()
        print(f"attempted applications: {lc_steps}/{std_steps} "
              f"({100 * (1 - lc_steps / std_steps):.0f}% fewer after the transformation)")
        print(f"failed applications:    {lc_failures}/{std_failures} "
              f"({100 * (1 - lc_failures / std_failures):.0f}% fewer)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
