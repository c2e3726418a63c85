"""Command-line front end for the transformation pipeline.

Exit status: 0 on success, 1 when `check` rejects a tree, 2 on any
parse or validation error.  All commands are deterministic; identical
inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from tagrtg.features import FeatureSyntaxError, is_top
from tagrtg.leftcorner import MalformedLcTree, RootNotAdjoinable, lc_fbrtg, lc_inverse
from tagrtg.rtg import (
    AlphabetError,
    GrammarError,
    accepts_detailed,
    enumerate_trees,
    erase_features,
    reduce_grammar,
)
from tagrtg.rtg_io import RtgParseError, format_rtg, load_rtg
from tagrtg.tag import NodeKind, ParseError, Tag, ValidationError, load_tag
from tagrtg.translate import symbols, to_fbrtg
from tagrtg.trees import TreeSyntaxError, parse_tree, to_dot

_USER_ERRORS = (
    ParseError,
    ValidationError,
    RtgParseError,
    TreeSyntaxError,
    FeatureSyntaxError,
    GrammarError,
    RootNotAdjoinable,
    MalformedLcTree,
    OSError,
)


def cmd_translate(args) -> int:
    tag = load_tag(args.grammar)
    result = lc_fbrtg(tag) if args.lc else to_fbrtg(tag)
    if not args.features:
        result = erase_features(result)
    if args.reduce:
        result = reduce_grammar(result)
    text = format_rtg(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_enumerate(args) -> int:
    grammar = load_rtg(args.grammar)
    for index, tree in enumerate(enumerate_trees(grammar, args.max_depth)):
        if args.format == "dot":
            sys.stdout.write(to_dot(tree, f"tree{index}"))
        else:
            print(tree)
    return 0


def cmd_check(args) -> int:
    grammar = load_rtg(args.grammar)
    tree = parse_tree(args.tree)
    try:
        result = accepts_detailed(grammar, tree)
    except AlphabetError as err:
        print(f"rejected: {err}")
        return 1
    if result.accepted:
        for step in result.steps:
            print(step)
        print(f"accepted: {result.env}")
        return 0
    print(f"rejected at {result.failure_position}: {result.failure}")
    return 1


def cmd_invert(args) -> int:
    grammar = load_rtg(args.grammar)
    tree = parse_tree(args.tree)
    print(lc_inverse(grammar, tree))
    return 0


def _inert_feature_notes(tag: Tag) -> list[str]:
    """Features on nodes no rule ever touches, reported rather than lost."""
    notes = []
    for tree in tag.trees:
        for node in tree.nodes():
            if node.kind is not NodeKind.INTERNAL:
                continue
            inert = []
            if node is tree.root:
                if not is_top(node.bot):
                    inert.append("bot")
            else:
                if not is_top(node.top):
                    inert.append("top")
                if not is_top(node.bot):
                    inert.append("bot")
            if inert:
                notes.append(
                    f"note: {'/'.join(inert)} features on inactive node"
                    f" {node.label!r} of {tree.name!r} are ignored"
                )
    return notes


def cmd_stats(args) -> int:
    tag = load_tag(args.grammar)
    initials = len(tag.initials)
    auxiliaries = len(tag.auxiliaries)
    print(f"elementary trees: {initials + auxiliaries}"
          f" ({initials} initial, {auxiliaries} auxiliary)")
    print(f"symbols: {len(symbols(tag))}")
    standard = to_fbrtg(tag)
    print(f"standard translation: {len(standard.rules)} rules,"
          f" {len(standard.nonterminals)} nonterminals")
    try:
        lc = lc_fbrtg(tag)
    except RootNotAdjoinable as err:
        print(f"left-corner translation: unavailable ({err})")
    else:
        print(f"left-corner translation: {len(lc.rules)} rules,"
              f" {len(lc.nonterminals)} nonterminals")
        print(f"growth ratio: {len(lc.rules) / len(standard.rules):.2f}")
    for note in _inert_feature_notes(tag):
        print(note)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tagrtg",
        description="Turn TAGs into derivation-tree grammars and work with them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="convert a .tag file to a (feature) RTG")
    p.add_argument("grammar", help="path to a .tag file")
    p.add_argument("--lc", action="store_true", help="apply the left-corner transformation")
    p.add_argument("--features", action="store_true", help="keep feature constraints")
    p.add_argument("--reduce", action="store_true", help="prune and normalize the result")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("enumerate", help="list derivation trees up to a depth")
    p.add_argument("grammar", help="path to a .rtg file")
    p.add_argument("--max-depth", type=int, required=True,
                   help="bound on tree height (required: languages may be infinite)")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("check", help="test membership of a derivation tree")
    p.add_argument("grammar", help="path to a .rtg file")
    p.add_argument("tree", help="derivation tree, e.g. 'caught(fish(e_A), e_A, fish(e_A))'")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("invert", help="map a left-corner derivation tree back")
    p.add_argument("grammar", help="path to a .rtg file in lc form")
    p.add_argument("tree", help="derivation tree over the transformed alphabet")
    p.set_defaults(run=cmd_invert)

    p = sub.add_parser("stats", help="report sizes and growth for a .tag file")
    p.add_argument("grammar", help="path to a .tag file")
    p.set_defaults(run=cmd_stats)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except _USER_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
