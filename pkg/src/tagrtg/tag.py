"""Tree adjoining grammars with feature-structure decorated nodes.

Every node of an elementary tree carries a top and a bottom feature
term.  Adjunction and substitution sites are the active nodes; the rank
of a tree is their number.  Derivation trees are labelled with tree
names, so names double as ranked terminal symbols later on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from tagrtg.features import (
    TOP,
    FeatureSyntaxError,
    FeatureTerm,
    format_feature,
    is_top,
    parse_feature_at,
)


class NodeKind(enum.Enum):
    ADJUNCTION = "adj"
    SUBSTITUTION = "subst"
    FOOT = "foot"
    ANCHOR = "anchor"
    INTERNAL = "internal"


ACTIVE_KINDS = (NodeKind.ADJUNCTION, NodeKind.SUBSTITUTION)


@dataclass(frozen=True)
class TreeNode:
    label: str
    kind: NodeKind = NodeKind.INTERNAL
    top: FeatureTerm = TOP
    bot: FeatureTerm = TOP
    children: tuple[TreeNode, ...] = ()

    @property
    def is_active(self) -> bool:
        return self.kind in ACTIVE_KINDS

    def nodes(self) -> Iterator[TreeNode]:
        """Preorder traversal, root first."""
        yield self
        for child in self.children:
            yield from child.nodes()


@dataclass(frozen=True)
class ElemTree:
    name: str
    auxiliary: bool
    root: TreeNode

    def nodes(self) -> Iterator[TreeNode]:
        return self.root.nodes()

    def active_nodes(self) -> tuple[TreeNode, ...]:
        """The sites in preorder; for trees with an active root it comes first."""
        return tuple(node for node in self.nodes() if node.is_active)

    @property
    def rank(self) -> int:
        return len(self.active_nodes())

    @property
    def root_active(self) -> bool:
        return self.root.is_active

    def foot(self) -> Optional[TreeNode]:
        for node in self.nodes():
            if node.kind is NodeKind.FOOT:
                return node
        return None


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class Tag:
    start: str
    trees: tuple[ElemTree, ...] = field(default_factory=tuple)

    @property
    def initials(self) -> tuple[ElemTree, ...]:
        return tuple(t for t in self.trees if not t.auxiliary)

    @property
    def auxiliaries(self) -> tuple[ElemTree, ...]:
        return tuple(t for t in self.trees if t.auxiliary)

    def tree(self, name: str) -> ElemTree:
        for t in self.trees:
            if t.name == name:
                return t
        raise KeyError(name)

    def validate(self) -> None:
        names: set[str] = set()
        for tree in self.trees:
            where = f"tree {tree.name!r}"
            if tree.name in names:
                raise ValidationError(f"duplicate {where}")
            names.add(tree.name)
            feet = [n for n in tree.nodes() if n.kind is NodeKind.FOOT]
            if tree.auxiliary:
                if len(feet) != 1:
                    raise ValidationError(f"auxiliary {where} needs exactly one foot node")
                if feet[0].label != tree.root.label:
                    raise ValidationError(f"{where}: foot label must match root label")
            elif feet:
                raise ValidationError(f"initial {where} cannot contain a foot node")
            for node in tree.nodes():
                what = f"{where}, node {node.label!r}"
                if node.kind in (NodeKind.SUBSTITUTION, NodeKind.FOOT, NodeKind.ANCHOR):
                    if node.children:
                        raise ValidationError(f"{what}: {node.kind.value} node must be a leaf")
                if node.kind is NodeKind.FOOT and not is_top(node.top):
                    raise ValidationError(f"{what}: foot node carries only a bottom feature")
                if node.kind is NodeKind.SUBSTITUTION and not is_top(node.bot):
                    raise ValidationError(f"{what}: substitution site carries only a top feature")
                if node.kind is NodeKind.ANCHOR and not (is_top(node.top) and is_top(node.bot)):
                    raise ValidationError(f"{what}: anchor carries no features")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


def _fail(text: str, pos: int, message: str) -> None:
    line = text.count("\n", 0, pos) + 1
    col = pos - text.rfind("\n", 0, pos)
    raise ParseError(message, line, col)


def _skip(text: str, pos: int) -> int:
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
        elif text[pos] == "#":
            end = text.find("\n", pos)
            pos = len(text) if end < 0 else end
        else:
            break
    return pos


_STOP = set(" \t\r\n():;{}=\",#[]")


def _word(text: str, pos: int) -> tuple[str, int]:
    start = pos
    while pos < len(text) and text[pos] not in _STOP:
        pos += 1
    if pos == start:
        _fail(text, pos, "expected a name")
    return text[start:pos], pos


def _expect(text: str, pos: int, ch: str) -> int:
    pos = _skip(text, pos)
    if pos >= len(text) or text[pos] != ch:
        _fail(text, pos, f"expected {ch!r}")
    return pos + 1


def parse_tag(text: str, validate: bool = True) -> Tag:
    start: Optional[str] = None
    trees: list[ElemTree] = []
    pos = 0
    while True:
        pos = _skip(text, pos)
        if pos >= len(text):
            break
        keyword, pos = _word(text, pos)
        if keyword == "start":
            pos = _expect(text, pos, ":")
            pos = _skip(text, pos)
            start, pos = _word(text, pos)
            pos = _expect(text, pos, ";")
        elif keyword in ("initial", "auxiliary"):
            brace = text.find("{", pos)
            if brace < 0:
                _fail(text, pos, "expected '{'")
            name = " ".join(text[pos:brace].split())
            if not name:
                _fail(text, pos, "expected a tree name")
            root, pos = _parse_node(text, _skip(text, brace + 1))
            pos = _expect(text, pos, "}")
            trees.append(ElemTree(name, keyword == "auxiliary", root))
        else:
            _fail(text, pos, f"expected 'start', 'initial' or 'auxiliary', got {keyword!r}")
    if start is None:
        _fail(text, len(text), "missing start symbol")
    tag = Tag(start, tuple(trees))
    if validate:
        tag.validate()
    return tag


_KINDS = {k.value: k for k in (NodeKind.ADJUNCTION, NodeKind.SUBSTITUTION, NodeKind.FOOT)}


def _parse_node(text: str, pos: int) -> tuple[TreeNode, int]:
    pos = _expect(text, pos, "(")
    pos = _skip(text, pos)
    label, pos = _word(text, pos)
    if label == "word":
        pos = _expect(text, pos, '"')
        end = text.find('"', pos)
        if end < 0:
            _fail(text, pos, "unterminated word")
        word = text[pos:end]
        pos = _expect(text, end + 1, ")")
        return TreeNode(word, NodeKind.ANCHOR), pos
    kind = NodeKind.INTERNAL
    top = bot = TOP
    children: list[TreeNode] = []
    while True:
        pos = _skip(text, pos)
        if pos >= len(text):
            _fail(text, pos, "unterminated node")
        if text[pos] == ")":
            return TreeNode(label, kind, top, bot, tuple(children)), pos + 1
        if text[pos] == "(":
            child, pos = _parse_node(text, pos)
            children.append(child)
            continue
        key, pos = _word(text, pos)
        pos = _expect(text, pos, "=")
        if key == "kind":
            pos = _skip(text, pos)
            value, pos = _word(text, pos)
            if value not in _KINDS:
                _fail(text, pos, f"unknown node kind {value!r}")
            kind = _KINDS[value]
        elif key in ("top", "bot"):
            try:
                term, pos = parse_feature_at(text, pos)
            except FeatureSyntaxError as err:
                _fail(text, err.position, str(err))
            if key == "top":
                top = term
            else:
                bot = term
        else:
            _fail(text, pos, f"unknown attribute {key!r}")


def format_tag(tag: Tag) -> str:
    lines = [f"start: {tag.start};"]
    for tree in tag.trees:
        keyword = "auxiliary" if tree.auxiliary else "initial"
        lines.append(f"{keyword} {tree.name} {{ {_format_node(tree.root)} }}")
    return "\n".join(lines) + "\n"


def _format_node(node: TreeNode) -> str:
    if node.kind is NodeKind.ANCHOR:
        return f'(word "{node.label}")'
    parts = [node.label]
    if node.kind is not NodeKind.INTERNAL:
        parts.append(f"kind={node.kind.value}")
    if not is_top(node.top):
        parts.append(f"top={format_feature(node.top)}")
    if not is_top(node.bot):
        parts.append(f"bot={format_feature(node.bot)}")
    parts.extend(_format_node(child) for child in node.children)
    return "(" + " ".join(parts) + ")"


def load_tag(path: str | Path, validate: bool = True) -> Tag:
    return parse_tag(Path(path).read_text(encoding="utf-8"), validate=validate)


def save_tag(tag: Tag, path: str | Path) -> None:
    Path(path).write_text(format_tag(tag), encoding="utf-8")


def bundled_grammar(name: str) -> Path:
    """Path of a grammar file shipped with the package."""
    return Path(__file__).parent / "grammars" / f"{name}.tag"
