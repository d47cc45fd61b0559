"""Linear notation for graphs.

    graph := item*
    item  := ATOM | "(" graph ")" | "{" graph "=>" graph "}" | "{" graph "|" graph "}"

"#" is sugar for the empty cut and "%" starts a comment. Atom names are lowercase
identifiers other than "v" and the proof-script keywords.
"""
from typing import List

from lark import Lark, Transformer
from lark.exceptions import LarkError

from src.models.graph import EMPTY, Atom, Cut, Disj, Graph, Scroll
from src.syntax.common import ATOM_PATTERN, COMMENTS, to_parse_error

GRAPH_RULES = r"""
graph: item*
item: ATOM                      -> atom
    | "(" graph ")"             -> cut
    | "#"                       -> falsum
    | "{" graph "=>" graph "}"  -> scroll
    | "{" graph "|" graph "}"   -> disj

ATOM: """ + ATOM_PATTERN + "\n"

GRAPH_GRAMMAR = "start: graph\n" + GRAPH_RULES + COMMENTS


class GraphBuilder(Transformer):
    """Turns parse trees into canonical Graph values."""

    def start(self, children):
        return children[0]

    def graph(self, children):
        return Graph(tuple(children))

    def atom(self, children):
        return Atom(str(children[0]))

    def cut(self, children):
        return Cut(children[0])

    def falsum(self, _children):
        return Cut(EMPTY)

    def scroll(self, children):
        return Scroll(children[0], children[1])

    def disj(self, children):
        return Disj(children[0], children[1])


_parser = Lark(GRAPH_GRAMMAR, parser="lalr", transformer=GraphBuilder())


def parse_graph(text: str) -> Graph:
    try:
        return _parser.parse(text)
    except LarkError as e:
        raise to_parse_error(e, "graph") from e


def print_graph(g: Graph) -> str:
    return g.key


def parse_graph_file(text: str) -> List[Graph]:
    """One graph per line; lines that are blank once comments are stripped are skipped."""
    graphs: List[Graph] = []
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("%", 1)[0].strip()
        if not content:
            continue
        try:
            graphs.append(_parser.parse(content))
        except LarkError as e:
            error = to_parse_error(e, f"graph on line {number}")
            raise error from e
    return graphs
