"""Proof-script notation (.gpf).

    file   := ("system" SYSID decl*)*
    decl   := "theorem" NAME ("vars" ATOM+)? "from" ":" graph step* "qed"
    step   := "step" RULE ("witness" graph | "split" graph | "[" ID ("," ID)* "]")* "=>" graph
            | "have" ID ":" graph "|-" graph "{" step* "}"
            | "lemma" NAME ("[" ATOM ":=" graph (";" ATOM ":=" graph)* "]")? "=>" graph

Subproofs are hoisted to the top of their block when printed.
"""
from typing import List, Optional, Sequence, Tuple, Union

from lark import Lark
from lark.exceptions import LarkError

from src.exceptions import ParseError
from src.models.graph import Graph
from src.models.proof import Derivation, LemmaStep, ProofScript, RuleStep, SystemId
from src.syntax.common import COMMENTS, to_parse_error
from src.syntax.graphs import GRAPH_RULES, GraphBuilder

PROOF_GRAMMAR = r"""
start: section*
section: "system" UPPER decl*
decl: "theorem" ATOM vars? "from" ":" graph _body "qed"
vars: "vars" ATOM+
_body: (step | have | lemma_use)*
step: "step" UPPER options "=>" graph
options: (witness | split | premises)*
witness: "witness" graph
split: "split" graph
premises: "[" ATOM ("," ATOM)* "]"
have: "have" ATOM ":" graph "|-" graph "{" _body "}"
lemma_use: "lemma" ATOM subst? "=>" graph
subst: "[" binding (";" binding)* "]"
binding: ATOM ":=" graph

UPPER: /[A-Z][A-Z0-9_]*/
""" + GRAPH_RULES + COMMENTS

_parser = Lark(PROOF_GRAMMAR, parser="earley", lexer="basic")


class _Have:
    def __init__(self, label: str, source: Graph, target: Graph, body: list):
        self.label = label
        self.source = source
        self.target = target
        self.body = body


class ScriptBuilder(GraphBuilder):
    def start(self, children):
        theorems: List[Derivation] = []
        for section in children:
            theorems.extend(section)
        return ProofScript(tuple(theorems))

    def section(self, children):
        system = SystemId.parse(str(children[0]))
        return [_assemble(system, *decl) for decl in children[1:]]

    def decl(self, children):
        name = str(children[0])
        rest = children[1:]
        variables: Tuple[str, ...] = ()
        if rest and isinstance(rest[0], tuple):
            variables, rest = rest[0], rest[1:]
        initial, body = rest[0], list(rest[1:])
        return initial, body, name, variables, None

    def vars(self, children):
        return tuple(str(token) for token in children)

    def step(self, children):
        rule, options, result = str(children[0]), children[1], children[2]
        return RuleStep(
            rule=rule,
            result=result,
            witness=options.get("witness"),
            split=options.get("split"),
            premises=options.get("premises", ()),
        )

    def options(self, children):
        return dict(children)

    def witness(self, children):
        return "witness", children[0]

    def split(self, children):
        return "split", children[0]

    def premises(self, children):
        return "premises", tuple(str(token) for token in children)

    def have(self, children):
        return _Have(str(children[0]), children[1], children[2], list(children[3:]))

    def lemma_use(self, children):
        name = str(children[0])
        if len(children) == 3:
            return LemmaStep(lemma=name, result=children[2], substitution=children[1])
        return LemmaStep(lemma=name, result=children[1])

    def subst(self, children):
        return tuple(children)

    def binding(self, children):
        return str(children[0]), children[1]


def _assemble(
    system: SystemId,
    initial: Graph,
    body: list,
    name: Optional[str],
    variables: Tuple[str, ...],
    goal: Optional[Graph],
) -> Derivation:
    steps = []
    subproofs: List[Tuple[str, Derivation]] = []
    for entry in body:
        if isinstance(entry, _Have):
            if any(label == entry.label for label, _ in subproofs):
                raise ParseError(f"proof script: duplicate subproof name {entry.label!r}")
            sub = _assemble(system, entry.source, entry.body, None, (), entry.target)
            subproofs.append((entry.label, sub))
        else:
            steps.append(entry)
    return Derivation(
        system=system,
        initial=initial,
        steps=tuple(steps),
        subproofs=tuple(subproofs),
        name=name,
        variables=variables,
        goal=goal,
    )


def parse_proof(text: str) -> ProofScript:
    try:
        tree = _parser.parse(text)
        return ScriptBuilder().transform(tree)
    except LarkError as e:
        raise to_parse_error(e, "proof script") from e


def _graph(g: Graph) -> str:
    return g.key


def _print_step(step: Union[RuleStep, LemmaStep]) -> str:
    if isinstance(step, LemmaStep):
        text = f"lemma {step.lemma}"
        if step.substitution:
            bindings = "; ".join(f"{var} := {_graph(g)}".rstrip() for var, g in step.substitution)
            text += f" [{bindings}]"
        return f"{text} => {_graph(step.result)}".rstrip()
    parts = [f"step {step.rule}"]
    if step.witness is not None:
        parts.append(f"witness {_graph(step.witness)}".rstrip())
    if step.split is not None:
        parts.append(f"split {_graph(step.split)}".rstrip())
    if step.premises:
        parts.append("[" + ", ".join(step.premises) + "]")
    parts.append(f"=> {_graph(step.result)}".rstrip())
    return " ".join(parts)


def _print_body(derivation: Derivation, indent: str) -> List[str]:
    lines: List[str] = []
    for label, sub in derivation.subproofs:
        target = sub.goal if sub.goal is not None else sub.final
        header = f"have {label}: {_graph(sub.initial)} |- {_graph(target)} {{".replace("  ", " ")
        lines.append(indent + header)
        lines.extend(_print_body(sub, indent + "  "))
        lines.append(f"{indent}}}")
    for step in derivation.steps:
        lines.append(indent + _print_step(step))
    return lines


def print_derivation(derivation: Derivation) -> str:
    header = f"theorem {derivation.name or 'unnamed'}"
    if derivation.variables:
        header += " vars " + " ".join(derivation.variables)
    lines = [header, f"from: {_graph(derivation.initial)}".rstrip()]
    lines.extend(_print_body(derivation, "  "))
    lines.append("qed")
    return "\n".join(lines)


def print_proof(theorems: Union[ProofScript, Sequence[Derivation]]) -> str:
    """Print theorems, opening a new system section whenever the system changes."""
    blocks: List[str] = []
    current: Optional[SystemId] = None
    for derivation in theorems:
        if derivation.system != current:
            current = derivation.system
            blocks.append(f"system {current.value}")
        blocks.append(print_derivation(derivation))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
