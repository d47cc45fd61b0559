"""Natural deduction checking and compilation into ALFA_I derivations."""
from itertools import count
from typing import Dict, FrozenSet, List, Optional, Tuple

from src.exceptions import CompilationDefect, NDProofError
from src.models.formula import BOT, And, Formula, Imp, Or, embed, iff, translate
from src.models.graph import Disj, Graph, Scroll, juxtapose, sheet
from src.models.lemma import LemmaDb
from src.models.natural_deduction import ARITY, LABELLED, NDJudgment, NDProof, NDRule, NDVerdict
from src.models.proof import Derivation, RuleStep, Step, SystemId
from src.services.checker import DerivationChecker
from src.services.semantics import ipc_valid
from src.syntax.formulas import print_formula

Hypotheses = FrozenSet[Tuple[str, Formula]]


def _fail(node: NDProof, message: str) -> NDProofError:
    return NDProofError(f"{node.rule.value}({print_formula(node.conclusion)}): {message}")


def _discharge(node: NDProof, open_: Hypotheses, label: str, formula: Formula) -> Hypotheses:
    for hyp_label, hyp in open_:
        if hyp_label == label and hyp != formula:
            raise _fail(node, f"label {label!r} discharges {print_formula(formula)} but marks {print_formula(hyp)}")
    return frozenset(pair for pair in open_ if pair[0] != label)


def _open_hypotheses(node: NDProof, bound: FrozenSet[str]) -> Hypotheses:
    if len(node.children) != ARITY[node.rule]:
        raise _fail(node, f"expects {ARITY[node.rule]} premise(s), has {len(node.children)}")
    if node.rule in LABELLED and node.label is None:
        raise _fail(node, "missing label")
    if node.rule not in LABELLED and node.label is not None:
        raise _fail(node, "unexpected label")
    if node.rule == NDRule.HYP:
        return frozenset({(node.label, node.conclusion)})

    inner = bound
    if node.rule in (NDRule.IMP_I, NDRule.OR_E):
        if node.label in bound:
            raise _fail(node, f"label {node.label!r} is already discharged by an enclosing rule")
        inner = bound | {node.label}
    opened = [_open_hypotheses(child, inner) for child in node.children]
    premises = [child.conclusion for child in node.children]
    c = node.conclusion

    match node.rule:
        case NDRule.AND_I:
            if c != And(premises[0], premises[1]):
                raise _fail(node, "conclusion is not the conjunction of the premises")
        case NDRule.AND_E_L:
            if not (isinstance(premises[0], And) and premises[0].left == c):
                raise _fail(node, "premise is not a conjunction with this left conjunct")
        case NDRule.AND_E_R:
            if not (isinstance(premises[0], And) and premises[0].right == c):
                raise _fail(node, "premise is not a conjunction with this right conjunct")
        case NDRule.OR_I_L:
            if not (isinstance(c, Or) and c.left == premises[0]):
                raise _fail(node, "conclusion is not a disjunction with the premise on the left")
        case NDRule.OR_I_R:
            if not (isinstance(c, Or) and c.right == premises[0]):
                raise _fail(node, "conclusion is not a disjunction with the premise on the right")
        case NDRule.BOT_E:
            if premises[0] != BOT:
                raise _fail(node, "premise is not F")
        case NDRule.IMP_E:
            if premises[1] != Imp(premises[0], c):
                raise _fail(node, "second premise is not an implication from the first to the conclusion")
        case NDRule.IMP_I:
            if not (isinstance(c, Imp) and premises[0] == c.right):
                raise _fail(node, "premise is not the consequent of the conclusion")
            opened[0] = _discharge(node, opened[0], node.label, c.left)
        case NDRule.OR_E:
            disjunction = premises[0]
            if not isinstance(disjunction, Or):
                raise _fail(node, "first premise is not a disjunction")
            if premises[1] != c or premises[2] != c:
                raise _fail(node, "case premises do not both conclude the conclusion")
            opened[1] = _discharge(node, opened[1], node.label, disjunction.left)
            opened[2] = _discharge(node, opened[2], node.label, disjunction.right)

    result: Hypotheses = frozenset().union(*opened)
    labels: Dict[str, Formula] = {}
    for label, formula in result:
        if labels.setdefault(label, formula) != formula:
            raise _fail(node, f"label {label!r} marks two different hypotheses")
    return result


def judgment_of(proof: NDProof) -> NDJudgment:
    """The root judgment; raises NDProofError when the tree is not a proof."""
    hypotheses = _open_hypotheses(proof, frozenset())
    return NDJudgment(tuple(sorted(hypotheses, key=lambda pair: pair[0])), proof.conclusion)


def check_nd(proof: NDProof) -> NDVerdict:
    try:
        return NDVerdict(accepted=True, judgment=judgment_of(proof))
    except NDProofError as e:
        return NDVerdict(accepted=False, reason=str(e))


# -- compilation ------------------------------------------------------------


Context = Tuple[Tuple[str, Formula], ...]


def context_graph(context: Context) -> Graph:
    return juxtapose(*(embed(formula) for _, formula in context))


class _Block:
    """Steps and hoisted subproofs of one chain under construction."""

    def __init__(self) -> None:
        self.steps: List[Step] = []
        self.subproofs: List[Tuple[str, Derivation]] = []

    def step(self, rule: str, result: Graph, **options) -> None:
        self.steps.append(RuleStep(rule=rule, result=result, **options))

    def absorb(self, other: "_Block") -> None:
        self.subproofs.extend(other.subproofs)
        self.steps.extend(other.steps)


class NDCompiler:
    """Translates checked natural deduction proofs into ALFA_I derivations.

    Every node compiles to a chain starting at the juxtaposition of its
    context's embeddings and ending at the embedding of its conclusion.
    Weakening is R2 erasure; contexts are duplicated through R0 with an
    empty identity subproof.
    """

    def __init__(self, use_r8id: bool = False):
        self.use_r8id = use_r8id
        self._names = count(1)

    def _fresh(self) -> str:
        return f"n{next(self._names)}"

    def _have(self, block: _Block, source: Graph, target: Graph, body: _Block) -> str:
        label = self._fresh()
        derivation = Derivation(
            system=SystemId.ALFA_I,
            initial=source,
            steps=tuple(body.steps),
            subproofs=tuple(body.subproofs),
            goal=target,
        )
        block.subproofs.append((label, derivation))
        return label

    def _sub(self, block: _Block, node: NDProof, context: Context) -> str:
        return self._have(block, context_graph(context), embed(node.conclusion), self.chain(node, context))

    def chain(self, node: NDProof, context: Context) -> _Block:
        g = context_graph(context)
        target = embed(node.conclusion)
        block = _Block()
        rule = node.rule

        if rule == NDRule.HYP:
            if target != g:
                block.step("R2", target)
        elif rule == NDRule.AND_I:
            first = self._sub(block, node.children[0], context)
            second = self._sub(block, node.children[1], context)
            block.step("R0", target, premises=(first, second))
        elif rule in (NDRule.AND_E_L, NDRule.AND_E_R):
            block.absorb(self.chain(node.children[0], context))
            if embed(node.children[0].conclusion) != target:
                block.step("R2", target)
        elif rule in (NDRule.OR_I_L, NDRule.OR_I_R):
            c = node.conclusion
            other = c.right if rule == NDRule.OR_I_L else c.left
            block.absorb(self.chain(node.children[0], context))
            block.step("I_OR", target, witness=embed(other))
        elif rule == NDRule.BOT_E:
            block.absorb(self.chain(node.children[0], context))
            block.step("E_BOT", target, witness=target)
        elif rule == NDRule.IMP_E:
            antecedent = embed(node.children[0].conclusion)
            scroll = embed(node.children[1].conclusion)
            if juxtapose(antecedent, scroll) != g:
                minor = self._sub(block, node.children[0], context)
                major = self._sub(block, node.children[1], context)
                block.step("R0", juxtapose(antecedent, scroll), premises=(minor, major))
            block.step("MPI", target)
        elif rule == NDRule.IMP_I:
            hypothesis = node.conclusion.left
            inner = context + ((node.label, hypothesis),)
            premise = self._sub(block, node.children[0], inner)
            if self.use_r8id and not context:
                block.step("R8ID", target, premises=(premise,))
            else:
                block.step("R8I", target, split=g, premises=(premise,))
        else:
            self._or_elim(block, node, context, g, target)
        return block

    def _or_elim(self, block: _Block, node: NDProof, context: Context, g: Graph, target: Graph) -> None:
        disjunction, left_case, right_case = node.children
        left, right = disjunction.conclusion.left, disjunction.conclusion.right
        e_left, e_right = embed(left), embed(right)
        guarded = sheet(Scroll(g, target))

        major = self._sub(block, disjunction, context)
        first = self._sub(block, left_case, context + ((node.label, left),))
        second = self._sub(block, right_case, context + ((node.label, right),))

        first_body, second_body, cases = _Block(), _Block(), _Block()
        first_body.step("R8I", guarded, split=e_left, premises=(first,))
        second_body.step("R8I", guarded, split=e_right, premises=(second,))
        first_scroll = self._have(block, e_left, guarded, first_body)
        second_scroll = self._have(block, e_right, guarded, second_body)
        cases.step("E_OR", guarded, premises=(first_scroll, second_scroll))
        cases_label = self._have(block, sheet(Disj(e_left, e_right)), guarded, cases)
        identity = self._have(block, g, g, _Block())

        block.step("R0", juxtapose(g, sheet(Disj(e_left, e_right))), premises=(identity, major))
        block.step("CTX", juxtapose(g, guarded), premises=(cases_label,))
        block.step("MPI", target)

    def compile(self, proof: NDProof, name: Optional[str] = None) -> Derivation:
        judgment = judgment_of(proof)
        context = judgment.hypotheses
        block = self.chain(proof, context)
        derivation = Derivation(
            system=SystemId.ALFA_I,
            initial=context_graph(context),
            steps=tuple(block.steps),
            subproofs=tuple(block.subproofs),
            name=name,
        )
        verdict = DerivationChecker(LemmaDb(), include_optional=self.use_r8id).check(derivation)
        if not verdict.accepted:
            raise CompilationDefect(f"compiled derivation rejected at {verdict.location}: {verdict.reason}")
        return derivation


def compile_nd(proof: NDProof, use_r8id: bool = False, name: Optional[str] = None) -> Derivation:
    return NDCompiler(use_r8id).compile(proof, name)


def endpoints_equivalent(proof: NDProof, derivation: Derivation) -> bool:
    """The compiled endpoints and the judgment read as implications are IPC-equivalent."""
    judgment = judgment_of(proof)
    compiled = Imp(translate(derivation.initial), translate(derivation.final))
    return ipc_valid(iff(judgment.as_formula(), compiled))
