"""
Deterministic oracle model.

The oracle answers from evidence it can see: it calls the gold tool when that
tool is offered, answers once every supporting span is in context and says
"unknown" otherwise. With ``epsilon > 0`` each distractor chunk may flip a
correct answer to "unknown", which models attention dilution by irrelevant
context.
"""

from ..core.prng import stream
from ..models.benchmark import NOT_ANSWERABLE, Question, QuestionType
from ..models.episode import AssembledContext, FinalAnswer, ModelDecision, ToolCall
from .base import BaseModelClient

UNKNOWN_ANSWER = "unknown"


def oracle_decide(
    context: AssembledContext, question: Question, epsilon: float = 0.0, seed: int = 0
) -> ModelDecision:
    """Decide the next step from the evidence in a context.

    Args:
        context: Assembled context of this iteration
        question: Question with its gold structure
        epsilon: Per-distractor probability of losing a correct answer
        seed: Seed of the dilution draws

    Returns:
        ToolCall for the gold tool, or FinalAnswer
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")

    gold_tool = question.gold_tool
    if gold_tool is not None and gold_tool.name in context.tool_names and not context.history:
        return ToolCall(tool_name=gold_tool.name, arguments=dict(gold_tool.arguments))

    evidence = context.chunk_text + "\n" + context.history_text
    if question.supporting_spans and all(span in evidence for span in question.supporting_spans):
        answer = question.gold_answer
    elif question.qtype == QuestionType.UNANSWERABLE:
        answer = NOT_ANSWERABLE
    else:
        return FinalAnswer(text=UNKNOWN_ANSWER)

    if epsilon > 0:
        distractors = [c for c in context.chunks if c.id not in question.gold_chunk_ids]
        if distractors:
            # the j-th distractor always gets the j-th draw of the question's stream
            draws = stream(seed, "dilution", question.id).random(len(distractors))
            if bool((draws < epsilon).any()):
                return FinalAnswer(text=UNKNOWN_ANSWER)
    return FinalAnswer(text=answer)


class OracleClient(BaseModelClient):
    """Model client backed by ``oracle_decide``."""

    def __init__(self, epsilon: float = 0.0, seed: int = 0):
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
        super().__init__("oracle" if epsilon == 0 else f"oracle-eps{epsilon:g}-s{seed}")
        self.epsilon = epsilon
        self.seed = seed

    async def decide(self, context: AssembledContext, question: Question) -> ModelDecision:
        return oracle_decide(context, question, self.epsilon, self.seed)
