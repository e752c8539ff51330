"""
Prompts for the agent loop.

The system prompt and the grammar legend together stay within the system
reservation of the context budget; tests check this with the default counter.
"""


class AgentPrompts:
    """Centralized prompts for agent episodes."""

    SYSTEM_PROMPT = (
        "You are NovaTech's internal assistant. Answer the user's question using the "
        "retrieved documents and the available tools. Call at most one tool per turn. "
        "When you have enough information, reply with the answer only, as short as possible. "
        "If neither the documents nor the tools can answer the question, reply exactly: "
        "not answerable."
    )

    GRAMMAR_LEGEND = (
        "Tools are listed one per line as name(param:type, ...). A trailing ! marks a "
        "required parameter, =value gives the default, {a|b} lists the allowed values, "
        "kind[] is an array of that kind and a.b is field b of object parameter a. "
        "Text after # describes the tool. To call a tool, reply with one line: "
        'CALL <tool_name> <JSON object of arguments>, for example CALL get_document {"doc_id": "HR-7"}.'
    )

    CHUNK_TEMPLATE = "[{chunk_id}] {text}"

    USER_TEMPLATE = """Retrieved documents:
{documents}

Tool results:
{history}

Question: {question}"""

    @classmethod
    def system_message(cls, compressed_schema: str = "") -> str:
        """System message; compressed catalogs travel here with the legend."""
        if not compressed_schema:
            return cls.SYSTEM_PROMPT
        return f"{cls.SYSTEM_PROMPT}\n\n{cls.GRAMMAR_LEGEND}\n\nTools:\n{compressed_schema}"

    @classmethod
    def user_message(cls, documents: str, history: str, question: str) -> str:
        return cls.USER_TEMPLATE.format(
            documents=documents or "(none)", history=history or "(none)", question=question
        )
