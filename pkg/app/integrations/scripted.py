import logging
import threading
from pathlib import Path
from typing import Any

from app.errors import EmptyScript, ScriptExhausted
from app.integrations.base import ChatProvider
from app.models.llm import ChatRequest, ChatResponse, ProviderConfig

logger = logging.getLogger(__name__)

RECORD_SEPARATOR = "---"


def load_script(path: str | Path) -> list[str]:
    """Read canned responses; records are separated by a line holding only '---'."""
    records: list[list[str]] = [[]]
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip() == RECORD_SEPARATOR:
            records.append([])
        else:
            records[-1].append(line)
    responses = ["\n".join(lines).strip("\n") for lines in records]
    return [text for text in responses if text.strip()]


class ScriptedOracle(ChatProvider):
    """Deterministic stand-in for a hosted model that replays canned responses."""

    kind = "scripted"

    def __init__(self, config: ProviderConfig, transport=None):
        super().__init__(config, transport)
        responses = list(config.script or [])
        if config.script_file:
            responses.extend(load_script(config.script_file))
        if not responses:
            raise EmptyScript("Scripted oracle needs at least one response")
        self._responses = responses
        self._cursor = 0
        self._lock = threading.Lock()

    def default_model(self) -> str:
        return "scripted"

    @property
    def calls(self) -> int:
        return self._cursor

    async def send(self, req: ChatRequest) -> tuple[str, dict[str, Any]]:
        with self._lock:
            if self._cursor >= len(self._responses):
                raise ScriptExhausted(f"Script exhausted after {len(self._responses)} responses")
            index = self._cursor
            self._cursor += 1
        return self._responses[index], {"index": index}

    async def complete(self, req: ChatRequest) -> ChatResponse:
        text, meta = await self.send(req)
        return ChatResponse(text=text.rstrip(), latency=0.0, provider_meta=meta)


def scripted_oracle(responses: list[str]) -> ScriptedOracle:
    return ScriptedOracle(ProviderConfig(kind="scripted", script=list(responses)))
