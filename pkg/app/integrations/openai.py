import logging
from typing import Any

from app.config import settings
from app.errors import MalformedProviderResponse
from app.integrations.base import HttpChatProvider
from app.models.llm import ChatRequest

logger = logging.getLogger(__name__)


class OpenAIProvider(HttpChatProvider):
    """OpenAI-compatible /chat/completions endpoint."""

    kind = "openai"

    def default_model(self) -> str:
        return settings.openai_model

    def default_key(self) -> str:
        return settings.openai_key

    async def send(self, req: ChatRequest) -> tuple[str, dict[str, Any]]:
        key = self.require_key()
        base_url = (self.config.base_url or settings.openai_url).rstrip("/")
        messages = [{"role": "system", "content": req.system_prompt}]
        messages.extend({"role": "user", "content": text} for text in req.user_messages)

        data = await self.post_json(
            f"{base_url}/chat/completions",
            headers={"Authorization": f"Bearer {key}", "Content-Type": "application/json"},
            payload={
                "model": req.model_id or self.model_id,
                "messages": messages,
                "temperature": req.temperature,
            },
        )

        try:
            text = data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as e:
            raise MalformedProviderResponse(f"Unexpected chat completion payload: {e!r}") from e
        if not isinstance(text, str):
            raise MalformedProviderResponse("Chat completion content is not text")

        return text, {"model": data.get("model", ""), "usage": data.get("usage", {})}
