import logging
from typing import Any

from app.config import settings
from app.errors import MalformedProviderResponse
from app.integrations.base import HttpChatProvider
from app.models.llm import ChatRequest

logger = logging.getLogger(__name__)

API_VERSION = "2023-06-01"
MAX_TOKENS = 4096


class AnthropicProvider(HttpChatProvider):
    """Anthropic /v1/messages endpoint."""

    kind = "anthropic"

    def default_model(self) -> str:
        return settings.anthropic_model

    def default_key(self) -> str:
        return settings.anthropic_key

    async def send(self, req: ChatRequest) -> tuple[str, dict[str, Any]]:
        key = self.require_key()
        base_url = (self.config.base_url or settings.anthropic_url).rstrip("/")

        # the messages API caps temperature at 1.0
        temperature = min(req.temperature, 1.0)
        if temperature != req.temperature:
            logger.debug(f"Clamped temperature {req.temperature} to {temperature} for anthropic")

        data = await self.post_json(
            f"{base_url}/v1/messages",
            headers={
                "x-api-key": key,
                "anthropic-version": API_VERSION,
                "content-type": "application/json",
            },
            payload={
                "model": req.model_id or self.model_id,
                "system": req.system_prompt,
                "max_tokens": MAX_TOKENS,
                "temperature": temperature,
                "messages": [{
                    "role": "user",
                    "content": [{"type": "text", "text": text} for text in req.user_messages],
                }],
            },
        )

        try:
            blocks = data["content"]
            text = "".join(block["text"] for block in blocks if block.get("type") == "text")
        except (KeyError, TypeError) as e:
            raise MalformedProviderResponse(f"Unexpected messages payload: {e!r}") from e
        if not blocks:
            raise MalformedProviderResponse("Messages response has no content blocks")

        return text, {"model": data.get("model", ""), "usage": data.get("usage", {})}
