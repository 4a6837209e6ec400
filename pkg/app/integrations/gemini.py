import asyncio
import logging
import threading
from typing import Any

import google.generativeai as genai
from google.api_core import exceptions as google_exceptions

from app.config import settings
from app.errors import AuthError, MalformedProviderResponse, NetworkError, RateLimited
from app.integrations.base import ChatProvider
from app.models.llm import ChatRequest

logger = logging.getLogger(__name__)

_lock = threading.Lock()
_configured: tuple[str, str] | None = None


def init_gemini(api_key: str, endpoint: str = "") -> None:
    """Configure the Gemini SDK once per (key, endpoint) pair."""
    global _configured

    with _lock:
        if _configured == (api_key, endpoint):
            return
        if endpoint:
            genai.configure(api_key=api_key, transport="rest", client_options={"api_endpoint": endpoint})
        else:
            genai.configure(api_key=api_key)
        _configured = (api_key, endpoint)
        logger.info(f"Gemini configured (endpoint: {endpoint or 'default'})")


class GeminiProvider(ChatProvider):
    """Google Gemini through the google-generativeai SDK."""

    kind = "gemini"

    def default_model(self) -> str:
        return settings.gemini_model

    async def send(self, req: ChatRequest) -> tuple[str, dict[str, Any]]:
        key = self.config.api_key.get_secret_value() if self.config.api_key else settings.gemini_key
        if not key:
            raise AuthError("No API key configured for gemini")
        init_gemini(key, self.config.base_url or settings.gemini_url)

        model_id = req.model_id or self.model_id
        model = genai.GenerativeModel(model_id, system_instruction=req.system_prompt)

        try:
            response = await asyncio.wait_for(
                asyncio.to_thread(
                    model.generate_content,
                    [{"role": "user", "parts": list(req.user_messages)}],
                    generation_config={"temperature": req.temperature},
                ),
                timeout=self.timeout,
            )
        except asyncio.TimeoutError as e:
            raise NetworkError("gemini request timed out") from e
        except (google_exceptions.Unauthenticated, google_exceptions.PermissionDenied) as e:
            logger.error(f"[gemini] authentication failed: {e}")
            raise AuthError(f"gemini rejected the credentials: {e}") from e
        except google_exceptions.ResourceExhausted as e:
            raise RateLimited(f"gemini rate limit hit: {e}") from e
        except (google_exceptions.ServiceUnavailable, google_exceptions.DeadlineExceeded,
                google_exceptions.InternalServerError) as e:
            raise NetworkError(f"gemini server error: {e}") from e
        except google_exceptions.GoogleAPICallError as e:
            raise MalformedProviderResponse(f"gemini refused the request: {e}") from e

        try:
            text = response.text
        except (ValueError, AttributeError) as e:
            # blocked or empty candidates
            raise MalformedProviderResponse(f"gemini response has no text: {e}") from e

        return text, {"model": model_id}
