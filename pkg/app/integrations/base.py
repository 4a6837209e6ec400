import logging
import time
from abc import ABC, abstractmethod
from typing import Any

import httpx
from tenacity import AsyncRetrying, retry_if_exception_type, stop_after_attempt, wait_exponential

from app.config import settings
from app.errors import AuthError, MalformedProviderResponse, NetworkError, RateLimited
from app.models.llm import ChatRequest, ChatResponse, ProviderConfig

logger = logging.getLogger(__name__)

RETRYABLE = (NetworkError, RateLimited)


class ChatProvider(ABC):
    """Base class for chat-completion providers."""

    kind: str = "base"

    def __init__(self, config: ProviderConfig, transport: httpx.AsyncBaseTransport | None = None):
        self.config = config
        self.transport = transport

    @property
    def max_retries(self) -> int:
        return settings.max_retries if self.config.max_retries is None else self.config.max_retries

    @property
    def backoff_base(self) -> float:
        return settings.backoff_base if self.config.backoff_base is None else self.config.backoff_base

    @property
    def timeout(self) -> float:
        return self.config.timeout or settings.request_timeout

    @property
    def model_id(self) -> str:
        return self.config.model_id or self.default_model()

    def default_model(self) -> str:
        return ""

    @abstractmethod
    async def send(self, req: ChatRequest) -> tuple[str, dict[str, Any]]:
        """Perform one request; return the raw text and provider metadata."""

    async def complete(self, req: ChatRequest) -> ChatResponse:
        """Call the provider with retries on transient failures."""
        start = time.perf_counter()
        retrying = AsyncRetrying(
            stop=stop_after_attempt(self.max_retries + 1),
            wait=wait_exponential(multiplier=self.backoff_base, exp_base=2, min=0, max=60),
            retry=retry_if_exception_type(RETRYABLE),
            before_sleep=self._log_retry,
            reraise=True,
        )
        async for attempt in retrying:
            with attempt:
                text, meta = await self.send(req)

        latency = time.perf_counter() - start
        meta = {**meta, "attempts": attempt.retry_state.attempt_number}
        logger.debug(f"[{self.kind}] {self.model_id} answered in {latency:.2f}s")
        return ChatResponse(text=text.rstrip(), latency=latency, provider_meta=meta)

    def _log_retry(self, retry_state) -> None:
        error = retry_state.outcome.exception()
        logger.warning(
            f"[{self.kind}] attempt {retry_state.attempt_number} failed ({error}); "
            f"retrying in {retry_state.next_action.sleep:.1f}s"
        )


class HttpChatProvider(ChatProvider):
    """Shared plumbing for providers reached over JSON HTTP."""

    def api_key(self) -> str:
        if self.config.api_key is not None:
            return self.config.api_key.get_secret_value()
        return self.default_key()

    def default_key(self) -> str:
        return ""

    def require_key(self) -> str:
        key = self.api_key()
        if not key:
            raise AuthError(f"No API key configured for {self.kind}")
        return key

    async def post_json(self, url: str, headers: dict, payload: dict) -> dict:
        try:
            async with httpx.AsyncClient(timeout=self.timeout, transport=self.transport) as client:
                response = await client.post(url, headers=headers, json=payload)
        except httpx.TimeoutException as e:
            raise NetworkError(f"{self.kind} request timed out: {e}") from e
        except httpx.TransportError as e:
            raise NetworkError(f"{self.kind} transport error: {e}") from e

        if response.status_code in (401, 403):
            logger.error(f"[{self.kind}] authentication failed: {response.text[:200]}")
            raise AuthError(f"{self.kind} rejected the credentials (HTTP {response.status_code})")
        if response.status_code == 429:
            raise RateLimited(f"{self.kind} rate limit hit")
        if response.status_code >= 500:
            raise NetworkError(f"{self.kind} server error (HTTP {response.status_code})")
        if response.status_code >= 400:
            raise MalformedProviderResponse(
                f"{self.kind} refused the request (HTTP {response.status_code}): {response.text[:200]}"
            )

        try:
            return response.json()
        except ValueError as e:
            raise MalformedProviderResponse(f"{self.kind} returned non-JSON body") from e
