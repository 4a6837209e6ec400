import httpx

from app.integrations.anthropic import AnthropicProvider
from app.integrations.base import ChatProvider
from app.integrations.gemini import GeminiProvider
from app.integrations.openai import OpenAIProvider
from app.integrations.scripted import ScriptedOracle, load_script, scripted_oracle
from app.models.llm import ChatRequest, ChatResponse, ProviderConfig

PROVIDERS: dict[str, type[ChatProvider]] = {
    "openai": OpenAIProvider,
    "gemini": GeminiProvider,
    "anthropic": AnthropicProvider,
    "scripted": ScriptedOracle,
}


def build_provider(config: ProviderConfig, transport: httpx.AsyncBaseTransport | None = None) -> ChatProvider:
    """Instantiate the provider class selected by ``config.kind``."""
    if config.kind not in PROVIDERS:
        raise ValueError(f"Unknown provider kind: {config.kind}")
    return PROVIDERS[config.kind](config, transport)


async def complete(provider: ChatProvider | ProviderConfig, req: ChatRequest) -> ChatResponse:
    if isinstance(provider, ProviderConfig):
        provider = build_provider(provider)
    return await provider.complete(req)


__all__ = [
    "PROVIDERS",
    "ChatProvider",
    "OpenAIProvider",
    "GeminiProvider",
    "AnthropicProvider",
    "ScriptedOracle",
    "build_provider",
    "complete",
    "load_script",
    "scripted_oracle",
]
