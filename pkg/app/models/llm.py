from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, SecretStr

ProviderKind = Literal["openai", "gemini", "anthropic", "scripted"]


class ChatRequest(BaseModel):
    """One chat-completion call: a system prompt plus the user turns so far."""

    model_config = ConfigDict(frozen=True)

    system_prompt: str
    user_messages: tuple[str, ...] = Field(min_length=1)
    temperature: float = Field(default=0.6, ge=0.0, le=2.0)
    model_id: str = ""


class ChatResponse(BaseModel):
    text: str
    latency: float = Field(ge=0.0)
    provider_meta: dict[str, Any] = {}


class ProviderConfig(BaseModel):
    """How to reach a chat provider; unset fields fall back to settings."""

    kind: ProviderKind
    model_id: Optional[str] = None
    base_url: Optional[str] = None
    api_key: Optional[SecretStr] = None
    timeout: Optional[float] = Field(default=None, gt=0)
    max_retries: Optional[int] = Field(default=None, ge=0)
    backoff_base: Optional[float] = Field(default=None, ge=0)
    script: Optional[list[str]] = None
    script_file: Optional[str] = None
    label: Optional[str] = None

    @property
    def display_name(self) -> str:
        return self.label or self.model_id or self.kind
