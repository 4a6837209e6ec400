from fastapi import APIRouter, status

from app.config import settings

router = APIRouter()


@router.get("/health", status_code=status.HTTP_200_OK)
async def health_check():
    """Health check; also reports which live providers have a key configured."""
    return {
        "status": "ok",
        "providers": {
            "openai": bool(settings.openai_key),
            "gemini": bool(settings.gemini_key),
            "anthropic": bool(settings.anthropic_key),
            "scripted": True,
        },
    }
