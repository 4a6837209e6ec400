import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.api import experiments, health, planning
from app.config import settings
from app.errors import (
    CoverPathError,
    ExhaustedIterations,
    GridError,
    PatternError,
    ProviderError,
    ResponseParseError,
)

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan handler for startup/shutdown."""
    logger.info(f"Starting coverpath ({settings.app_env})")
    yield
    logger.info("coverpath shutdown complete")


app = FastAPI(
    title="coverpath",
    description="LLM coverage path planning, evaluation and simulated execution",
    version="0.1.0",
    lifespan=lifespan
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(health.router, tags=["health"])
app.include_router(planning.router, tags=["planning"])
app.include_router(experiments.router, tags=["experiments"])


def status_for(error: CoverPathError) -> int:
    if isinstance(error, (GridError, ResponseParseError, PatternError)):
        return 422
    if isinstance(error, ExhaustedIterations):
        return 409
    if isinstance(error, ProviderError):
        return 502
    return 400


@app.exception_handler(CoverPathError)
async def coverpath_error_handler(request: Request, exc: CoverPathError):
    logger.warning(f"{request.method} {request.url.path} failed: {exc.code}: {exc}")
    return JSONResponse(status_code=status_for(exc), content={"error": exc.code, "detail": str(exc)})


@app.get("/")
async def root():
    return {
        "name": "coverpath",
        "version": "0.1.0",
        "description": "LLM coverage path planning service",
    }
