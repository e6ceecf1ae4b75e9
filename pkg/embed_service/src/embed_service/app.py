"""HTTP service returning unit-normalized sentence embeddings.

One POST endpoint embeds a batch of texts with a pre-trained sentence
encoder (all-mpnet-base-v2 by default, switchable via EMBED_MODEL); a health
endpoint reports readiness, the pinned model name and the vector dimension
so clients can key caches on them.  The service only embeds -- similarity
math stays client-side, keeping the wire payload model-agnostic.

The encoder loads in the background at startup; both endpoints answer 503
until it is ready.  Batches over 256 texts or texts over 2,048 characters
are refused with 413, schema violations with 400.
"""

from __future__ import annotations

import os
import threading
from contextlib import asynccontextmanager
from typing import Protocol

import uvicorn
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

DEFAULT_MODEL = "all-mpnet-base-v2"
DEFAULT_PORT = 8876
MAX_BATCH = 256
MAX_TEXT_CHARS = 2048


class Encoder(Protocol):
    name: str
    dim: int

    def encode(self, texts: list[str], normalize: bool) -> list[list[float]]: ...


class SentenceTransformerEncoder:
    """Wraps a sentence-transformers checkpoint; encoding is serialized."""

    def __init__(self, name: str):
        from sentence_transformers import SentenceTransformer

        self.name = name
        self._model = SentenceTransformer(name)
        self._lock = threading.Lock()
        self.dim = int(self._model.get_sentence_embedding_dimension())

    def encode(self, texts: list[str], normalize: bool) -> list[list[float]]:
        with self._lock:
            vectors = self._model.encode(
                texts, normalize_embeddings=normalize, convert_to_numpy=True
            )
        return [[float(x) for x in row] for row in vectors]


class EmbedRequest(BaseModel):
    texts: list[str] = Field(min_length=1)
    normalize: bool = True


class EmbedResponse(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: str
    dim: int
    vectors: list[list[float]]


def create_app(encoder: Encoder | None = None, model_name: str | None = None) -> FastAPI:
    """Build the service; pass a ready encoder to skip the background load."""
    state: dict = {"encoder": encoder, "error": None}
    name = model_name or os.environ.get("EMBED_MODEL", DEFAULT_MODEL)

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        if state["encoder"] is None:
            threading.Thread(target=load, daemon=True).start()
        yield

    app = FastAPI(title="embed-service", lifespan=lifespan)

    @app.exception_handler(RequestValidationError)
    async def bad_request(_: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors()[:1])})

    def load():
        try:
            state["encoder"] = SentenceTransformerEncoder(name)
        except Exception as exc:  # noqa: BLE001 - reported via /health
            state["error"] = f"{type(exc).__name__}: {exc}"

    def ready() -> Encoder | None:
        return state["encoder"]

    @app.get("/health")
    def health():
        enc = ready()
        if enc is None:
            detail = {"status": "loading", "model": name}
            if state["error"]:
                detail = {"status": "error", "model": name, "error": state["error"]}
            return JSONResponse(status_code=503, content=detail)
        return {"status": "ok", "model": enc.name, "dim": enc.dim}

    @app.post("/v1/embed")
    def embed(request: EmbedRequest):
        enc = ready()
        if enc is None:
            return JSONResponse(status_code=503, content={"error": "model is loading"})
        if len(request.texts) > MAX_BATCH:
            return JSONResponse(
                status_code=413, content={"error": f"batch exceeds {MAX_BATCH} texts"}
            )
        if any(len(t) > MAX_TEXT_CHARS for t in request.texts):
            return JSONResponse(
                status_code=413, content={"error": f"text exceeds {MAX_TEXT_CHARS} characters"}
            )
        vectors = enc.encode(request.texts, request.normalize)
        return EmbedResponse(model=enc.name, dim=enc.dim, vectors=vectors)

    return app


def main() -> None:
    port = int(os.environ.get("EMBED_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(), host="0.0.0.0", port=port)


if __name__ == "__main__":
    main()
