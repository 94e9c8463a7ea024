"""JSON-over-HTTP surface for the masked LM.

Endpoints: POST /tokenize, /vocab_scores, /embed, /ig_grad and GET /health.
Token ids on the wire never include the wrapping markers; the service adds
``[CLS]``/``[SEP]`` at inference time and advertises the overhead through
``special_token_count`` so clients can budget sequence length.

Every endpoint is stateless, and model access is serialized behind a lock —
the model is small enough that strict determinism is worth more than
parallel matmuls.  All errors carry ``{code, message}``.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import ServerConfig
from .model import TinyMaskedLM
from .vocab import MASK, PAD, Vocabulary

SPECIAL_TOKEN_COUNT = 2  # the [CLS]/[SEP] pair added around every request


class ServiceError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class TokenizeRequest(BaseModel):
    text: str


class VocabScoresRequest(BaseModel):
    token_ids: list[int]
    mask_position: int
    candidate_token_ids: list[int]


class EmbedRequest(BaseModel):
    token_ids: list[int]


class IgGradRequest(BaseModel):
    token_ids: list[int]
    mask_position: int
    target_token_id: int
    alpha: float
    baseline: str = "pad"


def create_app(cfg: ServerConfig | None = None) -> FastAPI:
    cfg = cfg or ServerConfig()
    vocab = Vocabulary()
    model = TinyMaskedLM(len(vocab), cfg)
    lock = threading.Lock()
    app = FastAPI(title=cfg.model_name)

    @app.exception_handler(ServiceError)
    async def _service_error(_request: Request, exc: ServiceError):
        return JSONResponse(
            {"code": exc.code, "message": exc.message}, status_code=exc.code
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        message = f"invalid request: {first.get('msg', 'malformed body')}"
        return JSONResponse({"code": 422, "message": message}, status_code=422)

    def check_length(token_ids: list[int]) -> None:
        budget = cfg.max_len - SPECIAL_TOKEN_COUNT
        if len(token_ids) > budget:
            raise ServiceError(
                413, f"{len(token_ids)} tokens exceed the budget of {budget}"
            )

    def check_mask(token_ids: list[int], mask_position: int) -> None:
        if not 0 <= mask_position < len(token_ids):
            raise ServiceError(
                422,
                f"mask position {mask_position} out of bounds "
                f"for {len(token_ids)} tokens",
            )

    def check_vocab_ids(token_ids: list[int]) -> None:
        for token_id in token_ids:
            if not 0 <= token_id < len(vocab):
                raise ServiceError(422, f"token id {token_id} outside the vocabulary")

    @app.get("/health")
    def health():
        return {
            "model": cfg.model_name,
            "max_len": cfg.max_len,
            "vocab_size": len(vocab),
            "mask_token_id": MASK,
            "pad_token_id": PAD,
            "special_token_count": SPECIAL_TOKEN_COUNT,
        }

    @app.post("/tokenize")
    def tokenize(req: TokenizeRequest):
        if not req.text.strip():
            raise ServiceError(400, "empty text")
        result = vocab.tokenize(req.text)
        return {
            "token_ids": list(result.token_ids),
            "word_offsets": list(result.word_offsets),
            "words": list(result.words),
            "special_token_count": SPECIAL_TOKEN_COUNT,
        }

    @app.post("/vocab_scores")
    def vocab_scores(req: VocabScoresRequest):
        check_length(req.token_ids)
        check_mask(req.token_ids, req.mask_position)
        if not req.candidate_token_ids:
            raise ServiceError(422, "empty candidate list")
        check_vocab_ids(req.token_ids)
        check_vocab_ids(req.candidate_token_ids)
        with lock:
            scores = model.vocab_scores(
                req.token_ids, req.mask_position, req.candidate_token_ids
            )
        return {"scores": scores}

    @app.post("/embed")
    def embed(req: EmbedRequest):
        check_length(req.token_ids)
        check_vocab_ids(req.token_ids)
        with lock:
            vector = model.cls_embedding(req.token_ids)
        return {"vector": vector}

    @app.post("/ig_grad")
    def ig_grad(req: IgGradRequest):
        check_length(req.token_ids)
        check_mask(req.token_ids, req.mask_position)
        check_vocab_ids(req.token_ids)
        check_vocab_ids([req.target_token_id])
        if not 0.0 < req.alpha <= 1.0:
            raise ServiceError(422, f"alpha {req.alpha} outside (0, 1]")
        if req.baseline != "pad":
            raise ServiceError(422, f"unsupported baseline {req.baseline!r}")
        with lock:
            projection = model.ig_grad_projection(
                req.token_ids, req.mask_position, req.target_token_id, req.alpha
            )
        return {"per_token_projection": projection}

    return app
