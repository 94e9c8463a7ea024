"""HTTP client backend for an external masked-LM inference service.

Speaks a small JSON protocol: POST /tokenize, /vocab_scores, /embed, /ig_grad
and GET /health.  Token ids on the wire never include special tokens; the
service adds its own markers at inference time and reports how many through
``special_token_count`` so the client can budget sequence length.  Transient
transport failures are retried; a request that keeps failing raises
TransportError without leaving partial state behind.
"""

from __future__ import annotations

from typing import Sequence

import requests

from .errors import TransportError
from .scorer import PLACEHOLDER, ScorerBackend, TokenizedText


class RemoteScorer(ScorerBackend):
    def __init__(
        self,
        base_url: str,
        timeout_ms: int = 30000,
        retries: int = 2,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout_ms / 1000.0
        self.retries = retries
        self.session = session or requests.Session()
        self._health: dict | None = None
        self._mask_id: int | None = None

    # -- wire helpers -----------------------------------------------------

    def _request(self, method: str, path: str, payload: dict | None = None) -> dict:
        url = self.base_url + path
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                resp = self.session.request(
                    method, url, json=payload, timeout=self.timeout
                )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if resp.status_code >= 500:
                last_error = TransportError(
                    f"{method} {path} -> {resp.status_code}: {resp.text[:200]}"
                )
                continue
            if resp.status_code >= 400:
                detail = ""
                try:
                    body = resp.json()
                    detail = body.get("message", "")
                except ValueError:
                    detail = resp.text[:200]
                raise TransportError(
                    f"{method} {path} rejected ({resp.status_code}): {detail}"
                )
            try:
                return resp.json()
            except ValueError as exc:
                raise TransportError(f"{method} {path}: invalid JSON response") from exc
        raise TransportError(f"{method} {path} failed after retries: {last_error}")

    def _health_info(self) -> dict:
        if self._health is None:
            self._health = self._request("GET", "/health")
        return self._health

    # -- contract properties ----------------------------------------------

    @property
    def max_len(self) -> int:
        return int(self._health_info()["max_len"])

    @property
    def special_token_count(self) -> int:
        info = self._health_info()
        if "special_token_count" in info:
            return int(info["special_token_count"])
        probe = self._request("POST", "/tokenize", {"text": "probe"})
        return int(probe.get("special_token_count", 3))

    @property
    def mask_token_id(self) -> int:
        if self._mask_id is None:
            info = self._health_info()
            if "mask_token_id" in info:
                self._mask_id = int(info["mask_token_id"])
            else:
                # Older services: discover the mask id by tokenizing the
                # placeholder on its own.
                body = self._request("POST", "/tokenize", {"text": PLACEHOLDER})
                ids = body["token_ids"]
                if len(ids) != 1:
                    raise TransportError(
                        "service does not map the placeholder to a mask token"
                    )
                self._mask_id = int(ids[0])
        return self._mask_id

    @property
    def pad_token_id(self) -> int:
        info = self._health_info()
        return int(info.get("pad_token_id", 0))

    # -- contract operations ------------------------------------------------

    def tokenize(self, text: str) -> TokenizedText:
        body = self._request("POST", "/tokenize", {"text": text})
        ids = tuple(int(t) for t in body["token_ids"])
        mask = ids.index(self.mask_token_id) if self.mask_token_id in ids else None
        return TokenizedText(
            ids,
            tuple(int(o) for o in body["word_offsets"]),
            mask,
            tuple(body.get("words", ())),
        )

    def vocab_scores(self, token_ids, mask_position, candidate_token_ids):
        body = self._request(
            "POST",
            "/vocab_scores",
            {
                "token_ids": list(token_ids),
                "mask_position": mask_position,
                "candidate_token_ids": list(candidate_token_ids),
            },
        )
        return [float(s) for s in body["scores"]]

    def cls_embedding(self, token_ids):
        body = self._request("POST", "/embed", {"token_ids": list(token_ids)})
        return [float(v) for v in body["vector"]]

    def ig_grad_projection(self, token_ids, mask_position, target_token_id, alpha):
        body = self._request(
            "POST",
            "/ig_grad",
            {
                "token_ids": list(token_ids),
                "mask_position": mask_position,
                "target_token_id": target_token_id,
                "alpha": alpha,
                "baseline": "pad",
            },
        )
        return [float(v) for v in body["per_token_projection"]]

    def ig_target_value(
        self, token_ids: Sequence[int], mask_position: int, target_token_id: int
    ) -> float:
        # The service's gradients differentiate the actual vocabulary score.
        return self.vocab_scores(token_ids, mask_position, [target_token_id])[0]
