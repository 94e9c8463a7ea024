"""A small seeded transformer masked-LM and its attribution hooks.

The model is a plain bidirectional transformer encoder over token plus
position embeddings with a linear vocabulary head.  Weights come from a
seeded random initialization — the service contract (scores, embeddings,
gradient projections) is about *how* a masked LM is exposed, not about the
quality of any particular checkpoint, so a reproducible untrained model is
the right default and a fine-tuned one can be dropped in by loading a state
dict with the same shape.

Everything runs on CPU in float64 to keep request-order and thread-count
effects out of the numbers.
"""

from __future__ import annotations

import torch
from torch import nn

from .config import ServerConfig
from .vocab import CLS, PAD, SEP


class TinyMaskedLM(nn.Module):
    def __init__(self, vocab_size: int, cfg: ServerConfig):
        super().__init__()
        # The standard per-module initializers under a pinned global seed:
        # sane scales (ones for the norms, fan-in bounds for the linears)
        # and bit-reproducible weights across processes.
        torch.manual_seed(cfg.seed)
        self.token_emb = nn.Embedding(vocab_size, cfg.d_model)
        self.pos_emb = nn.Embedding(cfg.max_len, cfg.d_model)
        layer = nn.TransformerEncoderLayer(
            d_model=cfg.d_model,
            nhead=cfg.n_heads,
            dim_feedforward=cfg.ff_dim,
            dropout=0.0,
            activation="gelu",
            batch_first=True,
            norm_first=True,
        )
        self.encoder = nn.TransformerEncoder(
            layer, cfg.n_layers, enable_nested_tensor=False
        )
        self.head = nn.Linear(cfg.d_model, vocab_size)
        self.double()
        self.eval()

    def _encode_embeddings(self, embeddings: torch.Tensor) -> torch.Tensor:
        """Hidden states for pre-built input embeddings of shape (1, L, d)."""
        length = embeddings.size(1)
        positions = torch.arange(length).unsqueeze(0)
        return self.encoder(embeddings + self.pos_emb(positions))

    def _wrap(self, token_ids: list[int]) -> torch.Tensor:
        return torch.tensor([[CLS, *token_ids, SEP]], dtype=torch.long)

    def vocab_scores(
        self, token_ids: list[int], mask_position: int, candidates: list[int]
    ) -> list[float]:
        """MLM-head logits of the candidate ids at the mask position."""
        with torch.inference_mode():
            full = self._wrap(token_ids)
            hidden = self._encode_embeddings(self.token_emb(full))
            logits = self.head(hidden[0, mask_position + 1])  # +1 skips [CLS]
            return [float(logits[c]) for c in candidates]

    def cls_embedding(self, token_ids: list[int]) -> list[float]:
        """Final hidden state of the leading classification position."""
        with torch.inference_mode():
            full = self._wrap(token_ids)
            hidden = self._encode_embeddings(self.token_emb(full))
            return [float(v) for v in hidden[0, 0]]

    def ig_grad_projection(
        self,
        token_ids: list[int],
        mask_position: int,
        target_token_id: int,
        alpha: float,
    ) -> list[float]:
        """(x − baseline)·∇F at the α-interpolated embedding point.

        The baseline replaces every content-position embedding (the mask slot
        included) with the padding embedding while keeping the wrapping
        markers, matching the all-pad content sequence clients use when they
        evaluate F(baseline) themselves.  Only content-position projections
        are returned.
        """
        full = self._wrap(token_ids)
        x_emb = self.token_emb(full).detach()
        base_emb = x_emb.clone()
        pad_emb = self.token_emb(torch.tensor(PAD)).detach()
        base_emb[0, 1:-1] = pad_emb
        delta = x_emb - base_emb

        point = (base_emb + alpha * delta).requires_grad_(True)
        hidden = self._encode_embeddings(point)
        score = self.head(hidden[0, mask_position + 1])[target_token_id]
        (grad,) = torch.autograd.grad(score, point)
        projection = (delta * grad).sum(dim=-1)[0]
        return [float(v) for v in projection[1:-1]]
