"""Translation backends.

The orchestrator only needs two things from a backend:

* a trainer ``train(corpora, trainer_config, reference_mass) -> model``
* a model with ``has_direction(src, tgt)``, ``translate(src, tgt, sentences)``
  and ``updated(other) -> model``

:mod:`lgdistill.translator` provides the lexical implementation.
:class:`HttpTranslationClient` forwards both calls to an external service,
so a real NMT system can be dropped in without touching the loop.

Wire format (JSON over HTTP POST):

``{endpoint}/translate``
    request  ``{"src": "fr", "tgt": "en", "sentences": ["...", ...]}``
    response ``{"translations": ["...", ...]}`` (same length and order)

``{endpoint}/train``
    request  ``{"directions": [{"src": ..., "tgt": ..., "pairs": [[s, t], ...],
    "provenance": [...], "weights": [...]}]}``
    response ``{"ok": true}``

Configuration comes from a ``backend`` mapping (``endpoint``, ``timeout``,
``batch_size``, ``directions``) or the environment variables
``LGD_BACKEND_URL``, ``LGD_BACKEND_TIMEOUT`` and ``LGD_BACKEND_BATCH_SIZE``.
"""

from __future__ import annotations

import json
import os
import urllib.error
import urllib.request
from typing import Protocol

from .errors import DataError, InvalidConfig, LGDError, UntrainedDirection
from .translator import pair_weights


class TranslationModel(Protocol):
    def has_direction(self, src: str, tgt: str) -> bool: ...

    def translate(self, src: str, tgt: str, sentences) -> list[str]: ...

    def updated(self, other) -> "TranslationModel": ...


class BackendError(LGDError):
    pass


class HttpTranslationClient:
    def __init__(self, endpoint: str, timeout: float = 30.0, batch_size: int = 64, directions=None):
        if not endpoint:
            raise InvalidConfig("backend.endpoint: required")
        if batch_size < 1:
            raise InvalidConfig("backend.batch_size must be >= 1")
        self.endpoint = endpoint.rstrip("/")
        self.timeout = float(timeout)
        self.batch_size = int(batch_size)
        self.directions = None if directions is None else {tuple(d) for d in directions}

    @classmethod
    def from_config(cls, cfg: dict | None = None, environ=None) -> "HttpTranslationClient":
        env = os.environ if environ is None else environ
        cfg = dict(cfg or {})
        endpoint = env.get("LGD_BACKEND_URL", cfg.get("endpoint"))
        timeout = float(env.get("LGD_BACKEND_TIMEOUT", cfg.get("timeout", 30.0)))
        batch = int(env.get("LGD_BACKEND_BATCH_SIZE", cfg.get("batch_size", 64)))
        return cls(endpoint, timeout, batch, cfg.get("directions"))

    def _post(self, route, payload):
        req = urllib.request.Request(
            f"{self.endpoint}/{route}",
            data=json.dumps(payload).encode("utf-8"),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                return json.loads(resp.read().decode("utf-8"))
        except (urllib.error.URLError, TimeoutError) as exc:
            raise BackendError(f"{self.endpoint}/{route}: {exc}") from exc

    def has_direction(self, src, tgt) -> bool:
        return self.directions is None or (src, tgt) in self.directions

    def translate(self, src, tgt, sentences) -> list[str]:
        if not self.has_direction(src, tgt):
            raise UntrainedDirection(src, tgt)
        sentences = list(sentences)
        out = []
        for i in range(0, len(sentences), self.batch_size):
            batch = sentences[i : i + self.batch_size]
            got = self._post("translate", {"src": src, "tgt": tgt, "sentences": batch}).get("translations")
            if not isinstance(got, list) or len(got) != len(batch):
                raise DataError(f"backend returned {len(got) if isinstance(got, list) else 'no'} translations for {len(batch)} inputs")
            out.extend(got)
        return out

    def train(self, corpora, trainer_config, reference_mass=None) -> "HttpTranslationClient":
        payload = {
            "directions": [
                {
                    "src": s,
                    "tgt": t,
                    "pairs": [list(p) for p in c.pairs],
                    "provenance": list(c.provenance),
                    "weights": pair_weights(c, trainer_config),
                }
                for (s, t), c in sorted(corpora.items())
            ]
        }
        if not self._post("train", payload).get("ok"):
            raise BackendError("backend refused the training request")
        return self

    def updated(self, other) -> "HttpTranslationClient":
        return self
