# Copyright 2026 The moparker Authors
# SPDX-License-Identifier: Apache-2.0

"""Multi-objective parking recommendation engine."""

import json as _json

from moparker._core import (  # noqa: F401
    ConfigError,
    IoError,
    SchemaError,
    ValidationError,
    cluster,
    crowding_distances,
    epsilon_front,
    haversine_distance,
    ingest,
    naive_front,
    recommend_candidates,
)
from moparker._core import Engine as _Engine

__all__ = [
    "ConfigError", "Engine", "IoError", "SchemaError", "ValidationError", "cluster",
    "crowding_distances", "epsilon_front", "haversine_distance", "ingest", "naive_front",
    "recommend_candidates",
]


def _decode(reply):
    status, body = reply
    return status, _json.loads(body)


class Engine:
    """Answers recommend, lots and likelihood requests over a loaded snapshot."""

    def __init__(self, store, lots, fares, tz="UTC", drive_kmh=30.0, walk_kmh=5.0):
        self._engine = _Engine(store, lots, fares, tz, drive_kmh, walk_kmh)

    def recommend(self, request):
        """Takes a request dict or JSON string; returns (http status, response dict)."""
        body = request if isinstance(request, str) else _json.dumps(request)
        return _decode(self._engine.recommend(body))

    def lots(self):
        return _decode(self._engine.lots())

    def likelihood(self, lot_id, at=None, tau=None, method=None):
        tau = None if tau is None else str(tau)
        return _decode(self._engine.likelihood(lot_id, at, tau, method))
