"""On-disk persistence of structure tables."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from .fusion import QuantumRing, StructureTable, install_table, ring
from .laurent import LaurentInt
from .partitions import BoxContext

log = logging.getLogger(__name__)

VERSION = 1
ENV_VAR = "QTQFT_CACHE_DIR"


class CacheError(ValueError):
    pass


def cache_filename(ctx: BoxContext) -> str:
    return f"qtqft-table-r{ctx.r}-s{ctx.s}-v{VERSION}.json"


def _resolve(ctx: BoxContext, path) -> Path:
    path = Path(path)
    return path / cache_filename(ctx) if path.is_dir() or not path.suffix else path


def default_cache_dir() -> Path | None:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def table_to_json(ctx: BoxContext, table: StructureTable) -> dict:
    records = []
    for a in ctx.partitions:
        for b in ctx.partitions:
            prod = table[a, b]
            for c in ctx.partitions:
                if c not in prod:
                    continue
                for e, coeff in prod[c].items():
                    records.append({"a": list(a), "b": list(b), "c": list(c),
                                    "q_exp": e, "coeff": str(coeff)})
    return {"version": VERSION, "r": ctx.r, "s": ctx.s, "constants": records}


def table_from_json(ctx: BoxContext, data: dict) -> StructureTable:
    if data.get("version") != VERSION:
        raise CacheError(f"cache format version {data.get('version')!r}, expected {VERSION}")
    if (data.get("r"), data.get("s")) != (ctx.r, ctx.s):
        raise CacheError(f"cache is for r={data.get('r')}, s={data.get('s')}, not r={ctx.r}, s={ctx.s}")
    terms: dict = {}
    try:
        for rec in data["constants"]:
            a, b, c = (ctx.partition(rec[k]) for k in "abc")
            terms.setdefault((a, b), {}).setdefault(c, {})[int(rec["q_exp"])] = int(rec["coeff"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheError(f"malformed cache record: {exc}") from exc
    table: StructureTable = {}
    for a in ctx.partitions:
        for b in ctx.partitions:
            table[a, b] = {c: LaurentInt(t) for c, t in terms.get((a, b), {}).items()}
    return table


def cache_store(ctx: BoxContext, path, table: StructureTable | None = None) -> Path:
    """Write the table for ``ctx``; ``path`` is a directory or an explicit file."""
    target = _resolve(ctx, path)
    target.parent.mkdir(parents=True, exist_ok=True)
    payload = table_to_json(ctx, table if table is not None else ring(ctx).table)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, separators=(",", ":"))
    os.replace(tmp, target)
    return target


def cache_load(ctx: BoxContext, path) -> StructureTable:
    target = _resolve(ctx, path)
    try:
        data = json.loads(target.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"unreadable cache {target}: {exc}") from exc
    if not isinstance(data, dict):
        raise CacheError(f"unreadable cache {target}: not a JSON object")
    return table_from_json(ctx, data)


def load_or_build(ctx: BoxContext, cache_dir=None) -> QuantumRing:
    """Shared ring for ``ctx``, seeded from ``cache_dir`` when possible."""
    if cache_dir is None:
        cache_dir = default_cache_dir()
    if cache_dir is None:
        return ring(ctx)
    rg = ring(ctx)
    if rg.built:
        return rg
    try:
        return install_table(ctx, cache_load(ctx, cache_dir))
    except FileNotFoundError:
        pass
    except CacheError as exc:
        log.warning("rebuilding structure table: %s", exc)
    cache_store(ctx, cache_dir, rg.table)
    return rg
