"""Persistent store for tensor-product multiplicities.

The on-disk format is newline-delimited: each record is the canonical key
``family,rank|lam|nu|mu`` followed by a single integer multiplicity.  Loading
merges into the in-memory cache; storing writes a temporary file and renames
it into place so readers never observe a partial file.  Corrupt lines are
skipped with a warning and never abort a run.
"""

from __future__ import annotations

import os
import sys
import tempfile

from .repchar import TensorCache
from .rootsys import LieType


def _format_weight(w) -> str:
    return ",".join(str(c) for c in w)


def _parse_weight(text: str):
    return tuple(int(tok) for tok in text.split(","))


def cache_load(path: str, cache: TensorCache) -> int:
    """Merge the records stored at ``path`` into ``cache``.

    A missing file counts as an empty cache.  Returns the number of tensor
    decompositions loaded."""
    if not os.path.exists(path):
        return 0
    groups: dict[tuple, dict] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    key_text, mult_text = line.rsplit(None, 1)
                    algebra, lam, nu, mu = key_text.split("|")
                    family, rank = algebra.split(",")
                    lt = LieType(family, int(rank))
                    key = (lt, _parse_weight(lam), _parse_weight(nu))
                    groups.setdefault(key, {})[_parse_weight(mu)] = int(mult_text)
                except ValueError:
                    print(
                        f"warning: skipping corrupt cache line {lineno} in {path}",
                        file=sys.stderr,
                    )
    except OSError as exc:
        raise OSError(f"cannot read multiplicity cache {path}: {exc}") from exc
    for key, mults in groups.items():
        cache.put(key, mults)
    return len(groups)


def cache_store(path: str, cache: TensorCache) -> int:
    """Write every cached decomposition to ``path`` atomically."""
    lines = []
    for (lt, lam, nu), mults in cache.items():
        prefix = f"{lt.family},{lt.rank}|{_format_weight(lam)}|{_format_weight(nu)}"
        for mu, mult in sorted(mults.items()):
            lines.append(f"{prefix}|{_format_weight(mu)} {mult}")
    lines.sort()
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".krchar-cache-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines))
                if lines:
                    fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError as exc:
        raise OSError(f"cannot write multiplicity cache {path}: {exc}") from exc
    return len(lines)
