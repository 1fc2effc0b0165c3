"""On-disk caches for census, action tables, and component records.

Every cache file starts with a three-line header (format tag + version,
degree, sha256 checksum of the body); a reader that finds a stale version,
a wrong degree, or a checksum mismatch refuses the file so the caller
recomputes.  Files are written atomically (temp file + rename) and the
cache directory is guarded by an advisory lock file.
"""
from __future__ import annotations

import hashlib
import os
import re
from contextlib import contextmanager
from pathlib import Path

from .action import ClassAction
from .classify import Census, OrigamiClass
from .curves import CurveComponent, curve_genus, valency_string
from .perms import Partition, Permutation, SignVector, canonical_x, format_cycles, parse_cycles, partitions

FORMAT_VERSION = 1
ENV_CACHE = "ORIGAMIS_CACHE"


class CacheError(RuntimeError):
    """Cache file missing, stale, corrupt, or locked."""


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "origamis"


@contextmanager
def cache_lock(cache_dir: Path):
    """Advisory lock: a single process owns the cache directory."""
    cache_dir.mkdir(parents=True, exist_ok=True)
    lock = cache_dir / ".lock"
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise CacheError(
            f"cache directory {cache_dir} is locked by another process "
            f"(remove {lock} if that process is gone)"
        ) from None
    try:
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        yield
    finally:
        try:
            lock.unlink()
        except FileNotFoundError:
            pass


def _write_cache(path: Path, kind: str, degree: int, body: str) -> None:
    digest = hashlib.sha256(body.encode()).hexdigest()
    header = (
        f"# format: {kind} v{FORMAT_VERSION}\n"
        f"# degree: {degree}\n"
        f"# checksum: sha256:{digest}\n"
    )
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.parent.mkdir(parents=True, exist_ok=True)
    tmp.write_text(header + body)
    tmp.replace(path)


def _read_cache(path: Path, kind: str, degree: int) -> list[str]:
    if not path.exists():
        raise CacheError(f"cache file {path} not found")
    lines = path.read_text().splitlines()
    if len(lines) < 3:
        raise CacheError(f"cache file {path} truncated")
    m = re.fullmatch(r"# format: (\S+) v(\d+)", lines[0])
    if not m or m.group(1) != kind or int(m.group(2)) != FORMAT_VERSION:
        raise CacheError(f"cache file {path} has wrong format header {lines[0]!r}")
    m = re.fullmatch(r"# degree: (\d+)", lines[1])
    if not m or int(m.group(1)) != degree:
        raise CacheError(f"cache file {path} is for a different degree")
    m = re.fullmatch(r"# checksum: sha256:([0-9a-f]{64})", lines[2])
    body = "\n".join(lines[3:])
    if lines[3:]:
        body += "\n"
    if not m or hashlib.sha256(body.encode()).hexdigest() != m.group(1):
        raise CacheError(f"cache file {path} failed its checksum")
    return lines[3:]


# ---------------------------------------------------------------------------
# census


def census_path(cache_dir: Path, d: int) -> Path:
    return cache_dir / f"census_d{d}.txt"


def save_census(cache_dir: Path, c: Census) -> Path:
    lines = []
    for cl in c.classes:
        lines.append(
            f"d={c.degree}; x={format_cycles(cl.x)}; y={format_cycles(cl.y)}; "
            f"eps={cl.eps}; size={cl.size}; abelian={int(cl.abelian)}"
        )
    path = census_path(cache_dir, c.degree)
    _write_cache(path, "origami-census", c.degree, "".join(s + "\n" for s in lines))
    return path


_CENSUS_RE = re.compile(
    r"d=(\d+); x=(\S+); y=(\S+); eps=([+-]+); size=(\d+); abelian=([01])"
)


def load_census(cache_dir: Path, d: int) -> Census:
    """Census reconstructed from its cache file (no lookup tables; class
    lookup falls back to the orbit-minimum path)."""
    records = _read_cache(census_path(cache_dir, d), "origami-census", d)
    classes = []
    for k, line in enumerate(records):
        m = _CENSUS_RE.fullmatch(line.strip())
        if not m:
            raise CacheError(f"bad census record {line!r}")
        x = parse_cycles(m.group(2), d)
        parts = tuple(sorted((len(cy) for cy in x.cycles()), reverse=True))
        if x != canonical_x(Partition(parts)):
            raise CacheError(f"census record {line!r} has non-canonical x")
        classes.append(
            OrigamiClass(
                degree=d,
                partition=Partition(parts),
                x=x,
                y=parse_cycles(m.group(3), d),
                eps=SignVector.parse(m.group(4)),
                size=int(m.group(5)),
                abelian=bool(int(m.group(6))),
                class_id=k,
            )
        )
    return Census(degree=d, classes=classes, parts=partitions(d), tables=None)


# ---------------------------------------------------------------------------
# action tables


def action_path(cache_dir: Path, d: int) -> Path:
    return cache_dir / f"action_d{d}.txt"


def save_action(cache_dir: Path, a: ClassAction) -> Path:
    lines = ["id phi_T phi_S mirror"]
    for i in range(a.size):
        lines.append(f"{i} {a.phi_T[i]} {a.phi_S[i]} {a.mirror[i]}")
    path = action_path(cache_dir, a.degree)
    _write_cache(path, "origami-action", a.degree, "".join(s + "\n" for s in lines))
    return path


def load_action(cache_dir: Path, d: int) -> ClassAction:
    records = _read_cache(action_path(cache_dir, d), "origami-action", d)
    if not records or records[0].split() != ["id", "phi_T", "phi_S", "mirror"]:
        raise CacheError("action table missing its column header")
    phi_t, phi_s, mir = [], [], []
    for k, line in enumerate(records[1:]):
        fields = line.split()
        if len(fields) != 4 or int(fields[0]) != k:
            raise CacheError(f"bad action record {line!r}")
        phi_t.append(int(fields[1]))
        phi_s.append(int(fields[2]))
        mir.append(int(fields[3]))
    return ClassAction(d, tuple(phi_t), tuple(phi_s), tuple(mir))


# ---------------------------------------------------------------------------
# components


def components_path(cache_dir: Path, d: int) -> Path:
    return cache_dir / f"components_d{d}.txt"


def parse_valency(text: str) -> tuple[tuple[int, ...], ...]:
    """Inverse of the table rendering: ``(3^5|2^7,1|5,4,3^2)``."""
    if not (text.startswith("(") and text.endswith(")")):
        raise CacheError(f"bad valency text {text!r}")
    out = []
    for chunk in text[1:-1].split("|"):
        lengths = []
        for item in chunk.split(","):
            if "^" in item:
                base, exp = item.split("^")
                lengths.extend([int(base)] * int(exp))
            else:
                lengths.append(int(item))
        out.append(tuple(lengths))
    return tuple(out)


def save_components(
    cache_dir: Path, d: int, comps: list[CurveComponent], abelian_flags: list[bool]
) -> Path:
    lines = []
    for comp, ab in zip(comps, abelian_flags):
        members = ",".join(map(str, comp.class_ids))
        lines.append(
            f"comp={comp.component_id}; degree={d}; abelian={int(ab)}; "
            f"index={comp.index}; valency={valency_string(comp)}; "
            f"genus={comp.genus}; members=[{members}]"
        )
    path = components_path(cache_dir, d)
    _write_cache(path, "origami-components", d, "".join(s + "\n" for s in lines))
    return path


_COMP_RE = re.compile(
    r"comp=(\d+); degree=(\d+); abelian=([01]); index=(\d+); "
    r"valency=(\([^)]*\)); genus=(\d+); members=\[([0-9,]*)\]"
)


def load_components(
    cache_dir: Path, d: int
) -> tuple[list[CurveComponent], list[bool]]:
    records = _read_cache(components_path(cache_dir, d), "origami-components", d)
    comps = []
    flags = []
    for k, line in enumerate(records):
        m = _COMP_RE.fullmatch(line.strip())
        if not m or int(m.group(1)) != k:
            raise CacheError(f"bad component record {line!r}")
        vu, vs, vt = parse_valency(m.group(5))
        ids = tuple(int(s) for s in m.group(7).split(",") if s)
        comp = CurveComponent(
            component_id=k,
            class_ids=ids,
            index=int(m.group(4)),
            valency_u=vu,
            valency_s=vs,
            valency_t=vt,
            genus=int(m.group(6)),
        )
        if comp.index != len(ids) or comp.genus != curve_genus(comp.index, vu, vs, vt):
            raise CacheError(f"inconsistent component record {line!r}")
        comps.append(comp)
        flags.append(bool(int(m.group(3))))
    return comps, flags
