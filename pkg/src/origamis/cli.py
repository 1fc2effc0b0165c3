"""Command-line front end: census, curves, report, info, diagram.

Pipeline stages are cached on disk (census -> action -> components) so the
expensive degree-7 enumeration runs once; later commands reuse the files
unless --force is given or a header/checksum check fails.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import store
from .action import ClassAction, build_action
from .classify import Census, ClassNotFound, census, find_class
from .curves import components, export_diagram, valency_string, veech_data
from .invariants import galois_report, render_report, stratum
from .model import Origami, is_abelian, is_connected
from .store import CacheError, cache_lock


@dataclass
class RunConfig:
    degree: int
    workers: int
    cache: Path
    fmt: str
    force: bool


def _ensure_census(cfg: RunConfig) -> Census:
    if not cfg.force:
        try:
            return store.load_census(cfg.cache, cfg.degree)
        except CacheError:
            pass
    c = census(cfg.degree, workers=cfg.workers)
    store.save_census(cfg.cache, c)
    return c


def _ensure_curves(cfg: RunConfig):
    """(census, action, components, abelian flags), cached or computed."""
    if not cfg.force:
        try:
            c = store.load_census(cfg.cache, cfg.degree)
            a = store.load_action(cfg.cache, cfg.degree)
            comps, flags = store.load_components(cfg.cache, cfg.degree)
            return c, a, comps, flags
        except CacheError:
            pass
    # recompute in memory (a cache-loaded census lacks the fast lookup
    # tables the action build wants), then persist every stage
    c = census(cfg.degree, workers=cfg.workers)
    store.save_census(cfg.cache, c)
    a = build_action(c)
    store.save_action(cfg.cache, a)
    comps = components(a)
    flags = [c.classes[comp.class_ids[0]].abelian for comp in comps]
    store.save_components(cfg.cache, cfg.degree, comps, flags)
    return c, a, comps, flags


def _genus_range(comps, flags, want):
    gs = [comp.genus for comp, f in zip(comps, flags) if f == want]
    return f"{min(gs)}..{max(gs)}" if gs else "-"


def cmd_census(cfg: RunConfig) -> int:
    with cache_lock(cfg.cache):
        c = _ensure_census(cfg)
    a, n = c.counts()
    print(f"abelian={a} non-abelian={n}")
    return 0


def cmd_curves(cfg: RunConfig) -> int:
    with cache_lock(cfg.cache):
        _, _, comps, flags = _ensure_curves(cfg)
    n_ab = sum(flags)
    print(
        f"abelian components={n_ab} non-abelian={len(comps) - n_ab}, "
        f"genus abelian {_genus_range(comps, flags, True)} "
        f"non-abelian {_genus_range(comps, flags, False)}"
    )
    return 0


def cmd_report(cfg: RunConfig) -> int:
    with cache_lock(cfg.cache):
        c, a, comps, _ = _ensure_curves(cfg)
    print(render_report(galois_report(c, a, comps), cfg.fmt), end="")
    return 0


def cmd_info(cfg: RunConfig, text: str) -> int:
    o = Origami.parse(text)
    print(f"degree: {o.degree}")
    if not is_connected(o):
        print("connected: no")
        return 0
    print("connected: yes")
    print(f"abelian: {'yes' if is_abelian(o) else 'no'}")
    st = stratum(o)
    print(f"stratum: {st}")
    print(f"genus: {st.genus}")
    cfg.degree = o.degree
    with cache_lock(cfg.cache):
        c, a, comps, _ = _ensure_curves(cfg)
    try:
        cid = find_class(c, o)
    except ClassNotFound:
        print("class: not found in census")
        return 1
    print(f"class: {cid} (size {c.classes[cid].size})")
    comp = next(cc for cc in comps if cid in cc.class_ids)
    print(f"component: {comp.component_id}")
    print(f"index: {comp.index}")
    print(f"valency: {valency_string(comp)}")
    print(f"curve genus: {comp.genus}")
    vd = veech_data(comp, a)
    print(f"veech generators (stabilizer of class {vd.base}): "
          + (" ".join(vd.generators) if vd.generators else "(none)"))
    return 0


def cmd_diagram(cfg: RunConfig, component_id: int) -> int:
    with cache_lock(cfg.cache):
        _, a, comps, _ = _ensure_curves(cfg)
    if not 0 <= component_id < len(comps):
        raise ValueError(
            f"component id {component_id} out of range (degree {cfg.degree} "
            f"has {len(comps)} components)"
        )
    out = cfg.cache / f"component_d{cfg.degree}_{component_id}.dot"
    out.write_text(export_diagram(comps[component_id], a))
    print(out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="origamis",
        description="census and modular-group classification of origamis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_degree=True):
        if need_degree:
            p.add_argument("--degree", type=int, required=True)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--cache", type=Path, default=None)
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--force", action="store_true")

    add_common(sub.add_parser("census", help="enumerate classes"))
    add_common(sub.add_parser("curves", help="components of Teichmueller curves"))
    add_common(sub.add_parser("report", help="shared-invariant report"))
    p_info = sub.add_parser("info", help="inspect one origami")
    p_info.add_argument("origami", help='e.g. "x=(1,2); y=(1,2); eps=+-"')
    add_common(p_info, need_degree=False)
    p_diag = sub.add_parser("diagram", help="export one component as a graph file")
    p_diag.add_argument("component", type=int)
    add_common(p_diag)

    args = parser.parse_args(argv)
    if args.workers < 1 or (getattr(args, "degree", 1) or 1) < 1:
        parser.error("degree and workers must be >= 1")
    cfg = RunConfig(
        degree=getattr(args, "degree", 0),
        workers=args.workers,
        cache=args.cache if args.cache is not None else store.default_cache_dir(),
        fmt=args.format,
        force=args.force,
    )
    try:
        if args.command == "census":
            return cmd_census(cfg)
        if args.command == "curves":
            return cmd_curves(cfg)
        if args.command == "report":
            return cmd_report(cfg)
        if args.command == "info":
            return cmd_info(cfg, args.origami)
        if args.command == "diagram":
            return cmd_diagram(cfg, args.component)
        raise AssertionError(args.command)
    except (CacheError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
