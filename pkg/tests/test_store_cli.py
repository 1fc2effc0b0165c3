import json

import pytest

from origamis import store
from origamis.action import build_action
from origamis.classify import census, find_class
from origamis.cli import main
from origamis.curves import components
from origamis.model import Origami
from origamis.store import CacheError, cache_lock


@pytest.fixture
def cache(tmp_path):
    return tmp_path / "cache"


def test_census_cache_roundtrip(cache):
    c = census(3)
    store.save_census(cache, c)
    loaded = store.load_census(cache, 3)
    assert loaded.counts() == c.counts()
    for a, b in zip(c.classes, loaded.classes):
        assert (a.x, a.y, a.eps, a.size, a.abelian) == (b.x, b.y, b.eps, b.size, b.abelian)
    # lookup works through the no-tables fallback
    for cl in c.classes:
        assert find_class(loaded, cl.canonical_rep) == cl.class_id


def test_checksum_detects_corruption(cache):
    c = census(2)
    path = store.save_census(cache, c)
    body = path.read_text().replace("abelian=1", "abelian=0", 1)
    path.write_text(body)
    with pytest.raises(CacheError):
        store.load_census(cache, 2)


def test_wrong_degree_rejected(cache):
    store.save_census(cache, census(2))
    target = store.census_path(cache, 3)
    store.census_path(cache, 2).rename(target)
    with pytest.raises(CacheError):
        store.load_census(cache, 3)


def test_action_and_components_roundtrip(cache):
    c = census(4)
    a = build_action(c)
    comps = components(a)
    flags = [c.classes[comp.class_ids[0]].abelian for comp in comps]
    store.save_action(cache, a)
    store.save_components(cache, 4, comps, flags)
    assert store.load_action(cache, 4) == a
    loaded, lflags = store.load_components(cache, 4)
    assert loaded == comps
    assert lflags == flags


def test_parse_valency():
    assert store.parse_valency("(3^5|2^7,1|5,4,3^2)") == (
        (3, 3, 3, 3, 3),
        (2, 2, 2, 2, 2, 2, 2, 1),
        (5, 4, 3, 3),
    )


def test_lock_exclusive(cache):
    with cache_lock(cache):
        with pytest.raises(CacheError):
            with cache_lock(cache):
                pass
    # released afterwards
    with cache_lock(cache):
        pass


def test_cli_census_and_reuse(cache, capsys):
    args = ["census", "--degree", "3", "--cache", str(cache)]
    assert main(args) == 0
    assert capsys.readouterr().out.strip() == "abelian=7 non-abelian=4"
    before = store.census_path(cache, 3).read_bytes()
    assert main(args) == 0
    assert store.census_path(cache, 3).read_bytes() == before


def test_cli_determinism_across_workers(cache, tmp_path):
    other = tmp_path / "other"
    main(["census", "--degree", "4", "--cache", str(cache)])
    main(["census", "--degree", "4", "--cache", str(other), "--workers", "3"])
    assert (
        store.census_path(cache, 4).read_bytes()
        == store.census_path(other, 4).read_bytes()
    )


def test_cli_curves_line(cache, capsys):
    assert main(["curves", "--degree", "4", "--cache", str(cache)]) == 0
    out = capsys.readouterr().out
    assert "abelian components=5 non-abelian=6" in out


def test_cli_report_json(cache, capsys):
    assert main(["report", "--degree", "3", "--cache", str(cache), "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ambiguous_keys"] == []
    assert rep["summary"]["classes"] == [7, 4]


def test_cli_info(cache, capsys):
    code = main(["info", "x=(1,2); y=(1,2); eps=+-", "--cache", str(cache)])
    out = capsys.readouterr().out
    assert code == 0
    assert "stratum: Q0(-1,-1,-1,-1)" in out
    assert "index: 1" in out


def test_cli_diagram(cache, capsys):
    main(["curves", "--degree", "2", "--cache", str(cache)])
    capsys.readouterr()
    assert main(["diagram", "0", "--degree", "2", "--cache", str(cache)]) == 0
    path = capsys.readouterr().out.strip()
    assert path.endswith(".dot")
    text = open(path).read()
    assert text.startswith("digraph")


def test_cli_error_exit_code(cache, capsys):
    assert main(["diagram", "99", "--degree", "2", "--cache", str(cache)]) == 1
    assert "error:" in capsys.readouterr().err


def test_env_var_cache_override(tmp_path, monkeypatch):
    monkeypatch.setenv(store.ENV_CACHE, str(tmp_path / "envcache"))
    assert store.default_cache_dir() == tmp_path / "envcache"
