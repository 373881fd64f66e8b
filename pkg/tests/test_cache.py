import json
import multiprocessing

import pytest

from critpair.cache import ResultCache, cache_key, cached
from critpair.errors import CacheMismatch


def test_keys_depend_on_every_input():
    base = cache_key("profile", {"S": "{0,1}"}, "1.0")
    assert base == cache_key("profile", {"S": "{0,1}"}, "1.0")
    assert base != cache_key("profile", {"S": "{0,2}"}, "1.0")
    assert base != cache_key("classify", {"S": "{0,1}"}, "1.0")
    assert base != cache_key("profile", {"S": "{0,1}"}, "1.1")
    assert cache_key("x", {"a": 1, "b": 2}, "v") == cache_key("x", {"b": 2, "a": 1}, "v")


def test_hit_returns_stored_value(tmp_path):
    cache = ResultCache(tmp_path)
    calls = []

    def compute():
        calls.append(1)
        return {"kappa": 2}

    assert cached(cache, "op", {"S": "{0}"}, compute) == ({"kappa": 2}, False)
    assert cached(cache, "op", {"S": "{0}"}, compute) == ({"kappa": 2}, True)
    assert len(calls) == 1
    assert cached(cache, "op", {"S": "{0}"}, compute, verify=True) == ({"kappa": 2}, True)
    assert len(calls) == 2


def test_tampered_entry_is_detected(tmp_path):
    cache = ResultCache(tmp_path)
    entry = cache.put("op", {"S": "{0}"}, {"kappa": 2})
    path = tmp_path / f"{entry.key}.json"
    body = json.loads(path.read_text())
    body["value"]["kappa"] = 3
    path.write_text(json.dumps(body))
    assert cached(cache, "op", {"S": "{0}"}, lambda: {"kappa": 2})[0] == {"kappa": 3}
    with pytest.raises(CacheMismatch):
        cached(cache, "op", {"S": "{0}"}, lambda: {"kappa": 2}, verify=True)


def test_strip_ignores_timing(tmp_path):
    cache = ResultCache(tmp_path)
    cache.put("sweep", {}, {"n": 1, "elapsed_ms": 5})
    value, hit = cached(cache, "sweep", {}, lambda: {"n": 1, "elapsed_ms": 9}, verify=True,
                        strip=lambda d: {k: v for k, v in d.items() if k != "elapsed_ms"})
    assert hit and value["n"] == 1


def test_corrupt_file_is_a_miss(tmp_path):
    cache = ResultCache(tmp_path)
    entry = cache.put("op", {}, {"v": 1})
    (tmp_path / f"{entry.key}.json").write_text("{not json")
    assert cache.get("op", {}) is None


def _writer(args):
    directory, i = args
    ResultCache(directory).put("op", {"i": i % 4}, {"i": i % 4})
    return i


def test_concurrent_writers_leave_valid_entries(tmp_path):
    with multiprocessing.get_context("fork").Pool(4) as pool:
        pool.map(_writer, [(str(tmp_path), i) for i in range(40)])
    cache = ResultCache(tmp_path)
    for i in range(4):
        assert cache.get("op", {"i": i}).value == {"i": i}
    assert not list(tmp_path.glob("*.tmp"))
