import pytest

from awn.services.algebra import NCPoly, gen, label_from_set
from awn.services.cache import cached_completion, dumps, load_rules, loads, rank_path, save_rules
from awn.services.errors import AwError


def test_dumps_header_and_order(rules3):
    text = dumps(rules3)
    lines = text.splitlines()
    assert lines[0] == 'awcache v1 n=3 degbound=4'
    assert lines[1] == 'order: C[1;3] C[2..3] C[1..2]'
    assert lines[2] == 'incomplete: no'
    assert any(line.startswith('rule: C[1..2]*C[2..3] := ') for line in lines)


def test_loads_restores_rules(rules3):
    loaded = loads(dumps(rules3))
    assert set(loaded.rules) == set(rules3.rules)
    assert loaded.order == rules3.order
    n = 3
    x = NCPoly.letter(gen(1, 2), n) * NCPoly.letter(gen(2, 3), n) * NCPoly.letter(label_from_set({1, 3}), n)
    assert loaded.reduce(x) == rules3.reduce(x)


def test_save_and_load(rules3, tmp_path):
    path = tmp_path / 'rules.n3.txt'
    save_rules(rules3, str(path))
    assert path.exists()
    assert load_rules(str(path), 3, 4) is not None


def test_header_mismatch_recomputes(rules3, tmp_path):
    path = tmp_path / 'rules.txt'
    save_rules(rules3, str(path))
    assert load_rules(str(path), 3, 5) is None
    assert load_rules(str(path), 4, 4) is None


def test_missing_file():
    assert load_rules('/nonexistent/rules.txt', 3, 4) is None


@pytest.mark.parametrize('text', ['', 'garbage\n', 'awcache v1 n=3\n', 'awcache v1 n=3 degbound=4\nrule: x\n'])
def test_broken_cache_rejected(text):
    with pytest.raises(AwError):
        loads(text)


def test_cached_completion_writes_once(tmp_path):
    path = str(tmp_path / 'rules.n3.txt')
    first = cached_completion(3, 4, 10, path)
    second = cached_completion(3, 4, 10, path)
    assert set(first.rules) == set(second.rules)


def test_rank_path():
    assert rank_path('cache/rules.txt', 4) == 'cache/rules.n4.txt'
    assert rank_path('rules', 3) == 'rules.n3.txt'
    assert rank_path(None, 3) is None
