"""Alphabet configuration invariants."""

import pytest

from hdts.alphabet import Alphabet, ConfigError, make_alphabet


def test_tau_must_be_a_label():
    with pytest.raises(ConfigError):
        Alphabet(frozenset({"a"}), "tau", ())
    assert "tau" in make_alphabet(["a"]).labels


def test_tau_cannot_be_paired():
    with pytest.raises(ConfigError):
        make_alphabet(["a"], pairs=[("a", "tau")])


def test_pairs_must_use_known_labels():
    with pytest.raises(ConfigError):
        make_alphabet(["a"], pairs=[("a", "zz")])


def test_involution_must_be_self_inverse():
    with pytest.raises(ConfigError):
        make_alphabet(["a", "b", "c"], pairs=[("a", "b"), ("a", "c")])


def test_bar_lookups():
    cfg = make_alphabet(["a", "abar", "b"], pairs=[("a", "abar")])
    assert cfg.bar("a") == "abar"
    assert cfg.bar("abar") == "a"
    assert cfg.bar("b") is None
    assert cfg.bar("tau") is None


def test_self_paired_label_is_allowed():
    cfg = make_alphabet(["a"], pairs=[("a", "a")])
    assert cfg.bar("a") == "a"


def test_check_label():
    cfg = make_alphabet(["a"])
    assert cfg.check_label("a") == "a"
    with pytest.raises(ConfigError):
        cfg.check_label("zz")
