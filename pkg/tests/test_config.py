import pytest

from relfd.config import Config, get_config, load_config, parse_config_text, preset_names, using_config
from relfd.errors import UsageError


def test_defaults_and_replace():
    c = Config()
    assert (c.eta_neg, c.eta_big, c.beta_big, c.beta_small) == (-0.5, 15.0, 30.0, 0.05)
    assert c.replace(eta_big=20.0).eta_big == 20.0


def test_parse_text():
    c = parse_config_text("# comment\neta_big = 12.5  # trailing\n\nlarge_eta_nterms=6\n")
    assert c.eta_big == 12.5 and c.large_eta_nterms == 6 and isinstance(c.large_eta_nterms, int)


@pytest.mark.parametrize("text", ["nonsense", "unknown_key = 3", "large_eta_nterms = 2.5", "eta_big = abc"])
def test_parse_errors(text):
    with pytest.raises(UsageError):
        parse_config_text(text)


def test_preset_and_file(tmp_path):
    assert "benchmark-grid" in preset_names()
    c = load_config("benchmark-grid")
    assert c.large_eta_nterms == 10 and c.large_beta_kmax == 5 and c.z_switch == 40.0
    f = tmp_path / "my.cfg"
    f.write_text("beta_big = 99\n")
    assert load_config(f).beta_big == 99.0
    with pytest.raises(OSError):
        load_config(tmp_path / "missing.cfg")


def test_context_override():
    base = get_config()
    with using_config(eta_big=3.0) as c:
        assert get_config().eta_big == 3.0 and c is get_config()
    assert get_config() == base
