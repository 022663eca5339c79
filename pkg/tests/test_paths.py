from pathlib import Path

from anchortopics.utils import paths
from anchortopics.utils.settings_loader import as_bool, get_value, load_settings, section


def test_repo_root_contains_pyproject():
    repo_root = paths.get_repo_root()
    assert (repo_root / "pyproject.toml").exists()


def test_canonical_dirs():
    src_root = paths.get_src_root()
    assert paths.get_data_dir() == src_root / "data"
    assert paths.get_logs_dir() == src_root / "logs"
    assert paths.get_log_file() == paths.get_logs_dir() / "anchortopics.log"
    assert paths.get_seeds_path().exists()
    assert paths.get_accounts_path().exists()
    assert paths.get_events_path().exists()


def test_config_override(monkeypatch, tmp_path: Path):
    cfg = tmp_path / "settings.txt"
    cfg.write_text("[MODEL]\nN_TOPICS=7\nANCHOR_STRENGTH=3.5\nSEED_MODE=extracted_plus_curated\n", encoding="utf-8")
    monkeypatch.setenv("ANCHORTOPICS_CONFIG_PATH", str(cfg))

    resolved = paths.get_config_path()
    assert resolved == cfg.resolve()

    settings = load_settings()
    assert settings["MODEL"]["n_topics"] == 7
    assert settings["MODEL"]["anchor_strength"] == 3.5
    assert settings["MODEL"]["seed_mode"] == "extracted_plus_curated"


def test_settings_helpers_tolerate_case_and_blanks():
    settings = {"MODEL": {"top_k": 5, "seeds_path": "  "}}
    model = section(settings, "model") or section(settings, "MODEL")
    assert get_value(model, "TOP_K", 10) == 5
    assert get_value(model, "seeds_path", "default") == "default"
    assert get_value(model, "missing", 3) == 3
    assert as_bool("yes", False) is True
    assert as_bool("off", True) is False
    assert as_bool(None, True) is True


def test_shipped_settings_load():
    settings = load_settings(paths.get_repo_root() / "settings.txt")
    assert settings["MODEL"]["n_topics"] == 20
    assert settings["MODEL"]["n_iter"] == 100
    assert settings["CORPUS"]["window_start"] == "2020-03-01"
