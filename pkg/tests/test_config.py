from ff_pseudoarc.core.config import Settings, get_settings


def test_defaults_without_env() -> None:
    settings = get_settings()
    assert settings.MAX_ENUM == 10**8
    assert settings.SEED == 0
    assert settings.CAP_INSTANCES == 500
    assert settings.THEME == "light"
    assert settings.DEBUG is False
    assert settings.LOG_LEVEL == "WARNING"


def test_environment_overrides(monkeypatch) -> None:
    monkeypatch.setenv("FF_SEED", "42")
    monkeypatch.setenv("FF_DEBUG", "yes")
    monkeypatch.setenv("FF_LOG_LEVEL", "debug")
    settings = get_settings()
    assert settings.SEED == 42
    assert settings.DEBUG is True
    assert settings.LOG_LEVEL == "DEBUG"


def test_dotenv_in_working_directory(isolated_settings) -> None:
    (isolated_settings / ".env").write_text("FF_THEME=dark\nFF_SVG_CELL=10\n")
    settings = get_settings()
    assert settings.THEME == "dark"
    assert settings.SVG_CELL == 10


def test_custom_env_file_wins_over_cwd(isolated_settings, monkeypatch) -> None:
    (isolated_settings / ".env").write_text("FF_SEED=1\n")
    custom = isolated_settings / "custom.env"
    custom.write_text("FF_SEED=7\n")
    monkeypatch.setenv("FF_ENV_FILE", str(custom))
    assert get_settings().SEED == 7


def test_process_env_wins_over_dotenv(isolated_settings, monkeypatch) -> None:
    (isolated_settings / ".env").write_text("FF_CAP_INSTANCES=3\n")
    monkeypatch.setenv("FF_CAP_INSTANCES", "9")
    assert get_settings().CAP_INSTANCES == 9


def test_invalid_values_fall_back(monkeypatch) -> None:
    monkeypatch.setenv("FF_MAX_ENUM", "-3")
    monkeypatch.setenv("FF_SEED", "abc")
    settings = get_settings()
    assert settings.MAX_ENUM == 10**8
    assert settings.SEED == 0


def test_settings_str() -> None:
    assert str(Settings()) == "<Settings max_enum=100000000 seed=0 theme=light>"
