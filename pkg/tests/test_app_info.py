from anchortopics.app_info import (
    MODEL_FORMAT_VERSION,
    NUMERIC_LIBRARIES,
    build_info,
    commit_from_git_files,
    display_version,
    version,
)


def test_commit_from_loose_ref(tmp_path):
    git_dir = tmp_path / ".git"
    ref_dir = git_dir / "refs" / "heads"
    ref_dir.mkdir(parents=True)
    (git_dir / "HEAD").write_text("ref: refs/heads/main\n", encoding="utf-8")
    (ref_dir / "main").write_text("abcdef1234567890\n", encoding="utf-8")

    assert commit_from_git_files(tmp_path) == "abcdef1"


def test_commit_from_packed_refs_and_detached_head(tmp_path):
    git_dir = tmp_path / ".git"
    git_dir.mkdir()
    (git_dir / "HEAD").write_text("ref: refs/heads/main\n", encoding="utf-8")
    (git_dir / "packed-refs").write_text(
        "# pack-refs with: peeled\n1234567890abcdef refs/heads/main\n^fedcba0987654321\n", encoding="utf-8"
    )
    assert commit_from_git_files(tmp_path) == "1234567"

    (git_dir / "HEAD").write_text("0badc0ffee000000\n", encoding="utf-8")
    assert commit_from_git_files(tmp_path) == "0badc0f"


def test_no_repository_gives_no_commit(tmp_path):
    assert commit_from_git_files(tmp_path) is None


def test_build_info_lists_the_numeric_stack():
    info = build_info()
    assert info["version"] == display_version()
    assert display_version().startswith(version)
    assert info["model_format_version"] == MODEL_FORMAT_VERSION
    assert set(info["libraries"]) == set(NUMERIC_LIBRARIES)
    assert info["libraries"]["numpy"]
