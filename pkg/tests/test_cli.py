from pathlib import Path

import pytest

from spacinglab.cli import main
from spacinglab.constructions import squares_family
from spacinglab.intset import WindowedSet, format_set_text, parse_set_text


@pytest.fixture
def squares_file(tmp_path):
    path = tmp_path / "squares.set"
    path.write_text(format_set_text(squares_family((1, 10 ** 4))))
    return path


@pytest.fixture
def distance_file(tmp_path):
    path = tmp_path / "p.set"
    path.write_text(format_set_text(WindowedSet.from_members(1, 60, [3, 5, 9, 44])))
    return path


def test_classify_structured(squares_file, tmp_path, capsys):
    out = tmp_path / "report.txt"
    rc = main(["classify", str(squares_file), "--output", str(out)])
    assert rc == 0
    text = out.read_text()
    assert "thick.verdict = false" in text
    assert "syndetic.verdict = false" in text
    assert "ps.verdict = false" in text
    assert "delta.witness = 1,10,26" in text


def test_classify_text_format(squares_file, capsys):
    rc = main(["classify", str(squares_file), "--format", "text"])
    assert rc == 0
    printed = capsys.readouterr().out
    assert "delta=(1, 10, 26)" in printed


def test_classify_deterministic(squares_file, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["classify", str(squares_file), "--output", str(a)]) == 0
    assert main(["classify", str(squares_file), "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_classify_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.set"
    bad.write_text("not a header\n")
    assert main(["classify", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_classify_empty_set(tmp_path, capsys):
    path = tmp_path / "empty.set"
    path.write_text("window 0 99\n")
    assert main(["classify", str(path)]) == 0
    text = capsys.readouterr().out
    assert "thick.verdict = false" in text
    assert "density.upper = 0" in text


def test_construct_emits_metadata_and_set(tmp_path):
    out = tmp_path / "delta.set"
    rc = main(["construct", "rapid-growth-delta", "--param", "terms=4",
               "--output", str(out)])
    assert rc == 0
    text = out.read_text()
    assert "# construct rapid-growth-delta" in text
    assert "# postcondition progressive_gaps=pass" in text
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    assert parse_set_text(body).to_list() == [4, 20, 24, 100, 120, 124]


def test_spacing_return_set_echoes_distances(distance_file, capsys):
    rc = main(["spacing", "return-set", "--p", str(distance_file),
               "--u", "1", "--v", "1", "--window=-50:50"])
    assert rc == 0
    parsed = parse_set_text(capsys.readouterr().out)
    assert parsed.to_list() == [-44, -9, -5, -3, 0, 3, 5, 9, 44]


def test_spacing_nuv_check_single_file(distance_file, capsys):
    rc = main(["spacing", "nuv-check", "--p", str(distance_file),
               "--max-word-len", "4"])
    assert rc == 0
    assert "mismatches=0" in capsys.readouterr().out


def test_spacing_nuv_check_random(capsys):
    rc = main(["spacing", "nuv-check", "--random", "3", "--seed", "5",
               "--max-word-len", "3"])
    assert rc == 0
    assert "mismatches=0" in capsys.readouterr().out


def test_spacing_mixing_report_pass_and_fail(tmp_path, capsys):
    tail = tmp_path / "tail.set"
    tail.write_text(format_set_text(WindowedSet.from_members(1, 400, range(11, 401))))
    rc = main(["spacing", "mixing-report", "--p", str(tail),
               "--detector", "cofinite:n0=30", "--max-word-len", "3"])
    assert rc == 0
    capsys.readouterr()
    evens = tmp_path / "evens.set"
    evens.write_text(format_set_text(WindowedSet.from_members(1, 200, range(2, 201, 2))))
    rc = main(["spacing", "mixing-report", "--p", str(evens),
               "--detector", "thick:L=3", "--max-word-len", "2"])
    assert rc == 1
    assert "failures" in capsys.readouterr().out


def test_covers_profile_auto(tmp_path, capsys):
    full = tmp_path / "full.set"
    full.write_text(format_set_text(WindowedSet.full(1, 16)))
    rc = main(["covers", "profile", "--p", str(full), "--cover", "auto",
               "--seq", "all", "--n-max", "5"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "profile = 2,4,8,16,32" in out
    assert "verdict = growing-at-budget" in out


def test_covers_profile_cover_file(tmp_path, capsys):
    full = tmp_path / "full.set"
    full.write_text(format_set_text(WindowedSet.full(1, 16)))
    cover = tmp_path / "cover.txt"
    cover.write_text("00+01+10\n01+10+11\n")
    rc = main(["covers", "profile", "--p", str(full), "--cover", str(cover),
               "--seq", "all", "--n-max", "3", "--solver-cap", "64"])
    assert rc == 0
    assert "profile = " in capsys.readouterr().out


def test_missing_file_exit_2(capsys):
    assert main(["classify", "/nonexistent/file.set"]) == 2
