import json

import numpy as np
import pytest

from qradon import cli, fock, groups, radon, states


def write_state(path, rho):
    path.write_text(states.density_to_json(rho))
    return str(path)


class TestSpinTomogram:
    def test_ground_state_along_x(self, tmp_path, capsys):
        state = write_state(tmp_path / "s.json", states.validate_density(np.diag([1.0, 0.0]).astype(complex)))
        code = cli.main(["spin-tomogram", "--state", state, "--axis", "1,0,0"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["axis"] == [1.0, 0.0, 0.0]
        weights = [atom["w"] for atom in doc["atoms"]]
        assert weights == pytest.approx([0.5, 0.5], abs=1e-12)

    def test_deterministic_output(self, tmp_path):
        state = write_state(tmp_path / "s.json", states.random_density(2, 5))
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        assert cli.main(["spin-tomogram", "--state", state, "--axis", "0.3,0.2,1", "--out", str(out1)]) == 0
        assert cli.main(["spin-tomogram", "--state", state, "--axis", "0.3,0.2,1", "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_bad_axis_is_usage_error(self, tmp_path):
        state = write_state(tmp_path / "s.json", states.random_density(2, 1))
        with pytest.raises(SystemExit) as exc:
            cli.main(["spin-tomogram", "--state", state, "--axis", "1,0"])
        assert exc.value.code == 64


class TestGroupReconstruct:
    def test_round_trip(self, tmp_path, capsys):
        rho = states.random_density(2, 9)
        _, rep = groups.pauli_group()
        chi = groups.smeared_character(rho, rep)
        lines = ["g,re,im"] + [
            f"{g},{v.real:.17g},{v.imag:.17g}" for g, v in enumerate(chi.values)
        ]
        chi_path = tmp_path / "chi.csv"
        chi_path.write_text("\n".join(lines) + "\n")
        out = tmp_path / "rho.json"
        code = cli.main(["group-reconstruct", "--group", "pauli", "--chi", str(chi_path), "--out", str(out)])
        assert code == 0
        rebuilt = states.density_from_json(out.read_text())
        assert states.trace_distance(rho, rebuilt) < 1e-10

    def test_group_json_file(self, tmp_path, capsys):
        group, rep = groups.cyclic_group(3)
        gpath = tmp_path / "group.json"
        gpath.write_text(groups.group_to_json(group, [rep]))
        rho = states.validate_density(np.eye(1, dtype=complex))
        chi = groups.smeared_character(rho, rep)
        chi_path = tmp_path / "chi.csv"
        chi_path.write_text(
            "g,re,im\n" + "\n".join(f"{g},{v.real},{v.imag}" for g, v in enumerate(chi.values)) + "\n"
        )
        code = cli.main(["group-reconstruct", "--group", str(gpath), "--chi", str(chi_path)])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["dim"] == 1

    def test_wrong_row_count_is_validation_error(self, tmp_path):
        chi_path = tmp_path / "chi.csv"
        chi_path.write_text("g,re,im\n0,1,0\n")
        assert cli.main(["group-reconstruct", "--group", "pauli", "--chi", str(chi_path)]) == 1


class TestWHCommands:
    def test_tomogram_integral(self, tmp_path):
        state = write_state(tmp_path / "vac.json", fock.fock_state(0, 32))
        out = tmp_path / "tom.csv"
        code = cli.main([
            "wh-tomogram", "--state", state, "--mu", "1", "--nu", "0",
            "--xmin", "-8", "--xmax", "8", "--nx", "801", "--out", str(out),
        ])
        assert code == 0
        rows = np.loadtxt(out, delimiter=",", skiprows=1)
        integral = np.trapezoid(rows[:, 1], rows[:, 0])
        assert abs(integral - 1.0) < 1e-6

    def test_reconstruct_from_samples(self, tmp_path, capsys):
        m, box = 32, 6.0
        h = 2 * box / m
        cs = -box + h * (np.arange(m) + 0.5)
        fs = fock.fock_operators(64)
        lines = ["mu,nu,re,im"]
        for mu in cs:
            for nu in cs:
                u = fock.displacement(fock.WHDirection(mu=[mu], nu=[nu]), fs)
                lines.append(f"{mu:.17g},{nu:.17g},{u[0, 0].real:.17g},{u[0, 0].imag:.17g}")
        chi_path = tmp_path / "chi.csv"
        chi_path.write_text("\n".join(lines) + "\n")
        out = tmp_path / "rho.json"
        code = cli.main([
            "wh-reconstruct", "--chi", str(chi_path), "--box", "6", "--grid", "32",
            "--cutoff", "16", "--psd-clip", "--out", str(out),
        ])
        assert code == 0
        rebuilt = states.density_from_json(out.read_text())
        assert states.trace_distance(rebuilt, fock.fock_state(0, 16)) < 0.05

    def test_wigner_csv(self, tmp_path):
        state = write_state(tmp_path / "vac.json", fock.fock_state(0, 16))
        out = tmp_path / "w.csv"
        code = cli.main([
            "wigner", "--state", state, "--qmin", "-6", "--qmax", "6", "--nq", "41",
            "--pmin", "-6", "--pmax", "6", "--np", "41", "--out", str(out),
        ])
        assert code == 0
        rows = np.loadtxt(out, delimiter=",", skiprows=1)
        assert rows.shape == (41 * 41, 3)
        center = rows[np.argmin(rows[:, 0] ** 2 + rows[:, 1] ** 2)]
        assert center[2] == pytest.approx(1 / np.pi, abs=1e-6)


class TestRadonCommands:
    def test_round_trip_files(self, tmp_path):
        axes = np.linspace(-9, 9, 129)
        qq, pp = np.meshgrid(axes, axes, indexing="ij")
        img = radon.ImageGrid.from_axes(axes, axes, np.exp(-(qq**2 + pp**2) / 2) / (2 * np.pi))
        img_path = tmp_path / "img.csv"
        radon.image_to_csv(img, img_path)
        sino_path = tmp_path / "sino.csv"
        code = cli.main([
            "radon", "--image", str(img_path), "--angles", "90",
            "--xmin", "-9", "--xmax", "9", "--nx", "129", "--out", str(sino_path),
        ])
        assert code == 0
        back_path = tmp_path / "back.csv"
        code = cli.main([
            "iradon", "--sino", str(sino_path), "--qmin", "-9", "--qmax", "9", "--nq", "129",
            "--pmin", "-9", "--pmax", "9", "--np", "129", "--out", str(back_path),
        ])
        assert code == 0
        back = radon.image_from_csv(back_path)
        rel = np.linalg.norm(back.values - img.values) / np.linalg.norm(img.values)
        assert rel < 0.03


class TestVerifyAndErrors:
    def test_verify_states_module(self, capsys):
        assert cli.main(["verify", "--module", "states"]) == 0
        table = capsys.readouterr().out
        assert "pass" in table and "FAIL" not in table

    def test_missing_file_is_validation_error(self, capsys):
        assert cli.main(["spin-tomogram", "--state", "/nonexistent.json", "--axis", "1,0,0"]) == 1

    def test_invalid_state_is_validation_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"dim": 2, "re": [1.5, 0, 0, -0.5], "im": [0, 0, 0, 0]}))
        assert cli.main(["spin-tomogram", "--state", str(bad), "--axis", "1,0,0"]) == 1

    def test_unknown_flag_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["radon", "--bogus", "1"])
        assert exc.value.code == 64

    def test_emitted_density_json_revalidates(self, tmp_path):
        rho = states.random_density(3, 3)
        _, rep = groups.heisenberg_group(3)
        chi = groups.smeared_character(rho, rep)
        chi_path = tmp_path / "chi.csv"
        chi_path.write_text(
            "g,re,im\n"
            + "\n".join(f"{g},{v.real:.17g},{v.imag:.17g}" for g, v in enumerate(chi.values))
            + "\n"
        )
        out = tmp_path / "rho.json"
        code = cli.main([
            "group-reconstruct", "--group", "heisenberg:3", "--chi", str(chi_path), "--out", str(out)
        ])
        assert code == 0
        states.density_from_json(out.read_text())
