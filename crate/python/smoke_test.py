"""Smoke test for the homcat_py extension module.

Build and install it first, e.g.
    pip install maturin && maturin develop -m crates/python/Cargo.toml
then run `python python/smoke_test.py`.
"""

import json

import homcat_py


def main():
    assert "verify" in homcat_py.commands()

    assert homcat_py.d0_ext_dims([[0, -1, 1], [0, 1]]) == [2, 4, 2]
    assert homcat_py.d0_ext_dims([[0, 1]] * 3, field="F3") == [1, 3, 3, 1]

    problem = {
        "version": "1",
        "command": "ext",
        "payload": {
            "algebra": {"builtin": "dual_numbers", "field": "Q"},
            "f": {"kind": "residue"},
            "g": {"kind": "residue"},
            "max_degree": 3,
        },
    }
    report = json.loads(homcat_py.run(json.dumps(problem)))
    assert report["results"]["dims"] == [1, 1, 1, 1], report
    assert report["input_digest"].startswith("sha256:")
    assert homcat_py.run(json.dumps(problem)) == homcat_py.run(json.dumps(problem))

    suite = json.loads(homcat_py.run_suite("d0", 7))
    assert suite["passed"] and suite["seed"] == 7

    try:
        homcat_py.run('{"command": "ext", "payload": {}, "bogus": 1}')
    except homcat_py.HomcatError as e:
        assert e.args[0] == "E_SCHEMA", e.args
    else:
        raise AssertionError("unknown field was accepted")

    print(f"homcat_py {homcat_py.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
