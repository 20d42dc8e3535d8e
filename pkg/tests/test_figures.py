"""Report figure rendering."""

import os

import pytest

from ksmatch.figures import render
from ksmatch.harness import exp_deficit, exp_drift, exp_hybrid, exp_scaling


def test_render_every_experiment(tmp_path):
    reports = [
        exp_deficit(100, 2, 0.0, 1),
        exp_hybrid(100, 2, 1),
        exp_scaling([100, 200], 2, 1),
        exp_drift(300, 2, 1),
    ]
    for rep in reports:
        out = tmp_path / rep.experiment
        paths = render(rep.to_dict(), str(out))
        assert paths
        for p in paths:
            assert p.endswith(".png")
            assert os.path.getsize(p) > 0


def test_render_rejects_bad_input(tmp_path):
    with pytest.raises(ValueError):
        render({"experiment": "nope", "trials": [1]}, str(tmp_path))
    empty = exp_deficit(100, 0, 0.0, 1)
    with pytest.raises(ValueError):
        render(empty.to_dict(), str(tmp_path))
