"""Walk through a few causal contrasts on small models.

    python3 demos/contrasts.py
"""

from sfm import Sfm, cfi, csp_solve, expr, utterance_of, vfi
from sfm.infer import contrast_default, contrast_tweak
from sfm.scenarios import corpus_dir, load_scenario, run_scenario

# Two assassins, either one suffices.
squad = Sfm(
    {"Assassin1": [0, 1], "Assassin2": [0, 1], "Death": [0, 1]},
    {"Death": expr(["Assassin1", "Assassin2"], "Assassin1 | Assassin2")},
)
actual = vfi(squad, {"Assassin1": 1, "Assassin2": 1}).world
print("actual world:   ", actual)

# Against a stated default where nobody shoots.
default = vfi(squad, {"Assassin1": 0, "Assassin2": 0}).world
print("vs default:     ", utterance_of(contrast_default(squad, default, actual)).render())

# Tweaking one assassin changes nothing downstream: the other still fires.
c = contrast_tweak(squad, actual, {"Assassin1": 0})
print("tweak Assassin1:", utterance_of(c).render())

# cfi only re-evaluates what a changed parent touches.
r = cfi(squad, actual, {"Assassin1": 0})
print("cfi evaluations:", dict(r.evals))

# An indicative question is a search, not a forward run.
authors = Sfm(
    {"Shakespeare": [0, 1], "Writer2": [0, 1], "Hamlet": [0, 1]},
    {"Hamlet": expr(["Shakespeare", "Writer2"], "Shakespeare | Writer2")},
)
print("who wrote it:   ", [str(a) for a in csp_solve(authors, {"Shakespeare": 0, "Hamlet": 1}, ["Writer2"])])

# The bundled corpus holds these and more as text documents.
doc = load_scenario(corpus_dir() / "14_connected_preemption.sfm")
print("preemption doc: ", run_scenario(doc).summary)
