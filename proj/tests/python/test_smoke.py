"""Smoke tests for the python bindings."""

import pytest

import prins

CSV = """log_id,seq,timestamp,component,event,params
l1,1,,Master,start,
l1,2,,Job,init,
l1,3,,Master,working,
l1,4,,Job,try,
l1,5,,Job,pass,
l1,6,,Job,try,
l1,7,,Job,pass,
l1,8,,Master,end,ok
l2,1,,Master,start,
l2,2,,Job,init,
l2,3,,Master,working,
l2,4,,Job,try,
l2,5,,Job,wait,
l2,6,,Job,wait,
l2,7,,Job,fail,
l2,8,,Master,end,err
"""


@pytest.fixture()
def logs():
    return prins.parse_logs(CSV)


def test_parse_and_project(logs):
    assert len(logs) == 2
    assert logs.components() == {"Master", "Job"}
    master = prins.project(logs, "Master")
    assert [e.event for e in master.logs()[0].entries] == ["start", "working", "end"]


def test_partition(logs):
    parts = prins.partition(logs.logs()[0])
    assert [c for c, _ in parts] == ["Master", "Job", "Master", "Job", "Master"]
    assert len(parts[3][1].entries) == 4


def test_full_pipeline(logs):
    model = prins.infer(logs, strategy="prins", k=2, u=1)
    assert model.is_deterministic()
    for log in logs.logs():
        assert model.accepts(log)
    assert not model.accepts_entries(
        [prins.LogEntry("Master", "start"), prins.LogEntry("Master", "working")]
    )


def test_stitch_and_determinize(logs):
    models = prins.infer_all(logs, k=2, workers=2)
    stitched = prins.stitch(logs, models)
    assert not stitched.is_deterministic()
    det = prins.hybrid_determinize(stitched, 1)
    assert det.is_deterministic()
    assert prins.isomorphic(det, prins.infer(logs))


def test_serialization_round_trip(logs):
    model = prins.infer(logs)
    again = prins.model_from_json(model.to_json())
    assert prins.isomorphic(model, again)
    assert "digraph" in model.to_dot()


def test_lds(logs):
    score = prins.lds(logs)
    assert (score.num, score.den) == (0, 1)


def test_generated_corpus_round_trip():
    corpus, truth = prins.generate_corpus(components=2, states=4, logs=8, max_len=12, seed=3)
    assert len(corpus) == 8
    for name, machine in truth.items():
        projected = prins.project(corpus, name)
        for log in projected.logs():
            assert machine.accepts(log)


def test_kfold_smoke():
    corpus, _ = prins.generate_corpus(components=2, states=4, logs=12, max_len=12, seed=9)
    report = prins.kfold_evaluate(corpus, folds=4, strategy="prins", seed=1)
    assert report["tp"] + report["fn"] == 12
