import json
import socket
import threading

import pytest

from uavsim.environment import EpisodeConfig, reset, step
from uavsim.server import Client, EnvServer, Session, encode

SHORT = {"max_steps": 40}


@pytest.fixture()
def server():
    srv = EnvServer(("127.0.0.1", 0))
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    try:
        yield srv
    finally:
        srv.shutdown()
        srv.server_close()
        thread.join(timeout=5)


def test_spec_reply():
    reply, keep = Session().handle({"cmd": "spec"})
    assert keep
    assert reply["ok"] is True
    assert reply["protocol"] == 1
    assert reply["scenarios"] == [1, 2, 3]
    assert reply["observation_dim"] == 13
    assert len(reply["observation_fields"]) == 13
    assert reply["action_dim"] == 2
    assert (reply["action_low"], reply["action_high"]) == (0.0, 1.0)
    assert reply["agents"]["1"] == ["evader"]
    assert reply["agents"]["3"] == ["evader", "interceptor"]
    assert "running" in reply["statuses"]


def test_reset_and_step():
    s = Session()
    reply, _ = s.handle({"cmd": "reset", "scenario": 1, "seed": 0})
    assert reply["ok"] and reply["episode"] == 1
    assert reply["agents"] == ["evader"]
    obs = reply["observations"]["evader"]
    assert len(obs) == 13 and all(isinstance(v, float) for v in obs)
    assert reply["info"]["seed"] == 0

    reply, _ = s.handle({"cmd": "step", "actions": {"evader": [0.6, 0.6]}})
    assert reply["ok"]
    assert set(reply) >= {"observations", "rewards", "done", "status", "info"}
    assert reply["status"] in ("running", "out_of_bounds")
    assert isinstance(reply["rewards"]["evader"], float)


def test_step_before_reset():
    reply, keep = Session().handle({"cmd": "step", "actions": {"evader": [0, 0]}})
    assert keep
    assert reply == {"ok": False, "error": "no_episode", "detail": reply["detail"]}


def test_step_after_done():
    s = Session()
    s.handle({"cmd": "reset", "scenario": 1, "seed": 3, "config": {"max_steps": 1}})
    reply, _ = s.handle({"cmd": "step", "actions": {"evader": [0.58, 0.58]}})
    assert reply["done"]
    reply, _ = s.handle({"cmd": "step", "actions": {"evader": [0.58, 0.58]}})
    assert reply["error"] == "no_episode"
    # a fresh reset revives the session
    reply, _ = s.handle({"cmd": "reset", "scenario": 1, "seed": 4})
    assert reply["ok"] and reply["episode"] == 2


def test_reset_validation():
    s = Session()
    for message in ({"cmd": "reset"},
                    {"cmd": "reset", "scenario": 9, "seed": 0},
                    {"cmd": "reset", "scenario": 1.5, "seed": 0},
                    {"cmd": "reset", "scenario": True, "seed": 0},
                    {"cmd": "reset", "scenario": 1, "seed": "zero"},
                    {"cmd": "reset", "scenario": 1, "seed": 0, "config": 5},
                    {"cmd": "reset", "scenario": 1, "seed": 0,
                     "config": {"nope": 1}},
                    {"cmd": "reset", "scenario": 1, "seed": 0,
                     "config": {"max_steps": 0}}):
        reply, keep = s.handle(message)
        assert keep and reply["error"] == "bad_request", message
    assert s.state is None


def test_step_action_validation():
    s = Session()
    s.handle({"cmd": "reset", "scenario": 3, "seed": 0, "config": SHORT})
    both = {"evader": [0.5, 0.5], "interceptor": [0.5, 0.5]}
    for actions in (None, [], {"evader": [0.5, 0.5]},
                    dict(both, extra=[0.5, 0.5]),
                    {"evader": [0.5], "interceptor": [0.5, 0.5]},
                    {"evader": [0.5, 0.5, 0.5], "interceptor": [0.5, 0.5]},
                    {"evader": ["a", 0.5], "interceptor": [0.5, 0.5]},
                    {"evader": [True, 0.5], "interceptor": [0.5, 0.5]},
                    {"evader": 7, "interceptor": [0.5, 0.5]}):
        reply, keep = s.handle({"cmd": "step", "actions": actions})
        assert keep and not reply["ok"], actions
        assert reply["error"] in ("bad_request", "bad_action")
    # the failed attempts must not have advanced the episode
    assert s.state.step_index == 0


def test_unknown_and_malformed_commands():
    s = Session()
    for message in ({}, {"cmd": "noop"}, {"cmd": 5}, "reset", 3, None):
        reply, keep = s.handle(message)
        assert keep and reply["error"] == "bad_request"


def test_close_reply():
    s = Session()
    s.handle({"cmd": "reset", "scenario": 1, "seed": 0})
    reply, keep = s.handle({"cmd": "close"})
    assert reply == {"ok": True, "closed": True, "episodes": 1}
    assert not keep


def test_encode_is_compact_single_line():
    raw = encode({"ok": True, "x": 1.5})
    assert raw == b'{"ok":true,"x":1.5}\n'
    with pytest.raises(ValueError):
        encode({"x": float("nan")})


def test_session_replies_are_deterministic():
    def transcript():
        s = Session()
        out = []
        for msg in ({"cmd": "reset", "scenario": 2, "seed": 7, "config": SHORT},
                    {"cmd": "step", "actions": {"evader": [0.7, 0.5]}},
                    {"cmd": "step", "actions": {"evader": [0.4, 0.6]}}):
            reply, _ = s.handle(msg)
            out.append(encode(reply))
        return out

    assert transcript() == transcript()


def test_remote_matches_in_process(server):
    cfg = EpisodeConfig(max_steps=40)
    state, obs = reset(2, 5, cfg)
    with Client(port=server.port) as client:
        reply = client.request({"cmd": "reset", "scenario": 2, "seed": 5,
                                "config": SHORT})
        assert reply["observations"]["evader"] == obs["evader"].tolist()
        done = False
        while not done:
            outcome = step(state, {"evader": (0.62, 0.6)})
            reply = client.request({"cmd": "step",
                                    "actions": {"evader": [0.62, 0.6]}})
            assert reply["rewards"]["evader"] == outcome.rewards["evader"]
            assert (reply["observations"]["evader"]
                    == outcome.observations["evader"].tolist())
            assert reply["status"] == outcome.status
            done = reply["done"]
            assert done == outcome.done


def test_concurrent_sessions_do_not_interfere(server):
    with Client(port=server.port) as a, Client(port=server.port) as b:
        ra = a.request({"cmd": "reset", "scenario": 1, "seed": 11, "config": SHORT})
        rb = b.request({"cmd": "reset", "scenario": 1, "seed": 11, "config": SHORT})
        assert ra["observations"] == rb["observations"]
        # interleave: advancing session a must not touch session b
        sa = a.request({"cmd": "step", "actions": {"evader": [0.9, 0.1]}})
        sb = b.request({"cmd": "step", "actions": {"evader": [0.9, 0.1]}})
        assert sa["rewards"] == sb["rewards"]
        assert sa["observations"] == sb["observations"]
        sb2 = b.request({"cmd": "step", "actions": {"evader": [0.2, 0.8]}})
        sa2 = a.request({"cmd": "step", "actions": {"evader": [0.2, 0.8]}})
        assert sa2 == sb2


def test_malformed_json_keeps_session_alive(server):
    sock = socket.create_connection(("127.0.0.1", server.port), timeout=10)
    f = sock.makefile("rwb")
    f.write(b"this is not json\n")
    f.flush()
    reply = json.loads(f.readline())
    assert reply["error"] == "bad_request"
    f.write(encode({"cmd": "spec"}))
    f.flush()
    assert json.loads(f.readline())["ok"] is True
    f.close()
    sock.close()


def test_abrupt_disconnect_leaves_server_usable(server):
    sock = socket.create_connection(("127.0.0.1", server.port), timeout=10)
    sock.sendall(b'{"cmd": "reset", "scenario": 1')  # no newline, no close
    sock.close()
    with Client(port=server.port) as client:
        assert client.request({"cmd": "spec"})["ok"] is True
