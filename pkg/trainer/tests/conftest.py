"""Shared fixture: a live uavsim server subprocess on an ephemeral port."""

import re
import subprocess
import sys

import pytest


@pytest.fixture(scope="session")
def live_server():
    proc = subprocess.Popen(
        [sys.executable, "-m", "uavsim.cli", "serve",
         "--bind", "127.0.0.1", "--port", "0"],
        stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True)
    banner = proc.stdout.readline()
    match = re.search(r"listening on 127\.0\.0\.1:(\d+)", banner)
    if not match:
        proc.terminate()
        raise RuntimeError(f"server did not start: {banner!r}")
    yield "127.0.0.1", int(match.group(1))
    proc.terminate()
    proc.wait(timeout=10)
