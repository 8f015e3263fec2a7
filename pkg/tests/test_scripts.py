import json
import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).parent.parent / "scripts"


def run_script(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, check=False)


def test_erratum_report():
    out = run_script("erratum_report.py", "e5", "--json")
    assert out.returncode == 0
    items = {e["item"] for e in json.loads(out.stdout)}
    assert "mu'(e1,e1)" in items
    assert run_script("erratum_report.py", "nope").returncode != 0
