#!/usr/bin/env python3
"""Regenerate the expected fixture reports bundled with the package.

Runs every canonical fixture invocation with the fixtures directory as
the working directory, strips the timing block, and rewrites the files
under fixtures/expected/. Run after any intentional change to report
content or formatting.
"""

import json
import os
import sys
import tempfile

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from flatunitary import cli  # noqa: E402


def main() -> int:
    fixdir = os.path.join(os.path.dirname(os.path.abspath(cli.__file__)), "fixtures")
    expected_dir = os.path.join(fixdir, "expected")
    os.makedirs(expected_dir, exist_ok=True)
    os.chdir(fixdir)
    for stem, argv, want_code in cli.FIXTURE_RUNS:
        with tempfile.NamedTemporaryFile(suffix=".json", delete=False) as fh:
            out = fh.name
        try:
            code = cli.run([*argv, "--output", out])
            if code != want_code:
                print(f"{stem}: exit {code}, expected {want_code}", file=sys.stderr)
                return 1
            with open(out, encoding="utf-8") as fh:
                report = json.load(fh)
            del report["timings"]
            path = os.path.join(expected_dir, f"{stem}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(cli._render(report) + "\n")
            print(f"wrote expected/{stem}.json (exit {code})")
        finally:
            os.unlink(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
