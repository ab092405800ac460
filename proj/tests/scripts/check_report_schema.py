"""Validate `poisenv analyze --json` output for every corpus file against the report schema."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path, corpus_dir = sys.argv[1:4]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    files = sorted(pathlib.Path(corpus_dir).glob("*.json"))
    for path in files:
        proc = subprocess.run([binary, "analyze", str(path), "--json"], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {path.name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
        for err in errors:
            print(f"FAIL {path.name}: {'/'.join(map(str, err.path))}: {err.message}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {path.name}")
    print(f"{len(files) - failures}/{len(files)} reports match the schema")
    return 1 if failures or not files else 0


if __name__ == "__main__":
    sys.exit(main())
