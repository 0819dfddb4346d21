#!/usr/bin/env python3
"""Validate JSON reports against docs/report.schema.json.

usage: validate_reports.py SCHEMA FILE...        validate existing files
       validate_reports.py SCHEMA --cli BINARY   run every subcommand, validate its output
"""
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["orbit", "--map", "x^2+1", "--alpha", "1", "--max-n", "5"],
    ["orbit", "--map", "x^2+t", "--alpha", "t", "--max-n", "3", "--field", "qt"],
    ["orbit", "--map", "x^2-1", "--alpha", "0", "--max-n", "4"],
    ["zsigmondy", "--map", "x^2+1", "--alpha", "1", "--max-n", "8", "--no-cache"],
    ["zsigmondy", "--map", "(x-1)^2", "--alpha", "3", "--max-n", "6", "--no-cache"],
    ["zsigmondy", "--map", "x^2-4", "--alpha", "2", "--max-n", "4", "--no-cache"],
    ["zsigmondy", "--map", "x^2+t", "--alpha", "t", "--max-n", "4", "--field", "qt"],
    ["height", "--value", "-7/12"],
    ["height", "--value", "(t^2+1)/t", "--field", "qt"],
    ["canonical-height", "--map", "x^2+1", "--alpha", "1", "--tol", "1e-6"],
    ["classify", "--map", "x^2-1", "--alpha", "0"],
    ["map-analyze", "--map", "(2x^2-3)/(5x+7)"],
    ["prop-old", "--map", "x^2+1", "--alpha", "1", "--F", "x^2+1", "--level", "1", "--max-n", "6"],
    ["abc", "--a", "1", "--b", "8"],
    ["roth-scan", "--F", "x^3+2", "--epsilon", "1", "--H", "10"],
    ["roth-scan", "--F", "x^3-t", "--epsilon", "0.5", "--field", "qt", "--max-degree", "1"],
    ["mason", "--a", "t^2+2t", "--b", "1"],
    ["galois-tower", "--a", "1", "--max-n", "4", "--disc-levels", "3"],
]


def main(argv):
    if len(argv) < 3:
        print(__doc__, file=sys.stderr)
        return 2
    with open(argv[1]) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    docs = []
    if argv[2] == "--cli":
        for cmd in COMMANDS:
            proc = subprocess.run([argv[3], *cmd], capture_output=True, text=True)
            if proc.returncode != 0:
                print(f"FAIL {' '.join(cmd)}: exit {proc.returncode}: {proc.stderr.strip()}")
                return 1
            docs.append((" ".join(cmd), proc.stdout))
    else:
        for path in argv[2:]:
            with open(path) as f:
                docs.append((path, f.read()))

    failures = 0
    if argv[2] == "--cli":
        # Negative controls: the schema must reject broken reports.
        bad = json.loads(docs[3][1])
        bad["result"]["records"][0]["primitive_part"] = 13
        broken = [bad, {**json.loads(docs[0][1]), "schema_version": "0"}]
        for doc in broken:
            if validator.is_valid(doc):
                print("FAIL negative control accepted")
                failures += 1
    for name, text in docs:
        errors = sorted(validator.iter_errors(json.loads(text)), key=lambda e: list(e.path))
        if errors:
            failures += 1
            print(f"FAIL {name}")
            for e in errors[:5]:
                print(f"  at /{'/'.join(map(str, e.path))}: {e.message}")
        else:
            print(f"ok   {name}")
    print(f"{len(docs) - failures}/{len(docs)} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
