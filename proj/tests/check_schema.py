"""Runs the CLI and validates every JSON record against schema/output.schema.json."""

import json
import subprocess
import sys

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["correlator", "--g", "1", "--d", "2"],
    ["correlator", "--g", "2", "--d", "1,2", "--hurwitz-oracle", "--decimal"],
    ["hurwitz", "--g", "1", "--mu", "3", "--oracle"],
    ["table", "--g-max", "2", "--format", "json", "--with-constant"],
    ["table", "--g-max", "1", "--format", "json", "--decimal"],
    ["verify", "levels", "--g-max", "1"],
    ["verify", "hurwitz-oracle", "--d-max", "3"],
]
for args in runs:
    out = subprocess.run([cli, *args], capture_output=True, text=True, check=True).stdout
    record = json.loads(out)
    validator.validate(record)
    for row in record.get("rows", []):
        assert "." not in row["value"], row
    print("ok", " ".join(args))
