"""growth --format json re-parses and matches the CSV output."""
import csv
import io
import json
import subprocess
import sys

cli = sys.argv[1]
args = ["growth", "2", "--d", "table:2,31,127", "--max-order", "10^200"]
csv_text = subprocess.run([cli, *args], check=True, capture_output=True, text=True).stdout
json_text = subprocess.run([cli, *args, "--format", "json"], check=True, capture_output=True,
                           text=True).stdout

rows = list(csv.DictReader(line for line in io.StringIO(csv_text) if not line.startswith("#")))
doc = json.loads(json_text)
assert doc["config"]["d"] == "table:2,31,127", doc["config"]
assert len(rows) == len(doc["rows"]) == 3
for c, j in zip(rows, doc["rows"]):
    assert int(c["i"]) == j["i"], (c, j)
    assert int(c["word_length"]) == j["word_length"], (c, j)
    assert (c["witness_order"] or None) == j["witness_order"], (c, j)
print("growth csv/json agree on", len(rows), "rows")
