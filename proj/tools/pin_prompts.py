#!/usr/bin/env python3
"""Regenerate prompts/manifest.json with FNV-1a 64 checksums of every
template file. Run after any deliberate edit to the catalog."""
import json
import pathlib
import sys

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> str:
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


def main() -> int:
    prompts = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "prompts")
    entries = {}
    for path in sorted(prompts.iterdir()):
        if path.name == "manifest.json" or not path.is_file():
            continue
        entries[path.name] = fnv1a64(path.read_bytes())
    manifest = {"schema_version": 1, "templates": entries}
    out = prompts / "manifest.json"
    out.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"pinned {len(entries)} templates -> {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
