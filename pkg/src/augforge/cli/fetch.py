"""Digit-dataset fetcher: download, decompress, verify, quarantine.

Expected files and their SHA-256 digests come from a JSON manifest (a
default ships with the package) so mirrors and checksums can be swapped
without code changes. Files failing verification are renamed with a
``.bad`` suffix. ``record=True`` computes and writes digests for
manifests that do not carry any yet (first-use pinning); the recorded
manifest lands next to the data.
"""

import gzip
import hashlib
import json
import shutil
import urllib.request
from importlib import resources
from pathlib import Path

from ..errors import ConfigError, ConsistencyError

DEFAULT_MANIFEST = "mnist_manifest.json"


def load_manifest(path=None):
    if path is None:
        text = resources.files("augforge.cli").joinpath(DEFAULT_MANIFEST).read_text()
    else:
        text = Path(path).read_text()
    manifest = json.loads(text)
    if "files" not in manifest or "base_url" not in manifest:
        raise ConfigError("manifest must carry base_url and files")
    return manifest


def sha256_of(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _download(url, dest):
    with urllib.request.urlopen(url, timeout=60) as response, open(dest, "wb") as out:
        shutil.copyfileobj(response, out)


def _decompress(archive, target):
    with gzip.open(archive, "rb") as src, open(target, "wb") as out:
        shutil.copyfileobj(src, out)


def fetch_mnist(dest_dir, manifest_path=None, source_url=None, record=False, log=print):
    """Ensure the manifest's files exist in ``dest_dir`` with valid digests.

    Returns the list of verified file paths. Raises ConsistencyError on a
    digest mismatch (bad file quarantined) and ConfigError when digests
    are absent and ``record`` is off.
    """
    dest_dir = Path(dest_dir)
    dest_dir.mkdir(parents=True, exist_ok=True)
    manifest = load_manifest(manifest_path)
    base_url = (source_url or manifest["base_url"]).rstrip("/") + "/"

    missing_digests = [f["name"] for f in manifest["files"] if not f.get("sha256")]
    if missing_digests and not record:
        raise ConfigError(
            f"manifest has no sha256 for {missing_digests}; run with --record to pin"
            " digests on first use, or edit the manifest"
        )

    verified = []
    recorded = []
    for entry in manifest["files"]:
        target = dest_dir / entry["name"]
        if not target.exists():
            archive = dest_dir / entry["archive"]
            if not archive.exists():
                url = base_url + entry["archive"]
                log(f"downloading {url}")
                _download(url, archive)
            if archive.suffix == ".gz":
                _decompress(archive, target)
            else:
                shutil.copyfile(archive, target)
        digest = sha256_of(target)
        expected = entry.get("sha256")
        if expected:
            if digest != expected:
                quarantine = target.with_name(target.name + ".bad")
                target.rename(quarantine)
                raise ConsistencyError(
                    f"{target.name}: sha256 {digest} != expected {expected};"
                    f" quarantined as {quarantine.name}"
                )
            log(f"verified {target.name}")
        else:
            recorded.append({**entry, "sha256": digest})
            log(f"recorded {target.name} sha256 {digest}")
        verified.append(target)
    if recorded:
        by_name = {e["name"]: e for e in recorded}
        pinned = {
            "base_url": manifest["base_url"],
            "files": [by_name.get(e["name"], e) for e in manifest["files"]],
        }
        out = dest_dir / "mnist_manifest.recorded.json"
        with open(out, "w") as fh:
            json.dump(pinned, fh, indent=2)
            fh.write("\n")
        log(f"wrote pinned manifest {out}")
    return verified
