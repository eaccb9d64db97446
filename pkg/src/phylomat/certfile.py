"""Certificate files: JSON Lines with a header record.

The first line carries the format and tool versions; every following line is
one certificate record.  Appending a record as each case finishes keeps long
campaigns resumable, and parse(serialize(x)) == x record for record.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from . import __version__
from .cases import FORMAT_VERSION, Certificate


class CertificateFileError(ValueError):
    """Malformed certificate file; carries a line number for diagnostics."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def header() -> dict:
    return {"format_version": FORMAT_VERSION, "tool_version": __version__}


def write_header(stream: TextIO) -> None:
    stream.write(json.dumps(header(), sort_keys=True) + "\n")
    stream.flush()


def append_certificate(stream: TextIO, cert: Certificate) -> None:
    stream.write(json.dumps(cert.to_json(), sort_keys=True) + "\n")
    stream.flush()


def write_certificates(path: str | Path, certs: Iterable[Certificate]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_header(fh)
        for cert in certs:
            append_certificate(fh, cert)


def read_certificates(path: str | Path) -> list[Certificate]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CertificateFileError(lineno, f"bad JSON ({exc.msg})") from exc
            if lineno == 1:
                if "format_version" not in obj:
                    raise CertificateFileError(1, "missing file header")
                if obj["format_version"] != FORMAT_VERSION:
                    raise CertificateFileError(
                        1, f"unsupported format version {obj['format_version']}")
                continue
            try:
                out.append(Certificate.from_json(obj))
            except (KeyError, ValueError, TypeError) as exc:
                raise CertificateFileError(lineno, f"bad record ({exc})") from exc
    return out
