"""Histograms and fingerprints, with the input parsers that produce them."""

import os
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ParseError

__all__ = [
    "Histogram",
    "Fingerprint",
    "build_histogram",
    "build_fingerprint",
    "tokenize_words",
    "parse_input",
    "write_fingerprint",
]

# letters only: \w minus digits and underscore
_WORD = re.compile(r"[^\W\d_]+")


@dataclass(frozen=True)
class Histogram:
    """Occurrence count of every observed symbol."""

    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        for sym, c in self.counts.items():
            if int(c) != c or c < 1:
                raise ValueError(f"count for {sym!r} must be a positive integer, got {c}")

    @property
    def n(self):
        return sum(self.counts.values())

    @property
    def distinct(self):
        return len(self.counts)

    def values(self):
        """Counts as an integer array, in a fixed (sorted-label) order."""
        keys = sorted(self.counts, key=lambda s: (type(s).__name__, s))
        return np.fromiter((self.counts[s] for s in keys), dtype=np.int64, count=len(keys))

    def __len__(self):
        return len(self.counts)


@dataclass(frozen=True)
class Fingerprint:
    """Sparse fingerprint: ``phi[j]`` symbols were seen exactly ``j`` times."""

    phi: dict = field(default_factory=dict)
    n: int = None

    def __post_init__(self):
        phi = {int(j): int(v) for j, v in self.phi.items() if v != 0}
        for j, v in phi.items():
            if j < 1 or v < 1:
                raise ValueError(f"fingerprint entries must be positive, got Phi_{j} = {v}")
        total = sum(j * v for j, v in phi.items())
        if self.n is not None and self.n != total:
            raise ValueError(f"sum of j*Phi_j is {total} but n = {self.n}")
        object.__setattr__(self, "phi", dict(sorted(phi.items())))
        object.__setattr__(self, "n", total)

    @property
    def distinct(self):
        return sum(self.phi.values())

    def __getitem__(self, j):
        return self.phi.get(j, 0)

    def arrays(self):
        """``(j, Phi_j)`` as two aligned integer arrays, increasing in ``j``."""
        js = np.fromiter(self.phi.keys(), dtype=np.int64, count=len(self.phi))
        vs = np.fromiter(self.phi.values(), dtype=np.int64, count=len(self.phi))
        return js, vs

    def to_histogram(self):
        """A histogram with this fingerprint; labels are ``0, 1, 2, ...``."""
        counts = {}
        label = 0
        for j, v in self.phi.items():
            for _ in range(v):
                counts[label] = j
                label += 1
        return Histogram(counts)


def build_histogram(symbols):
    return Histogram(dict(Counter(symbols)))


def build_fingerprint(h):
    """Fingerprint of a histogram (or of any iterable of positive counts)."""
    if isinstance(h, Histogram):
        counts = h.counts.values()
    elif isinstance(h, dict):
        counts = h.values()
    else:
        counts = h
    return Fingerprint(dict(Counter(int(c) for c in counts if c)))


def tokenize_words(text):
    """Lower-cased runs of letters; every other character is a delimiter.

    Apostrophes split words, as do digits: ``"Hamlet's"`` gives
    ``["hamlet", "s"]``. Accepts ``str`` or UTF-8 ``bytes``; a text stream
    is read line by line.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    if isinstance(text, str):
        return [m.group(0).lower() for m in _WORD.finditer(text)]
    return [w for line in text for w in tokenize_words(line)]


def _open_text(path_or_stream):
    if isinstance(path_or_stream, (str, os.PathLike)):
        try:
            with open(path_or_stream, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path_or_stream}: {exc.strerror}") from None
    else:
        raw = path_or_stream.read()
    if isinstance(raw, str):
        return raw
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not valid UTF-8: {exc}") from None


def _positive_int(token, what, lineno):
    if not re.fullmatch(r"[0-9]+", token):
        raise ParseError(f"{what} must be a positive decimal integer, got {token!r}", lineno)
    v = int(token)
    if v < 1:
        raise ParseError(f"{what} must be positive, got {v}", lineno)
    return v


def _parse_counts(text):
    counts = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.rstrip("\r").split("\t")
        if len(parts) != 2:
            raise ParseError("expected 'symbol<TAB>count'", lineno)
        sym, c = parts
        if sym in counts:
            raise ParseError(f"duplicate symbol {sym!r}", lineno)
        counts[sym] = _positive_int(c.strip(), "count", lineno)
    return Histogram(counts)


def _parse_fingerprint(text):
    phi = {}
    last = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'j Phi_j'", lineno)
        j = _positive_int(parts[0], "j", lineno)
        v = _positive_int(parts[1], "Phi_j", lineno)
        if j in phi:
            raise ParseError(f"duplicate multiplicity j={j}", lineno)
        if j < last:
            raise ParseError(f"multiplicities must increase, {j} after {last}", lineno)
        phi[j] = v
        last = j
    return Fingerprint(phi)


def parse_input(path_or_stream, format="counts", n=None, histogram=False):
    """Read a fingerprint from a file or stream in one of the supported formats.

    Parameters
    ----------
    path_or_stream : path or file-like
    format : {"counts", "fingerprint", "text"}
    n : int, optional
        Declared sample size; a mismatch with ``sum(j * Phi_j)`` is an error.
    histogram : bool
        Return the :class:`Histogram` instead (fingerprint input gets
        synthetic labels).
    """
    text = _open_text(path_or_stream)
    if format == "counts":
        h = _parse_counts(text)
    elif format == "text":
        h = build_histogram(tokenize_words(text))
    elif format == "fingerprint":
        h = None
        f = _parse_fingerprint(text)
    else:
        raise ValueError(f"unknown input format {format!r}")
    if h is not None:
        f = build_fingerprint(h)
    if n is not None and f.n != n:
        raise ParseError(f"sum of j*Phi_j is {f.n} but declared n = {n}")
    if histogram:
        return h if h is not None else f.to_histogram()
    return f


def write_fingerprint(f, stream=None):
    """Serialize in the ``j Phi_j`` line format; returns the text."""
    text = "".join(f"{j} {v}\n" for j, v in f.phi.items())
    if stream is not None:
        stream.write(text)
    return text

