"""Corpus ingestion, character chunking, and sampling.

Ingests a directory of .txt/.html files into plain-text documents, splits
them into overlapping character chunks, and applies the document/chunk
sampling strategies and content filters that drive question generation.
All operations are pure functions of their inputs plus an explicit seed.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from html.parser import HTMLParser
from pathlib import Path

from .errors import (
    CountExceedsCorpus,
    DecodeError,
    DirectoryNotFound,
    EmptyCorpus,
    InsufficientChunks,
)
from .rng import SplitMix64
from .util import canonical_json, sha256_hex

logger = logging.getLogger(__name__)

ELIGIBLE_SUFFIXES = {".txt": "plain_text", ".html": "html", ".htm": "html"}


class MediaType(str, Enum):
    plain_text = "plain_text"
    html = "html"


@dataclass(frozen=True)
class Document:
    id: str
    source_path: str
    media_type: MediaType
    text: str


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    source_dir: str

    def __len__(self) -> int:
        return len(self.documents)

    def get(self, doc_id: str) -> Document:
        for doc in self.documents:
            if doc.id == doc_id:
                return doc
        raise KeyError(doc_id)


@dataclass(frozen=True)
class Chunk:
    doc_id: str
    index: int
    text: str
    char_span: tuple[int, int]


@dataclass(frozen=True)
class ChunkingConfig:
    strategy: str = "character_text_splitting"
    separator: str = "\n"
    chunk_size: int = 3000
    chunk_overlap: int = 150

    def __post_init__(self):
        if self.strategy != "character_text_splitting":
            raise ValueError(f"unknown chunking strategy: {self.strategy}")
        if self.chunk_size <= 0:
            raise ValueError("chunk_size must be positive")
        if not 0 <= self.chunk_overlap < self.chunk_size:
            raise ValueError("chunk_overlap must satisfy 0 <= overlap < chunk_size")
        if not self.separator:
            raise ValueError("separator must be non-empty")


class SamplingKind(str, Enum):
    random = "random"
    iterative = "iterative"


@dataclass(frozen=True)
class SamplingStrategy:
    kind: SamplingKind
    count: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind == SamplingKind.random and self.count < 1:
            raise ValueError("random sampling requires count >= 1")


class FilterKind(str, Enum):
    contains_number = "contains_number"
    contains_datetime = "contains_datetime"


class ChunkSamplingKind(str, Enum):
    one_per_document_filtered = "one_per_document_filtered"
    three_from_one_document = "three_from_one_document"
    three_from_distinct_documents = "three_from_distinct_documents"
    iterative_all = "iterative_all"


GROUPED_KINDS = {
    ChunkSamplingKind.three_from_one_document,
    ChunkSamplingKind.three_from_distinct_documents,
}


@dataclass(frozen=True)
class ChunkSamplingSpec:
    kind: ChunkSamplingKind
    filter: FilterKind | None = None
    group_size: int = 1

    def __post_init__(self):
        if self.filter is not None and self.kind != ChunkSamplingKind.one_per_document_filtered:
            raise ValueError("content filter is only valid for one_per_document_filtered")
        expected = 3 if self.kind in GROUPED_KINDS else 1
        if self.group_size != expected:
            raise ValueError(f"group_size must be {expected} for kind {self.kind.value}")


@dataclass(frozen=True)
class ChunkSelection:
    """One generation unit: a single chunk, or a group of 3 for combined scenarios."""

    chunks: tuple[Chunk, ...]

    def doc_ids(self) -> tuple[str, ...]:
        return tuple(c.doc_id for c in self.chunks)


# --- HTML to text ----------------------------------------------------------

_BLOCK_TAGS = {
    "p", "div", "br", "li", "ul", "ol", "table", "tr", "td", "th",
    "h1", "h2", "h3", "h4", "h5", "h6", "section", "article", "header",
    "footer", "blockquote", "pre", "hr", "title",
}


class _TextExtractor(HTMLParser):
    """Collects visible text; script/style content is dropped entirely."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self._suppress_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in ("script", "style"):
            self._suppress_depth += 1
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_endtag(self, tag):
        if tag in ("script", "style"):
            self._suppress_depth = max(0, self._suppress_depth - 1)
        elif tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_data(self, data):
        if self._suppress_depth == 0:
            self.parts.append(data)


def html_to_text(html: str) -> str:
    """Strip markup: tags removed, entities decoded, whitespace collapsed to
    single spaces, with single newlines preserved between block elements."""
    extractor = _TextExtractor()
    extractor.feed(html)
    extractor.close()
    raw = "".join(extractor.parts)
    lines = []
    for line in raw.split("\n"):
        collapsed = re.sub(r"[ \t\r\f\v]+", " ", line).strip()
        lines.append(collapsed)
    text = "\n".join(lines)
    text = re.sub(r"\n{2,}", "\n", text)
    return text.strip()


# --- ingestion --------------------------------------------------------------

def _read_text(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        logger.warning("file %s is not valid UTF-8; decoding lossily", path)
        try:
            return data.decode("utf-8", errors="replace")
        except Exception as exc:  # pragma: no cover - replace never fails in CPython
            raise DecodeError(f"{path}: {exc}") from exc


def ingest_corpus(dir_path: str | Path, recursive: bool = True) -> Corpus:
    """Load every .txt/.html/.htm file under dir_path into a Corpus.

    Document ids are the relative paths with '/' separators, so ordering and
    identity are stable across platforms. HTML is reduced to visible text.
    Files that yield no text after conversion are skipped (and logged).
    """
    root = Path(dir_path)
    if not root.is_dir():
        raise DirectoryNotFound(str(dir_path))
    pattern = "**/*" if recursive else "*"
    candidates = [p for p in root.glob(pattern) if p.is_file() and p.suffix.lower() in ELIGIBLE_SUFFIXES]
    candidates.sort(key=lambda p: p.relative_to(root).as_posix())

    documents = []
    for path in candidates:
        media = MediaType(ELIGIBLE_SUFFIXES[path.suffix.lower()])
        text = _read_text(path)
        if media == MediaType.html:
            text = html_to_text(text)
        if not text.strip():
            logger.warning("skipping %s: no text after conversion", path)
            continue
        documents.append(
            Document(
                id=path.relative_to(root).as_posix(),
                source_path=str(path),
                media_type=media,
                text=text,
            )
        )
    if not documents:
        raise EmptyCorpus(f"no eligible documents under {dir_path}")
    return Corpus(documents=tuple(documents), source_dir=str(dir_path))


def corpus_manifest(corpus: Corpus) -> dict:
    """Manifest describing each ingested document; used for provenance checks."""
    return {
        "format": "ragprobe.manifest/v1",
        "source_dir": corpus.source_dir,
        "documents": [
            {
                "id": d.id,
                "source_path": d.source_path,
                "media_type": d.media_type.value,
                "char_count": len(d.text),
                "text_sha256": sha256_hex(d.text),
            }
            for d in corpus.documents
        ],
    }


def write_manifest(corpus: Corpus, path: str | Path) -> None:
    Path(path).write_text(canonical_json(corpus_manifest(corpus)) + "\n", encoding="utf-8")


# --- chunking ----------------------------------------------------------------

def split_chunks(doc: Document, config: ChunkingConfig) -> list[Chunk]:
    """Split a document into overlapping character chunks.

    Cut points prefer the last separator occurrence that fits inside the
    chunk-size window (the separator stays at the tail of the chunk, so the
    chunks tile the document exactly); when no separator is usable the cut
    is a hard one at chunk_size. Every next chunk starts chunk_overlap
    characters before the previous cut, so consecutive chunks overlap by
    exactly chunk_overlap and stitching with overlaps removed restores the
    document byte-for-byte.
    """
    text = doc.text
    n = len(text)
    if n == 0:
        return []
    size, overlap, sep = config.chunk_size, config.chunk_overlap, config.separator
    spans: list[tuple[int, int]] = []
    start = 0
    while n - start > size:
        end = start + size
        sep_pos = text.rfind(sep, start, end)
        if sep_pos != -1 and sep_pos + len(sep) > start + overlap:
            # Separator-aligned cut; must still advance past the overlap
            # carried into the next chunk or the splitter would stall.
            end = sep_pos + len(sep)
        spans.append((start, end))
        start = end - overlap
    spans.append((start, n))
    return [
        Chunk(doc_id=doc.id, index=i, text=text[a:b], char_span=(a, b))
        for i, (a, b) in enumerate(spans)
    ]


def stitch_chunks(chunks: list[Chunk], overlap: int) -> str:
    """Inverse of split_chunks: drop each chunk's leading overlap and concatenate."""
    if not chunks:
        return ""
    parts = [chunks[0].text]
    parts.extend(c.text[overlap:] for c in chunks[1:])
    return "".join(parts)


# --- content filters ---------------------------------------------------------

_NUMBER_RE = re.compile(r"\d")
_DATETIME_RES = [
    re.compile(r"\b[12]\d{3}\b"),                      # 4-digit year 1000-2999
    re.compile(r"\b\d{1,2}:\d{2}\b"),                  # clock time hh:mm
    re.compile(r"\b\d{1,2}[/.]\d{1,2}[/.]\d{2,4}\b"),  # d/m/y style
    re.compile(r"\b\d{4}-\d{1,2}-\d{1,2}\b"),          # y-m-d style
    re.compile(
        r"\b(?:Jan(?:uary)?|Feb(?:ruary)?|Mar(?:ch)?|Apr(?:il)?|May|Jun(?:e)?|"
        r"Jul(?:y)?|Aug(?:ust)?|Sep(?:tember)?|Oct(?:ober)?|Nov(?:ember)?|"
        r"Dec(?:ember)?)\.?\s+\d{1,2}\b",
        re.IGNORECASE,
    ),
    re.compile(
        r"\b\d{1,2}\s+(?:Jan(?:uary)?|Feb(?:ruary)?|Mar(?:ch)?|Apr(?:il)?|May|"
        r"Jun(?:e)?|Jul(?:y)?|Aug(?:ust)?|Sep(?:tember)?|Oct(?:ober)?|"
        r"Nov(?:ember)?|Dec(?:ember)?)\b",
        re.IGNORECASE,
    ),
]


def content_filter(chunk: Chunk, kind: FilterKind) -> bool:
    """True when the chunk text contains a digit (contains_number) or any
    recognizable date/time pattern (contains_datetime)."""
    if kind == FilterKind.contains_number:
        return bool(_NUMBER_RE.search(chunk.text))
    if kind == FilterKind.contains_datetime:
        return any(rx.search(chunk.text) for rx in _DATETIME_RES)
    raise ValueError(f"unknown filter kind: {kind}")


# --- sampling ----------------------------------------------------------------

def sample_documents(corpus: Corpus, strategy: SamplingStrategy) -> list[Document]:
    """Draw documents per the strategy; random draws are seeded and without
    replacement, iterative returns the whole corpus in order."""
    docs = list(corpus.documents)
    if strategy.kind == SamplingKind.iterative:
        return docs
    if strategy.count > len(docs):
        raise CountExceedsCorpus(
            f"requested {strategy.count} documents, corpus has {len(docs)}"
        )
    rng = SplitMix64(strategy.seed)
    picked = rng.sample(range(len(docs)), strategy.count)
    return [docs[i] for i in sorted(picked)]


def sample_chunks(
    chunks_by_doc: dict[str, list[Chunk]],
    spec: ChunkSamplingSpec,
    seed: int,
    skipped: list[str] | None = None,
) -> list[ChunkSelection]:
    """Select chunks per the spec. Returns one ChunkSelection per question unit.

    one_per_document_filtered: one passing chunk per document that has any;
    documents with none are recorded in `skipped` (when given) and logged.
    Grouped kinds return a single 3-chunk selection per call; call again with
    a derived seed for further draws. iterative_all enumerates every chunk in
    (document order, chunk index) order.
    """
    rng = SplitMix64(seed)
    kind = spec.kind

    if kind == ChunkSamplingKind.iterative_all:
        return [
            ChunkSelection(chunks=(chunk,))
            for chunks in chunks_by_doc.values()
            for chunk in chunks
        ]

    if kind == ChunkSamplingKind.one_per_document_filtered:
        selections = []
        for doc_id, chunks in chunks_by_doc.items():
            passing = (
                [c for c in chunks if content_filter(c, spec.filter)]
                if spec.filter is not None
                else list(chunks)
            )
            if not passing:
                logger.info("document %s has no chunk passing %s; skipped", doc_id, spec.filter)
                if skipped is not None:
                    skipped.append(doc_id)
                continue
            selections.append(ChunkSelection(chunks=(rng.choice(passing),)))
        return selections

    if kind == ChunkSamplingKind.three_from_one_document:
        eligible = [d for d, chunks in chunks_by_doc.items() if len(chunks) >= 3]
        if not eligible:
            raise InsufficientChunks("no document has 3 or more chunks")
        doc_id = rng.choice(eligible)
        picked = sorted(rng.sample(chunks_by_doc[doc_id], 3), key=lambda c: c.index)
        return [ChunkSelection(chunks=tuple(picked))]

    if kind == ChunkSamplingKind.three_from_distinct_documents:
        eligible = [d for d, chunks in chunks_by_doc.items() if chunks]
        if len(eligible) < 3:
            raise InsufficientChunks(
                f"need chunks from 3 distinct documents, only {len(eligible)} available"
            )
        doc_ids = rng.sample(eligible, 3)
        picked = [rng.choice(chunks_by_doc[d]) for d in doc_ids]
        picked.sort(key=lambda c: (c.doc_id, c.index))
        return [ChunkSelection(chunks=tuple(picked))]

    raise ValueError(f"unknown chunk sampling kind: {kind}")


def chunk_corpus(documents: list[Document], config: ChunkingConfig) -> dict[str, list[Chunk]]:
    """Split each document; documents that produce no chunks are dropped."""
    out: dict[str, list[Chunk]] = {}
    for doc in documents:
        chunks = split_chunks(doc, config)
        if chunks:
            out[doc.id] = chunks
    return out
