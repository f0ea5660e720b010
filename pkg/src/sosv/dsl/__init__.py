"""The `.sosv` textual view language: parser, serializer, interchange form."""

from .parser import ParseOutcome, parse
from .serializer import serialize
from .interchange import from_interchange, to_interchange

__all__ = ["ParseOutcome", "parse", "serialize", "to_interchange", "from_interchange"]
