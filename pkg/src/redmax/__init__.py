"""Maximum and minimum generator multiplicities in reduced words of longest elements."""
__version__ = "0.1.0"

from .core import (  # noqa: E402
    MonotonePath,
    Word,
    complete_to_w0,
    is_reduced,
    is_weakly_separated,
    path_to_word,
    validate_path,
    word_to_path,
)
from .errors import InternalContradiction, InvalidInput, RedmaxError, ResourceCapError, Unsupported  # noqa: E402

__all__ = [
    "MonotonePath", "Word", "complete_to_w0", "is_reduced", "is_weakly_separated",
    "path_to_word", "validate_path", "word_to_path",
    "InternalContradiction", "InvalidInput", "RedmaxError", "ResourceCapError", "Unsupported",
]
