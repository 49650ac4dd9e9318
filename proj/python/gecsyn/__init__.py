"""Grammatical error annotation, tagging and synthetic corruption."""

from ._core import (
    BackendError,
    Corruptor,
    EmptyInputError,
    EmptyInventoryError,
    GecsynError,
    InputError,
    ParseError,
    TaggerModel,
    TuningError,
    annotate,
    bleu,
    decode_prefix,
    encode_prefix,
    f_beta,
    gec_score,
    imbalance,
    multilabel_score,
    oversample,
    tag_names,
    tokenize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
