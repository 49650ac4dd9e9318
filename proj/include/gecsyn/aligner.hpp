#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gecsyn/core.hpp"

namespace gecsyn {

enum class OpKind : std::uint8_t { Match, Substitute, Insert, Delete, Transpose };

std::string_view op_name(OpKind kind);

struct TokenSpan {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool operator==(const TokenSpan &) const = default;
};

struct AlignmentOp {
    OpKind kind;
    TokenSpan src;
    TokenSpan tgt;

    bool operator==(const AlignmentOp &) const = default;
};

/// Cost model of the token aligner.
struct AlignmentCosts {
    double indel = 1.0;
    double substitute = 1.0;
    double same_lemma_discount = 0.4;
    double same_pos_discount = 0.2;
    double substitute_floor = 0.2;
    /// A transposed block of length n costs n - transpose_discount.
    double transpose_discount = 0.5;
    std::size_t max_transpose = 4;
};

double substitution_cost(const AnnotatedToken &a, const AnnotatedToken &b, const AlignmentCosts &costs = {});

struct Alignment {
    std::vector<AlignmentOp> ops;
    double cost = 0.0;
};

/// Minimal-cost Damerau-Levenshtein alignment of token sequences with
/// linguistically weighted substitutions and block transpositions. Among
/// equal-cost alignments the one with fewer operations wins, then the one
/// whose substitutions sit furthest left. Throws EmptyInputError when either
/// sentence is empty.
Alignment align(const Sentence &source, const Sentence &target, const AlignmentCosts &costs = {});

/// Sum of operation costs, recomputed from the sentences.
double alignment_cost(std::span<const AlignmentOp> ops, const Sentence &source, const Sentence &target,
                      const AlignmentCosts &costs = {});

/// Turns non-match operations into untyped edits, merging neighbours that
/// both touch punctuation, that share a lemma across sides, or where an
/// insertion or deletion borders a same-lemma substitution. A transposition
/// is always a single edit. Output is sorted and non-overlapping.
std::vector<Edit> extract_edits(std::span<const AlignmentOp> ops, const Sentence &source, const Sentence &target);

} // namespace gecsyn
