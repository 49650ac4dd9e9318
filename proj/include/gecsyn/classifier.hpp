#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gecsyn/aligner.hpp"
#include "gecsyn/core.hpp"
#include "gecsyn/tokenizer.hpp"

namespace gecsyn {

/// What a classification rule sees: the edit's source-side tokens
/// (`original`, from the incorrect sentence), its `corrected` tokens, and the
/// surrounding sentences for context.
struct EditView {
    std::span<const AnnotatedToken> original;
    std::span<const AnnotatedToken> corrected;
    const Edit &edit;
    const Sentence &source;
    const Sentence &target;
    const Lexicon &lexicon;
};

/// One classification rule. `apply` returns a tag when the rule fires.
struct Rule {
    std::string name;
    std::function<std::optional<ErrorTag>(const EditView &)> apply;
};

/// Ordered rules; the first rule that fires decides. The standard table ends
/// with an unconditional OTHER rule, so classification is total.
class RuleTable {
  public:
    explicit RuleTable(std::vector<Rule> rules);
    static RuleTable standard();

    ErrorTag classify(const EditView &view) const;
    /// Name of the rule that decides `view`.
    const std::string &deciding_rule(const EditView &view) const;
    const std::vector<Rule> &rules() const { return rules_; }

  private:
    std::vector<Rule> rules_;
};

/// Aligns, extracts and classifies edits between sentence pairs.
class Classifier {
  public:
    explicit Classifier(std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin(),
                        RuleTable rules = RuleTable::standard(), AlignmentCosts costs = {});

    ErrorTag classify_edit(const Edit &edit, const Sentence &source, const Sentence &target) const;
    /// Fills `pair.edits` with typed edits. Propagates EmptyInputError.
    ParallelPair annotate_pair(ParallelPair pair) const;
    /// Typed edits of `source` -> `target`.
    std::vector<Edit> edits(const Sentence &source, const Sentence &target) const;

    const Lexicon &lexicon() const { return *lexicon_; }
    const RuleTable &rules() const { return rules_; }

  private:
    std::shared_ptr<const Lexicon> lexicon_;
    RuleTable rules_;
    AlignmentCosts costs_;
};

/// Damerau-Levenshtein distance over characters (adjacent transpositions).
std::size_t char_edit_distance(std::string_view a, std::string_view b);

} // namespace gecsyn
