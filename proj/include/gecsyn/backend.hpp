#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>

#include "gecsyn/classifier.hpp"
#include "gecsyn/corruptor.hpp"

namespace gecsyn {

/// Produces a corrupted sentence for a requested tag set.
class CorruptionBackend {
  public:
    virtual ~CorruptionBackend() = default;
    /// Throws BackendError when the backend cannot produce an answer.
    virtual CorruptionResult corrupt(const Sentence &sentence, const TagSet &tags, std::uint64_t seed) const = 0;
};

/// The built-in inventory corruptor.
class InventoryBackend : public CorruptionBackend {
  public:
    InventoryBackend(std::shared_ptr<const EditInventory> inventory, std::size_t top_k = 50,
                     std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin());

    CorruptionResult corrupt(const Sentence &sentence, const TagSet &tags, std::uint64_t seed) const override;

  private:
    Corruptor corruptor_;
    std::size_t top_k_;
};

/// Talks to a subprocess over its standard streams, one line each way:
/// the request is the tag prefix string, the response the corrupted sentence.
/// Realized tags are those the classifier finds between the response and the
/// input, restricted to the requested tags. Calls are serialized. The seed is
/// not forwarded.
class ExternalBackend : public CorruptionBackend {
  public:
    /// Starts `command` with /bin/sh -c. Throws BackendError on failure.
    explicit ExternalBackend(const std::string &command, std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin(),
                             TagInventory inventory = TagInventory::standard());
    ~ExternalBackend() override;

    ExternalBackend(const ExternalBackend &) = delete;
    ExternalBackend &operator=(const ExternalBackend &) = delete;

    CorruptionResult corrupt(const Sentence &sentence, const TagSet &tags, std::uint64_t seed) const override;

  private:
    std::string exchange(const std::string &request) const;

    Tokenizer tokenizer_;
    Classifier classifier_;
    TagInventory inventory_;
    int pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    mutable std::string buffer_;
    mutable std::mutex mutex_;
};

} // namespace gecsyn
