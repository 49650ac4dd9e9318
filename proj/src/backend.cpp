#include "gecsyn/backend.hpp"

#include <csignal>
#include <cstring>
#include <sys/wait.h>
#include <unistd.h>

#include "gecsyn/error.hpp"

namespace gecsyn {

InventoryBackend::InventoryBackend(std::shared_ptr<const EditInventory> inventory, std::size_t top_k,
                                   std::shared_ptr<const Lexicon> lexicon)
    : corruptor_(std::move(inventory), std::move(lexicon)), top_k_(top_k) {
    if (top_k_ == 0) throw InputError("top_k must be at least 1");
}

CorruptionResult InventoryBackend::corrupt(const Sentence &sentence, const TagSet &tags, std::uint64_t seed) const {
    return corruptor_.corrupt(sentence, tags, top_k_, seed);
}

ExternalBackend::ExternalBackend(const std::string &command, std::shared_ptr<const Lexicon> lexicon,
                                 TagInventory inventory)
    : tokenizer_(lexicon), classifier_(lexicon), inventory_(inventory) {
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0) throw BackendError(std::string("pipe: ") + std::strerror(errno));
    if (pipe(out_pipe) != 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        throw BackendError(std::string("pipe: ") + std::strerror(errno));
    }
    const pid_t pid = fork();
    if (pid < 0) throw BackendError(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    std::signal(SIGPIPE, SIG_IGN);
}

ExternalBackend::~ExternalBackend() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    if (pid_ > 0) {
        int status = 0;
        waitpid(pid_, &status, 0);
    }
}

std::string ExternalBackend::exchange(const std::string &request) const {
    const std::string line = request + "\n";
    std::size_t written = 0;
    while (written < line.size()) {
        const ssize_t n = write(to_child_, line.data() + written, line.size() - written);
        if (n <= 0) throw BackendError("external backend closed its input");
        written += static_cast<std::size_t>(n);
    }
    for (;;) {
        const auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string reply = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!reply.empty() && reply.back() == '\r') reply.pop_back();
            return reply;
        }
        char chunk[4096];
        const ssize_t n = read(from_child_, chunk, sizeof chunk);
        if (n <= 0) throw BackendError("external backend closed its output");
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

CorruptionResult ExternalBackend::corrupt(const Sentence &sentence, const TagSet &tags, std::uint64_t) const {
    CorruptionResult result;
    result.requested = tags;
    std::string reply;
    {
        std::lock_guard lock(mutex_);
        reply = exchange(encode_prefix(tags, sentence, inventory_));
    }
    const auto words = tokenizer_.split(reply);
    if (words.empty()) throw BackendError("external backend returned an empty sentence");
    result.output = tokenizer_.annotate_tokens(words);
    if (result.output.surfaces() == sentence.surfaces()) {
        result.output = sentence;
        return result;
    }
    for (auto &e : classifier_.edits(result.output, sentence)) {
        if (e.tag && tags.contains(*e.tag)) result.realized.insert(*e.tag);
        result.applied_edits.push_back(std::move(e));
    }
    return result;
}

} // namespace gecsyn
