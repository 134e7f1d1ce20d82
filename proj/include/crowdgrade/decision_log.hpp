#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crowdgrade::audit {

using Clock = std::function<std::chrono::system_clock::time_point()>;

struct GradeAdjustment {
    std::string work_id;
    std::optional<double> old_score;
    double new_score = 0.0;
    std::string reason;
};

struct AspectDecision {
    std::string stem;
    bool accepted = false;
};

struct FlagResolution {
    std::string review_ref;
    std::string resolution;
};

using Payload = std::variant<GradeAdjustment, AspectDecision, FlagResolution>;

struct Entry {
    std::uint64_t seq = 0;
    std::int64_t timestamp_ms = 0;  // since epoch, non-decreasing in seq order
    Payload payload;
};

std::string to_json_line(const Entry& entry);
// Throws MalformedInput.
Entry entry_from_json_line(const std::string& line);

// Append-only record of instructor decisions. Every append goes to memory and,
// when a file is attached, to one JSON line that is flushed before append
// returns. Thread-safe; appends are serialized.
class DecisionLog {
public:
    // In-memory only.
    explicit DecisionLog(Clock clock = {});
    // Loads any existing entries from `file`, then appends to it.
    explicit DecisionLog(std::filesystem::path file, Clock clock = {});

    DecisionLog(const DecisionLog&) = delete;
    DecisionLog& operator=(const DecisionLog&) = delete;

    Entry append(Payload payload);

    std::vector<Entry> snapshot() const;
    std::size_t size() const;
    const std::filesystem::path& file() const { return file_; }

private:
    std::int64_t now_ms() const;

    mutable std::mutex mutex_;
    std::filesystem::path file_;
    Clock clock_;
    std::vector<Entry> entries_;
};

template <typename T>
std::vector<T> entries_of(const std::vector<Entry>& entries) {
    std::vector<T> out;
    for (const auto& e : entries)
        if (const auto* p = std::get_if<T>(&e.payload)) out.push_back(*p);
    return out;
}

}  // namespace crowdgrade::audit
