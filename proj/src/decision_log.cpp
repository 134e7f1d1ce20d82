#include "crowdgrade/decision_log.hpp"

#include "crowdgrade/errors.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>

namespace crowdgrade::audit {

namespace {

using ojson = nlohmann::ordered_json;

std::string iso_time(std::int64_t ms) {
    const std::chrono::sys_time<std::chrono::milliseconds> tp{std::chrono::milliseconds(ms)};
    const auto secs = std::chrono::floor<std::chrono::seconds>(tp);
    return fmt::format("{:%Y-%m-%dT%H:%M:%S}.{:03}Z", secs, ms - secs.time_since_epoch().count() * 1000);
}

}  // namespace

std::string to_json_line(const Entry& entry) {
    ojson j = {{"seq", entry.seq}, {"timestamp_ms", entry.timestamp_ms}, {"time", iso_time(entry.timestamp_ms)}};
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GradeAdjustment>) {
                j["kind"] = "grade_adjustment";
                j["work_id"] = p.work_id;
                j["old_score"] = p.old_score ? ojson(*p.old_score) : ojson(nullptr);
                j["new_score"] = p.new_score;
                j["reason"] = p.reason;
            } else if constexpr (std::is_same_v<T, AspectDecision>) {
                j["kind"] = "aspect_decision";
                j["stem"] = p.stem;
                j["decision"] = p.accepted ? "accepted" : "rejected";
            } else {
                j["kind"] = "flag_resolution";
                j["review_ref"] = p.review_ref;
                j["resolution"] = p.resolution;
            }
        },
        entry.payload);
    return j.dump();
}

Entry entry_from_json_line(const std::string& line) {
    try {
        const auto j = ojson::parse(line);
        Entry e;
        e.seq = j.at("seq").get<std::uint64_t>();
        e.timestamp_ms = j.at("timestamp_ms").get<std::int64_t>();
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "grade_adjustment") {
            GradeAdjustment g;
            g.work_id = j.at("work_id").get<std::string>();
            if (!j.at("old_score").is_null()) g.old_score = j.at("old_score").get<double>();
            g.new_score = j.at("new_score").get<double>();
            g.reason = j.at("reason").get<std::string>();
            e.payload = std::move(g);
        } else if (kind == "aspect_decision") {
            const auto decision = j.at("decision").get<std::string>();
            if (decision != "accepted" && decision != "rejected") throw MalformedInput("bad decision '" + decision + "'");
            e.payload = AspectDecision{j.at("stem").get<std::string>(), decision == "accepted"};
        } else if (kind == "flag_resolution") {
            e.payload = FlagResolution{j.at("review_ref").get<std::string>(), j.at("resolution").get<std::string>()};
        } else {
            throw MalformedInput("unknown decision kind '" + kind + "'");
        }
        return e;
    } catch (const ojson::exception& ex) {
        throw MalformedInput(std::string("decision log line: ") + ex.what());
    }
}

DecisionLog::DecisionLog(Clock clock) : clock_(std::move(clock)) {}

DecisionLog::DecisionLog(std::filesystem::path file, Clock clock) : file_(std::move(file)), clock_(std::move(clock)) {
    std::ifstream in(file_);
    if (!in) return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            entries_.push_back(entry_from_json_line(line));
        } catch (const MalformedInput& e) {
            throw MalformedInput(file_.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::int64_t DecisionLog::now_ms() const {
    const auto tp = clock_ ? clock_() : std::chrono::system_clock::now();
    return std::chrono::duration_cast<std::chrono::milliseconds>(tp.time_since_epoch()).count();
}

Entry DecisionLog::append(Payload payload) {
    std::lock_guard lock(mutex_);
    Entry e;
    e.seq = entries_.empty() ? 1 : entries_.back().seq + 1;
    e.timestamp_ms = now_ms();
    // A clock that steps backwards must not reorder the log.
    if (!entries_.empty()) e.timestamp_ms = std::max(e.timestamp_ms, entries_.back().timestamp_ms);
    e.payload = std::move(payload);

    if (!file_.empty()) {
        if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
        std::ofstream out(file_, std::ios::app | std::ios::binary);
        out << to_json_line(e) << '\n';
        out.flush();
        if (!out) throw IoError("cannot append to " + file_.string());
    }
    entries_.push_back(e);
    return e;
}

std::vector<Entry> DecisionLog::snapshot() const {
    std::lock_guard lock(mutex_);
    return entries_;
}

std::size_t DecisionLog::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

}  // namespace crowdgrade::audit
