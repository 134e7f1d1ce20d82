#pragma once

#include "crowdgrade/aspects.hpp"
#include "crowdgrade/course.hpp"
#include "crowdgrade/decision_log.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace httplib {
class Server;
}

namespace crowdgrade::service {

struct FlagState {
    bool resolved = false;
    std::string resolution;
};

// Course results held in memory for the instructor API. Reads share a lock;
// mutations take it exclusively, so the decision-log append and the state
// change land together.
class CourseService {
public:
    // Scores the course and replays any decisions already in the log at
    // <output_dir>/<course_id>/decisions.jsonl.
    CourseService(course::CourseRun run, grading::Scheme scheme = grading::Scheme::Simple,
                  audit::Clock clock = {});

    // Registers every route on `server`.
    void mount(httplib::Server& server);

    // Reloads inputs and rescores; logged decisions are re-applied.
    void recompute();

    nlohmann::ordered_json works_json() const;
    std::optional<nlohmann::ordered_json> work_json(const std::string& work_id) const;
    nlohmann::ordered_json aspects_json() const;
    nlohmann::ordered_json flags_json() const;
    nlohmann::ordered_json correlations_json() const;
    nlohmann::ordered_json decisions_json() const;

    // Throw UnknownWork / NotFound, InvalidArgument, Conflict.
    nlohmann::ordered_json adjust(const std::string& work_id, double score, const std::string& reason);
    nlohmann::ordered_json decide_aspect(const std::string& stem, bool accepted);
    nlohmann::ordered_json resolve_flag(const std::string& ref, const std::string& resolution);

    std::size_t decision_count() const { return log_->size(); }

private:
    struct State {
        course::CourseResults results;
        std::vector<grading::WorkAggregate> works;
        std::vector<aspects::AspectCandidate> candidates;
        std::map<std::string, FlagState> flags;  // by comment ref
    };

    State compute() const;
    void replay(State& state) const;

    course::CourseRun run_;
    grading::Scheme scheme_;
    std::unique_ptr<audit::DecisionLog> log_;
    mutable std::shared_mutex mutex_;
    std::mutex recompute_mutex_;  // one scoring job at a time
    State state_;
};

nlohmann::ordered_json candidate_json(const aspects::AspectCandidate& c);

// Parses "host:port" (or ":port") and blocks serving until stopped.
// Throws InvalidArgument or IoError.
void serve(course::CourseRun run, grading::Scheme scheme, const std::string& bind);

}  // namespace crowdgrade::service
