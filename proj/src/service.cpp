#include "crowdgrade/service.hpp"

#include "crowdgrade/errors.hpp"

#include <httplib.h>

#include <algorithm>
#include <iostream>

namespace crowdgrade::service {

namespace {

using ojson = nlohmann::ordered_json;

void send_json(httplib::Response& res, int status, const ojson& body) {
    res.status = status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, ojson{{"error", message}});
}

ojson parse_body(const httplib::Request& req) {
    try {
        auto body = ojson::parse(req.body);
        if (!body.is_object()) throw InvalidArgument("request body must be a JSON object");
        return body;
    } catch (const ojson::parse_error&) {
        throw InvalidArgument("request body is not valid JSON");
    }
}

std::string string_field(const ojson& body, const char* key) {
    const auto it = body.find(key);
    if (it == body.end() || !it->is_string()) throw InvalidArgument(std::string("'") + key + "' must be a string");
    return it->get<std::string>();
}

// Runs a handler and maps library errors onto HTTP statuses.
template <typename Handler>
void respond(httplib::Response& res, Handler handler) {
    try {
        send_json(res, 200, handler());
    } catch (const UnknownWork& e) {
        send_error(res, 404, e.what());
    } catch (const NotFound& e) {
        send_error(res, 404, e.what());
    } catch (const Conflict& e) {
        send_error(res, 409, e.what());
    } catch (const InvalidArgument& e) {
        send_error(res, 400, e.what());
    } catch (const std::exception& e) {
        send_error(res, 500, e.what());
    }
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

}  // namespace

ojson candidate_json(const aspects::AspectCandidate& c) {
    return {{"noun", c.noun_stem},
            {"occurrences", c.occurrences},
            {"net_sentiment", c.net_sentiment},
            {"abs_sentiment", c.total_absolute_sentiment},
            {"example_context", c.example_context},
            {"sample_contexts", c.sample_contexts},
            {"status", std::string(aspects::to_string(c.status))},
            {"is_parrot_source", c.is_parrot_source}};
}

CourseService::CourseService(course::CourseRun run, grading::Scheme scheme, audit::Clock clock)
    : run_(std::move(run)),
      scheme_(scheme),
      log_(std::make_unique<audit::DecisionLog>(run_.course_dir() / course::kDecisionsFile, std::move(clock))) {
    state_ = compute();
    replay(state_);
}

CourseService::State CourseService::compute() const {
    State s;
    s.results = course::run_course(run_);
    s.works = s.results.aggregates(scheme_);
    s.candidates = aspects::propose_candidates(s.results.mentions, run_.min_mentions, run_.min_abs_sentiment, run_.form);
    for (const auto& c : s.results.comments)
        if (!c.analysis.score.flags.empty()) s.flags[c.ref] = FlagState{};
    return s;
}

void CourseService::replay(State& state) const {
    const auto entries = log_->snapshot();
    grading::replay_adjustments(state.works, entries);
    for (const auto& d : audit::entries_of<audit::AspectDecision>(entries)) {
        auto it = std::find_if(state.candidates.begin(), state.candidates.end(),
                               [&](const auto& c) { return c.noun_stem == d.stem; });
        if (it != state.candidates.end() && it->status == aspects::Status::Proposed)
            it->status = d.accepted ? aspects::Status::Accepted : aspects::Status::Rejected;
    }
    for (const auto& r : audit::entries_of<audit::FlagResolution>(entries)) {
        auto it = state.flags.find(r.review_ref);
        if (it != state.flags.end()) it->second = FlagState{true, r.resolution};
    }
}

void CourseService::recompute() {
    std::lock_guard job(recompute_mutex_);
    auto fresh = compute();
    std::unique_lock lock(mutex_);
    replay(fresh);
    state_ = std::move(fresh);
}

ojson CourseService::works_json() const {
    std::shared_lock lock(mutex_);
    ojson out = ojson::array();
    for (const auto& w : state_.works) out.push_back(w.to_json(run_.thresholds.grade_max));
    return out;
}

std::optional<ojson> CourseService::work_json(const std::string& work_id) const {
    std::shared_lock lock(mutex_);
    const auto it = std::find_if(state_.works.begin(), state_.works.end(),
                                 [&](const auto& w) { return w.work_id == work_id; });
    if (it == state_.works.end()) return std::nullopt;
    ojson comments = ojson::array();
    ojson flags = ojson::array();
    for (const auto* c : state_.results.comments_of(work_id)) {
        comments.push_back(c->to_json());
        for (const auto& f : c->analysis.score.flags)
            flags.push_back({{"ref", c->ref}, {"stem", f.stem}, {"start", f.span.start}, {"end", f.span.end}});
    }
    ojson adjustments = ojson::array();
    for (const auto& e : log_->snapshot()) {
        const auto* adj = std::get_if<audit::GradeAdjustment>(&e.payload);
        if (!adj || adj->work_id != work_id) continue;
        adjustments.push_back(ojson::parse(audit::to_json_line(e)));
    }
    return ojson{{"aggregate", it->to_json(run_.thresholds.grade_max)},
                 {"comments", std::move(comments)},
                 {"flags", std::move(flags)},
                 {"adjustments", std::move(adjustments)}};
}

ojson CourseService::aspects_json() const {
    std::shared_lock lock(mutex_);
    ojson out = ojson::array();
    for (const auto& c : state_.candidates) out.push_back(candidate_json(c));
    return out;
}

ojson CourseService::flags_json() const {
    std::shared_lock lock(mutex_);
    ojson out = ojson::array();
    for (const auto& c : state_.results.comments) {
        const auto it = state_.flags.find(c.ref);
        if (it == state_.flags.end()) continue;
        ojson stems = ojson::array();
        for (const auto& f : c.analysis.score.flags) stems.push_back(f.stem);
        out.push_back({{"ref", c.ref},
                       {"work_id", c.record.work_id},
                       {"reviewer_id", c.record.reviewer_id},
                       {"flags", std::move(stems)},
                       {"comment", c.record.comment},
                       {"markup", c.annotation.markup()},
                       {"resolved", it->second.resolved},
                       {"resolution", it->second.resolution}});
    }
    return out;
}

ojson CourseService::correlations_json() const {
    std::shared_lock lock(mutex_);
    const auto samples = state_.results.samples(scheme_);
    ojson out = ojson::array();
    for (const auto& row : analytics::correlation_report(samples, run_.alpha)) out.push_back(analytics::to_json(row));
    return out;
}

ojson CourseService::decisions_json() const {
    ojson out = ojson::array();
    for (const auto& e : log_->snapshot()) out.push_back(ojson::parse(audit::to_json_line(e)));
    return out;
}

ojson CourseService::adjust(const std::string& work_id, double score, const std::string& reason) {
    std::unique_lock lock(mutex_);
    const auto& w = grading::apply_instructor_adjustment(state_.works, work_id, score, reason,
                                                         run_.thresholds.grade_max, *log_);
    return w.to_json(run_.thresholds.grade_max);
}

ojson CourseService::decide_aspect(const std::string& stem, bool accepted) {
    std::unique_lock lock(mutex_);
    auto it = std::find_if(state_.candidates.begin(), state_.candidates.end(),
                           [&](const auto& c) { return c.noun_stem == stem; });
    if (it == state_.candidates.end()) throw NotFound("unknown aspect candidate '" + stem + "'");
    if (it->status != aspects::Status::Proposed)
        throw Conflict("aspect '" + stem + "' is already " + std::string(aspects::to_string(it->status)));
    log_->append(audit::AspectDecision{stem, accepted});
    it->status = accepted ? aspects::Status::Accepted : aspects::Status::Rejected;
    return candidate_json(*it);
}

ojson CourseService::resolve_flag(const std::string& ref, const std::string& resolution) {
    if (blank(resolution)) throw InvalidArgument("resolution must not be empty");
    std::unique_lock lock(mutex_);
    auto it = state_.flags.find(ref);
    if (it == state_.flags.end()) throw NotFound("no flagged comment '" + ref + "'");
    if (it->second.resolved) throw Conflict("flag on '" + ref + "' is already resolved");
    log_->append(audit::FlagResolution{ref, resolution});
    it->second = FlagState{true, resolution};
    return {{"ref", ref}, {"resolved", true}, {"resolution", resolution}};
}

void CourseService::mount(httplib::Server& server) {
    server.Get("/works", [this](const httplib::Request&, httplib::Response& res) {
        respond(res, [&] { return works_json(); });
    });
    server.Get(R"(/works/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] {
            auto w = work_json(req.matches[1]);
            if (!w) throw NotFound("unknown work '" + std::string(req.matches[1]) + "'");
            return *w;
        });
    });
    server.Post(R"(/works/([^/]+)/adjust)", [this](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] {
            const auto body = parse_body(req);
            const auto score = body.find("score");
            if (score == body.end() || !score->is_number()) throw InvalidArgument("'score' must be a number");
            const auto reason = body.contains("reason") ? string_field(body, "reason") : std::string();
            return adjust(req.matches[1], score->get<double>(), reason);
        });
    });
    server.Get("/aspects", [this](const httplib::Request&, httplib::Response& res) {
        respond(res, [&] { return aspects_json(); });
    });
    server.Post(R"(/aspects/([^/]+)/decision)", [this](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] {
            const auto decision = string_field(parse_body(req), "decision");
            if (decision != "accepted" && decision != "rejected")
                throw InvalidArgument("'decision' must be accepted or rejected");
            return decide_aspect(req.matches[1], decision == "accepted");
        });
    });
    server.Get("/flags", [this](const httplib::Request&, httplib::Response& res) {
        respond(res, [&] { return flags_json(); });
    });
    server.Post(R"(/flags/([^/]+)/resolve)", [this](const httplib::Request& req, httplib::Response& res) {
        respond(res, [&] { return resolve_flag(req.matches[1], string_field(parse_body(req), "resolution")); });
    });
    server.Get("/reports/correlations", [this](const httplib::Request&, httplib::Response& res) {
        respond(res, [&] { return correlations_json(); });
    });
    server.Get("/decisions", [this](const httplib::Request&, httplib::Response& res) {
        respond(res, [&] { return decisions_json(); });
    });
    server.Post("/recompute", [this](const httplib::Request&, httplib::Response& res) {
        respond(res, [&] {
            recompute();
            std::shared_lock lock(mutex_);
            return ojson{{"works", state_.works.size()}, {"comments", state_.results.comments.size()}};
        });
    });
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
}

void serve(course::CourseRun run, grading::Scheme scheme, const std::string& bind) {
    const auto colon = bind.rfind(':');
    if (colon == std::string::npos) throw InvalidArgument("bind address must look like host:port");
    const std::string host = colon == 0 ? "127.0.0.1" : bind.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(bind.substr(colon + 1));
    } catch (const std::exception&) {
        throw InvalidArgument("bad port in '" + bind + "'");
    }
    if (port <= 0 || port > 65535) throw InvalidArgument("port out of range in '" + bind + "'");

    CourseService svc(std::move(run), scheme);
    httplib::Server server;
    svc.mount(server);
    std::cerr << "serving on " << host << ":" << port << '\n';
    if (!server.listen(host, port)) throw IoError("cannot listen on " + bind);
}

}  // namespace crowdgrade::service
