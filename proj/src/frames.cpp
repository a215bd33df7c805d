#include "qrel/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace qrel::frames {

FrameGraph::FrameGraph(std::vector<FrameId> frames, std::set<Edge> q_edges,
                       std::set<Edge> phys_edges)
    : frames_(std::move(frames)), q_edges_(std::move(q_edges)), phys_edges_(std::move(phys_edges)) {
    std::set<std::string> names;
    for (const auto& f : frames_) {
        if (!names.insert(f.name).second)
            throw std::invalid_argument("FrameGraph: duplicate frame name '" + f.name + "'");
        if (f.mass && *f.mass <= 0.0)
            throw std::invalid_argument("FrameGraph: mass must be positive for '" + f.name + "'");
    }
    auto check_edges = [&](const std::set<Edge>& edges, const char* which) {
        for (const auto& [a, b] : edges)
            if (!names.count(a) || !names.count(b))
                throw std::invalid_argument(std::string("FrameGraph: ") + which +
                                            " endpoint not in frame set");
    };
    check_edges(q_edges_, "q_edge");
    check_edges(phys_edges_, "phys_edge");
}

bool FrameGraph::has_frame(const std::string& name) const {
    for (const auto& f : frames_)
        if (f.name == name) return true;
    return false;
}

void to_json(nlohmann::json& j, const FrameGraph& g) {
    j = nlohmann::json::object();
    j["frames"] = nlohmann::json::array();
    for (const auto& f : g.frames()) {
        nlohmann::json jf{{"name", f.name}};
        if (f.mass) jf["mass"] = *f.mass;
        j["frames"].push_back(jf);
    }
    auto edges_to_json = [](const std::set<Edge>& edges) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [a, b] : edges) arr.push_back({a, b});
        return arr;
    };
    j["q_edges"] = edges_to_json(g.q_edges());
    j["phys_edges"] = edges_to_json(g.phys_edges());
}

void from_json(const nlohmann::json& j, FrameGraph& g) {
    std::vector<FrameId> frames;
    for (const auto& jf : j.at("frames")) {
        FrameId f;
        f.name = jf.at("name").get<std::string>();
        if (jf.contains("mass")) f.mass = jf.at("mass").get<double>();
        frames.push_back(std::move(f));
    }
    auto edges_from_json = [&](const char* key) {
        std::set<Edge> edges;
        if (j.contains(key))
            for (const auto& je : j.at(key))
                edges.insert({je.at(0).get<std::string>(), je.at(1).get<std::string>()});
        return edges;
    };
    g = FrameGraph(std::move(frames), edges_from_json("q_edges"), edges_from_json("phys_edges"));
}

std::vector<Violation> check_equivalence(const FrameGraph& g) {
    std::vector<Violation> out;
    const auto& e = g.phys_edges();
    auto has = [&](const std::string& a, const std::string& b) { return e.count({a, b}) > 0; };

    for (const auto& f : g.frames())
        if (!has(f.name, f.name))
            out.push_back({ViolationKind::Reflexivity, {f.name}});

    for (const auto& [a, b] : e)
        if (!has(b, a))
            out.push_back({ViolationKind::Symmetry, {a, b}});

    for (const auto& [a, b] : e)
        for (const auto& [b2, c] : e)
            if (b2 == b && !has(a, c))
                out.push_back({ViolationKind::Transitivity, {a, b, c}});

    return out;
}

std::vector<Edge> detect_intransitivity(const FrameGraph& g) {
    std::vector<Edge> out;
    const auto& q = g.q_edges();
    for (const auto& [x, y] : q)
        if (x != y && q.count({y, x}) && !q.count({x, x}))
            out.push_back({x, y});
    return out;
}

ReciprocalPair reciprocal_superposition(const StateVector& forward) {
    if (std::abs(forward.norm_sq() - 1.0) > 1e-10)
        throw std::invalid_argument("reciprocal_superposition: input must be normalized");
    if (forward.dims.size() != 1)
        throw std::invalid_argument("reciprocal_superposition: expected a single-subsystem state");

    ReciprocalPair pair;
    pair.forward = forward;
    // Only the moduli are constrained; phases are copied so the map is an
    // involution on amplitudes.
    pair.backward = forward;
    pair.backward.labels[0] = (forward.labels[0].rfind("A|", 0) == 0)
                                  ? forward.labels[0].substr(2)
                                  : "A|" + forward.labels[0];
    return pair;
}

double FrameTime::elapsed_since(const FrameTime& earlier) const {
    if (frame != earlier.frame)
        throw std::logic_error("FrameTime: cross-frame comparison of local times");
    return seconds - earlier.seconds;
}

void LocalClock::advance(double dt) {
    if (dt < 0.0) throw std::invalid_argument("LocalClock: time cannot decrease");
    seconds_ += dt;
}

FrameClocks::FrameClocks(const FrameGraph& g) {
    for (const auto& f : g.frames()) clocks_.emplace(f.name, LocalClock(f.name));
}

LocalClock& FrameClocks::clock(const std::string& frame) {
    auto it = clocks_.find(frame);
    if (it == clocks_.end()) throw std::invalid_argument("FrameClocks: unknown frame '" + frame + "'");
    return it->second;
}

} // namespace qrel::frames
