#pragma once

#include "qrel/state.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qrel::frames {

struct FrameId {
    std::string name;
    std::optional<double> mass; // kg, when a consumer needs dilation factors
};

using Edge = std::pair<std::string, std::string>;

/// Finite set of frames with two directed relations: q_edges is the
/// "y is in a superposition relative to x" relation, phys_edges the
/// "physical relative to" relation. Immutable after construction.
class FrameGraph {
public:
    FrameGraph() = default;
    FrameGraph(std::vector<FrameId> frames, std::set<Edge> q_edges, std::set<Edge> phys_edges);

    const std::vector<FrameId>& frames() const { return frames_; }
    const std::set<Edge>& q_edges() const { return q_edges_; }
    const std::set<Edge>& phys_edges() const { return phys_edges_; }
    bool has_frame(const std::string& name) const;

private:
    std::vector<FrameId> frames_;
    std::set<Edge> q_edges_;
    std::set<Edge> phys_edges_;
};

void to_json(nlohmann::json& j, const FrameGraph& g);
void from_json(const nlohmann::json& j, FrameGraph& g);

enum class ViolationKind { Reflexivity, Symmetry, Transitivity };

struct Violation {
    ViolationKind kind;
    std::vector<std::string> witnesses; // 1, 2 or 3 frames depending on kind
};

/// Every reflexivity/symmetry/transitivity violation of phys_edges,
/// tagged with the witnessing frames.
std::vector<Violation> check_equivalence(const FrameGraph& g);

/// Pairs (x, y) with xQy and yQx but no xQx: the superposition relation
/// failing to close into an equivalence.
std::vector<Edge> detect_intransitivity(const FrameGraph& g);

struct ReciprocalPair {
    StateVector forward;  // S as described by A
    StateVector backward; // A as described by S, equal amplitude moduli
};

/// The backward description corresponding to a forward superposition: equal
/// amplitude moduli (phases copied; only the moduli are constrained), basis
/// labels swapped to the apparatus side.
ReciprocalPair reciprocal_superposition(const StateVector& forward);

/// A frame's local time. Values of different frames cannot be compared;
/// elapsed_since throws on a frame mismatch, and no ordering is defined.
struct FrameTime {
    std::string frame;
    double seconds = 0.0;

    double elapsed_since(const FrameTime& earlier) const;
    bool operator<(const FrameTime&) const = delete;
    bool operator>(const FrameTime&) const = delete;
};

class LocalClock {
public:
    explicit LocalClock(std::string frame) : frame_(std::move(frame)) {}

    void advance(double dt);
    FrameTime now() const { return FrameTime{frame_, seconds_}; }
    const std::string& frame() const { return frame_; }

private:
    std::string frame_;
    double seconds_ = 0.0;
};

/// Per-frame clock registry for a graph. Each frame's accumulator is
/// independent; cross-frame readings only relate through dilation maps.
class FrameClocks {
public:
    explicit FrameClocks(const FrameGraph& g);

    LocalClock& clock(const std::string& frame);

private:
    std::map<std::string, LocalClock> clocks_;
};

} // namespace qrel::frames
