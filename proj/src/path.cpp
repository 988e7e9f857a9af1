#include "shasim/path.hpp"

#include <charconv>
#include <sstream>

namespace shasim {

std::string format_double(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

bool Trace::structurally_valid(const HybridAutomaton& ha) const {
    int loc = head.location;
    if (loc < 0 || loc >= static_cast<int>(ha.locations().size())) return false;
    for (int e : edges) {
        if (e < 0 || e >= static_cast<int>(ha.edges().size())) return false;
        if (ha.edge(e).source != loc) return false;
        loc = ha.edge(e).target;
    }
    return true;
}

std::vector<int> edge_sequence(const Path& p) {
    std::vector<int> out;
    out.reserve(p.steps.size());
    for (const auto& s : p.steps) out.push_back(s.edge);
    return out;
}

namespace {

const char* kind_name(EdgeKind k, bool forced_routing) {
    if (forced_routing) return "forced";
    switch (k) {
        case EdgeKind::original: return "original";
        case EdgeKind::resample_composed: return "resample";
        case EdgeKind::resample_decomposed: return "resample";
    }
    return "?";
}

}  // namespace

std::string export_paths_csv(const HybridAutomaton& ha, const std::vector<Path>& paths,
                             std::size_t race_columns,
                             const std::vector<std::string>& header_comment) {
    std::ostringstream oss;
    for (const auto& line : header_comment) oss << "# " << line << "\n";
    oss << "trajectory,step,time,location";
    for (const auto& v : ha.variables()) oss << "," << v;
    oss << ",edge,kind";
    for (std::size_t i = 1; i <= race_columns; ++i) oss << ",r" << i;
    oss << "\n";

    auto emit_state = [&](std::size_t traj, std::size_t step, double time, const State& s,
                          const std::string& edge, const std::string& kind,
                          const std::vector<double>& race) {
        oss << traj << "," << step << "," << format_double(time) << ","
            << ha.location(s.location).name;
        for (double x : s.valuation) oss << "," << format_double(x);
        oss << "," << edge << "," << kind;
        for (std::size_t i = 0; i < race_columns; ++i) {
            oss << "," << (i < race.size() ? format_double(race[i]) : "");
        }
        oss << "\n";
    };

    for (std::size_t t = 0; t < paths.size(); ++t) {
        const Path& p = paths[t];
        emit_state(t, 0, 0.0, p.initial, "-", "init", p.race_initial);
        for (std::size_t i = 0; i < p.steps.size(); ++i) {
            const PathStep& s = p.steps[i];
            emit_state(t, i + 1, s.time, s.after, ha.edge(s.edge).name,
                       kind_name(ha.edge(s.edge).kind, s.forced_routing), s.race);
        }
    }
    return oss.str();
}

}  // namespace shasim
