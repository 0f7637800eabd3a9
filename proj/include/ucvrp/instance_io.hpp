// Copyright 2026 The ucvrp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UCVRP_INSTANCE_IO_HPP_
#define UCVRP_INSTANCE_IO_HPP_

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ucvrp/core.hpp"

namespace ucvrp {

/// Malformed input text. `line` is 1-based, 0 when no single line is at fault.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw IoError("cannot write " + path);
    }
}

/// Shortest decimal text that reads back to exactly `v` (at most 17
/// significant digits).
inline std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        const std::size_t stop = end == std::string_view::npos ? text.size() : end;
        std::string_view line = text.substr(start, stop - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return lines;
}

inline std::optional<double> to_real(std::string_view s) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

inline std::optional<long long> to_integer(std::string_view s) {
    long long v = 0;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

inline double real_or_throw(std::string_view s, std::size_t line) {
    if (auto v = to_real(s)) {
        return *v;
    }
    throw ParseError(line, "expected a number, got '" + std::string(s) + "'");
}

inline long long integer_or_throw(std::string_view s, std::size_t line) {
    if (auto v = to_integer(s)) {
        return *v;
    }
    throw ParseError(line, "expected an integer, got '" + std::string(s) + "'");
}

inline std::string_view strip_comment(std::string_view line) {
    const std::size_t hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Native format
//
//   CVRP 1
//   DEPOT <x> <y>
//   N <n>
//   <x> <y> <demand>      (n lines; terminal ids follow line order)
//
// '#' starts a comment, blank lines are ignored.
// ---------------------------------------------------------------------------

inline Instance parse_native(std::string_view text) {
    enum class Stage { header, depot, count, terminals, done };
    Stage stage = Stage::header;
    Instance instance;
    std::size_t expected = 0;

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto tok = detail::split_ws(detail::strip_comment(lines[i]));
        if (tok.empty()) {
            continue;
        }
        switch (stage) {
            case Stage::header:
                if (tok.size() != 2 || tok[0] != "CVRP" || tok[1] != "1") {
                    throw ParseError(lineno, "expected header 'CVRP 1'");
                }
                stage = Stage::depot;
                break;
            case Stage::depot:
                if (tok.size() != 3 || tok[0] != "DEPOT") {
                    throw ParseError(lineno, "expected 'DEPOT <x> <y>'");
                }
                instance.depot = {detail::real_or_throw(tok[1], lineno), detail::real_or_throw(tok[2], lineno)};
                stage = Stage::count;
                break;
            case Stage::count: {
                if (tok.size() != 2 || tok[0] != "N") {
                    throw ParseError(lineno, "expected 'N <n>'");
                }
                const long long n = detail::integer_or_throw(tok[1], lineno);
                if (n < 0) {
                    throw ParseError(lineno, "terminal count must be non-negative");
                }
                expected = static_cast<std::size_t>(n);
                instance.terminals.reserve(expected);
                stage = expected == 0 ? Stage::done : Stage::terminals;
                break;
            }
            case Stage::terminals: {
                if (tok.size() != 3) {
                    throw ParseError(lineno, "expected '<x> <y> <demand>'");
                }
                Terminal t;
                t.id = static_cast<int>(instance.terminals.size());
                t.location = {detail::real_or_throw(tok[0], lineno), detail::real_or_throw(tok[1], lineno)};
                t.demand = detail::real_or_throw(tok[2], lineno);
                if (!(t.demand > 0.0 && t.demand <= kCapacity)) {
                    throw ParseError(lineno, "demand outside (0,1]");
                }
                if (t.location == instance.depot) {
                    throw ParseError(lineno, "terminal coincides with the depot");
                }
                instance.terminals.push_back(t);
                if (instance.terminals.size() == expected) {
                    stage = Stage::done;
                }
                break;
            }
            case Stage::done:
                throw ParseError(lineno, "unexpected content after the last terminal");
        }
    }
    if (stage != Stage::done) {
        throw ParseError(0, "truncated instance: expected " + std::to_string(expected) + " terminals, got " +
                                std::to_string(instance.terminals.size()));
    }
    return instance;
}

inline std::string emit_native(const Instance& instance) {
    std::string out = "CVRP 1\n";
    out += "DEPOT " + format_real(instance.depot.x) + " " + format_real(instance.depot.y) + "\n";
    out += "N " + std::to_string(instance.size()) + "\n";
    for (const auto& t : instance.terminals) {
        out += format_real(t.location.x) + " " + format_real(t.location.y) + " " + format_real(t.demand) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// TSPLIB CVRP subset (EUC_2D only). Demands are divided by CAPACITY; distances
// stay real-valued rather than TSPLIB's nint rounding.
// ---------------------------------------------------------------------------

inline Instance parse_tsplib_cvrp(std::string_view text) {
    enum class Section { none, coords, demands, depots };
    Section section = Section::none;
    std::optional<long long> dimension;
    std::optional<double> capacity;
    std::string edge_type;
    std::map<long long, Point> coords;
    std::map<long long, long long> demands;
    std::vector<long long> depots;
    std::vector<long long> node_order;
    bool saw_coords = false, saw_demands = false, saw_depots = false, depots_closed = false;

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view raw = lines[i];
        auto tok = detail::split_ws(raw);
        if (tok.empty()) {
            continue;
        }
        std::string_view head = tok[0];
        if (head == "EOF") {
            break;
        }
        if (head == "NODE_COORD_SECTION") {
            section = Section::coords;
            saw_coords = true;
            continue;
        }
        if (head == "DEMAND_SECTION") {
            section = Section::demands;
            saw_demands = true;
            continue;
        }
        if (head == "DEPOT_SECTION") {
            section = Section::depots;
            saw_depots = true;
            continue;
        }

        // Specification lines look like "KEY : VALUE" or "KEY: VALUE".
        const std::size_t colon = raw.find(':');
        if (colon != std::string_view::npos || !detail::to_real(head)) {
            std::string_view key = colon != std::string_view::npos ? raw.substr(0, colon) : head;
            std::string_view value = colon != std::string_view::npos ? raw.substr(colon + 1) : raw.substr(head.size());
            const auto kt = detail::split_ws(key);
            const auto vt = detail::split_ws(value);
            if (kt.size() != 1) {
                throw ParseError(lineno, "malformed specification line");
            }
            section = Section::none;
            const std::string k(kt[0]);
            if (k == "DIMENSION") {
                if (vt.size() != 1) throw ParseError(lineno, "DIMENSION needs one value");
                dimension = detail::integer_or_throw(vt[0], lineno);
            } else if (k == "CAPACITY") {
                if (vt.size() != 1) throw ParseError(lineno, "CAPACITY needs one value");
                capacity = detail::real_or_throw(vt[0], lineno);
                if (!(*capacity > 0)) throw ParseError(lineno, "CAPACITY must be positive");
            } else if (k == "EDGE_WEIGHT_TYPE") {
                if (vt.size() != 1) throw ParseError(lineno, "EDGE_WEIGHT_TYPE needs one value");
                edge_type = std::string(vt[0]);
                if (edge_type != "EUC_2D") {
                    throw ParseError(lineno, "unsupported EDGE_WEIGHT_TYPE " + edge_type);
                }
            } else if (k == "TYPE") {
                if (vt.size() != 1 || vt[0] != "CVRP") throw ParseError(lineno, "unsupported TYPE");
            }
            // NAME, COMMENT and other keys carry no routing data.
            continue;
        }

        switch (section) {
            case Section::coords: {
                if (tok.size() != 3) throw ParseError(lineno, "expected '<id> <x> <y>'");
                const long long id = detail::integer_or_throw(tok[0], lineno);
                if (coords.count(id)) throw ParseError(lineno, "duplicate node id " + std::to_string(id));
                coords[id] = {detail::real_or_throw(tok[1], lineno), detail::real_or_throw(tok[2], lineno)};
                node_order.push_back(id);
                break;
            }
            case Section::demands: {
                if (tok.size() != 2) throw ParseError(lineno, "expected '<id> <demand>'");
                const long long id = detail::integer_or_throw(tok[0], lineno);
                if (demands.count(id)) throw ParseError(lineno, "duplicate demand for node " + std::to_string(id));
                demands[id] = detail::integer_or_throw(tok[1], lineno);
                break;
            }
            case Section::depots: {
                for (auto t : tok) {
                    const long long id = detail::integer_or_throw(t, lineno);
                    if (id == -1) {
                        depots_closed = true;
                    } else if (!depots_closed) {
                        depots.push_back(id);
                    }
                }
                break;
            }
            case Section::none:
                throw ParseError(lineno, "data outside of any section");
        }
    }

    if (edge_type.empty()) throw ParseError(0, "missing EDGE_WEIGHT_TYPE");
    if (!capacity) throw ParseError(0, "missing CAPACITY");
    if (!saw_coords) throw ParseError(0, "missing NODE_COORD_SECTION");
    if (!saw_demands) throw ParseError(0, "missing DEMAND_SECTION");
    if (!saw_depots || depots.empty()) throw ParseError(0, "missing DEPOT_SECTION");
    if (depots.size() != 1) throw ParseError(0, "multiple depots are not supported");
    if (dimension && static_cast<std::size_t>(*dimension) != coords.size()) {
        throw ParseError(0, "DIMENSION does not match the number of coordinates");
    }
    const long long depot_id = depots.front();
    if (!coords.count(depot_id)) throw ParseError(0, "depot node has no coordinates");

    Instance instance;
    instance.depot = coords[depot_id];
    for (long long id : node_order) {
        if (id == depot_id) {
            continue;
        }
        auto it = demands.find(id);
        if (it == demands.end()) {
            throw ParseError(0, "node " + std::to_string(id) + " has no demand");
        }
        if (static_cast<double>(it->second) > *capacity) {
            throw ParseError(0, "node " + std::to_string(id) + ": demand exceeds capacity");
        }
        if (it->second <= 0) {
            throw ParseError(0, "node " + std::to_string(id) + ": demand outside (0,1]");
        }
        if (coords[id] == instance.depot) {
            throw ParseError(0, "node " + std::to_string(id) + " coincides with the depot");
        }
        instance.terminals.push_back(
            {static_cast<int>(instance.terminals.size()), coords[id], static_cast<double>(it->second) / *capacity});
    }
    return instance;
}

/// Parses either format, recognizing the native "CVRP 1" header.
inline Instance parse_instance(std::string_view text) {
    for (auto line : detail::split_lines(text)) {
        const auto tok = detail::split_ws(detail::strip_comment(line));
        if (tok.empty()) {
            continue;
        }
        if (tok.size() == 2 && tok[0] == "CVRP" && tok[1] == "1") {
            return parse_native(text);
        }
        break;
    }
    return parse_tsplib_cvrp(text);
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

enum class GeometryKind { uniform_disk, annulus, clustered, co_located };

struct DemandLaw {
    enum class Kind { uniform, fixed, mixed_big_small };

    Kind kind = Kind::uniform;
    double lo = 0.05;     // uniform
    double hi = 1.0;      // uniform
    double value = 0.5;   // fixed
    double p_big = 0.3;   // mixed_big_small
    double epsilon = 0.4; // mixed_big_small

    static DemandLaw uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
    static DemandLaw fixed(double d) { return {Kind::fixed, 0.0, 0.0, d}; }
    static DemandLaw mixed(double p_big, double epsilon) { return {Kind::mixed_big_small, 0.0, 0.0, 0.0, p_big, epsilon}; }
};

/// Everything that determines a generated instance. The depot sits at the
/// origin; radii are in the same units as the coordinates.
struct GeneratorSpec {
    GeometryKind kind = GeometryKind::uniform_disk;
    int n = 10;
    DemandLaw law;
    std::uint64_t seed = 1;
    double radius = 10.0;       // uniform_disk, clustered, co_located
    double inner_radius = 1.0;  // annulus
    double outer_radius = 2.0;  // annulus
    int clusters = 3;           // clustered
    double spread = 1.0;        // clustered
};

inline std::string to_string(GeometryKind k) {
    switch (k) {
        case GeometryKind::uniform_disk: return "uniform-disk";
        case GeometryKind::annulus: return "annulus";
        case GeometryKind::clustered: return "clustered";
        case GeometryKind::co_located: return "co-located";
    }
    return "?";
}

inline GeometryKind geometry_from_string(std::string_view s) {
    if (s == "uniform-disk") return GeometryKind::uniform_disk;
    if (s == "annulus") return GeometryKind::annulus;
    if (s == "clustered") return GeometryKind::clustered;
    if (s == "co-located") return GeometryKind::co_located;
    throw std::invalid_argument("unknown generator kind '" + std::string(s) + "'");
}

namespace detail {

// mt19937_64 is fully specified by the standard, so its raw output is the same
// everywhere; the std distributions are not, hence the hand-rolled mapping.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

inline Point polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

inline Point disk_point(Rng& rng, double r_lo, double r_hi) {
    const double r = std::sqrt(r_lo * r_lo + rng.unit() * (r_hi * r_hi - r_lo * r_lo));
    return polar(r, 2.0 * std::numbers::pi * rng.unit());
}

inline double draw_demand(Rng& rng, const DemandLaw& law) {
    switch (law.kind) {
        case DemandLaw::Kind::uniform:
            return rng.uniform(law.lo, law.hi);
        case DemandLaw::Kind::fixed:
            return law.value;
        case DemandLaw::Kind::mixed_big_small: {
            const bool big = rng.unit() < law.p_big;
            const double u = rng.unit();
            if (big) {
                return law.epsilon + (1.0 - law.epsilon) * u;
            }
            const double d = law.epsilon * (0.05 + 0.95 * u);
            return d < law.epsilon ? d : std::nextafter(law.epsilon, 0.0);
        }
    }
    return law.value;
}

inline void validate_law(const DemandLaw& law) {
    switch (law.kind) {
        case DemandLaw::Kind::uniform:
            if (!(law.lo > 0.0 && law.lo <= law.hi && law.hi <= 1.0)) {
                throw std::invalid_argument("uniform demand law needs 0 < lo <= hi <= 1");
            }
            break;
        case DemandLaw::Kind::fixed:
            if (!(law.value > 0.0 && law.value <= 1.0)) {
                throw std::invalid_argument("fixed demand must lie in (0,1]");
            }
            break;
        case DemandLaw::Kind::mixed_big_small:
            if (!(law.p_big >= 0.0 && law.p_big <= 1.0)) {
                throw std::invalid_argument("p_big must lie in [0,1]");
            }
            if (!(law.epsilon > 0.0 && law.epsilon < 1.0)) {
                throw std::invalid_argument("mixed law epsilon must lie in (0,1)");
            }
            break;
    }
}

}  // namespace detail

/// Deterministic in `spec`: the same spec yields a bit-identical instance.
inline Instance generate(const GeneratorSpec& spec) {
    if (spec.n < 1) {
        throw std::invalid_argument("generator needs n >= 1");
    }
    detail::validate_law(spec.law);
    switch (spec.kind) {
        case GeometryKind::annulus:
            if (!(spec.inner_radius > 0.0 && spec.inner_radius <= spec.outer_radius)) {
                throw std::invalid_argument("annulus needs 0 < inner_radius <= outer_radius");
            }
            break;
        case GeometryKind::clustered:
            if (spec.clusters < 1 || !(spec.spread > 0.0)) {
                throw std::invalid_argument("clustered kind needs clusters >= 1 and spread > 0");
            }
            [[fallthrough]];
        default:
            if (!(spec.radius > 0.0)) {
                throw std::invalid_argument("radius must be positive");
            }
    }

    detail::Rng rng(spec.seed);
    Instance instance;
    instance.depot = {0.0, 0.0};

    std::vector<Point> hubs;
    if (spec.kind == GeometryKind::clustered) {
        for (int c = 0; c < spec.clusters; ++c) {
            hubs.push_back(detail::disk_point(rng, 0.25 * spec.radius, spec.radius));
        }
    } else if (spec.kind == GeometryKind::co_located) {
        hubs.push_back(detail::disk_point(rng, 0.25 * spec.radius, spec.radius));
    }

    for (int i = 0; i < spec.n; ++i) {
        Point p;
        do {
            switch (spec.kind) {
                case GeometryKind::uniform_disk:
                    p = detail::disk_point(rng, 0.0, spec.radius);
                    break;
                case GeometryKind::annulus:
                    p = detail::disk_point(rng, spec.inner_radius, spec.outer_radius);
                    break;
                case GeometryKind::clustered: {
                    const Point hub = hubs[rng.below(hubs.size())];
                    const Point off = detail::disk_point(rng, 0.0, spec.spread);
                    p = {hub.x + off.x, hub.y + off.y};
                    break;
                }
                case GeometryKind::co_located:
                    p = hubs.front();
                    break;
            }
        } while (p == instance.depot);
        instance.terminals.push_back({i, p, detail::draw_demand(rng, spec.law)});
    }
    validate_instance(instance);
    return instance;
}

// ---------------------------------------------------------------------------
// Solution files
//
// One tour per line, terminal ids in visit order. A hub loop is written
// "( id id ... @ x y )": the tour reaches (x, y), serves the ids and returns to
// (x, y). A spur "< x y >" after an id is a round trip from that terminal to
// (x, y). '#' starts a comment.
// ---------------------------------------------------------------------------

inline std::string emit_solution(const Solution& solution) {
    std::string out = "# ucvrp solution: one tour per line\n";
    for (const auto& tour : solution.tours) {
        if (auto err = detour_error(tour)) {
            throw std::invalid_argument("cannot emit tour: " + *err);
        }
        std::vector<const Detour*> hub_at(tour.visits.size(), nullptr);
        std::vector<std::vector<const Detour*>> spurs(tour.visits.size());
        for (const auto& d : tour.detours) {
            if (d.kind == Detour::Kind::hub) {
                hub_at[d.anchor] = &d;
            } else {
                spurs[d.anchor].push_back(&d);
            }
        }
        std::string line;
        auto word = [&line](const std::string& w) {
            if (!line.empty()) line += ' ';
            line += w;
        };
        const Detour* open = nullptr;
        for (std::size_t k = 0; k < tour.visits.size(); ++k) {
            if (hub_at[k]) {
                open = hub_at[k];
                word("(");
            }
            word(std::to_string(tour.visits[k]));
            for (const Detour* s : spurs[k]) {
                word("<");
                word(format_real(s->via.x));
                word(format_real(s->via.y));
                word(">");
            }
            if (open && k + 1 == open->anchor + open->span) {
                word("@");
                word(format_real(open->via.x));
                word(format_real(open->via.y));
                word(")");
                open = nullptr;
            }
        }
        out += line + "\n";
    }
    return out;
}

inline Solution parse_solution(std::string_view text) {
    Solution solution;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string spaced;
        for (char c : detail::strip_comment(lines[i])) {
            if (c == '(' || c == ')' || c == '<' || c == '>' || c == '@') {
                spaced += ' ';
                spaced += c;
                spaced += ' ';
            } else {
                spaced += c;
            }
        }
        const auto tok = detail::split_ws(spaced);
        if (tok.empty()) {
            continue;
        }
        Tour tour;
        constexpr std::size_t no_hub = static_cast<std::size_t>(-1);
        std::size_t hub_start = no_hub;
        for (std::size_t k = 0; k < tok.size(); ++k) {
            auto need = [&](std::size_t count) {
                if (k + count >= tok.size()) {
                    throw ParseError(lineno, "truncated detour");
                }
            };
            if (tok[k] == "(") {
                if (hub_start != no_hub) throw ParseError(lineno, "nested hub loop");
                hub_start = tour.visits.size();
            } else if (tok[k] == "@") {
                need(3);
                if (hub_start == no_hub || tok[k + 3] != ")") throw ParseError(lineno, "malformed hub loop");
                const std::size_t span = tour.visits.size() - hub_start;
                if (span == 0) throw ParseError(lineno, "empty hub loop");
                Detour d{Detour::Kind::hub, hub_start, span,
                         {detail::real_or_throw(tok[k + 1], lineno), detail::real_or_throw(tok[k + 2], lineno)}};
                tour.detours.push_back(d);
                hub_start = no_hub;
                k += 3;
            } else if (tok[k] == "<") {
                need(3);
                if (tour.visits.empty() || tok[k + 3] != ">") throw ParseError(lineno, "malformed spur");
                Detour d{Detour::Kind::spur, tour.visits.size() - 1, 1,
                         {detail::real_or_throw(tok[k + 1], lineno), detail::real_or_throw(tok[k + 2], lineno)}};
                tour.detours.push_back(d);
                k += 3;
            } else if (tok[k] == ")" || tok[k] == ">") {
                throw ParseError(lineno, "unbalanced '" + std::string(tok[k]) + "'");
            } else {
                const long long id = detail::integer_or_throw(tok[k], lineno);
                if (id < 0 || id > std::numeric_limits<int>::max()) throw ParseError(lineno, "terminal id out of range");
                tour.visits.push_back(static_cast<int>(id));
            }
        }
        if (hub_start != no_hub) {
            throw ParseError(lineno, "unterminated hub loop");
        }
        std::stable_sort(tour.detours.begin(), tour.detours.end(),
                         [](const Detour& a, const Detour& b) { return a.anchor < b.anchor; });
        solution.tours.push_back(std::move(tour));
    }
    return solution;
}

}  // namespace ucvrp

#endif  // UCVRP_INSTANCE_IO_HPP_
