#include "mcf/dimacs.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace mcf {

namespace {

[[noreturn]] void bad_line(int line, const std::string& what) {
    throw parse_error("line " + std::to_string(line) + ": " + what);
}

struct Tokens {
    std::vector<std::string> tok;
    int line;
    std::int64_t num(size_t i, const char* what) const {
        if (i >= tok.size()) bad_line(line, std::string("missing ") + what);
        std::int64_t v = 0;
        const std::string& s = tok[i];
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            bad_line(line, std::string("bad integer '") + s + "' for " + what);
        return v;
    }
};

}  // namespace

Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_p = false;
    std::int64_t n = 0, m = 0, arcs = 0;
    Instance inst;
    std::vector<bool> rotation_seen;
    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream ls(raw);
        Tokens t{{}, lineno};
        for (std::string w; ls >> w;) t.tok.push_back(w);
        if (t.tok.empty() || t.tok[0] == "c") continue;
        const std::string& kind = t.tok[0];
        if (kind == "p") {
            if (have_p) bad_line(lineno, "duplicate problem line");
            if (t.tok.size() != 4 || t.tok[1] != "mcf")
                bad_line(lineno, "expected 'p mcf <n> <m>'");
            n = t.num(2, "vertex count");
            m = t.num(3, "arc count");
            if (n < 0 || m < 0) bad_line(lineno, "negative size");
            have_p = true;
            inst.graph = MultiGraph(static_cast<int>(n));
            rotation_seen.assign(static_cast<size_t>(n), false);
        } else if (kind == "a") {
            if (!have_p) bad_line(lineno, "arc before problem line");
            if (t.tok.size() != 4) bad_line(lineno, "expected 'a <u> <v> <cost>'");
            std::int64_t u = t.num(1, "tail"), v = t.num(2, "head");
            std::int64_t c = t.num(3, "cost");
            if (u < 1 || u > n || v < 1 || v > n) bad_line(lineno, "vertex index out of range");
            inst.graph.add_edge(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), c);
            ++arcs;
        } else if (kind == "e") {
            if (!have_p) bad_line(lineno, "embedding line before problem line");
            std::int64_t v = t.num(1, "vertex");
            if (v < 1 || v > n) bad_line(lineno, "vertex index out of range");
            if (rotation_seen[static_cast<size_t>(v - 1)])
                bad_line(lineno, "duplicate embedding line for vertex");
            rotation_seen[static_cast<size_t>(v - 1)] = true;
            if (inst.rotation.empty()) inst.rotation.assign(static_cast<size_t>(n), {});
            for (size_t i = 2; i < t.tok.size(); ++i) {
                std::int64_t w = t.num(i, "neighbor");
                if (w < 1 || w > n) bad_line(lineno, "neighbor index out of range");
                inst.rotation[static_cast<size_t>(v - 1)].push_back(
                    static_cast<VertexId>(w - 1));
            }
        } else {
            bad_line(lineno, "unknown line kind '" + kind + "'");
        }
    }
    if (!have_p) throw parse_error("missing problem line 'p mcf <n> <m>'");
    if (arcs != m)
        throw parse_error("arc count mismatch: header says " + std::to_string(m) +
                          ", found " + std::to_string(arcs));
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    const MultiGraph& g = inst.graph;
    out << "p mcf " << g.num_vertices() << ' ' << g.num_original() << '\n';
    for (EdgeId o = 0; o < g.num_original(); ++o) {
        EdgeId e = 2 * o;
        out << "a " << g.tail(e) + 1 << ' ' << g.head(e) + 1 << ' ' << g.cost(e) << '\n';
    }
    if (!inst.rotation.empty()) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (inst.rotation[static_cast<size_t>(v)].empty()) continue;
            out << "e " << v + 1;
            for (VertexId w : inst.rotation[static_cast<size_t>(v)]) out << ' ' << w + 1;
            out << '\n';
        }
    }
    return out.str();
}

std::string serialize_solution(const Solution& sol) {
    nlohmann::json j;
    j["schema"] = "unitmcf-solution-v1";
    j["kind"] = sol.is_circulation ? "circulation" : "flow";
    if (!sol.is_circulation) {
        j["source"] = sol.src + 1;
        j["sink"] = sol.dst + 1;
        j["value"] = sol.value;
    }
    j["feasible"] = sol.feasible;
    j["cost"] = sol.cost;
    j["shift"] = sol.shift;
    j["eps"] = sol.final_eps;
    j["flow"] = std::vector<int>(sol.flow.begin(), sol.flow.end());
    j["prices"] = sol.prices;
    return j.dump(2) + "\n";
}

Solution parse_solution(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("solution JSON: ") + e.what());
    }
    try {
        Solution sol;
        if (j.at("schema") != "unitmcf-solution-v1")
            throw parse_error("unknown solution schema");
        sol.is_circulation = j.at("kind") == "circulation";
        if (!sol.is_circulation) {
            sol.src = j.at("source").get<VertexId>() - 1;
            sol.dst = j.at("sink").get<VertexId>() - 1;
            sol.value = j.at("value").get<std::int64_t>();
        }
        sol.feasible = j.at("feasible").get<bool>();
        sol.cost = j.at("cost").get<std::int64_t>();
        sol.shift = j.at("shift").get<int>();
        sol.final_eps = j.at("eps").get<Price>();
        for (int x : j.at("flow").get<std::vector<int>>())
            sol.flow.push_back(static_cast<std::int8_t>(x));
        sol.prices = j.at("prices").get<Prices>();
        return sol;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("solution JSON: ") + e.what());
    }
}

}  // namespace mcf
