#include "singlat/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "singlat/errors.hpp"
#include "singlat/lattice.hpp"

namespace singlat {

using nlohmann::ordered_json;

const char* validation_failure_name(ValidationFailure f) {
    switch (f) {
        case ValidationFailure::NotTree: return "NOT_TREE";
        case ValidationFailure::NotNegativeDefinite: return "NOT_NEGATIVE_DEFINITE";
        case ValidationFailure::DuplicateEdge: return "DUPLICATE_EDGE";
        case ValidationFailure::UnknownVertex: return "UNKNOWN_VERTEX";
    }
    return "?";
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::GraphMismatch: return "GRAPH_MISMATCH";
        case ErrorCode::InvalidGraph: return "INVALID_GRAPH";
        case ErrorCode::NotInLprime: return "NOT_IN_LPRIME";
        case ErrorCode::RegionTooLarge: return "REGION_TOO_LARGE";
        case ErrorCode::CminViolation: return "CMIN_VIOLATION";
        case ErrorCode::TNegative: return "T_NEGATIVE";
        case ErrorCode::PreconditionSupport: return "PRECONDITION_SUPPORT";
        case ErrorCode::RationalGraph: return "RATIONAL_GRAPH";
        case ErrorCode::NotALattice: return "NOT_A_LATTICE";
        case ErrorCode::ProviderFailure: return "PROVIDER_FAILURE";
        case ErrorCode::Internal: return "INTERNAL";
    }
    return "?";
}

int ResolutionGraph::index_of(const std::string& id) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (ids[i] == id) return i;
    return -1;
}

std::vector<std::vector<int>> ResolutionGraph::adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

bool operator==(const ResolutionGraph& a, const ResolutionGraph& b) {
    return a.ids == b.ids && a.euler == b.euler && a.edges == b.edges;
}

ResolutionGraph parse_graph(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorCode::ParseError,
              "graph file is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        raise(ErrorCode::ParseError, "graph file needs a top-level object with a \"vertices\" list");

    ResolutionGraph g;
    std::map<std::string, int> index;
    int pos = 0;
    for (const auto& v : doc["vertices"]) {
        ++pos;
        if (!v.is_object() || !v.contains("id") || !v["id"].is_string() ||
            !v.contains("euler") || !v["euler"].is_number_integer())
            raise(ErrorCode::ParseError,
                  "vertex #" + std::to_string(pos) + " needs string \"id\" and integer \"euler\"");
        std::string id = v["id"].get<std::string>();
        if (index.count(id))
            raise(ErrorCode::ParseError, "duplicate vertex id \"" + id + "\" (vertex #" + std::to_string(pos) + ")");
        index[id] = g.vertex_count();
        g.ids.push_back(id);
        g.euler.push_back(v["euler"].get<long long>());
    }

    if (doc.contains("edges")) {
        if (!doc["edges"].is_array())
            raise(ErrorCode::ParseError, "\"edges\" must be a list of [id, id] pairs");
        pos = 0;
        for (const auto& e : doc["edges"]) {
            ++pos;
            if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
                raise(ErrorCode::ParseError, "edge #" + std::to_string(pos) + " must be an [id, id] pair");
            auto a = index.find(e[0].get<std::string>());
            auto b = index.find(e[1].get<std::string>());
            if (a == index.end() || b == index.end())
                raise(ErrorCode::ParseError,
                      "UNKNOWN_VERTEX: edge #" + std::to_string(pos) + " references an id not in \"vertices\"");
            int i = a->second, j = b->second;
            g.edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    return g;
}

std::string serialize_graph(const ResolutionGraph& g) {
    ordered_json doc;
    doc["vertices"] = ordered_json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        doc["vertices"].push_back({{"id", g.ids[v]}, {"euler", g.euler[v]}});
    doc["edges"] = ordered_json::array();
    for (auto [a, b] : g.edges)
        doc["edges"].push_back({g.ids[a], g.ids[b]});
    return doc.dump(2) + "\n";
}

namespace {

bool is_tree(const ResolutionGraph& g, bool& duplicate_edge) {
    const int n = g.vertex_count();
    duplicate_edge = false;
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (!seen.insert({a, b}).second) duplicate_edge = true;
    }
    for (auto [a, b] : g.edges)
        if (a == b) return false;
    if (n == 0) return false;
    if (static_cast<int>(seen.size()) != n - 1) return false;
    if (duplicate_edge) return false;
    // connectivity over the deduplicated edge set
    auto adj = g.adjacency();
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v])
            if (!vis[u]) {
                vis[u] = 1;
                ++count;
                stack.push_back(u);
            }
    }
    return count == n;
}

// Sign alternation of leading principal minors, exact. Negative definite
// iff (-1)^k det_k > 0 for k = 1..n.
bool negative_definite(const ResolutionGraph& g) {
    const int n = g.vertex_count();
    if (n == 0) return false;
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, 0));
    for (int v = 0; v < n; ++v) m[v][v] = Rat(g.euler[v]);
    for (auto [a, b] : g.edges) {
        m[a][b] += 1;
        m[b][a] += 1;
    }
    // Fraction-producing Gaussian elimination; pivots d_k satisfy
    // det_k = d_1 ... d_k, so sign alternation == all pivots negative.
    for (int k = 0; k < n; ++k) {
        if (sgn(m[k][k]) >= 0) return false;
        for (int i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat factor = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
        }
    }
    return true;
}

} // namespace

ValidationReport validate(const ResolutionGraph& g) {
    ValidationReport report;
    for (auto [a, b] : g.edges)
        if (a < 0 || b < 0 || a >= g.vertex_count() || b >= g.vertex_count()) {
            report.failures.push_back(ValidationFailure::UnknownVertex);
            report.ok = false;
            return report;
        }
    bool duplicate = false;
    if (!is_tree(g, duplicate)) report.failures.push_back(ValidationFailure::NotTree);
    if (duplicate) report.failures.push_back(ValidationFailure::DuplicateEdge);
    if (!negative_definite(g)) report.failures.push_back(ValidationFailure::NotNegativeDefinite);
    report.ok = report.failures.empty();
    return report;
}

} // namespace singlat
