#pragma once

// Shared graph builders and the deterministic fuzz corpus used across the
// test suites and the acceptance run.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "singlat/graph.hpp"
#include "singlat/lattice.hpp"

namespace testsupport {

using namespace singlat;

inline ResolutionGraph chain(int n, long long euler = -2) {
    ResolutionGraph g;
    for (int v = 0; v < n; ++v) {
        g.ids.push_back("v" + std::to_string(v + 1));
        g.euler.push_back(euler);
    }
    for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
    return g;
}

inline ResolutionGraph a1() { return chain(1); }
inline ResolutionGraph a2() { return chain(2); }

// center first, then the legs
inline ResolutionGraph star(long long center, const std::vector<long long>& legs) {
    ResolutionGraph g;
    g.ids.push_back("c");
    g.euler.push_back(center);
    for (size_t i = 0; i < legs.size(); ++i) {
        g.ids.push_back("l" + std::to_string(i + 1));
        g.euler.push_back(legs[i]);
        g.edges.emplace_back(0, static_cast<int>(i + 1));
    }
    return g;
}

inline ResolutionGraph star_333() { return star(-3, {-2, -2, -2}); }

// Dynkin E8 in the Bourbaki layout: chain e1-e3-e4-e5-e6-e7-e8, branch e2-e4.
inline ResolutionGraph e8() {
    ResolutionGraph g;
    for (int v = 1; v <= 8; ++v) {
        g.ids.push_back("e" + std::to_string(v));
        g.euler.push_back(-2);
    }
    auto edge = [&](int a, int b) { g.edges.emplace_back(a - 1, b - 1); };
    edge(1, 3);
    edge(3, 4);
    edge(4, 5);
    edge(5, 6);
    edge(6, 7);
    edge(7, 8);
    edge(2, 4);
    return g;
}

// Triangle singularity star: center -1, legs -2, -3, -7. Negative definite,
// not rational; the smallest standing example of positive geometric genus.
inline ResolutionGraph t237() { return star(-1, {-2, -3, -7}); }

// Random tree with eulers in [lo, hi]; only validated graphs are returned.
inline std::optional<ResolutionGraph> random_graph(std::mt19937& rng, int max_vertices,
                                                   long long lo = -5, long long hi = -1) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    const int n = nv(rng);
    ResolutionGraph g;
    std::uniform_int_distribution<long long> eu(lo, hi);
    for (int v = 0; v < n; ++v) {
        g.ids.push_back("v" + std::to_string(v + 1));
        g.euler.push_back(eu(rng));
    }
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        g.edges.emplace_back(parent(rng), v);
    }
    if (!validate(g).ok) return std::nullopt;
    return g;
}

// Deterministic corpus of valid graphs.
inline std::vector<ResolutionGraph> corpus(int count, int max_vertices,
                                           unsigned seed = 20240817) {
    std::mt19937 rng(seed);
    std::vector<ResolutionGraph> out;
    while (static_cast<int>(out.size()) < count) {
        if (auto g = random_graph(rng, max_vertices)) out.push_back(std::move(*g));
    }
    return out;
}

inline IntCycle random_effective(std::mt19937& rng, int n, long long hi) {
    std::uniform_int_distribution<long long> coeff(0, hi);
    IntCycle z(n);
    for (int v = 0; v < n; ++v) z[v] = coeff(rng);
    return z;
}

} // namespace testsupport
