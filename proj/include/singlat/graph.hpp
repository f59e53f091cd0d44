#pragma once

#include <string>
#include <utility>
#include <vector>

namespace singlat {

// Resolution graph of a normal surface singularity with rational homology
// sphere link: a tree of rational curves decorated with self-intersection
// numbers. Vertex order is file order and is the canonical coordinate order
// for every cycle in this library. Immutable after construction.
struct ResolutionGraph {
    std::vector<std::string> ids;
    std::vector<long long> euler;              // self-intersection E_v^2
    std::vector<std::pair<int, int>> edges;    // index pairs, first < second

    int vertex_count() const { return static_cast<int>(ids.size()); }
    int index_of(const std::string& id) const; // -1 when absent
    std::vector<std::vector<int>> adjacency() const;
};

enum class ValidationFailure {
    NotTree,
    NotNegativeDefinite,
    DuplicateEdge,
    UnknownVertex,
};

const char* validation_failure_name(ValidationFailure f);

struct ValidationReport {
    bool ok = false;
    std::vector<ValidationFailure> failures;
};

// Parses the graph file format: {"vertices":[{"id":...,"euler":...},...],
// "edges":[[id,id],...]}. Performs no mathematical validation. Throws
// Error(ParseError) with position information on syntax errors, duplicate
// vertex ids, or edges naming unknown vertices.
ResolutionGraph parse_graph(const std::string& text);

// Canonical serialization; parse_graph(serialize_graph(g)) == g.
std::string serialize_graph(const ResolutionGraph& g);

// ok iff the edge set is a tree on all vertices and the intersection matrix
// is negative definite. Definiteness is decided exactly by sign alternation
// of leading principal minors in rational arithmetic.
ValidationReport validate(const ResolutionGraph& g);

bool operator==(const ResolutionGraph& a, const ResolutionGraph& b);

} // namespace singlat
