#include "singlat/lattice.hpp"

#include <algorithm>

#include "singlat/errors.hpp"

namespace singlat {

RatCycle to_rational(const IntCycle& c) {
    RatCycle r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = Rat(static_cast<long>(c[i]));
    return r;
}

bool is_integral(const RatCycle& c) {
    return std::all_of(c.begin(), c.end(),
                       [](const Rat& q) { return q.get_den() == 1; });
}

IntCycle to_integral(const RatCycle& c) {
    IntCycle out(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].get_den() != 1)
            raise(ErrorCode::Internal, "to_integral on a non-integral cycle");
        if (!c[i].get_num().fits_slong_p())
            raise(ErrorCode::Internal, "cycle coefficient out of machine range");
        out[i] = c[i].get_num().get_si();
    }
    return out;
}

namespace {

// Exact inverse by Gauss-Jordan; the graph is negative definite, so full
// pivoting is never needed (diagonal pivots stay nonzero).
std::vector<std::vector<Rat>> invert(std::vector<std::vector<Rat>> m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { p = i; break; }
            if (p < 0) raise(ErrorCode::InvalidGraph, "intersection form is singular");
            std::swap(m[k], m[p]);
            std::swap(inv[k], inv[p]);
        }
        Rat pivot = m[k][k];
        for (int j = 0; j < n; ++j) {
            m[k][j] /= pivot;
            inv[k][j] /= pivot;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            Rat f = m[i][k];
            for (int j = 0; j < n; ++j) {
                m[i][j] -= f * m[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

Rat determinant(std::vector<std::vector<Rat>> m) {
    const int n = static_cast<int>(m.size());
    Rat det = 1;
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            det = -det;
        }
        det *= m[k][k];
        for (int i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

} // namespace

Lattice::Lattice(ResolutionGraph graph) : graph_(std::move(graph)) {
    ValidationReport vr = validate(graph_);
    if (!vr.ok) {
        std::string what = "lattice over an invalid graph:";
        for (auto f : vr.failures) {
            what += ' ';
            what += validation_failure_name(f);
        }
        raise(ErrorCode::InvalidGraph, what);
    }
    adj_ = graph_.adjacency();
    const int n = graph_.vertex_count();

    pairing_.form.assign(n, std::vector<Rat>(n, 0));
    for (int v = 0; v < n; ++v) pairing_.form[v][v] = Rat(graph_.euler[v]);
    for (auto [a, b] : graph_.edges) {
        pairing_.form[a][b] += 1;
        pairing_.form[b][a] += 1;
    }
    pairing_.inverse = invert(pairing_.form);
    pairing_.det = determinant(pairing_.form);

    // I * I^{-1} == id, exactly.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat s = 0;
            for (int k = 0; k < n; ++k) s += pairing_.form[i][k] * pairing_.inverse[k][j];
            if (s != Rat(i == j ? 1 : 0))
                raise(ErrorCode::Internal, "inverse of the intersection form failed verification");
        }

    // E*_u: the u-th column of -I^{-1}; (E*_u, E_w) = -delta_uw by
    // construction, re-checked below together with strict positivity.
    dual_.assign(n, RatCycle(n));
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) dual_[u][w] = -pairing_.inverse[w][u];
    for (int u = 0; u < n; ++u) {
        for (int w = 0; w < n; ++w) {
            if (pair_with_vertex(dual_[u], w) != Rat(u == w ? -1 : 0))
                raise(ErrorCode::Internal, "dual basis pairing check failed");
            if (sgn(dual_[u][w]) <= 0)
                raise(ErrorCode::Internal, "dual basis coordinate is not strictly positive");
        }
    }

    // Z_K from the adjunction equations (Z_K, E_v) = E_v^2 + 2, verified by
    // back-substitution.
    zk_.assign(n, Rat(0));
    for (int v = 0; v < n; ++v) {
        Rat rhs = Rat(graph_.euler[v] + 2);
        for (int w = 0; w < n; ++w) zk_[w] += pairing_.inverse[w][v] * rhs;
    }
    for (int v = 0; v < n; ++v)
        if (pair_with_vertex(zk_, v) != Rat(graph_.euler[v] + 2))
            raise(ErrorCode::Internal, "canonical cycle failed the adjunction equations");
}

Rat Lattice::intersect(const RatCycle& a, const RatCycle& b) const {
    const int nn = n();
    if (static_cast<int>(a.size()) != nn || static_cast<int>(b.size()) != nn)
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    Rat total = 0;
    for (int v = 0; v < nn; ++v) {
        if (a[v] == 0) continue;
        total += a[v] * pair_with_vertex(b, v);
    }
    return total;
}

Rat Lattice::intersect(const IntCycle& a, const IntCycle& b) const {
    return intersect(to_rational(a), to_rational(b));
}

Rat Lattice::pair_with_vertex(const RatCycle& x, int v) const {
    if (static_cast<int>(x.size()) != n())
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    Rat s = x[v] * Rat(graph_.euler[v]);
    for (int u : adj_[v]) s += x[u];
    return s;
}

Int Lattice::pair_with_vertex(const IntCycle& x, int v) const {
    if (static_cast<int>(x.size()) != n())
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    Int s = Int(static_cast<long>(x[v])) * Int(static_cast<long>(graph_.euler[v]));
    for (int u : adj_[v]) s += static_cast<long>(x[u]);
    return s;
}

Rat Lattice::chi(const RatCycle& x) const {
    RatCycle shifted(x);
    for (int v = 0; v < n(); ++v) shifted[v] -= zk_[v];
    Rat val = -intersect(x, shifted) / 2;
    return val;
}

Int Lattice::chi(const IntCycle& x) const {
    Rat val = chi(to_rational(x));
    if (val.get_den() != 1)
        raise(ErrorCode::Internal, "chi of an integral cycle came out non-integral");
    return val.get_num();
}

ChernClass Lattice::to_estar(const RatCycle& x) const {
    ChernClass c;
    c.as_rational = x;
    c.pairings.reserve(n());
    bool nonneg = true;
    for (int v = 0; v < n(); ++v) {
        Rat p = pair_with_vertex(x, v);
        if (p.get_den() != 1)
            raise(ErrorCode::NotInLprime,
                  "pairing with E_" + graph_.ids[v] + " is not an integer: " + p.get_str());
        c.pairings.push_back(p.get_num());
        if (c.pairings.back() != 0) c.support.push_back(v);
        if (c.pairings.back() > 0) c.support_star.push_back(v);
        if (c.pairings.back() < 0) nonneg = false;
    }
    if (nonneg) c.estar_coeffs = c.pairings;
    return c;
}

RatCycle Lattice::chern_from_estar(const std::vector<Int>& a) const {
    if (static_cast<int>(a.size()) != n())
        raise(ErrorCode::GraphMismatch, "coefficient length does not match the graph");
    RatCycle x(n(), Rat(0));
    for (int u = 0; u < n(); ++u) {
        if (a[u] == 0) continue;
        if (a[u] < 0)
            raise(ErrorCode::PreconditionSupport, "E*-coefficients must be nonnegative");
        Rat coeff(a[u]);
        for (int w = 0; w < n(); ++w) x[w] -= coeff * dual_[u][w];
    }
    return x;
}

bool Lattice::in_lipman_cone(const RatCycle& x) const {
    for (int v = 0; v < n(); ++v)
        if (pair_with_vertex(x, v) > 0) return false;
    return true;
}

} // namespace singlat
