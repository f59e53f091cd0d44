#include "singlat/enumerate.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

#include "singlat/config.hpp"
#include "singlat/errors.hpp"

namespace singlat {

namespace {

std::uint64_t g_limit_override = 0;

std::uint64_t env_limit() {
    if (const char* s = std::getenv("SINGLAT_ENUM_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10'000'000ULL;
}

} // namespace

std::uint64_t enum_limit() { return g_limit_override ? g_limit_override : env_limit(); }
void set_enum_limit(std::uint64_t limit) { g_limit_override = limit; }
void reset_enum_limit() { g_limit_override = 0; }

ScaledChi::ScaledChi(const Lattice& lat, const RatCycle& offset) : n_(lat.n()) {
    if (static_cast<int>(offset.size()) != n_)
        raise(ErrorCode::GraphMismatch, "offset length does not match the graph");
    const RatCycle& zk = lat.canonical_cycle();

    Int scale = 1;
    for (int v = 0; v < n_; ++v) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), offset[v].get_den_mpz_t());
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), zk[v].get_den_mpz_t());
    }
    Int s2 = scale * scale;
    denom_ = 2 * s2;

    // F(l) = -s^2 (offset+l, offset+l-Z_K)
    //      = l^T(-s^2 I)l + (-s (I w))^T l - s^2 (offset, offset-Z_K),
    // with w = s(2 offset - Z_K) integral by the choice of s.
    quad_.assign(n_, std::vector<Int>(n_, 0));
    const auto& form = lat.pairing().form;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            Rat entry = form[i][j];
            if (entry.get_den() != 1)
                raise(ErrorCode::Internal, "intersection form has a non-integer entry");
            quad_[i][j] = -s2 * entry.get_num();
        }

    std::vector<Int> w(n_);
    for (int v = 0; v < n_; ++v) {
        Rat wv = (2 * offset[v] - zk[v]) * Rat(scale);
        wv.canonicalize();
        if (wv.get_den() != 1)
            raise(ErrorCode::Internal, "scale failed to clear denominators");
        w[v] = wv.get_num();
    }
    lin_.assign(n_, Int(0));
    for (int i = 0; i < n_; ++i) {
        Int row = 0;
        for (int j = 0; j < n_; ++j) {
            Rat entry = form[i][j];
            if (entry == 0) continue;
            row += entry.get_num() * w[j];
        }
        lin_[i] = -scale * row;
    }

    Rat c0 = lat.chi(offset) * Rat(denom_);
    c0.canonicalize();
    if (c0.get_den() != 1)
        raise(ErrorCode::Internal, "scale failed to clear the constant term");
    const_ = c0.get_num();
}

Rat ScaledChi::chi_value(const Int& f) const {
    Rat out(f, denom_);
    out.canonicalize();
    return out;
}

Int ScaledChi::eval(const std::vector<long long>& l) const {
    Int total = const_;
    for (int i = 0; i < n_; ++i) {
        if (l[i] == 0) continue;
        Int row = lin_[i];
        for (int j = 0; j < n_; ++j) {
            if (l[j] == 0) continue;
            row += quad_[i][j] * static_cast<long>(l[j]);
        }
        total += row * static_cast<long>(l[i]);
    }
    return total;
}

namespace {

struct BoxShape {
    IntCycle lo, hi;
    std::vector<std::uint64_t> sizes, strides;
    std::uint64_t total = 0;
};

BoxShape box_shape(const IntCycle& lo, const IntCycle& hi, std::uint64_t limit,
                   const char* what) {
    if (lo.size() != hi.size())
        raise(ErrorCode::GraphMismatch, "box corners of different lengths");
    BoxShape shape;
    shape.lo = lo;
    shape.hi = hi;
    const int n = static_cast<int>(lo.size());
    shape.sizes.resize(n);
    shape.strides.resize(n);
    shape.total = 1;
    for (int i = 0; i < n; ++i) {
        if (hi[i] < lo[i])
            raise(ErrorCode::PreconditionSupport, "box lower corner exceeds upper corner");
        shape.sizes[i] = static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
        shape.strides[i] = shape.total;
        if (shape.total > limit / shape.sizes[i])
            raise(ErrorCode::RegionTooLarge,
                  std::string(what) + ": box exceeds the enumeration limit of " +
                      std::to_string(limit) + " points");
        shape.total *= shape.sizes[i];
    }
    if (shape.total > limit)
        raise(ErrorCode::RegionTooLarge,
              std::string(what) + ": box of " + std::to_string(shape.total) +
                  " points exceeds the limit of " + std::to_string(limit));
    return shape;
}

void decode(const BoxShape& shape, std::uint64_t idx, IntCycle& x) {
    const int n = static_cast<int>(shape.sizes.size());
    for (int i = 0; i < n; ++i) {
        x[i] = shape.lo[i] + static_cast<long long>(idx % shape.sizes[i]);
        idx /= shape.sizes[i];
    }
}

// Walks flat indices [start, end) of the box in odometer order, calling
// sink(global_index, coords, F) with F the scaled objective. Incremental
// along dimension 0, full re-evaluation on carry.
template <typename Sink>
void walk_chunk(const ScaledChi& objective, const BoxShape& shape,
                std::uint64_t start, std::uint64_t end, Sink&& sink) {
    const int n = objective.n();
    IntCycle x(n);
    decode(shape, start, x);

    const Int a00 = objective.quad()[0][0];
    Int f, d0, tmp;
    auto recompute_row = [&]() {
        f = objective.eval(x);
        d0 = objective.lin()[0];
        for (int j = 1; j < n; ++j) {
            if (x[j] == 0) continue;
            tmp = objective.quad()[0][j] * static_cast<long>(2 * x[j]);
            d0 += tmp;
        }
    };
    recompute_row();

    for (std::uint64_t i = start;;) {
        sink(i, x, f);
        if (++i == end) break;
        if (n > 0 && x[0] < shape.hi[0]) {
            // F(x0+1) - F(x0) = A00 (2 x0 + 1) + d0
            tmp = a00 * static_cast<long>(2 * x[0] + 1);
            f += tmp;
            f += d0;
            ++x[0];
        } else {
            int k = 0;
            while (k < n && x[k] == shape.hi[k]) {
                x[k] = shape.lo[k];
                ++k;
            }
            ++x[k];
            recompute_row();
        }
    }
}

struct LocalMin {
    bool has = false;
    Int best;
    std::vector<IntCycle> argmins;

    void consider(const IntCycle& x, const Int& f) {
        if (!has) {
            has = true;
            best = f;
            argmins.assign(1, x);
            return;
        }
        int c = cmp(f, best);
        if (c < 0) {
            best = f;
            argmins.assign(1, x);
        } else if (c == 0) {
            argmins.push_back(x);
        }
    }
};

bool is_zero(const IntCycle& x) {
    return std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
}

} // namespace

BoxMin min_chi_over_box_reference(const Lattice& lat, const RatCycle& offset,
                                  const IntCycle& lo, const IntCycle& hi,
                                  bool skip_zero, std::uint64_t limit) {
    BoxShape shape = box_shape(lo, hi, limit, "box minimization");
    const int n = lat.n();
    BoxMin out;
    bool has = false;
    IntCycle x(lo);
    RatCycle point(n);
    for (std::uint64_t i = 0; i < shape.total; ++i) {
        if (!(skip_zero && is_zero(x))) {
            for (int v = 0; v < n; ++v) point[v] = offset[v] + Rat(static_cast<long>(x[v]));
            Rat value = lat.chi(point);
            if (!has || value < out.min_chi) {
                has = true;
                out.min_chi = value;
                out.argmins.assign(1, x);
            } else if (value == out.min_chi) {
                out.argmins.push_back(x);
            }
        }
        for (int k = 0; k < n; ++k) {
            if (x[k] < hi[k]) {
                ++x[k];
                break;
            }
            x[k] = lo[k];
        }
    }
    out.points = shape.total;
    if (!has)
        raise(ErrorCode::PreconditionSupport, "box contains no admissible point");
    std::sort(out.argmins.begin(), out.argmins.end());
    return out;
}

BoxMin min_chi_over_box(const Lattice& lat, const RatCycle& offset,
                        const IntCycle& lo, const IntCycle& hi, bool skip_zero,
                        std::uint64_t limit) {
    BoxShape shape = box_shape(lo, hi, limit, "box minimization");
    ScaledChi objective(lat, offset);

    const int max_threads = omp_get_max_threads();
    const std::uint64_t want = static_cast<std::uint64_t>(max_threads) * 8;
    const std::uint64_t nchunks = std::max<std::uint64_t>(1, std::min(shape.total, want));
    const std::uint64_t chunk = (shape.total + nchunks - 1) / nchunks;

    std::vector<LocalMin> locals(nchunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
        std::uint64_t start = static_cast<std::uint64_t>(ci) * chunk;
        std::uint64_t end = std::min(shape.total, start + chunk);
        if (start >= end) continue;
        LocalMin& local = locals[ci];
        walk_chunk(objective, shape, start, end,
                   [&](std::uint64_t, const IntCycle& x, const Int& f) {
                       if (skip_zero && is_zero(x)) return;
                       local.consider(x, f);
                   });
    }

    LocalMin merged;
    for (auto& local : locals) {
        if (!local.has) continue;
        if (!merged.has || cmp(local.best, merged.best) < 0) {
            merged.has = true;
            merged.best = local.best;
            merged.argmins = std::move(local.argmins);
        } else if (cmp(local.best, merged.best) == 0) {
            merged.argmins.insert(merged.argmins.end(), local.argmins.begin(),
                                  local.argmins.end());
        }
    }
    if (!merged.has)
        raise(ErrorCode::PreconditionSupport, "box contains no admissible point");
    std::sort(merged.argmins.begin(), merged.argmins.end());

    BoxMin out;
    out.min_chi = objective.chi_value(merged.best);
    out.argmins = std::move(merged.argmins);
    out.points = shape.total;
    return out;
}

ChiBoxTable::ChiBoxTable(const Lattice& lat, const RatCycle& offset,
                         const IntCycle& upper, std::uint64_t limit)
    : objective_(lat, offset), upper_(upper) {
    const int n = lat.n();
    for (long long u : upper)
        if (u < 0) raise(ErrorCode::PreconditionSupport, "table corner must be effective");
    IntCycle lo(n, 0);
    BoxShape shape = box_shape(lo, upper, limit, "chi table");
    strides_ = shape.strides;
    total_ = shape.total;

    fval_.assign(total_, Int(0));
    const std::uint64_t want = static_cast<std::uint64_t>(omp_get_max_threads()) * 8;
    const std::uint64_t nchunks = std::max<std::uint64_t>(1, std::min(total_, want));
    const std::uint64_t chunk = (total_ + nchunks - 1) / nchunks;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
        std::uint64_t start = static_cast<std::uint64_t>(ci) * chunk;
        std::uint64_t end = std::min(total_, start + chunk);
        if (start >= end) continue;
        walk_chunk(objective_, shape, start, end,
                   [&](std::uint64_t i, const IntCycle&, const Int& f) { fval_[i] = f; });
    }

    // m(y) = min over 0 < l <= y; recurrence over predecessors y - E_v.
    mval_.assign(total_, Int(0));
    IntCycle y(n, 0);
    for (std::uint64_t i = 1; i < total_; ++i) {
        for (int k = 0; k < n; ++k) {
            if (y[k] < upper_[k]) {
                ++y[k];
                break;
            }
            y[k] = 0;
        }
        Int m = fval_[i];
        for (int v = 0; v < n; ++v) {
            if (y[v] == 0) continue;
            std::uint64_t j = i - strides_[v];
            if (j == 0) continue;
            if (cmp(mval_[j], m) < 0) m = mval_[j];
        }
        mval_[i] = m;
    }
}

std::uint64_t ChiBoxTable::flat_index(const IntCycle& y) const {
    std::uint64_t idx = 0;
    for (size_t v = 0; v < y.size(); ++v) {
        if (y[v] < 0 || y[v] > upper_[v])
            raise(ErrorCode::Internal, "table lookup outside the box");
        idx += strides_[v] * static_cast<std::uint64_t>(y[v]);
    }
    return idx;
}

Rat ChiBoxTable::chi_at(const IntCycle& y) const {
    return objective_.chi_value(fval_[flat_index(y)]);
}

Rat ChiBoxTable::min_chi_upto(const IntCycle& y) const {
    std::uint64_t idx = flat_index(y);
    if (idx == 0)
        raise(ErrorCode::Internal, "min over an empty range of cycles");
    return objective_.chi_value(mval_[idx]);
}

namespace {

long long floor_rat(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!f.fits_slong_p())
        raise(ErrorCode::RegionTooLarge, "search center out of machine range");
    return f.get_si();
}

long long round_rat(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

// Exact LDL^T of the positive definite Q = -I together with the search state.
struct EllipsoidSearch {
    const Lattice& lat;
    Region region;
    std::uint64_t limit;
    int n;
    std::vector<std::vector<Rat>> L;
    std::vector<Rat> d;
    RatCycle center; // continuous minimizer c = Z_K/2 - offset
    Rat k0;          // chi at the continuous minimizer
    Rat budget;      // 2 (f_best - k0); shrinks as better points appear
    Rat f_best;
    std::vector<IntCycle> argmins;
    std::uint64_t nodes = 0;
    IntCycle x;

    EllipsoidSearch(const Lattice& lattice, const RatCycle& offset, Region reg,
                    std::uint64_t lim)
        : lat(lattice), region(reg), limit(lim), n(lattice.n()) {
        const auto& form = lat.pairing().form;
        std::vector<std::vector<Rat>> q(n, std::vector<Rat>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q[i][j] = -form[i][j];

        L.assign(n, std::vector<Rat>(n, 0));
        d.assign(n, Rat(0));
        for (int j = 0; j < n; ++j) {
            Rat dj = q[j][j];
            for (int k = 0; k < j; ++k) dj -= L[j][k] * L[j][k] * d[k];
            if (sgn(dj) <= 0)
                raise(ErrorCode::Internal, "-I failed to be positive definite");
            d[j] = dj;
            L[j][j] = 1;
            for (int i = j + 1; i < n; ++i) {
                Rat v = q[i][j];
                for (int k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * d[k];
                L[i][j] = v / dj;
            }
        }

        center.resize(n);
        const RatCycle& zk = lat.canonical_cycle();
        for (int v = 0; v < n; ++v) center[v] = zk[v] / 2 - offset[v];
        RatCycle half_zk(n);
        for (int v = 0; v < n; ++v) half_zk[v] = zk[v] / 2;
        k0 = lat.chi(half_zk);
        x.assign(n, 0);
    }

    Rat chi_of(const RatCycle& offset, const IntCycle& p) const {
        RatCycle shifted(offset);
        for (int v = 0; v < n; ++v) shifted[v] += Rat(static_cast<long>(p[v]));
        return lat.chi(shifted);
    }

    void seed(const RatCycle& offset, const IntCycle& p) {
        if (region != Region::All) {
            for (long long v : p)
                if (v < 0) return;
        }
        if (region == Region::GT0 && is_zero(p)) return;
        Rat f = chi_of(offset, p);
        if (argmins.empty() || f < f_best) {
            f_best = f;
            budget = 2 * (f_best - k0);
            argmins.assign(1, p);
        }
        // equal seeds are re-found by the walk; only the bound matters here
    }

    void leaf(const Rat& partial) {
        if (region == Region::GT0 && is_zero(x)) return;
        Rat f = k0 + partial / 2;
        if (f < f_best) {
            f_best = f;
            budget = partial;
            argmins.assign(1, x);
        } else if (f == f_best) {
            for (const auto& known : argmins)
                if (known == x) return;
            argmins.push_back(x);
        }
    }

    void descend(int k, const Rat& partial) {
        if (k < 0) {
            leaf(partial);
            return;
        }
        Rat ck = center[k];
        for (int j = k + 1; j < n; ++j)
            ck -= L[j][k] * (Rat(static_cast<long>(x[j])) - center[j]);

        const bool clamp = region != Region::All;
        long long down = floor_rat(ck);
        long long up = down + 1;
        if (clamp && up < 0) up = 0;
        for (long long v = down; !clamp || v >= 0; --v) {
            Rat t = Rat(static_cast<long>(v)) - ck;
            Rat s = partial + d[k] * t * t;
            if (s > budget) break;
            if (++nodes > limit)
                raise(ErrorCode::RegionTooLarge, "certified search exceeded the enumeration limit");
            x[k] = v;
            descend(k - 1, s);
        }
        for (long long v = up;; ++v) {
            Rat t = Rat(static_cast<long>(v)) - ck;
            Rat s = partial + d[k] * t * t;
            if (s > budget) break;
            if (++nodes > limit)
                raise(ErrorCode::RegionTooLarge, "certified search exceeded the enumeration limit");
            x[k] = v;
            descend(k - 1, s);
        }
        x[k] = 0;
    }
};

} // namespace

GlobalMin min_chi_global_enum(const Lattice& lat, const RatCycle& offset,
                              Region region, std::uint64_t limit) {
    EllipsoidSearch search(lat, offset, region, limit);
    const int n = lat.n();

    IntCycle zero(n, 0);
    IntCycle rounded(n);
    for (int v = 0; v < n; ++v) {
        long long r = round_rat(search.center[v]);
        rounded[v] = (region != Region::All && r < 0) ? 0 : r;
    }
    switch (region) {
        case Region::GE0:
            search.seed(offset, zero);
            search.seed(offset, rounded);
            break;
        case Region::GT0:
            for (int v = 0; v < n; ++v) {
                IntCycle unit(n, 0);
                unit[v] = 1;
                search.seed(offset, unit);
            }
            search.seed(offset, rounded);
            break;
        case Region::All:
            search.seed(offset, rounded);
            search.seed(offset, zero);
            break;
    }
    if (search.argmins.empty())
        raise(ErrorCode::Internal, "global search failed to seed a feasible point");

    search.argmins.clear(); // the walk re-finds every minimizer inside the budget
    search.descend(n - 1, Rat(0));
    if (search.argmins.empty())
        raise(ErrorCode::Internal, "certified search lost its seed minimizer");
    std::sort(search.argmins.begin(), search.argmins.end());

    GlobalMin out;
    out.min_chi = search.f_best;
    out.argmins = std::move(search.argmins);
    out.points = search.nodes;
    return out;
}

} // namespace singlat
