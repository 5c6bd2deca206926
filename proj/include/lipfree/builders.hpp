#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "metric_space.hpp"

namespace lipfree {

/// Seeded generator used everywhere randomness appears. Only the raw 64-bit
/// output of mt19937_64 is used (fully specified by the standard), so
/// sampled certificates are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    bool coin() { return (engine_() >> 11) & 1u; }

private:
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// ℕ with d(n,k) = 3 - |1/n - 1/k|, truncated to {1..N}, base point 1.

template <Scalar S>
SpacePtr<S> build_example1_space(int N) {
    if (N < 2) throw ArgumentError("example 1 space needs N >= 2");
    std::vector<std::string> labels;
    std::vector<std::vector<S>> d(N, std::vector<S>(N, S(0)));
    for (int n = 1; n <= N; ++n) labels.push_back(std::to_string(n));
    for (int n = 1; n <= N; ++n)
        for (int k = 1; k <= N; ++k)
            if (n != k) d[n - 1][k - 1] = S(3) - abs_value(S(frac<S>(1, n) - frac<S>(1, k)));
    return make_space<S>(std::move(labels), 0, std::move(d));
}

// ---------------------------------------------------------------------------
// The four-family space X ∪ Y ∪ U ∪ V truncated at index N.

struct Example2Layout {
    int N = 0;
    // 1-based family index -> point index; entry 0 unused.
    std::vector<int> x, y, u, v;

    /// Points with family index <= n.
    std::vector<int> core(int n) const {
        std::vector<int> out;
        for (int i = 1; i <= n; ++i) {
            out.push_back(x[i]);
            out.push_back(y[i]);
            out.push_back(u[i]);
            out.push_back(v[i]);
        }
        return out;
    }
};

template <Scalar S>
struct Example2Space {
    SpacePtr<S> space;
    Example2Layout layout;
};

template <Scalar S>
Example2Space<S> build_example2_space(int N) {
    if (N < 1) throw ArgumentError("example 2 space needs N >= 1");
    enum Family { X = 0, Y = 1, U = 2, V = 3 };
    struct Pt {
        Family fam;
        int idx;
    };
    std::vector<Pt> pts;
    std::vector<std::string> labels;
    Example2Layout layout;
    layout.N = N;
    layout.x.assign(N + 1, -1);
    layout.y.assign(N + 1, -1);
    layout.u.assign(N + 1, -1);
    layout.v.assign(N + 1, -1);
    const char* names = "xyuv";
    for (int f = 0; f < 4; ++f)
        for (int i = 1; i <= N; ++i) {
            int id = static_cast<int>(pts.size());
            pts.push_back({static_cast<Family>(f), i});
            labels.push_back(std::string(1, names[f]) + std::to_string(i));
            (f == X ? layout.x : f == Y ? layout.y : f == U ? layout.u : layout.v)[i] = id;
        }
    // d = 1 iff one endpoint is u_i and the other is x_j or u_j with i > j,
    // or one endpoint is v_i and the other is y_j or v_j with i > j.
    auto unit = [](const Pt& p, const Pt& q) {
        if (p.fam == U && (q.fam == X || q.fam == U) && p.idx > q.idx) return true;
        if (p.fam == V && (q.fam == Y || q.fam == V) && p.idx > q.idx) return true;
        return false;
    };
    const auto n = pts.size();
    std::vector<std::vector<S>> d(n, std::vector<S>(n, S(0)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b) d[a][b] = (unit(pts[a], pts[b]) || unit(pts[b], pts[a])) ? S(1) : S(2);
    return {make_space<S>(std::move(labels), layout.x[1], std::move(d)), std::move(layout)};
}

// ---------------------------------------------------------------------------
// N points, two anchors x,y; d = 1 when exactly one endpoint is an anchor,
// 2 otherwise. Non-anchors are p0..p{N-3}, base p0.

template <Scalar S>
struct TwoAnchorSpace {
    SpacePtr<S> space;
    int anchor_x = -1, anchor_y = -1;
    std::vector<int> non_anchors;
};

template <Scalar S>
TwoAnchorSpace<S> build_two_anchor_space(int N) {
    if (N < 3) throw ArgumentError("two-anchor space needs N >= 3");
    TwoAnchorSpace<S> out;
    std::vector<std::string> labels;
    for (int i = 0; i < N - 2; ++i) {
        labels.push_back("p" + std::to_string(i));
        out.non_anchors.push_back(i);
    }
    labels.push_back("x");
    labels.push_back("y");
    out.anchor_x = N - 2;
    out.anchor_y = N - 1;
    auto is_anchor = [&](int p) { return p >= N - 2; };
    std::vector<std::vector<S>> d(N, std::vector<S>(N, S(0)));
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q)
            if (p != q) d[p][q] = (is_anchor(p) != is_anchor(q)) ? S(1) : S(2);
    out.space = make_space<S>(std::move(labels), 0, std::move(d));
    return out;
}

// ---------------------------------------------------------------------------
// subsets of the real line and the regular simplex

/// Points at the given positions with d = |s - t|. Base is the first position.
template <Scalar S>
SpacePtr<S> build_line_space(const std::vector<S>& positions, std::vector<std::string> labels = {}) {
    const auto n = positions.size();
    if (labels.empty())
        for (std::size_t i = 0; i < n; ++i) labels.push_back("t" + std::to_string(i));
    std::vector<std::vector<S>> d(n, std::vector<S>(n, S(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = abs_value(S(positions[i] - positions[j]));
    return make_space<S>(std::move(labels), 0, std::move(d));
}

/// {0, 1, ..., N} on the real line.
template <Scalar S>
SpacePtr<S> build_half_line(int N) {
    std::vector<S> pos;
    std::vector<std::string> labels;
    for (int i = 0; i <= N; ++i) {
        pos.push_back(S(i));
        labels.push_back(std::to_string(i));
    }
    return build_line_space<S>(pos, std::move(labels));
}

template <Scalar S>
SpacePtr<S> build_regular_simplex(int n, const S& a) {
    if (n < 1) throw ArgumentError("simplex needs at least one point");
    std::vector<std::vector<S>> d(n, std::vector<S>(n, a));
    for (int i = 0; i < n; ++i) d[i][i] = S(0);
    return make_space<S>(std::move(d));
}

// ---------------------------------------------------------------------------
// Separated pairs on a half-line, each inside its own annulus around the base.

template <Scalar S>
struct AnnuliInstance {
    SpacePtr<S> space;
    std::vector<std::pair<int, int>> pairs;  // (u_i, v_i), u_1 = base
    std::vector<std::vector<int>> sets;      // A_i, pairwise disjoint, u_i in A_i
};

/// Cluster i sits at [P_i, P_i + 1] with u_i = P_i, v_i = P_i + 1 and (for
/// i >= 2) a midpoint w_i. Gaps before cluster i are 2^(i+3) and one tail
/// point follows the last cluster, so every pair satisfies the four-point
/// inequality with eps_i = 2^-(i+1) outside its annulus A_i. With
/// `v_inside` false the annuli exclude v_i (the other extension case).
template <Scalar S>
AnnuliInstance<S> build_nested_annuli_space(int k, bool v_inside = true) {
    if (k < 1) throw ArgumentError("nested annuli space needs k >= 1");
    std::vector<S> pos;
    std::vector<std::string> labels;
    AnnuliInstance<S> out;
    std::vector<S> lo(k), hi(k);  // annulus radii around the base (position 0)
    auto gap = [](int i) { return S(Integer(1) << (i + 3)); };
    S cursor(0);
    for (int i = 1; i <= k; ++i) {
        if (i > 1) cursor += gap(i);
        int u = static_cast<int>(pos.size());
        pos.push_back(cursor);
        labels.push_back("u" + std::to_string(i));
        if (i > 1) {
            pos.push_back(cursor + frac<S>(1, 2));
            labels.push_back("w" + std::to_string(i));
        }
        int v = static_cast<int>(pos.size());
        pos.push_back(cursor + S(1));
        labels.push_back("v" + std::to_string(i));
        out.pairs.emplace_back(u, v);
        lo[i - 1] = i == 1 ? S(0) : S(cursor - gap(i) / S(2));
        hi[i - 1] = cursor + S(1) + gap(i + 1) / S(2);
        cursor += S(1);
    }
    pos.push_back(cursor + gap(k + 1));
    labels.push_back("tail");
    out.space = build_line_space<S>(pos, std::move(labels));
    for (int i = 0; i < k; ++i) {
        std::vector<int> A;
        for (int p = 0; p < static_cast<int>(pos.size()); ++p) {
            if (pos[p] < lo[i] || pos[p] > hi[i]) continue;
            if (!v_inside && p == out.pairs[i].second) continue;
            A.push_back(p);
        }
        out.sets.push_back(std::move(A));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bounded uniformly discrete space carrying k separated pairs.

template <Scalar S>
struct PairedSpace {
    SpacePtr<S> space;
    std::vector<std::pair<int, int>> pairs;
    S a;
};

/// Points u_1 (base), v_1, ..., u_k, v_k and `fillers` extra points. All
/// distances equal a except d(u_i, v_i) = a(i-1)/i for i >= 2, the lower
/// end of the admissible window for pair i.
template <Scalar S>
PairedSpace<S> build_delta_hat_space(int k, const S& a, int fillers = 0) {
    if (k < 2) throw ArgumentError("paired space needs k >= 2");
    if (!(a > S(0))) throw ArgumentError("scale must be positive");
    const int n = 2 * k + fillers;
    std::vector<std::string> labels;
    PairedSpace<S> out;
    out.a = a;
    for (int i = 1; i <= k; ++i) {
        out.pairs.emplace_back(2 * (i - 1), 2 * (i - 1) + 1);
        labels.push_back("u" + std::to_string(i));
        labels.push_back("v" + std::to_string(i));
    }
    for (int j = 1; j <= fillers; ++j) labels.push_back("z" + std::to_string(j));
    std::vector<std::vector<S>> d(n, std::vector<S>(n, a));
    for (int p = 0; p < n; ++p) d[p][p] = S(0);
    for (int i = 2; i <= k; ++i) {
        auto [u, v] = out.pairs[i - 1];
        d[u][v] = d[v][u] = a * frac<S>(i - 1, i);
    }
    out.space = make_space<S>(std::move(labels), 0, std::move(d));
    return out;
}

// ---------------------------------------------------------------------------
// random metrics

/// Shortest-path closure of random edge weights p/q with 1 <= p <= max_num,
/// 1 <= q <= max_den. Always a valid metric with positive distances.
template <Scalar S>
SpacePtr<S> random_space(int n, Rng& rng, int max_num = 12, int max_den = 4) {
    if (n < 1) throw ArgumentError("random space needs n >= 1");
    std::vector<std::vector<S>> d(n, std::vector<S>(n, S(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = frac<S>(rng.uniform(1, max_num), rng.uniform(1, max_den));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return make_space<S>(std::move(d));
}

}  // namespace lipfree
