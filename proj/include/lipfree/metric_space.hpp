#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace lipfree {

/// A pointed finite metric space: n labelled points, a base point and the
/// full distance matrix. The constructor only checks the shape; metric
/// axioms are checked by validate().
template <Scalar S>
class FiniteMetricSpace {
public:
    FiniteMetricSpace(std::vector<std::string> labels, int base, std::vector<std::vector<S>> distances,
                      S tolerance = ScalarTraits<S>::default_tolerance())
        : labels_(std::move(labels)), base_(base), tol_{std::move(tolerance)} {
        const auto n = labels_.size();
        if (n == 0) throw StructuralError("metric space needs at least one point");
        if (distances.size() != n) throw StructuralError("distance matrix has wrong number of rows");
        if (base_ < 0 || static_cast<std::size_t>(base_) >= n) throw StructuralError("base point out of range");
        d_.reserve(n * n);
        for (const auto& row : distances) {
            if (row.size() != n) throw StructuralError("distance matrix is not square");
            for (const auto& x : row) d_.push_back(x);
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto [it, inserted] = index_.emplace(labels_[i], static_cast<int>(i));
            if (!inserted) throw StructuralError("duplicate point label '" + labels_[i] + "'");
        }
    }

    int size() const { return static_cast<int>(labels_.size()); }
    int base() const { return base_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int p) const { return labels_.at(static_cast<std::size_t>(p)); }

    const S& d(int p, int q) const {
        return d_[static_cast<std::size_t>(p) * labels_.size() + static_cast<std::size_t>(q)];
    }

    const Tolerance<S>& tol() const { return tol_; }

    bool contains(int p) const { return p >= 0 && p < size(); }

    void require_point(int p) const {
        if (!contains(p)) throw StructuralError("point index " + std::to_string(p) + " out of range");
    }

    int index_of(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) throw StructuralError("unknown point label '" + std::string(label) + "'");
        return it->second;
    }

    S diameter() const {
        S best(0);
        for (const auto& x : d_)
            if (x > best) best = x;
        return best;
    }

    /// Sorted distinct off-diagonal distances.
    std::vector<S> distinct_distances() const {
        std::vector<S> out;
        for (int p = 0; p < size(); ++p)
            for (int q = p + 1; q < size(); ++q) out.push_back(d(p, q));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool in_ball(int center, const S& radius, int p) const { return d(center, p) <= radius; }

    bool same_as(const FiniteMetricSpace& other) const {
        return labels_ == other.labels_ && base_ == other.base_ && d_ == other.d_;
    }

private:
    std::vector<std::string> labels_;
    int base_;
    std::vector<S> d_;
    Tolerance<S> tol_;
    std::map<std::string, int, std::less<>> index_;
};

template <Scalar S>
using SpacePtr = std::shared_ptr<const FiniteMetricSpace<S>>;

template <Scalar S>
SpacePtr<S> make_space(std::vector<std::string> labels, int base, std::vector<std::vector<S>> distances,
                       S tolerance = ScalarTraits<S>::default_tolerance()) {
    return std::make_shared<const FiniteMetricSpace<S>>(std::move(labels), base, std::move(distances),
                                                        std::move(tolerance));
}

/// Space from a symmetric matrix with default labels p0, p1, ...
template <Scalar S>
SpacePtr<S> make_space(std::vector<std::vector<S>> distances, int base = 0) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < distances.size(); ++i) labels.push_back("p" + std::to_string(i));
    return make_space<S>(std::move(labels), base, std::move(distances));
}

template <Scalar S>
void require_same_space(const SpacePtr<S>& a, const SpacePtr<S>& b) {
    if (a.get() != b.get() && !a->same_as(*b)) throw StructuralError("operands live on different metric spaces");
}

// ---------------------------------------------------------------------------
// validation

enum class ViolationKind { diagonal, symmetry, positivity, triangle };

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::diagonal: return "diagonal";
        case ViolationKind::symmetry: return "symmetry";
        case ViolationKind::positivity: return "positivity";
        case ViolationKind::triangle: return "triangle";
    }
    return "?";
}

template <Scalar S>
struct Violation {
    ViolationKind kind;
    std::vector<int> indices;  // triangle: (i, k, j) with d(i,k) > d(i,j) + d(j,k)
    S slack;                   // amount by which the axiom fails (> 0)
};

template <Scalar S>
struct ValidationReport {
    bool ok = true;
    std::vector<Violation<S>> violations;
};

/// Exhaustive check of the metric axioms. Every violated instance is listed;
/// triangle violations are reported once per unordered endpoint pair and
/// intermediate point.
template <Scalar S>
ValidationReport<S> validate(const FiniteMetricSpace<S>& space) {
    ValidationReport<S> report;
    const auto& tol = space.tol();
    const int n = space.size();
    auto add = [&](ViolationKind kind, std::vector<int> idx, S slack) {
        report.violations.push_back({kind, std::move(idx), std::move(slack)});
    };
    for (int i = 0; i < n; ++i) {
        if (!tol.is_zero(space.d(i, i))) add(ViolationKind::diagonal, {i}, abs_value(space.d(i, i)));
        for (int j = i + 1; j < n; ++j) {
            if (!tol.eq(space.d(i, j), space.d(j, i)))
                add(ViolationKind::symmetry, {i, j}, abs_value(S(space.d(i, j) - space.d(j, i))));
            if (!tol.positive(space.d(i, j))) add(ViolationKind::positivity, {i, j}, S(-space.d(i, j)));
        }
    }
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                S via = space.d(i, j) + space.d(j, k);
                if (tol.gt(space.d(i, k), via)) add(ViolationKind::triangle, {i, k, j}, S(space.d(i, k) - via));
            }
    report.ok = report.violations.empty();
    return report;
}

// ---------------------------------------------------------------------------
// approximate metric segments

/// Points p with d(u,p) + d(v,p) < d(u,v) + delta.
template <Scalar S>
std::vector<int> seg(const FiniteMetricSpace<S>& space, int u, int v, const S& delta) {
    space.require_point(u);
    space.require_point(v);
    if (u == v) throw ArgumentError("seg requires distinct endpoints");
    if (!(delta > S(0))) throw ArgumentError("seg requires delta > 0");
    std::vector<int> out;
    const S bound = space.d(u, v) + delta;
    for (int p = 0; p < space.size(); ++p)
        if (space.d(u, p) + space.d(v, p) < bound) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------
// the four-point annulus inequality d(u,x)+d(v,y) >= (1-eps)(d(u,v)+d(x,y))

template <Scalar S>
struct InequalityCheck {
    bool holds = false;
    S slack{};  // left side minus right side
};

template <Scalar S>
void require_open_unit(const S& eps, const char* what) {
    if (!(eps > S(0) && eps < S(1))) throw ArgumentError(std::string(what) + " must lie in (0,1)");
}

template <Scalar S>
InequalityCheck<S> check_annulus_inequality(const FiniteMetricSpace<S>& space, const S& eps, int u, int v, int x,
                                            int y) {
    require_open_unit(eps, "eps");
    for (int p : {u, v, x, y}) space.require_point(p);
    S lhs = space.d(u, x) + space.d(v, y);
    S rhs = (S(1) - eps) * (space.d(u, v) + space.d(x, y));
    InequalityCheck<S> out;
    out.slack = lhs - rhs;
    out.holds = space.tol().ge(lhs, rhs);
    return out;
}

template <Scalar S>
struct AnnulusSweepReport {
    std::size_t quadruples = 0;
    std::size_t failures = 0;
    S min_slack{};
    std::vector<int> worst;  // (u, v, x, y) attaining min_slack
    std::size_t u_candidates = 0, v_candidates = 0, xy_candidates = 0;
    bool ok() const { return failures == 0; }
};

/// Exhaustive check of the inequality over the hypothesis set
/// u in B(0,8a), v in B(0,8a)\B(0,4a), x,y in (M\B(0,32a/eps)) u B(0,a*eps),
/// balls closed and centred at the base point.
template <Scalar S>
AnnulusSweepReport<S> sweep_annulus_lemma(const FiniteMetricSpace<S>& space, const S& a, const S& eps) {
    require_open_unit(eps, "eps");
    if (!(a > S(0))) throw ArgumentError("scale a must be positive");
    const int o = space.base();
    std::vector<int> us, vs, xs;
    const S far = S(32) * a / eps;
    const S near = a * eps;
    for (int p = 0; p < space.size(); ++p) {
        const S& r = space.d(o, p);
        if (r <= S(8) * a) us.push_back(p);
        if (r <= S(8) * a && r > S(4) * a) vs.push_back(p);
        if (r > far || r <= near) xs.push_back(p);
    }
    AnnulusSweepReport<S> rep;
    rep.u_candidates = us.size();
    rep.v_candidates = vs.size();
    rep.xy_candidates = xs.size();
    bool first = true;
    for (int u : us)
        for (int v : vs)
            for (int x : xs)
                for (int y : xs) {
                    auto c = check_annulus_inequality(space, eps, u, v, x, y);
                    ++rep.quadruples;
                    if (!c.holds) ++rep.failures;
                    if (first || c.slack < rep.min_slack) {
                        rep.min_slack = c.slack;
                        rep.worst = {u, v, x, y};
                        first = false;
                    }
                }
    return rep;
}

}  // namespace lipfree
