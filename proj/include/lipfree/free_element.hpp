#pragma once

#include <map>
#include <utility>
#include <vector>

#include "metric_space.hpp"

namespace lipfree {

/// A molecule m_uv = (δ_u - δ_v)/d(u,v), stored by its endpoints.
struct Molecule {
    int u = -1, v = -1;

    Molecule reversed() const { return {v, u}; }
    friend bool operator==(const Molecule&, const Molecule&) = default;
    friend auto operator<=>(const Molecule&, const Molecule&) = default;
};

/// Finitely supported element Σ w_p δ_p of the free space. The base point is
/// dropped from the support (δ_base = 0) and zero weights are removed, so
/// equal elements have equal weight maps.
template <Scalar S>
class FreeElement {
public:
    using Weights = std::map<int, S>;

    explicit FreeElement(SpacePtr<S> space) : space_(std::move(space)) {}

    FreeElement(SpacePtr<S> space, const Weights& weights) : space_(std::move(space)) {
        for (const auto& [p, w] : weights) add(p, w);
    }

    static FreeElement delta(SpacePtr<S> space, int p) {
        FreeElement out(std::move(space));
        out.add(p, S(1));
        return out;
    }

    static FreeElement molecule(SpacePtr<S> space, Molecule m) {
        space->require_point(m.u);
        space->require_point(m.v);
        if (m.u == m.v) throw ArgumentError("molecule requires distinct points");
        const S inv = S(1) / space->d(m.u, m.v);
        FreeElement out(std::move(space));
        out.add(m.u, inv);
        out.add(m.v, S(-inv));
        return out;
    }

    static FreeElement molecule(SpacePtr<S> space, int u, int v) { return molecule(std::move(space), {u, v}); }

    const SpacePtr<S>& space() const { return space_; }
    const Weights& weights() const { return w_; }
    bool is_zero() const { return w_.empty(); }

    S weight(int p) const {
        auto it = w_.find(p);
        return it == w_.end() ? S(0) : it->second;
    }

    /// Adds w·δ_p in place.
    FreeElement& add(int p, const S& w) {
        space_->require_point(p);
        if (p == space_->base() || w == S(0)) return *this;
        auto [it, inserted] = w_.emplace(p, w);
        if (!inserted) {
            it->second += w;
            if (it->second == S(0)) w_.erase(it);
        }
        return *this;
    }

    FreeElement& operator+=(const FreeElement& o) {
        require_same_space(space_, o.space_);
        for (const auto& [p, w] : o.w_) add(p, w);
        return *this;
    }

    FreeElement& operator-=(const FreeElement& o) {
        require_same_space(space_, o.space_);
        for (const auto& [p, w] : o.w_) add(p, S(-w));
        return *this;
    }

    FreeElement& operator*=(const S& c) {
        if (c == S(0)) {
            w_.clear();
            return *this;
        }
        for (auto& [p, w] : w_) w *= c;
        return *this;
    }

    friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
    friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
    friend FreeElement operator*(const S& c, FreeElement a) { return a *= c; }
    FreeElement operator-() const { return S(-1) * *this; }

    friend bool operator==(const FreeElement& a, const FreeElement& b) {
        return (a.space_ == b.space_ || a.space_->same_as(*b.space_)) && a.w_ == b.w_;
    }

    /// Sum of positive weights; the pairing with any 1-Lipschitz function is
    /// bounded by this times the diameter.
    S positive_mass() const {
        S out(0);
        for (const auto& [p, w] : w_)
            if (w > S(0)) out += w;
        return out;
    }

private:
    SpacePtr<S> space_;
    Weights w_;
};

/// All ordered molecules (u,v), u != v, in lexicographic order.
template <Scalar S>
std::vector<Molecule> all_molecules(const FiniteMetricSpace<S>& space) {
    std::vector<Molecule> out;
    for (int u = 0; u < space.size(); ++u)
        for (int v = 0; v < space.size(); ++v)
            if (u != v) out.push_back({u, v});
    return out;
}

}  // namespace lipfree
