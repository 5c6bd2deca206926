#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace lipfree {

using NamedValues = std::vector<std::pair<std::string, std::string>>;

struct CheckRecord {
    std::string description;
    std::string relation;  // "<", "<=", ">", ">=", "=", or "holds" for boolean checks
    NamedValues values;
    std::string slack;     // margin by which the relation holds (negative on failure); empty for boolean checks
    bool pass = false;
};

/// Machine-checkable record of a verified inequality family.
struct CertificateReport {
    std::string claim;
    std::string mode;  // "exact" or "float"
    std::string tolerance;
    NamedValues parameters;
    std::vector<CheckRecord> checks;
    NamedValues witnesses;
    bool overall = true;
    std::string slack;  // smallest slack over all relational checks

    const CheckRecord* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

/// Accumulates checks; every comparison is made on the raw computed values.
/// Float mode widens non-strict relations and equality by the tolerance;
/// strict relations are always compared without tolerance.
template <Scalar S>
class ReportBuilder {
public:
    ReportBuilder(std::string claim, S tol = ScalarTraits<S>::default_tolerance()) : tol_(std::move(tol)) {
        rep_.claim = std::move(claim);
        rep_.mode = ScalarTraits<S>::mode_name;
        rep_.tolerance = format_scalar(tol_);
    }

    void param(std::string name, std::string value) { rep_.parameters.emplace_back(std::move(name), std::move(value)); }
    void param(std::string name, const S& value) { param(std::move(name), format_scalar(value)); }
    void param(std::string name, long long value) { param(std::move(name), std::to_string(value)); }

    void witness(std::string name, std::string value) {
        rep_.witnesses.emplace_back(std::move(name), std::move(value));
    }

    /// lhs rel rhs; returns whether it passed.
    bool compare(std::string description, const S& lhs, const std::string& rel, const S& rhs,
                 NamedValues extra = {}) {
        bool pass = false;
        S slack;
        if (rel == "<") {
            pass = lhs < rhs;
            slack = rhs - lhs;
        } else if (rel == "<=") {
            pass = lhs <= rhs + tol_;
            slack = rhs - lhs;
        } else if (rel == ">") {
            pass = lhs > rhs;
            slack = lhs - rhs;
        } else if (rel == ">=") {
            pass = lhs + tol_ >= rhs;
            slack = lhs - rhs;
        } else if (rel == "=") {
            slack = abs_value(S(lhs - rhs));
            pass = slack <= tol_;
            slack = -slack;
        } else {
            throw ArgumentError("unknown relation '" + rel + "'");
        }
        CheckRecord c;
        c.description = std::move(description);
        c.relation = rel;
        c.values.emplace_back("lhs", format_scalar(lhs));
        c.values.emplace_back("rhs", format_scalar(rhs));
        for (auto& v : extra) c.values.push_back(std::move(v));
        c.slack = format_scalar(slack);
        c.pass = pass;
        if (!min_slack_ || slack < *min_slack_) min_slack_ = slack;
        push(std::move(c));
        return pass;
    }

    bool flag(std::string description, bool pass, NamedValues values = {}) {
        CheckRecord c;
        c.description = std::move(description);
        c.relation = "holds";
        c.values = std::move(values);
        c.pass = pass;
        push(std::move(c));
        return pass;
    }

    const S& tolerance() const { return tol_; }
    bool ok() const { return rep_.overall; }

    CertificateReport finish() {
        rep_.slack = min_slack_ ? format_scalar(*min_slack_) : "";
        return std::move(rep_);
    }

private:
    void push(CheckRecord c) {
        if (!c.pass) rep_.overall = false;
        rep_.checks.push_back(std::move(c));
    }

    CertificateReport rep_;
    S tol_;
    std::optional<S> min_slack_;
};

}  // namespace lipfree
