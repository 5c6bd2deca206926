// Command-line front end for the lipfree library.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lipfree/io.hpp"
#include "lipfree/lipfree.hpp"

namespace {

using namespace lipfree;
using io::Json;

struct Options {
    std::string mode = "exact";
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::string out;

    std::string space, function, element, a_elem, b_elem, f_fn, g_fn, partial, center;
    std::string lipschitz, dir = "lower", alpha = "1/2", radius = "8", scale = "1", eps_one = "1/4";
    std::vector<std::string> alphas, epsilons, deltas, sites, eps_grid;
    int daug_k = 10, hat_k = 16, near_N = 8;
    int e1_N = 24, e1_n = 3, e1_samples = 50;
    int e2_N = 7, e2_n = 6, e2_samples = 20;
    int de_k = 16, dr_k = 10, dr_stages = 10, ta_N = 8, an_k = 6, an_battery = 50;
    bool csv = false, packing = false;
};

/// Certificate failure: exit status 1 with the failing check named.
struct CertificateFailure {
    std::string check;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ParseError("cannot open output file", o.out);
    f << text;
}

template <Scalar S>
S scalar_option(const std::string& text, const std::string& flag) {
    try {
        return parse_scalar<S>(text);
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")), flag);
    }
}

template <Scalar S>
std::vector<S> scalar_list(const std::vector<std::string>& xs, const std::string& flag) {
    std::vector<S> out;
    for (const auto& x : xs) out.push_back(scalar_option<S>(x, flag));
    return out;
}

template <Scalar S>
SpacePtr<S> load_space(const Options& o) {
    if (o.space.empty()) throw ArgumentError("--space is required");
    return io::space_from_json<S>(io::load_json(o.space), o.space);
}

template <Scalar S>
LipFunction<S> load_function(const std::string& path, const SpacePtr<S>& space) {
    return io::lip_function_from_json<S>(io::load_json(path), space, path);
}

template <Scalar S>
FreeElement<S> load_element(const std::string& path, const SpacePtr<S>& space) {
    return io::free_element_from_json<S>(io::load_json(path), space, path);
}

/// Common trailer: seed always, tolerance in float mode.
template <Scalar S>
void stamp(Json& j, const Options& o) {
    j["mode"] = ScalarTraits<S>::mode_name;
    if constexpr (!ScalarTraits<S>::exact) j["tolerance"] = format_scalar(ScalarTraits<S>::default_tolerance());
    j["seed"] = std::to_string(o.seed);
}

template <Scalar S>
void finish_report(const Options& o, CertificateReport rep) {
    bool has_seed = false;
    for (const auto& [k, v] : rep.parameters) has_seed = has_seed || k == "seed";
    if (!has_seed) rep.parameters.emplace_back("seed", std::to_string(o.seed));
    emit(o, io::dump(io::to_json(rep)));
    if (!rep.overall) throw CertificateFailure{rep.first_failure() ? rep.first_failure()->description : rep.claim};
}

template <Scalar S>
Json labelled_pairs(const FiniteMetricSpace<S>& space, const std::vector<std::pair<int, int>>& pairs) {
    Json j = Json::array();
    for (auto [u, v] : pairs) j.push_back(Json::array({space.label(u), space.label(v)}));
    return j;
}

template <Scalar S>
Json labelled_sets(const FiniteMetricSpace<S>& space, const std::vector<std::vector<int>>& sets) {
    Json j = Json::array();
    for (const auto& A : sets) {
        Json s = Json::array();
        for (int p : A) s.push_back(space.label(p));
        j.push_back(std::move(s));
    }
    return j;
}

// ---------------------------------------------------------------------------
// commands

template <Scalar S>
void cmd_validate(const Options& o) {
    auto space = load_space<S>(o);
    auto rep = validate(*space);
    Json j;
    j["command"] = "validate";
    j["points"] = space->size();
    j["valid"] = rep.ok;
    Json vs = Json::array();
    for (const auto& v : rep.violations) {
        Json vj;
        vj["kind"] = to_string(v.kind);
        Json pts = Json::array();
        for (int p : v.indices) pts.push_back(space->label(p));
        vj["points"] = std::move(pts);
        vj["slack"] = format_scalar(v.slack);
        vs.push_back(std::move(vj));
    }
    j["violations"] = std::move(vs);
    stamp<S>(j, o);
    emit(o, io::dump(j));
    if (!rep.ok) throw CertificateFailure{"metric axiom " + std::string(to_string(rep.violations.front().kind))};
}

template <Scalar S>
void cmd_lipnorm(const Options& o) {
    auto space = load_space<S>(o);
    if (o.function.empty()) throw ArgumentError("--function is required");
    auto f = load_function<S>(o.function, space);
    Json j;
    j["command"] = "lipnorm";
    j["norm"] = format_scalar(f.norm());
    auto [p, q] = f.norm_pair();
    j["pair"] = p >= 0 ? Json::array({space->label(p), space->label(q)}) : Json::array();
    stamp<S>(j, o);
    emit(o, io::dump(j));
}

template <Scalar S>
void cmd_freenorm(const Options& o) {
    auto space = load_space<S>(o);
    if (o.element.empty()) throw ArgumentError("--element is required");
    auto mu = load_element<S>(o.element, space);
    auto res = free_norm(mu);
    Json j;
    j["command"] = "freenorm";
    j["norm"] = format_scalar(res.value);
    j["witness"] = io::to_json(res.witness);
    Json plan = Json::array();
    for (const auto& [pq, mass] : res.plan.flow)
        plan.push_back({{"from", space->label(pq.first)}, {"to", space->label(pq.second)}, {"mass", format_scalar(mass)}});
    j["plan"] = std::move(plan);
    j["transport_cost"] = format_scalar(res.plan.cost);
    stamp<S>(j, o);
    emit(o, io::dump(j));
}

template <Scalar S>
void cmd_dist(const Options& o) {
    auto space = load_space<S>(o);
    if (!o.a_elem.empty() || !o.b_elem.empty()) {
        if (o.a_elem.empty() || o.b_elem.empty()) throw ArgumentError("--a and --b go together");
        Json j;
        j["command"] = "dist";
        j["kind"] = "free";
        j["distance"] = format_scalar(free_dist(load_element<S>(o.a_elem, space), load_element<S>(o.b_elem, space)));
        stamp<S>(j, o);
        emit(o, io::dump(j));
        return;
    }
    if (!o.f_fn.empty() || !o.g_fn.empty()) {
        if (o.f_fn.empty() || o.g_fn.empty()) throw ArgumentError("--f and --g go together");
        Json j;
        j["command"] = "dist";
        j["kind"] = "lip";
        j["distance"] = format_scalar(lip_dist(load_function<S>(o.f_fn, space), load_function<S>(o.g_fn, space)));
        stamp<S>(j, o);
        emit(o, io::dump(j));
        return;
    }
    if (!o.csv) throw ArgumentError("give --a/--b, --f/--g, or --csv for the distance table");
    std::ostringstream ss;
    ss << "point";
    for (const auto& l : space->labels()) ss << ',' << l;
    ss << '\n';
    for (int p = 0; p < space->size(); ++p) {
        ss << space->label(p);
        for (int q = 0; q < space->size(); ++q) ss << ',' << format_scalar(space->d(p, q));
        ss << '\n';
    }
    emit(o, ss.str());
}

template <Scalar S>
void cmd_extend(const Options& o) {
    auto space = load_space<S>(o);
    if (o.partial.empty()) throw ArgumentError("--partial is required");
    auto doc = io::load_json(o.partial);
    if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_object())
        throw ParseError("partial function must be an object with a 'values' object", o.partial);
    PartialFunction<S> pf;
    for (const auto& [label, x] : doc["values"].items()) {
        const std::string at = o.partial + ".values." + label;
        try {
            pf.points.push_back(space->index_of(label));
        } catch (const StructuralError&) {
            throw ParseError("unknown point label", at);
        }
        pf.values.push_back(io::scalar_from_json<S>(x, at));
    }
    if (o.dir != "lower" && o.dir != "upper") throw ArgumentError("--dir must be lower or upper");
    const S L = o.lipschitz.empty() ? partial_lipschitz(*space, pf).first : scalar_option<S>(o.lipschitz, "--L");
    auto f = mcshane_extend(space, pf, L, o.dir == "lower" ? Extension::lower : Extension::upper);
    Json j;
    j["command"] = "extend";
    j["direction"] = o.dir;
    j["L"] = format_scalar(L);
    j["function"] = io::to_json(f);
    j["norm"] = format_scalar(f.norm());
    stamp<S>(j, o);
    emit(o, io::dump(j));
}

template <Scalar S>
void cmd_slice(const Options& o) {
    auto space = load_space<S>(o);
    if (o.function.empty()) throw ArgumentError("--function is required");
    auto f = load_function<S>(o.function, space);
    const S alpha = scalar_option<S>(o.alpha, "--alpha");
    auto mols = molecules_in_slice(f, alpha);
    Json j;
    j["command"] = "slice";
    j["alpha"] = format_scalar(alpha);
    Json ms = Json::array();
    for (const auto& m : mols)
        ms.push_back({{"u", space->label(m.u)}, {"v", space->label(m.v)}, {"value", format_scalar(f.eval(m))}});
    j["molecules"] = std::move(ms);
    if (!o.center.empty()) {
        auto mu = load_element<S>(o.center, space);
        auto score = delta_score_free(mu, FreeSlice<S>(f, alpha));
        j["delta_score"] = format_scalar(score.value);
        j["delta_argmax"] = Json::array({space->label(score.argmax.u), space->label(score.argmax.v)});
        j["min_pair_distance"] = format_scalar(score.min_pair_distance);
    }
    stamp<S>(j, o);
    emit(o, io::dump(j));
}

template <Scalar S>
void cmd_construct_daugavet(const Options& o) {
    auto inst = build_nested_annuli_space<S>(o.daug_k);
    AnnuliFamily fam{inst.pairs, inst.sets};
    auto res = daugavet_recursive_construction(inst.space, fam);
    Json j;
    j["command"] = "construct daugavet";
    j["space"] = io::to_json(*inst.space);
    j["pairs"] = labelled_pairs(*inst.space, inst.pairs);
    j["sets"] = labelled_sets(*inst.space, inst.sets);
    j["function"] = io::to_json(res.function);
    j["extension_norm"] = format_scalar(res.extension_norm);
    Json st = Json::array();
    for (const auto& s : res.stages)
        st.push_back({{"stage", s.stage},
                      {"lipschitz", format_scalar(s.lipschitz)},
                      {"lipschitz_bound", format_scalar(s.lipschitz_bound)},
                      {"molecule", format_scalar(s.molecule)},
                      {"molecule_bound", format_scalar(s.molecule_bound)}});
    j["stages"] = std::move(st);
    stamp<S>(j, o);
    emit(o, io::dump(j));
}

template <Scalar S>
void cmd_construct_delta_hat(const Options& o) {
    auto ps = build_delta_hat_space<S>(o.hat_k, scalar_option<S>(o.scale, "--a"));
    const S tol = frac<S>(1, 1000000);
    auto ext = extract_separated_pairs(*ps.space, tol, ExtractionMode::pairs);
    if (ext.pairs.size() < 3) throw PreconditionError("fewer than three separated pairs found");
    auto fam = delta_hat_family(ps.space, ext.pairs, ext.a, tol);
    Json j;
    j["command"] = "construct delta-hat";
    j["space"] = io::to_json(*ps.space);
    j["a"] = format_scalar(ext.a);
    j["pairs"] = labelled_pairs(*ps.space, ext.pairs);
    j["scale"] = format_scalar(fam.scale);
    j["f"] = io::to_json(fam.f);
    Json gs = Json::array();
    for (const auto& g : fam.g) gs.push_back(io::to_json(g));
    j["g"] = std::move(gs);
    stamp<S>(j, o);
    emit(o, io::dump(j));
}

template <Scalar S>
void cmd_construct_nearest(const Options& o) {
    SpacePtr<S> space;
    std::vector<int> sites;
    if (!o.space.empty()) {
        space = load_space<S>(o);
        if (o.sites.empty()) throw ArgumentError("--site is required with --space");
        for (const auto& s : o.sites) {
            try {
                sites.push_back(space->index_of(s));
            } catch (const StructuralError&) {
                throw ParseError("unknown point label '" + s + "'", "--site");
            }
        }
    } else {
        auto ta = build_two_anchor_space<S>(o.near_N);
        space = ta.space;
        sites = ta.non_anchors;
    }
    auto f = nearest_point_function(space, sites);
    Json j;
    j["command"] = "construct nearest";
    j["space"] = io::to_json(*space);
    Json sj = Json::array();
    for (int s : sites) sj.push_back(space->label(s));
    j["sites"] = std::move(sj);
    j["function"] = io::to_json(f);
    j["norm"] = format_scalar(f.norm());
    stamp<S>(j, o);
    emit(o, io::dump(j));
}

template <Scalar S>
void cmd_certify_example1(const Options& o) {
    Example1Params<S> p;
    p.N = o.e1_N;
    p.n = o.e1_n;
    p.samples = o.e1_samples;
    p.seed = o.seed;
    if (!o.function.empty()) p.f = load_function<S>(o.function, build_example1_space<S>(o.e1_N));
    finish_report<S>(o, verify_example1(p));
}

template <Scalar S>
void cmd_certify_example2(const Options& o) {
    Example2Params<S> p;
    p.N = o.e2_N;
    p.n = o.e2_n;
    p.samples = o.e2_samples;
    p.seed = o.seed;
    if (!o.alphas.empty()) p.alphas = scalar_list<S>(o.alphas, "--alpha");
    if (!o.epsilons.empty()) p.epsilons = scalar_list<S>(o.epsilons, "--eps");
    finish_report<S>(o, verify_example2(p));
}

template <Scalar S>
void cmd_certify_delta(const Options& o) {
    DeltaExistenceParams<S> p;
    p.k = o.de_k;
    SpacePtr<S> space = o.space.empty() ? build_delta_hat_space<S>(o.de_k, scalar_option<S>(o.scale, "--a")).space
                                        : load_space<S>(o);
    finish_report<S>(o, verify_delta_existence(space, p));
}

template <Scalar S>
void cmd_certify_daug_rec(const Options& o) {
    auto inst = build_nested_annuli_space<S>(o.dr_k);
    finish_report<S>(o, verify_daugavet_recursion(inst.space, AnnuliFamily{inst.pairs, inst.sets}, o.dr_stages));
}

template <Scalar S>
void cmd_certify_two_anchor(const Options& o) {
    TwoAnchorParams<S> p;
    p.N = o.ta_N;
    if (!o.deltas.empty()) p.deltas = scalar_list<S>(o.deltas, "--delta");
    finish_report<S>(o, verify_two_anchor_daugavet(p));
}

template <Scalar S>
void cmd_certify_annuli(const Options& o) {
    auto inst = build_nested_annuli_space<S>(o.an_k);
    AnnuliFamily fam{inst.pairs, inst.sets};
    Rng rng(o.seed);
    auto bat = annuli_test_battery(inst.space, fam, static_cast<std::size_t>(o.an_battery), rng);
    finish_report<S>(o, verify_separated_annuli(inst.space, fam, scalar_option<S>(o.eps_one, "--eps"), bat));
}

template <Scalar S>
void cmd_scan(const Options& o) {
    auto space = load_space<S>(o);
    if (o.function.empty()) throw ArgumentError("--function is required");
    auto f = load_function<S>(o.function, space);
    std::vector<S> grid = o.eps_grid.empty() ? std::vector<S>{frac<S>(1, 2), frac<S>(1, 4), frac<S>(1, 16)}
                                             : scalar_list<S>(o.eps_grid, "--eps");
    const S R = scalar_option<S>(o.radius, "--radius");
    auto rows = scan_theorem4_condition6(f, grid, R, o.packing);
    auto mol = [&](const Molecule& m) { return space->label(m.u) + "-" + space->label(m.v); };
    if (o.csv) {
        std::ostringstream ss;
        ss << "eps,slice_molecules,min_pair_distance,closest,escape,farthest,small_pair,escaping";
        if (o.packing) ss << ",packing";
        ss << '\n';
        for (const auto& r : rows) {
            ss << format_scalar(r.eps) << ',' << r.slice_molecules << ',' << format_scalar(r.min_pair_distance) << ','
               << mol(r.closest) << ',' << format_scalar(r.escape) << ',' << mol(r.farthest) << ','
               << (r.small_pair ? 1 : 0) << ',' << (r.escaping ? 1 : 0);
            if (o.packing) ss << ',' << *r.packing;
            ss << '\n';
        }
        emit(o, ss.str());
        return;
    }
    Json j;
    j["command"] = "scan-dichotomy";
    j["radius"] = format_scalar(R);
    Json rs = Json::array();
    for (const auto& r : rows) {
        Json rj{{"eps", format_scalar(r.eps)},
                {"slice_molecules", r.slice_molecules},
                {"min_pair_distance", format_scalar(r.min_pair_distance)},
                {"closest", mol(r.closest)},
                {"escape", format_scalar(r.escape)},
                {"farthest", mol(r.farthest)},
                {"small_pair", r.small_pair},
                {"escaping", r.escaping}};
        if (r.packing) rj["packing"] = *r.packing;
        rs.push_back(std::move(rj));
    }
    j["rows"] = std::move(rs);
    stamp<S>(j, o);
    emit(o, io::dump(j));
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Lipschitz-free spaces over finite metric spaces: norms, constructions, certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--mode", o.mode, "Arithmetic: exact (rational) or float")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tol", o.tol, "Comparison tolerance in float mode");
    app.add_option("--seed", o.seed, "Seed for sampled certificates");
    app.add_option("--out", o.out, "Write output to this file instead of stdout");

    auto space_opt = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--space", o.space, "Metric space JSON file");
        if (required) opt->required();
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check the metric axioms");
    space_opt(validate_cmd, true);

    auto* lipnorm = app.add_subcommand("lipnorm", "Lipschitz constant of a function");
    space_opt(lipnorm, true);
    lipnorm->add_option("--function", o.function, "Function JSON file")->required();

    auto* freenorm = app.add_subcommand("freenorm", "Free-space norm with dual and transport certificates");
    space_opt(freenorm, true);
    freenorm->add_option("--element", o.element, "Element JSON file")->required();

    auto* dist = app.add_subcommand("dist", "Free or Lipschitz distance, or the distance table as CSV");
    space_opt(dist, true);
    dist->add_option("--a", o.a_elem, "First element");
    dist->add_option("--b", o.b_elem, "Second element");
    dist->add_option("--f", o.f_fn, "First function");
    dist->add_option("--g", o.g_fn, "Second function");
    dist->add_flag("--csv", o.csv, "Print the metric as a CSV table");

    auto* extend = app.add_subcommand("extend", "McShane-Whitney extension of a partial function");
    space_opt(extend, true);
    extend->add_option("--partial", o.partial, "JSON {\"values\": {label: value}}")->required();
    extend->add_option("--L", o.lipschitz, "Lipschitz bound (default: constant of the partial function)");
    extend->add_option("--dir", o.dir, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));

    auto* slice = app.add_subcommand("slice", "Molecules in a slice, optionally with a Delta score");
    space_opt(slice, true);
    slice->add_option("--function", o.function, "Norm-one function")->required();
    slice->add_option("--alpha", o.alpha, "Slice width");
    slice->add_option("--center", o.center, "Element in the slice for the Delta score");

    auto* construct = app.add_subcommand("construct", "Build a space together with a construction");
    construct->require_subcommand(1);
    auto* c_daug = construct->add_subcommand("daugavet", "Recursive construction over nested annuli");
    c_daug->add_option("--k", o.daug_k, "Number of pairs")->capture_default_str();
    auto* c_hat = construct->add_subcommand("delta-hat", "Hat family on separated pairs");
    c_hat->add_option("--k", o.hat_k, "Number of pairs")->capture_default_str();
    c_hat->add_option("--a", o.scale, "Scale of the generated space");
    auto* c_near = construct->add_subcommand("nearest", "Distance to the nearest site");
    c_near->add_option("--N", o.near_N, "Two-anchor space size")->capture_default_str();
    space_opt(c_near, false);
    c_near->add_option("--site", o.sites, "Site label (first must be the base); repeatable");

    auto* certify = app.add_subcommand("certify", "Run a certificate and emit its report");
    certify->require_subcommand(1);
    auto* c_e1 = certify->add_subcommand("example1", "d(n,k) = 3 - |1/n - 1/k| has no w*-Daugavet-point");
    c_e1->add_option("--N", o.e1_N, "Truncation size")->capture_default_str();
    c_e1->add_option("--n", o.e1_n, "Index n")->capture_default_str();
    c_e1->add_option("--samples", o.e1_samples, "Random functions")->capture_default_str();
    c_e1->add_option("--function", o.function, "Use this function instead of random samples");
    auto* c_e2 = certify->add_subcommand("example2", "Four-family space: w*-Daugavet but not Delta");
    c_e2->add_option("--N", o.e2_N, "Truncation index")->capture_default_str();
    c_e2->add_option("--n", o.e2_n, "Core size")->capture_default_str();
    c_e2->add_option("--alpha", o.alphas, "Slice widths (repeatable)");
    c_e2->add_option("--eps", o.epsilons, "Delta parameters (repeatable)");
    c_e2->add_option("--samples", o.e2_samples, "Random elements per alpha")->capture_default_str();
    auto* c_de = certify->add_subcommand("delta-exist", "Hat family gives a Delta-point");
    c_de->add_option("--k", o.de_k, "Number of pairs")->capture_default_str();
    c_de->add_option("--a", o.scale, "Scale of the generated space");
    space_opt(c_de, false);
    auto* c_dr = certify->add_subcommand("daug-rec", "Stage bounds of the recursive construction");
    c_dr->add_option("--k", o.dr_k, "Number of pairs in the generated space")->capture_default_str();
    c_dr->add_option("--stages", o.dr_stages, "Stages to certify")->capture_default_str();
    auto* c_ta = certify->add_subcommand("two-anchor", "Segment condition on the two-anchor space");
    c_ta->add_option("--N", o.ta_N, "Space size")->capture_default_str();
    c_ta->add_option("--delta", o.deltas, "Delta grid (repeatable)");
    auto* c_an = certify->add_subcommand("annuli", "Separated annuli hypothesis and conclusion");
    c_an->add_option("--k", o.an_k, "Number of pairs")->capture_default_str();
    c_an->add_option("--eps", o.eps_one, "Uniform eps");
    c_an->add_option("--battery", o.an_battery, "Number of random test elements")->capture_default_str();

    auto* scan = app.add_subcommand("scan-dichotomy", "Small-pair and escaping-support witnesses in slices");
    space_opt(scan, true);
    scan->add_option("--function", o.function, "Norm-one function")->required();
    scan->add_option("--eps", o.eps_grid, "Slice widths (repeatable)");
    scan->add_option("--radius", o.radius, "Escape radius R");
    scan->add_flag("--csv", o.csv, "CSV table instead of JSON");
    scan->add_flag("--packing", o.packing, "Greedy 1-separated packing of slice molecules");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
    }

    auto dispatch = [&]<Scalar S>() {
        if (validate_cmd->parsed()) return cmd_validate<S>(o);
        if (lipnorm->parsed()) return cmd_lipnorm<S>(o);
        if (freenorm->parsed()) return cmd_freenorm<S>(o);
        if (dist->parsed()) return cmd_dist<S>(o);
        if (extend->parsed()) return cmd_extend<S>(o);
        if (slice->parsed()) return cmd_slice<S>(o);
        if (c_daug->parsed()) return cmd_construct_daugavet<S>(o);
        if (c_hat->parsed()) return cmd_construct_delta_hat<S>(o);
        if (c_near->parsed()) return cmd_construct_nearest<S>(o);
        if (c_e1->parsed()) return cmd_certify_example1<S>(o);
        if (c_e2->parsed()) return cmd_certify_example2<S>(o);
        if (c_de->parsed()) return cmd_certify_delta<S>(o);
        if (c_dr->parsed()) return cmd_certify_daug_rec<S>(o);
        if (c_ta->parsed()) return cmd_certify_two_anchor<S>(o);
        if (c_an->parsed()) return cmd_certify_annuli<S>(o);
        if (scan->parsed()) return cmd_scan<S>(o);
        throw ArgumentError("no command given");
    };

    try {
        if (o.mode == "exact") {
            dispatch.template operator()<Rational>();
        } else {
            set_float_tolerance(o.tol);
            dispatch.template operator()<double>();
        }
    } catch (const CertificateFailure& f) {
        std::cerr << "certificate failed: " << f.check << '\n';
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "hypothesis not satisfied: " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
