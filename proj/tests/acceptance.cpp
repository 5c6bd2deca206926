// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include "lipfree/io.hpp"
#include "lipfree/lipfree.hpp"
#include "oracles.hpp"

using namespace lipfree;
using Q = Rational;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", s);
    return buf;
}

std::string failure_of(const CertificateReport& r) {
    auto* c = r.first_failure();
    return c ? c->description : "";
}

template <Scalar S>
FreeElement<S> random_element(const SpacePtr<S>& s, Rng& rng) {
    FreeElement<S> mu(s);
    const int k = static_cast<int>(rng.uniform(1, std::min(6, s->size())));
    for (int i = 0; i < k; ++i)
        mu.add(static_cast<int>(rng.uniform(0, s->size() - 1)), frac<S>(rng.uniform(-9, 9), rng.uniform(1, 4)));
    return mu;
}

Outcome duality() {
    Outcome o;
    const auto t0 = Clock::now();
    Rng rng(1001);
    double worst_gap = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + t % 19;
        const std::uint64_t seed = rng.next();
        Rng a(seed), b(seed);
        auto s = random_space<Q>(n, a);
        auto mu = random_element(s, a);
        auto sol = solve_lip_ball(LipBallProgram<Q>(mu));
        auto plan = min_cost_transport(*s, mu);
        const std::string tag = "instance " + std::to_string(t);
        o.require(sol.optimal(), tag + ": LP not optimal");
        if (!sol.optimal()) continue;
        o.require(sol.value == plan.cost, tag + ": LP value differs from transport cost");
        o.require(oracle::plan_is_feasible(*s, mu, plan, Q(0)), tag + ": plan infeasible");
        o.require(oracle::dual_is_feasible(*sol.argument, mu, sol.value, Q(0)), tag + ": dual witness infeasible");

        auto sf = random_space<double>(n, b);
        auto muf = random_element(sf, b);
        auto solf = solve_lip_ball(LipBallProgram<double>(muf));
        auto planf = min_cost_transport(*sf, muf);
        o.require(solf.optimal(), tag + ": float LP not optimal");
        if (!solf.optimal()) continue;
        const double gap = std::abs(solf.value - planf.cost);
        worst_gap = std::max(worst_gap, gap);
        o.require(gap <= 1e-9, tag + ": float gap above 1e-9");
    }
    const double el = seconds_since(t0);
    o.require(el <= 60, "runtime above 60s");
    if (o.pass) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2e", worst_gap);
        o.detail = "200 instances, exact gap 0, worst float gap " + std::string(buf) + ", " + fmt_seconds(el);
    }
    return o;
}

Outcome molecule_norms() {
    Outcome o;
    const auto t0 = Clock::now();
    Rng rng(1002);
    std::vector<std::pair<std::string, SpacePtr<Q>>> spaces{
        {"example1(30)", build_example1_space<Q>(30)},
        {"example2(7)", build_example2_space<Q>(7).space},
        {"two-anchor(30)", build_two_anchor_space<Q>(30).space},
        {"half-line(29)", build_half_line<Q>(29)},
        {"simplex(30)", build_regular_simplex<Q>(30, Q(3, 2))},
        {"nested-annuli(10)", build_nested_annuli_space<Q>(10).space},
        {"delta-hat(15)", build_delta_hat_space<Q>(15, Q(1)).space},
        {"random(30)", random_space<Q>(30, rng)},
    };
    std::size_t count = 0;
    for (const auto& [name, s] : spaces) {
        o.require(s->size() <= 30, name + " has more than 30 points");
        auto mols = all_molecules(*s);
        std::vector<char> ok(mols.size(), 0);
        parallel_for(mols.size(), [&](std::size_t k) {
            auto mu = FreeElement<Q>::molecule(s, mols[k]);
            auto sol = solve_lip_ball(LipBallProgram<Q>(mu));
            ok[k] = sol.optimal() && sol.value == Q(1) && min_cost_transport(*s, mu).cost == Q(1);
        });
        for (std::size_t k = 0; k < mols.size(); ++k)
            o.require(ok[k], name + ": molecule " + s->label(mols[k].u) + "," + s->label(mols[k].v) + " norm != 1");
        count += mols.size();
    }
    if (o.pass) o.detail = std::to_string(count) + " molecules on 8 builder spaces, " + fmt_seconds(seconds_since(t0));
    return o;
}

Outcome example1() {
    Outcome o;
    const auto t0 = Clock::now();
    for (int n = 2; n <= 6; ++n) {
        Example1Params<Q> prm;
        prm.N = 24;
        prm.n = n;
        prm.samples = 50;
        prm.seed = 1;
        auto r = verify_example1(prm);
        o.require(r.overall, "n = " + std::to_string(n) + ": " + failure_of(r));
    }
    const double el = seconds_since(t0);
    o.require(el <= 120, "runtime above 120s");
    if (o.pass) o.detail = "N = 24, n = 2..6, 50 samples each, " + fmt_seconds(el);
    return o;
}

Outcome example2() {
    Outcome o;
    const auto t0 = Clock::now();
    Example2Params<Q> prm;
    auto r = verify_example2(prm);
    o.require(r.overall, failure_of(r));
    o.require(build_example2_space<Q>(prm.N).space->size() == 28, "space size is not 28");
    if (o.pass) o.detail = std::to_string(r.checks.size()) + " checks, parts (a)-(c), " + fmt_seconds(seconds_since(t0));
    return o;
}

Outcome delta_existence() {
    Outcome o;
    const auto t0 = Clock::now();
    auto ps = build_delta_hat_space<Q>(16, Q(1));
    auto r = verify_delta_existence(ps.space, DeltaExistenceParams<Q>{});
    o.require(r.overall, failure_of(r));
    if (o.pass) o.detail = "k = 16, " + std::to_string(r.checks.size()) + " checks, " + fmt_seconds(seconds_since(t0));
    return o;
}

Outcome recursion() {
    Outcome o;
    auto inst = build_nested_annuli_space<Q>(10);
    auto r = verify_daugavet_recursion(inst.space, AnnuliFamily{inst.pairs, inst.sets}, 10);
    o.require(r.overall, failure_of(r));
    o.require(r.mode == "exact", "not exact arithmetic");
    if (o.pass) o.detail = "10 stages on " + std::to_string(inst.space->size()) + " points, exact";
    return o;
}

Outcome extension_laws() {
    Outcome o;
    Rng rng(1007);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng.uniform(0, 30));
        auto s = random_space<Q>(n, rng);
        PartialFunction<Q> pf;
        for (int p = 0; p < n; ++p)
            if (p == 0 || rng.uniform(0, 2) == 0) {
                pf.points.push_back(p);
                pf.values.push_back(Q(rng.uniform(-12, 12), rng.uniform(1, 4)));
            }
        const Q L = std::max(partial_lipschitz(*s, pf).first, Q(1, 3));
        auto lo = mcshane_values(*s, pf, L, Extension::lower);
        auto hi = mcshane_values(*s, pf, L, Extension::upper);
        const std::string tag = "instance " + std::to_string(t);
        for (int p = 0; p < n; ++p) o.require(lo[p] <= hi[p], tag + ": upper below lower");
        for (std::size_t i = 0; i < pf.points.size(); ++i)
            o.require(lo[pf.points[i]] == pf.values[i] && hi[pf.points[i]] == pf.values[i], tag + ": subset changed");
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (p != q) {
                    o.require(lo[p] - lo[q] <= L * s->d(p, q), tag + ": lower exceeds L");
                    o.require(hi[p] - hi[q] <= L * s->d(p, q), tag + ": upper exceeds L");
                }
    }
    if (o.pass) o.detail = "100 instances with n <= 32, exhaustive pairs";
    return o;
}

// Metrics on n <= 4 points with distances in {1, 2, 3}.
std::vector<SpacePtr<Q>> small_spaces() {
    std::vector<SpacePtr<Q>> out;
    for (int n = 2; n <= 4; ++n) {
        const int m = n * (n - 1) / 2;
        int total = 1;
        for (int i = 0; i < m; ++i) total *= 3;
        for (int code = 0; code < total; ++code) {
            std::vector<std::vector<Q>> d(n, std::vector<Q>(n, Q(0)));
            int c = code;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    d[i][j] = d[j][i] = Q(1 + c % 3);
                    c /= 3;
                }
            auto s = make_space<Q>(d);
            if (validate(*s).ok) out.push_back(s);
        }
    }
    return out;
}

Outcome wstar_oracle() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t cases = 0, spaces = 0;
    for (const auto& s : small_spaces()) {
        ++spaces;
        auto verts = oracle::vertex_functions(*s, oracle::lipschitz_ball(*s));
        auto mols = all_molecules(*s);
        std::size_t used = 0;
        for (std::size_t vi = 0; vi < verts.size() && used < 3; ++vi) {
            LipFunction<Q> f(s, verts[vi]);
            if (f.norm() != Q(1)) continue;
            ++used;
            for (std::size_t mi = vi % mols.size(), k = 0; k < std::min<std::size_t>(3, mols.size());
                 ++k, mi = (mi + 5) % mols.size()) {
                auto mu = FreeElement<Q>::molecule(s, mols[mi]);
                for (Q alpha : {Q(1, 3), Q(1), Q(2)}) {
                    if (!(f.apply(mu) > Q(1) - alpha)) continue;
                    auto expect = oracle::wstar_radius_by_vertices(f, mu, alpha);
                    auto got = wstar_delta_radius(f, mu, alpha);
                    ++cases;
                    o.require(expect && got.value == *expect,
                              "mismatch on a " + std::to_string(s->size()) + "-point space at alpha " +
                                  format_scalar(alpha));
                }
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(cases) + " cases on all " + std::to_string(spaces) +
                   " metrics with n <= 4 and distances in {1,2,3}, " + fmt_seconds(seconds_since(t0));
    return o;
}

template <Scalar S>
CertificateReport annuli_report(std::uint64_t seed) {
    auto inst = build_nested_annuli_space<S>(6);
    AnnuliFamily fam{inst.pairs, inst.sets};
    Rng rng(seed);
    auto bat = annuli_test_battery(inst.space, fam, 50, rng);
    return verify_separated_annuli(inst.space, fam, frac<S>(1, 4), bat);
}

Outcome annuli_machinery() {
    Outcome o;
    auto line = build_half_line<Q>(39);
    auto sweep = sweep_annulus_lemma(*line, Q(1), Q(1, 2));
    o.require(line->size() == 40, "half-line does not have 40 points");
    o.require(sweep.quadruples > 0, "sweep is vacuous");
    o.require(sweep.ok(), "sweep found " + std::to_string(sweep.failures) + " failures");
    std::vector<Q> pos{Q(0), Q(1, 4)};
    for (int i = 1; i <= 16; ++i) pos.emplace_back(i, 2);
    for (int t = 65; t <= 86; ++t) pos.emplace_back(t);
    auto spread = build_line_space<Q>(pos);
    auto wide = sweep_annulus_lemma(*spread, Q(1), Q(1, 2));
    o.require(spread->size() == 40, "spread subset does not have 40 points");
    o.require(wide.quadruples > sweep.quadruples, "spread sweep does not reach far points");
    o.require(wide.ok(), "spread sweep found " + std::to_string(wide.failures) + " failures");
    auto exact = annuli_report<Q>(1009);
    o.require(exact.overall, "exact: " + failure_of(exact));
    auto flt = annuli_report<double>(1009);
    o.require(flt.overall, "float: " + failure_of(flt));
    o.require(flt.tolerance == format_scalar(1e-9), "float tolerance is not 1e-9");
    if (o.pass)
        o.detail = std::to_string(sweep.quadruples) + " + " + std::to_string(wide.quadruples) +
                   " quadruples swept on two 40-point subsets; 50 elements certified in exact and float mode";
    return o;
}

std::string run_cli(const std::string& args) {
    const std::string cmd = std::string(LIPFREE_CLI) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int raw = pclose(pipe);
    if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0) out += "<exit " + std::to_string(raw) + ">";
    return out;
}

Outcome determinism() {
    Outcome o;
    auto e1 = [] {
        Example1Params<Q> prm;
        prm.N = 16;
        prm.n = 3;
        prm.samples = 10;
        prm.seed = 77;
        return io::dump(io::to_json(verify_example1(prm)));
    };
    o.require(e1() == e1(), "example 1 reports differ");
    auto e2 = [] {
        Example2Params<Q> prm;
        prm.N = 5;
        prm.n = 4;
        prm.samples = 5;
        prm.seed = 78;
        return io::dump(io::to_json(verify_example2(prm)));
    };
    o.require(e2() == e2(), "example 2 reports differ");
    o.require(io::dump(io::to_json(annuli_report<double>(79))) == io::dump(io::to_json(annuli_report<double>(79))),
              "float annuli reports differ");
    std::size_t bytes = 0;
    for (const std::string args : {"certify example1 --N 14 --n 2 --samples 8 --seed 5",
                                   "certify annuli --k 5 --battery 10 --seed 6 --mode float",
                                   "certify two-anchor --N 6"}) {
        auto a = run_cli(args), b = run_cli(args);
        o.require(a == b && a.find("<exit") == std::string::npos, "CLI output differs or failed: " + args);
        bytes += a.size();
    }
    if (o.pass) o.detail = "library reports and " + std::to_string(bytes) + " CLI bytes identical across runs";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"duality exactness", duality},
        {"molecule norms", molecule_norms},
        {"example 1 certificate", example1},
        {"example 2 certificate", example2},
        {"hat-family Delta-point construction", delta_existence},
        {"recursive construction stages", recursion},
        {"extension laws", extension_laws},
        {"w*-slice radius oracle equivalence", wstar_oracle},
        {"annuli machinery", annuli_machinery},
        {"determinism", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << o.detail << ")" << std::endl;
    }
    return all ? 0 : 1;
}
