// A short walk through the library on small spaces, in exact arithmetic.

#include <iostream>

#include "lipfree/lipfree.hpp"

using namespace lipfree;
using Q = Rational;

int main() {
    // A 4-cycle with unit edges.
    auto square = make_space<Q>({"o", "a", "b", "c"}, 0,
                                {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
    std::cout << "square is a metric: " << std::boolalpha << validate(*square).ok << "\n";

    auto mu = FreeElement<Q>::molecule(square, 1, 3) + FreeElement<Q>::molecule(square, 2, 0);
    auto norm = free_norm(mu);
    std::cout << "||m_ac + m_bo|| = " << format_scalar(norm.value) << ", transport cost "
              << format_scalar(norm.plan.cost) << "\n";

    auto ext = extreme_molecules(square);
    std::cout << "extreme molecules: " << ext.extreme.size() << " of " << ext.tests.size() << "\n";

    // Slice of the norming functional and the farthest molecule in it.
    auto f = norm.witness.normalized();
    auto center = FreeElement<Q>::molecule(square, 1, 3);
    if (FreeSlice<Q>(f, Q(1, 2)).contains(center)) {
        auto score = delta_score_free(center, FreeSlice<Q>(f, Q(1, 2)));
        std::cout << "Delta score of m_ac in S(f, 1/2): " << format_scalar(score.value) << "\n";
    }

    // Example 1 at a small truncation.
    Example1Params<Q> e1;
    e1.N = 12;
    e1.n = 3;
    e1.samples = 5;
    auto r1 = verify_example1(e1);
    std::cout << "example 1 (N=12, n=3, 5 samples): " << (r1.overall ? "verified" : "FAILED") << ", slack "
              << r1.slack << "\n";

    // Recursive construction over nested annuli.
    auto inst = build_nested_annuli_space<Q>(5);
    auto rec = daugavet_recursive_construction(inst.space, AnnuliFamily{inst.pairs, inst.sets});
    for (const auto& st : rec.stages)
        std::cout << "stage " << st.stage << ": L = " << format_scalar(st.lipschitz)
                  << ", f(m_s) = " << format_scalar(st.molecule) << "\n";
    return 0;
}
