#pragma once

// Test-only reference computations, independent of the library code paths
// they check.

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

/// Shannon entropy in bits of an unnormalized-free weight list.
inline double entropy_bits(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

/// I(T;S|C) = H(C,T) + H(C,S) - H(C,T,S) - H(C), each marginal summed
/// naively from the flat table p[c][t][s].
inline double cmi_by_entropies(const std::vector<double>& p, std::size_t nc, std::size_t nt, std::size_t ns) {
    auto at = [&](std::size_t c, std::size_t t, std::size_t s) { return p[(c * nt + t) * ns + s]; };
    std::vector<double> ct, cs, c_only, cts;
    for (std::size_t c = 0; c < nc; ++c) {
        double sc = 0.0;
        for (std::size_t t = 0; t < nt; ++t) {
            double v = 0.0;
            for (std::size_t s = 0; s < ns; ++s) v += at(c, t, s);
            ct.push_back(v);
        }
        for (std::size_t s = 0; s < ns; ++s) {
            double v = 0.0;
            for (std::size_t t = 0; t < nt; ++t) v += at(c, t, s);
            cs.push_back(v);
        }
        for (std::size_t t = 0; t < nt; ++t)
            for (std::size_t s = 0; s < ns; ++s) {
                sc += at(c, t, s);
                cts.push_back(at(c, t, s));
            }
        c_only.push_back(sc);
    }
    return entropy_bits(ct) + entropy_bits(cs) - entropy_bits(cts) - entropy_bits(c_only);
}

/// I(A;B) = H(A) + H(B) - H(A,B).
inline double mi_by_entropies(const std::vector<double>& p, std::size_t na, std::size_t nb) {
    std::vector<double> a(na, 0.0), b(nb, 0.0);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            a[i] += p[i * nb + j];
            b[j] += p[i * nb + j];
        }
    return entropy_bits(a) + entropy_bits(b) - entropy_bits(p);
}

/// Pearson chi-square statistic against a uniform distribution over `counts`.
inline double chi_square_uniform(const std::vector<long>& counts) {
    double total = 0.0;
    for (long c : counts) total += static_cast<double>(c);
    const double expected = total / static_cast<double>(counts.size());
    double chi = 0.0;
    for (long c : counts) chi += (c - expected) * (c - expected) / expected;
    return chi;
}

/// Upper 1% points of the chi-square distribution for the degrees of freedom
/// these tests use (standard tables).
inline double chi_square_99(int dof) {
    static const std::map<int, double> table{{2, 9.210},  {3, 11.345}, {4, 13.277}, {7, 18.475},
                                             {8, 20.090}, {15, 30.578}, {99, 134.642}};
    return table.at(dof);
}

}  // namespace oracle
