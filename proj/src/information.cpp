#include "chemosem/information.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chemosem {

namespace {

void check_pmf(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) {
        if (!(v >= 0.0)) throw std::invalid_argument("joint table has a negative or NaN entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
        throw std::invalid_argument("joint table is not normalized (sum = " + std::to_string(sum) + ")");
    }
}

}  // namespace

JointTable3::JointTable3(std::size_t n_cond, std::size_t n_target, std::size_t n_source)
    : JointTable3(n_cond, n_target, n_source, std::vector<double>(n_cond * n_target * n_source, 0.0)) {}

JointTable3::JointTable3(std::size_t n_cond, std::size_t n_target, std::size_t n_source,
                         std::vector<double> values)
    : n_cond_(n_cond), n_target_(n_target), n_source_(n_source), values_(std::move(values)) {
    if (values_.size() != n_cond * n_target * n_source) {
        throw std::invalid_argument("JointTable3: value count does not match dimensions");
    }
}

double JointTable3::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

JointTable2::JointTable2(std::size_t n_a, std::size_t n_b)
    : JointTable2(n_a, n_b, std::vector<double>(n_a * n_b, 0.0)) {}

JointTable2::JointTable2(std::size_t n_a, std::size_t n_b, std::vector<double> values)
    : n_a_(n_a), n_b_(n_b), values_(std::move(values)) {
    if (values_.size() != n_a * n_b) {
        throw std::invalid_argument("JointTable2: value count does not match dimensions");
    }
}

double JointTable2::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double conditional_mutual_information(const JointTable3& p) {
    check_pmf(p.values());
    const std::size_t nt = p.n_target();
    const std::size_t ns = p.n_source();
    std::vector<double> p_ct(nt);
    std::vector<double> p_cs(ns);

    // Per conditioning slice: sum p(c,t,s) log [p(c,t,s) p(c) / (p(c,t) p(c,s))].
    double bits = 0.0;
    for (std::size_t c = 0; c < p.n_cond(); ++c) {
        std::fill(p_ct.begin(), p_ct.end(), 0.0);
        std::fill(p_cs.begin(), p_cs.end(), 0.0);
        double p_c = 0.0;
        for (std::size_t t = 0; t < nt; ++t) {
            for (std::size_t s = 0; s < ns; ++s) {
                const double v = p(c, t, s);
                p_ct[t] += v;
                p_cs[s] += v;
                p_c += v;
            }
        }
        if (p_c <= 0.0) continue;
        double slice = 0.0;
        for (std::size_t t = 0; t < nt; ++t) {
            if (p_ct[t] <= 0.0) continue;
            for (std::size_t s = 0; s < ns; ++s) {
                const double v = p(c, t, s);
                if (v <= 0.0) continue;
                slice += v * std::log2(v * p_c / (p_ct[t] * p_cs[s]));
            }
        }
        bits += slice;
    }
    return bits;
}

double mutual_information(const JointTable2& p) {
    check_pmf(p.values());
    std::vector<double> p_a(p.n_a(), 0.0);
    std::vector<double> p_b(p.n_b(), 0.0);
    for (std::size_t a = 0; a < p.n_a(); ++a) {
        for (std::size_t b = 0; b < p.n_b(); ++b) {
            p_a[a] += p(a, b);
            p_b[b] += p(a, b);
        }
    }
    double bits = 0.0;
    for (std::size_t a = 0; a < p.n_a(); ++a) {
        for (std::size_t b = 0; b < p.n_b(); ++b) {
            const double v = p(a, b);
            if (v > 0.0) bits += v * std::log2(v / (p_a[a] * p_b[b]));
        }
    }
    return bits;
}

std::vector<double> transfer_entropy(std::span<const double> cmi_series) {
    std::vector<double> te(cmi_series.size() + 1, 0.0);
    for (std::size_t k = 0; k < cmi_series.size(); ++k) te[k + 1] = te[k] + cmi_series[k];
    return te;
}

}  // namespace chemosem
