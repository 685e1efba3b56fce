#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chemosem {

/// Dense joint pmf p(c, t, s) over (conditioning, target, source) variables,
/// stored row-major with the source index fastest.
class JointTable3 {
public:
    JointTable3(std::size_t n_cond, std::size_t n_target, std::size_t n_source);
    JointTable3(std::size_t n_cond, std::size_t n_target, std::size_t n_source, std::vector<double> values);

    std::size_t n_cond() const { return n_cond_; }
    std::size_t n_target() const { return n_target_; }
    std::size_t n_source() const { return n_source_; }

    double& operator()(std::size_t c, std::size_t t, std::size_t s) {
        return values_[(c * n_target_ + t) * n_source_ + s];
    }
    double operator()(std::size_t c, std::size_t t, std::size_t s) const {
        return values_[(c * n_target_ + t) * n_source_ + s];
    }

    std::span<const double> values() const { return values_; }
    double total() const;

private:
    std::size_t n_cond_, n_target_, n_source_;
    std::vector<double> values_;
};

/// Dense joint pmf p(a, b), row-major.
class JointTable2 {
public:
    JointTable2(std::size_t n_a, std::size_t n_b);
    JointTable2(std::size_t n_a, std::size_t n_b, std::vector<double> values);

    std::size_t n_a() const { return n_a_; }
    std::size_t n_b() const { return n_b_; }

    double& operator()(std::size_t a, std::size_t b) { return values_[a * n_b_ + b]; }
    double operator()(std::size_t a, std::size_t b) const { return values_[a * n_b_ + b]; }

    std::span<const double> values() const { return values_; }
    double total() const;

private:
    std::size_t n_a_, n_b_;
    std::vector<double> values_;
};

/// Tables must sum to 1 within this slack to count as normalized.
inline constexpr double kNormalizationTolerance = 1e-9;

/// I(T; S | C) in bits, plug-in. Throws std::invalid_argument if the table
/// has negative entries or is not normalized.
double conditional_mutual_information(const JointTable3& p);

/// I(A; B) in bits, plug-in. Same preconditions as above.
double mutual_information(const JointTable2& p);

/// Cumulative sums: te[0] = 0, te[k] = cmi[0] + ... + cmi[k-1].
std::vector<double> transfer_entropy(std::span<const double> cmi_series);

}  // namespace chemosem
