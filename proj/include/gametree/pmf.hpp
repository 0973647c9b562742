#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace gametree {

using Rational = boost::multiprecision::cpp_rational;

/// Exact probability mass function of a leaves-read count.
/// Probabilities are exact rationals and sum to 1; support lies in [1, n].
struct CostPMF {
    std::map<std::uint64_t, Rational> p;

    static CostPMF point(std::uint64_t cost) { return CostPMF{{{cost, Rational(1)}}}; }

    Rational total() const;
    Rational mean() const;
    Rational variance() const;

    void add_weighted(const CostPMF& other, const Rational& weight);
    bool operator==(const CostPMF& other) const = default;
};

/// Distribution of the sum of two independent costs.
CostPMF convolve(const CostPMF& a, const CostPMF& b);

/// First-order stochastic comparison: true iff the CDF of a dominates the
/// CDF of b pointwise (a is stochastically smaller or equal, a "<=" b).
bool dominates(const CostPMF& a, const CostPMF& b);

/// Exact joint law of a (count0, count1) pair.
struct BivariatePMF {
    using Key = std::pair<std::uint64_t, std::uint64_t>;
    std::map<Key, Rational> p;

    static BivariatePMF point(std::uint64_t c0, std::uint64_t c1) {
        return BivariatePMF{{{{c0, c1}, Rational(1)}}};
    }

    Rational total() const;
    CostPMF marginal(int coordinate) const;  // 0 or 1
    void add_weighted(const BivariatePMF& other, const Rational& weight);
    bool operator==(const BivariatePMF& other) const = default;
};

BivariatePMF convolve(const BivariatePMF& a, const BivariatePMF& b);

/// Serialization. Rationals render as "p/q" strings so nothing is lost.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

nlohmann::json to_json(const CostPMF& pmf);
CostPMF cost_pmf_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BivariatePMF& pmf);
BivariatePMF bivariate_pmf_from_json(const nlohmann::json& j);
std::string to_csv(const CostPMF& pmf);
std::string to_csv(const BivariatePMF& pmf);

} // namespace gametree
