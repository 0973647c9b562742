#include "gametree/pmf.hpp"

#include <sstream>
#include <stdexcept>

namespace gametree {

Rational CostPMF::total() const {
    Rational t = 0;
    for (const auto& [c, pr] : p) t += pr;
    return t;
}

Rational CostPMF::mean() const {
    Rational m = 0;
    for (const auto& [c, pr] : p) m += Rational(c) * pr;
    return m;
}

Rational CostPMF::variance() const {
    Rational m = mean(), s = 0;
    for (const auto& [c, pr] : p) s += Rational(c) * Rational(c) * pr;
    return s - m * m;
}

void CostPMF::add_weighted(const CostPMF& other, const Rational& weight) {
    for (const auto& [c, pr] : other.p) p[c] += weight * pr;
}

CostPMF convolve(const CostPMF& a, const CostPMF& b) {
    CostPMF out;
    for (const auto& [ca, pa] : a.p)
        for (const auto& [cb, pb] : b.p)
            out.p[ca + cb] += pa * pb;
    return out;
}

bool dominates(const CostPMF& a, const CostPMF& b) {
    // Walk the union support once, maintaining both CDFs.
    auto ia = a.p.begin(), ib = b.p.begin();
    Rational cdf_a = 0, cdf_b = 0;
    while (ia != a.p.end() || ib != b.p.end()) {
        std::uint64_t x;
        if (ib == b.p.end() || (ia != a.p.end() && ia->first <= ib->first))
            x = ia->first;
        else
            x = ib->first;
        while (ia != a.p.end() && ia->first <= x) cdf_a += (ia++)->second;
        while (ib != b.p.end() && ib->first <= x) cdf_b += (ib++)->second;
        if (cdf_a < cdf_b) return false;
    }
    return true;
}

Rational BivariatePMF::total() const {
    Rational t = 0;
    for (const auto& [k, pr] : p) t += pr;
    return t;
}

CostPMF BivariatePMF::marginal(int coordinate) const {
    if (coordinate != 0 && coordinate != 1)
        throw std::invalid_argument("coordinate must be 0 or 1");
    CostPMF out;
    for (const auto& [k, pr] : p)
        out.p[coordinate == 0 ? k.first : k.second] += pr;
    return out;
}

void BivariatePMF::add_weighted(const BivariatePMF& other, const Rational& weight) {
    for (const auto& [k, pr] : other.p) p[k] += weight * pr;
}

BivariatePMF convolve(const BivariatePMF& a, const BivariatePMF& b) {
    BivariatePMF out;
    for (const auto& [ka, pa] : a.p)
        for (const auto& [kb, pb] : b.p)
            out.p[{ka.first + kb.first, ka.second + kb.second}] += pa * pb;
    return out;
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational rational_from_string(const std::string& s) {
    return Rational(s);
}

nlohmann::json to_json(const CostPMF& pmf) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [c, pr] : pmf.p) j[std::to_string(c)] = rational_to_string(pr);
    return j;
}

CostPMF cost_pmf_from_json(const nlohmann::json& j) {
    CostPMF out;
    for (const auto& [k, v] : j.items())
        out.p[std::stoull(k)] = rational_from_string(v.get<std::string>());
    return out;
}

nlohmann::json to_json(const BivariatePMF& pmf) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [k, pr] : pmf.p)
        j.push_back({{"count0", k.first}, {"count1", k.second},
                     {"p", rational_to_string(pr)}});
    return j;
}

BivariatePMF bivariate_pmf_from_json(const nlohmann::json& j) {
    BivariatePMF out;
    for (const auto& e : j)
        out.p[{e.at("count0").get<std::uint64_t>(), e.at("count1").get<std::uint64_t>()}] =
            rational_from_string(e.at("p").get<std::string>());
    return out;
}

std::string to_csv(const CostPMF& pmf) {
    std::ostringstream os;
    os << "cost,probability\n";
    for (const auto& [c, pr] : pmf.p) os << c << "," << pr << "\n";
    return os.str();
}

std::string to_csv(const BivariatePMF& pmf) {
    std::ostringstream os;
    os << "count0,count1,probability\n";
    for (const auto& [k, pr] : pmf.p)
        os << k.first << "," << k.second << "," << pr << "\n";
    return os.str();
}

} // namespace gametree
