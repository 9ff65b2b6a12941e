#pragma once

// Check outcomes with JSON witnesses, the seeded sampler behind the random
// mode, and generic-coordinate element builders for the symbolic mode.
// Sampling uses raw engine draws rather than distributions, so a seed pins
// the exact sample stream.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"
#include "nilpotent.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace limitweight {

enum class CheckStatus { pass, fail, error };

inline std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "error";
    }
}

struct CheckResult {
    std::string name;
    std::string claim;
    CheckStatus status = CheckStatus::pass;
    long samples = 0;  // sampled instances examined; 0 for purely symbolic checks
    nlohmann::json witness;

    bool ok() const { return status == CheckStatus::pass; }

    static CheckResult pass(std::string name, std::string claim, long samples = 0) {
        return {std::move(name), std::move(claim), CheckStatus::pass, samples, nullptr};
    }
    static CheckResult fail(std::string name, std::string claim, nlohmann::json witness, long samples = 0) {
        return {std::move(name), std::move(claim), CheckStatus::fail, samples, std::move(witness)};
    }
    static CheckResult error(std::string name, std::string claim, nlohmann::json witness) {
        return {std::move(name), std::move(claim), CheckStatus::error, 0, std::move(witness)};
    }
};

inline bool all_pass(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.ok()) return false;
    return true;
}

inline nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json j{{"name", r.name}, {"claim", r.claim}, {"status", to_string(r.status)},
                     {"samples", r.samples}};
    if (!r.witness.is_null()) j["witness"] = r.witness;
    return j;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    long integer(long lo, long hi) {
        return lo + static_cast<long>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Small fractions keep witnesses readable and arithmetic cheap; exactness
    // does not depend on the magnitude.
    Rational rational(long num_range = 9, long den_range = 6) {
        return Rational(integer(-num_range, num_range), integer(1, den_range));
    }

    Matrix<Rational> strictly_upper(std::size_t dim) {
        Matrix<Rational> m(dim);
        for (auto [i, j] : strictly_upper_positions(dim)) m(i, j) = rational();
        return m;
    }

    Matrix<Rational> unipotent(std::size_t dim) {
        return Matrix<Rational>::identity(dim) + strictly_upper(dim);
    }

    // Random eps-polynomial with nonnegative degrees only, so the family limit
    // always exists.
    LaurentSeries<Rational> nonneg_series(int max_deg = 3) {
        LaurentSeries<Rational> s;
        for (int d = 0; d <= max_deg; ++d)
            if (integer(0, 1) == 1) s = s + LaurentSeries<Rational>::term(rational(), d);
        return s;
    }

    // Unipotent family a(eps): strictly upper entries depend on eps but have
    // no pole, so the member-wise limit exists. Entries stay eps-linear so
    // that compositions of lower/raise keep inside the carrier degree window.
    Matrix<LaurentSeries<Rational>> unipotent_family(std::size_t dim, int max_deg = 1) {
        auto m = lift_matrix<LaurentSeries<Rational>>(Matrix<Rational>::identity(dim));
        for (auto [i, j] : strictly_upper_positions(dim)) m(i, j) = nonneg_series(max_deg);
        return with_eps_bound(m, eps_degree_bound(dim));
    }

private:
    std::mt19937_64 gen_;
};

// Runs a sampled property; the body returns a witness on failure, nothing on
// success. Exceptions from the exact kernel become error outcomes.
template <class F>
CheckResult sampled_check(const std::string& name, const std::string& claim, Sampler& rng, long n,
                          F&& body) {
    for (long i = 0; i < n; ++i) {
        try {
            if (auto w = body(rng)) return CheckResult::fail(name, claim, *w, i + 1);
        } catch (const Error& e) {
            return CheckResult::error(name, claim,
                                      nlohmann::json{{"exception", e.what()}, {"sample", i}});
        }
    }
    return CheckResult::pass(name, claim, n);
}

// Generic strictly upper element for the symbolic mode; element_index selects
// a disjoint block of indeterminates so several elements stay independent.
inline Matrix<Polynomial> symbolic_nilpotent(std::size_t dim, std::size_t element_index) {
    const std::size_t stride = strictly_upper_positions(dim).size();
    std::vector<Polynomial> coords;
    for (std::size_t k = 0; k < stride; ++k)
        coords.push_back(Polynomial::variable(element_index * stride + k));
    return from_upper_coords(dim, coords);
}

inline Matrix<Polynomial> symbolic_unipotent(std::size_t dim, std::size_t element_index) {
    return mat_exp(symbolic_nilpotent(dim, element_index));
}

// Names for the indeterminates of count elements: a1..ak, b1..bk, ...
inline std::vector<std::string> coordinate_names(std::size_t dim, std::size_t count) {
    const std::size_t stride = strictly_upper_positions(dim).size();
    std::vector<std::string> names;
    for (std::size_t e = 0; e < count; ++e)
        for (std::size_t k = 0; k < stride; ++k)
            names.push_back(std::string(1, static_cast<char>('a' + e)) + std::to_string(k + 1));
    return names;
}

}  // namespace limitweight
