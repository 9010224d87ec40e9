#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <findim/caps.hpp>
#include <findim/errors.hpp>
#include <findim/partitions.hpp>
#include <findim/rational.hpp>
#include <findim/symmetric_group.hpp>

namespace findim {

// Sparse element of the rational group algebra Q[Sigma_n]. Canonical form:
// zero coefficients are never stored; terms are kept in lexicographic
// permutation order.
class GroupAlgebraElement {
public:
    explicit GroupAlgebraElement(int n) : n_(n) {
        if (n < 0) throw RangeError("group algebra degree must be nonnegative");
    }

    static GroupAlgebraElement unit(int n) {
        GroupAlgebraElement e(n);
        e.add_term(Permutation::identity(n), 1);
        return e;
    }

    static GroupAlgebraElement of(const Permutation& sigma, const Rational& coeff = 1) {
        GroupAlgebraElement e(sigma.degree());
        e.add_term(sigma, coeff);
        return e;
    }

    int n() const { return n_; }
    const std::map<Permutation, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Permutation& sigma) const {
        auto it = terms_.find(sigma);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Permutation& sigma, const Rational& coeff) {
        if (sigma.degree() != n_)
            throw DegreeMismatch("term degree " + std::to_string(sigma.degree()) +
                                 " in algebra of degree " + std::to_string(n_));
        if (coeff == 0) return;
        auto [it, inserted] = terms_.emplace(sigma, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GroupAlgebraElement operator+(const GroupAlgebraElement& other) const {
        require_same_degree(other);
        GroupAlgebraElement r = *this;
        for (const auto& [sigma, c] : other.terms_) r.add_term(sigma, c);
        return r;
    }

    GroupAlgebraElement operator-(const GroupAlgebraElement& other) const {
        require_same_degree(other);
        GroupAlgebraElement r = *this;
        for (const auto& [sigma, c] : other.terms_) r.add_term(sigma, -c);
        return r;
    }

    GroupAlgebraElement scaled(const Rational& s) const {
        GroupAlgebraElement r(n_);
        if (s == 0) return r;
        for (const auto& [sigma, c] : terms_) r.terms_.emplace(sigma, c * s);
        return r;
    }

    // Convolution product. Degrees up to 16 go through a packed-key
    // accumulator; beyond that (unreachable under the default cap) a plain
    // ordered map is used.
    GroupAlgebraElement operator*(const GroupAlgebraElement& other) const {
        require_same_degree(other);
        GroupAlgebraElement r(n_);
        if (n_ <= 16) {
            std::unordered_map<std::uint64_t, Rational> acc;
            acc.reserve(terms_.size() * other.terms_.size());
            std::vector<int> composite(n_);
            for (const auto& [sigma, a] : terms_) {
                const std::vector<int>& si = sigma.images();
                for (const auto& [tau, b] : other.terms_) {
                    const std::vector<int>& ti = tau.images();
                    std::uint64_t key = 0;
                    for (int j = 0; j < n_; ++j) key |= static_cast<std::uint64_t>(si[ti[j]]) << (4 * j);
                    acc[key] += a * b;
                }
            }
            for (const auto& [key, c] : acc) {
                if (c == 0) continue;
                for (int j = 0; j < n_; ++j) composite[j] = static_cast<int>((key >> (4 * j)) & 0xF);
                r.terms_.emplace(Permutation(composite), c);
            }
        } else {
            for (const auto& [sigma, a] : terms_)
                for (const auto& [tau, b] : other.terms_) r.add_term(sigma.compose(tau), a * b);
        }
        return r;
    }

    bool operator==(const GroupAlgebraElement& other) const {
        return n_ == other.n_ && terms_ == other.terms_;
    }

private:
    void require_same_degree(const GroupAlgebraElement& other) const {
        if (n_ != other.n_)
            throw DegreeMismatch("group algebra degrees " + std::to_string(n_) + " and " +
                                 std::to_string(other.n_) + " differ");
    }

    int n_;
    std::map<Permutation, Rational> terms_;
};

// (1/n!) sum over sigma of sgn(sigma) * sigma; projects onto the sign isotype.
inline GroupAlgebraElement antisymmetrizer(int n, const Caps& caps = {}) {
    caps.check_group_degree(n);
    GroupAlgebraElement e(n);
    Rational factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= k;
    for (const Permutation& sigma : enumerate_group(n, caps))
        e.add_term(sigma, Rational(sigma.sign()) / factorial);
    return e;
}

// (1/n!) sum over sigma of sigma; projects onto the trivial isotype.
inline GroupAlgebraElement symmetrizer(int n, const Caps& caps = {}) {
    caps.check_group_degree(n);
    GroupAlgebraElement e(n);
    Rational factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= k;
    for (const Permutation& sigma : enumerate_group(n, caps))
        e.add_term(sigma, Rational(1) / factorial);
    return e;
}

// Central idempotent e_lambda = (f_lambda/n!) sum_sigma chi_lambda(type sigma) sigma.
inline GroupAlgebraElement central_idempotent(const Partition& lambda, const Caps& caps = {}) {
    int n = lambda.n();
    caps.check_group_degree(n);
    Rational factorial = 1;
    for (int k = 2; k <= n; ++k) factorial *= k;
    Rational scale = Rational(Integer(hook_dimension(lambda))) / factorial;

    std::map<Partition, Integer> chi_by_type;
    for (const Partition& mu : partitions_of(n)) chi_by_type.emplace(mu, character(lambda, mu));

    GroupAlgebraElement e(n);
    for (const Permutation& sigma : enumerate_group(n, caps)) {
        const Integer& chi = chi_by_type.at(cycle_type(sigma));
        if (chi == 0) continue;
        e.add_term(sigma, scale * Rational(chi));
    }
    return e;
}

// The full central system {e_lambda}: pairwise orthogonal, sums to 1.
inline std::vector<std::pair<Partition, GroupAlgebraElement>> idempotent_system(int n, const Caps& caps = {}) {
    caps.check_group_degree(n);
    std::vector<std::pair<Partition, GroupAlgebraElement>> out;
    for (const Partition& lambda : partitions_of(n)) out.emplace_back(lambda, central_idempotent(lambda, caps));
    return out;
}

} // namespace findim
