#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <findim/errors.hpp>
#include <findim/rational.hpp>
#include <findim/symmetric_group.hpp>

namespace findim {

// Partition of n: weakly decreasing positive parts. The empty partition is
// the unique partition of 0.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw Error("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1]) throw Error("partition parts must be weakly decreasing");
        }
    }

    const std::vector<int>& parts() const { return parts_; }
    int rows() const { return static_cast<int>(parts_.size()); }

    int n() const {
        int s = 0;
        for (int p : parts_) s += p;
        return s;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

    bool operator==(const Partition& other) const { return parts_ == other.parts_; }
    bool operator<(const Partition& other) const { return parts_ < other.parts_; }

private:
    std::vector<int> parts_;
};

// All partitions of n, largest-part-first ("(n)" first, "(1,...,1)" last).
inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw RangeError("partitions_of: n must be nonnegative");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(Partition(cur));
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Number of standard Young tableaux of shape lambda, by the hook length formula.
inline Integer hook_dimension(const Partition& lambda) {
    const auto& parts = lambda.parts();
    Integer factorial = 1;
    for (int k = 2; k <= lambda.n(); ++k) factorial *= k;
    Integer hooks = 1;
    std::vector<int> column_heights(parts.empty() ? 0 : parts[0], 0);
    for (int r = static_cast<int>(parts.size()) - 1; r >= 0; --r)
        for (int c = 0; c < parts[r]; ++c)
            if (column_heights[c] == 0) column_heights[c] = r + 1;
    for (std::size_t r = 0; r < parts.size(); ++r)
        for (int c = 0; c < parts[r]; ++c)
            hooks *= (parts[r] - c) + (column_heights[c] - static_cast<int>(r) - 1);
    return factorial / hooks;
}

// Cycle type of a permutation as a partition of its degree.
inline Partition cycle_type(const Permutation& sigma) {
    std::vector<bool> seen(sigma.degree(), false);
    std::vector<int> lengths;
    for (int start = 0; start < sigma.degree(); ++start) {
        if (seen[start]) continue;
        int len = 0;
        for (int j = start; !seen[j]; j = sigma(j)) {
            seen[j] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return Partition(std::move(lengths));
}

// Size of the conjugacy class with cycle type mu: n! / prod_j j^{m_j} m_j!.
inline Integer conjugacy_class_size(const Partition& mu) {
    Integer factorial = 1;
    for (int k = 2; k <= mu.n(); ++k) factorial *= k;
    Integer centralizer = 1;
    std::map<int, int> multiplicity;
    for (int p : mu.parts()) ++multiplicity[p];
    for (auto [part, count] : multiplicity) {
        for (int c = 1; c <= count; ++c) centralizer *= Integer(part) * c;
    }
    return factorial / centralizer;
}

namespace detail {

// Border strips are enumerated through beta-numbers (first-column hook
// lengths): removing a strip of length t means lowering one beta value by t
// without colliding, and the strip height is the number of beta values
// jumped over.
inline Integer murnaghan_nakayama(std::vector<int> lambda, std::vector<int> mu,
                                  std::map<std::pair<std::vector<int>, std::vector<int>>, Integer>& memo) {
    if (lambda.empty()) return 1;
    auto key = std::make_pair(lambda, mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    int t = mu.front();
    std::vector<int> mu_rest(mu.begin() + 1, mu.end());

    int k = static_cast<int>(lambda.size());
    std::vector<int> beta(k);
    for (int i = 0; i < k; ++i) beta[i] = lambda[i] + (k - 1 - i);

    Integer total = 0;
    for (int i = 0; i < k; ++i) {
        int lowered = beta[i] - t;
        if (lowered < 0) continue;
        bool collision = false;
        int jumped = 0;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            if (beta[j] == lowered) collision = true;
            if (beta[j] > lowered && beta[j] < beta[i]) ++jumped;
        }
        if (collision) continue;
        std::vector<int> new_beta = beta;
        new_beta[i] = lowered;
        std::sort(new_beta.rbegin(), new_beta.rend());
        std::vector<int> new_lambda;
        for (int j = 0; j < k; ++j) {
            int part = new_beta[j] - (k - 1 - j);
            if (part > 0) new_lambda.push_back(part);
        }
        Integer sub = murnaghan_nakayama(new_lambda, mu_rest, memo);
        total += (jumped % 2 == 0) ? sub : -sub;
    }
    memo[key] = total;
    return total;
}

} // namespace detail

// Value of the irreducible character chi_lambda on the conjugacy class of
// cycle type mu, via the Murnaghan-Nakayama recursion.
inline Integer character(const Partition& lambda, const Partition& mu) {
    if (lambda.n() != mu.n())
        throw SizeMismatch("character: |lambda| = " + std::to_string(lambda.n()) +
                           " but |mu| = " + std::to_string(mu.n()));
    std::map<std::pair<std::vector<int>, std::vector<int>>, Integer> memo;
    return detail::murnaghan_nakayama(lambda.parts(), mu.parts(), memo);
}

} // namespace findim
