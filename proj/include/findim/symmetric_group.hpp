#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <findim/caps.hpp>
#include <findim/errors.hpp>

namespace findim {

// Element of the symmetric group on {0,...,n-1}, stored as its image array.
// Composition convention: (sigma.compose(tau))(j) = sigma(tau(j)).
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
                throw Error("permutation image array is not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int j) const { return images_[j]; }
    const std::vector<int>& images() const { return images_; }

    Permutation compose(const Permutation& other) const {
        if (degree() != other.degree())
            throw DegreeMismatch("composing permutations of degrees " + std::to_string(degree()) +
                                 " and " + std::to_string(other.degree()));
        std::vector<int> img(images_.size());
        for (std::size_t j = 0; j < img.size(); ++j) img[j] = images_[other.images_[j]];
        Permutation p;
        p.images_ = std::move(img); // composite of bijections, no re-validation needed
        return p;
    }

    Permutation inverse() const {
        std::vector<int> img(images_.size());
        for (std::size_t j = 0; j < img.size(); ++j) img[images_[j]] = static_cast<int>(j);
        Permutation p;
        p.images_ = std::move(img);
        return p;
    }

    // Parity of the inversion count.
    int sign() const {
        int inversions = 0;
        for (std::size_t j = 0; j < images_.size(); ++j)
            for (std::size_t k = j + 1; k < images_.size(); ++k)
                if (images_[j] > images_[k]) ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }

    bool operator==(const Permutation& other) const { return images_ == other.images_; }
    bool operator<(const Permutation& other) const { return images_ < other.images_; }

private:
    std::vector<int> images_;
};

// All n! permutations in lexicographic order of image arrays; identity first.
inline std::vector<Permutation> enumerate_group(int n, const Caps& caps = {}) {
    caps.check_group_degree(n);
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> group;
    do {
        group.push_back(Permutation(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return group;
}

// i-subset of {0,...,m-1}, members strictly increasing.
struct Subset {
    std::vector<int> members;
    int m = 0;

    bool contains(int j) const { return std::binary_search(members.begin(), members.end(), j); }

    Subset image_under(const Permutation& sigma) const {
        Subset s;
        s.m = m;
        s.members.reserve(members.size());
        for (int j : members) s.members.push_back(sigma(j));
        std::sort(s.members.begin(), s.members.end());
        return s;
    }

    bool operator==(const Subset& other) const { return m == other.m && members == other.members; }
    bool operator<(const Subset& other) const { return members < other.members; }
};

// All i-subsets of {0,...,m-1} in lexicographic order.
inline std::vector<Subset> subsets(int m, int i) {
    if (i < 0 || i > m) throw RangeError("subsets: need 0 <= i <= m");
    std::vector<Subset> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == i) {
            out.push_back(Subset{cur, m});
            return;
        }
        for (int v = next; v <= m - (i - static_cast<int>(cur.size())); ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Coset representatives for Sigma_{m-i} x Sigma_i in Sigma_m: for each
// i-subset S the unique order-preserving permutation taking the last i
// positions onto S and the first m-i positions onto its complement.
inline std::vector<std::pair<Subset, Permutation>> shuffles(int m, int i) {
    if (i < 0 || i > m) throw RangeError("shuffles: need 0 <= i <= m");
    std::vector<std::pair<Subset, Permutation>> out;
    for (const Subset& s : subsets(m, i)) {
        std::vector<int> img(m);
        std::vector<int> complement;
        complement.reserve(m - i);
        for (int v = 0; v < m; ++v)
            if (!s.contains(v)) complement.push_back(v);
        for (int t = 0; t < m - i; ++t) img[t] = complement[t];
        for (int t = 0; t < i; ++t) img[m - i + t] = s.members[t];
        out.emplace_back(s, Permutation(std::move(img)));
    }
    return out;
}

} // namespace findim
