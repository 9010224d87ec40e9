#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <findim/complex.hpp>
#include <findim/errors.hpp>
#include <findim/symmetric_group.hpp>

namespace findim {

// One basis vector of a tensor product: (degree, basis index) per factor.
using BasisLabel = std::vector<std::pair<int, int>>;

// Tensor product of a list of complexes together with its basis bookkeeping.
//
// Basis order is the left-associated iterated-tensor order: in each total
// degree, labels are sorted by (prefix degree, prefix index, last factor
// index) recursively, which for two factors is lexicographic in
// (p, index in C_p, index in D_q). All permutation actions and inclusion
// maps downstream rely on this order being reproducible.
struct TensorData {
    Complex product;
    int factor_count = 0;
    std::map<int, std::vector<BasisLabel>> labels;     // per total degree
    std::map<int, std::map<BasisLabel, int>> position; // label -> index in its degree

    int index_of(int degree, const BasisLabel& label) const {
        return position.at(degree).at(label);
    }
};

namespace detail {

inline std::map<int, std::vector<BasisLabel>> enumerate_labels(const std::vector<const Complex*>& factors) {
    std::map<int, std::vector<BasisLabel>> current;
    current.emplace(0, std::vector<BasisLabel>{BasisLabel{}}); // empty product = unit
    for (const Complex* factor : factors) {
        std::map<int, std::vector<BasisLabel>> next;
        for (const auto& [prefix_degree, prefix_labels] : current) {
            for (const BasisLabel& prefix : prefix_labels) {
                for (const auto& [q, dim_q] : factor->dims()) {
                    auto& bucket = next[prefix_degree + q];
                    for (int j = 0; j < dim_q; ++j) {
                        BasisLabel label = prefix;
                        label.emplace_back(q, j);
                        bucket.push_back(std::move(label));
                    }
                }
            }
        }
        current = std::move(next);
    }
    return current;
}

// Koszul sign of reordering homogeneous factors by sigma: one factor of
// (-1)^{|v_j||v_k|} per inversion.
inline int koszul_sign(const Permutation& sigma, const BasisLabel& label) {
    int sign = 1;
    for (int j = 0; j < sigma.degree(); ++j)
        for (int k = j + 1; k < sigma.degree(); ++k)
            if (sigma(j) > sigma(k) && (label[j].first % 2 != 0) && (label[k].first % 2 != 0)) sign = -sign;
    return sign;
}

} // namespace detail

// Builds the tensor product complex of the given factors (empty list gives
// the unit). d(v_1 x ... x v_m) = sum_j (-1)^{p_1+...+p_{j-1}} v_1 x ... x d v_j x ... x v_m.
inline TensorData tensor_product(const std::vector<const Complex*>& factors) {
    TensorData data;
    data.factor_count = static_cast<int>(factors.size());
    data.labels = detail::enumerate_labels(factors);

    std::map<int, int> dims;
    for (const auto& [n, labels_n] : data.labels) {
        if (labels_n.empty()) continue;
        dims.emplace(n, static_cast<int>(labels_n.size()));
        auto& pos = data.position[n];
        for (std::size_t i = 0; i < labels_n.size(); ++i) pos.emplace(labels_n[i], static_cast<int>(i));
    }

    std::map<int, Matrix> diffs;
    for (const auto& [n, labels_n] : data.labels) {
        auto below = data.labels.find(n - 1);
        if (below == data.labels.end() || labels_n.empty() || below->second.empty()) continue;
        Matrix block(below->second.size(), labels_n.size());
        for (std::size_t col = 0; col < labels_n.size(); ++col) {
            const BasisLabel& label = labels_n[col];
            int prefix_parity = 1;
            for (int j = 0; j < data.factor_count; ++j) {
                const auto [p, idx] = label[j];
                Matrix d_j = factors[j]->differential(p);
                for (std::size_t i = 0; i < d_j.rows(); ++i) {
                    if (d_j(i, idx) == 0) continue;
                    BasisLabel target = label;
                    target[j] = {p - 1, static_cast<int>(i)};
                    int row = data.index_of(n - 1, target);
                    block(row, col) += Rational(prefix_parity) * d_j(i, idx);
                }
                if (p % 2 != 0) prefix_parity = -prefix_parity;
            }
        }
        diffs.emplace(n, std::move(block));
    }
    data.product = Complex(dims, std::move(diffs));
    return data;
}

// Binary tensor: the product complex plus the bookkeeping that
// locates each pair of factor basis vectors inside it.
inline TensorData tensor(const Complex& c, const Complex& d) { return tensor_product({&c, &d}); }

// Tensor product of degree-zero chain maps f_j : A_j -> B_j, as a chain map
// between prepared tensor structures. Entries are products of factor
// entries; no Koszul signs arise for degree-zero maps.
inline ChainMap tensor_maps(const std::vector<const ChainMap*>& maps, const TensorData& source,
                            const TensorData& target) {
    std::map<int, Matrix> blocks;
    for (const auto& [n, src_labels] : source.labels) {
        auto tgt = target.labels.find(n);
        if (src_labels.empty()) continue;
        if (tgt == target.labels.end() || tgt->second.empty()) continue;
        Matrix block(tgt->second.size(), src_labels.size());
        for (std::size_t col = 0; col < src_labels.size(); ++col) {
            const BasisLabel& label = src_labels[col];
            // Expand the product of factor columns recursively.
            std::vector<std::pair<BasisLabel, Rational>> partial{{BasisLabel{}, Rational(1)}};
            for (std::size_t j = 0; j < maps.size(); ++j) {
                const auto [p, idx] = label[j];
                Matrix block_j = maps[j]->block(p);
                std::vector<std::pair<BasisLabel, Rational>> next;
                for (const auto& [prefix, coeff] : partial) {
                    for (std::size_t i = 0; i < block_j.rows(); ++i) {
                        if (block_j(i, idx) == 0) continue;
                        BasisLabel extended = prefix;
                        extended.emplace_back(p, static_cast<int>(i));
                        next.emplace_back(std::move(extended), coeff * block_j(i, idx));
                    }
                }
                partial = std::move(next);
                if (partial.empty()) break;
            }
            for (const auto& [full, coeff] : partial) block(target.index_of(n, full), col) += coeff;
        }
        blocks.emplace(n, std::move(block));
    }
    return ChainMap(source.product, target.product, std::move(blocks));
}

namespace detail {

// Raw blocks of the factor-reordering map, without chain-map validation.
inline std::map<int, Matrix> permutation_blocks(const Permutation& sigma, const TensorData& source,
                                                const TensorData& target) {
    if (sigma.degree() != source.factor_count)
        throw DegreeMismatch("permute_factors: permutation degree " + std::to_string(sigma.degree()) +
                             " vs " + std::to_string(source.factor_count) + " factors");
    Permutation inv = sigma.inverse();
    std::map<int, Matrix> blocks;
    for (const auto& [n, src_labels] : source.labels) {
        if (src_labels.empty()) continue;
        auto tgt = target.labels.find(n);
        if (tgt == target.labels.end() || tgt->second.size() != src_labels.size())
            throw Error("permute_factors: target structure does not match in degree " + std::to_string(n));
        Matrix block(tgt->second.size(), src_labels.size());
        for (std::size_t col = 0; col < src_labels.size(); ++col) {
            const BasisLabel& label = src_labels[col];
            BasisLabel moved(label.size());
            for (int j = 0; j < sigma.degree(); ++j) moved[j] = label[inv(j)];
            block(target.index_of(n, moved), col) = koszul_sign(sigma, label);
        }
        blocks.emplace(n, std::move(block));
    }
    return blocks;
}

} // namespace detail

// Chain map reordering tensor factors by sigma with the Koszul sign: the
// factor in slot j moves to slot sigma(j). The target structure must be the
// tensor of the same factors in permuted order.
inline ChainMap permute_factors(const Permutation& sigma, const TensorData& source, const TensorData& target) {
    return ChainMap(source.product, target.product, detail::permutation_blocks(sigma, source, target));
}

// The symmetry isomorphism C (x) D -> D (x) C, x (x) y -> (-1)^{|x||y|} y (x) x.
inline ChainMap braiding(const Complex& c, const Complex& d) {
    TensorData source = tensor_product({&c, &d});
    TensorData target = tensor_product({&d, &c});
    return permute_factors(Permutation({1, 0}), source, target);
}

} // namespace findim
