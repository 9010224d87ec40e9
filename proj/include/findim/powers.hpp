#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <findim/caps.hpp>
#include <findim/complex.hpp>
#include <findim/errors.hpp>
#include <findim/group_algebra.hpp>
#include <findim/partitions.hpp>
#include <findim/tensor.hpp>

namespace findim {

namespace detail {

inline void check_power_caps(const Complex& base, int m, const Caps& caps) {
    if (m < 0) throw RangeError("tensor power exponent must be nonnegative");
    if (m > caps.power_exponent)
        throw CapExceeded("power exponent " + std::to_string(m) + " exceeds cap " +
                          std::to_string(caps.power_exponent));
    if (base.total_dim() > caps.power_dimension)
        throw CapExceeded("base dimension " + std::to_string(base.total_dim()) + " exceeds cap " +
                          std::to_string(caps.power_dimension));
    // Working-set estimate: a dense square matrix per degree plus elimination
    // scratch. Degreewise dimensions of the power are convolution counts.
    std::map<int, double> dims;
    dims.emplace(0, 1.0);
    for (int step = 0; step < m; ++step) {
        std::map<int, double> next;
        for (const auto& [n, count] : dims)
            for (const auto& [q, dim_q] : base.dims()) next[n + q] += count * dim_q;
        dims = std::move(next);
    }
    double bytes = 0;
    for (const auto& [n, count] : dims) bytes += count * count * 48.0;
    if (bytes > static_cast<double>(caps.max_bytes))
        throw CapExceeded("estimated working set " + std::to_string(static_cast<long long>(bytes)) +
                          " bytes exceeds the memory guard");
}

// (target index, Koszul sign) of the sigma-action on one basis label.
inline std::pair<int, int> signed_tuple_action(const Permutation& sigma, const Permutation& inv,
                                               const BasisLabel& label, const TensorData& data, int degree) {
    BasisLabel moved(label.size());
    for (int j = 0; j < sigma.degree(); ++j) moved[j] = label[inv(j)];
    return {data.index_of(degree, moved), koszul_sign(sigma, label)};
}

} // namespace detail

// The m-th tensor power of a complex with its cached basis bookkeeping.
class PowerContext {
public:
    PowerContext(Complex base, int m, const Caps& caps = {}) : base_(std::move(base)), m_(m) {
        detail::check_power_caps(base_, m_, caps);
        std::vector<const Complex*> factors(m_, &base_);
        data_ = tensor_product(factors);
    }

    const Complex& base() const { return base_; }
    int exponent() const { return m_; }
    const Complex& power() const { return data_.product; }
    const TensorData& data() const { return data_; }

private:
    Complex base_;
    int m_ = 0;
    TensorData data_;
};

// Graph of a permutation on the tensor power: slot j moves to slot sigma(j),
// with the Koszul sign from transposing odd-degree factors.
inline ChainMap gamma_action(const Permutation& sigma, const PowerContext& ctx) {
    if (sigma.degree() != ctx.exponent())
        throw DegreeMismatch("gamma_action: permutation degree " + std::to_string(sigma.degree()) +
                             " on a power of exponent " + std::to_string(ctx.exponent()));
    return permute_factors(sigma, ctx.data(), ctx.data());
}

// Linear extension of gamma_action to the group algebra; a ring homomorphism
// into the chain endomorphisms of the power.
inline ChainMap algebra_action(const GroupAlgebraElement& element, const PowerContext& ctx) {
    if (element.n() != ctx.exponent())
        throw DegreeMismatch("algebra_action: element degree " + std::to_string(element.n()) +
                             " on a power of exponent " + std::to_string(ctx.exponent()));
    std::map<int, Matrix> blocks;
    for (const auto& [n, labels_n] : ctx.data().labels) {
        if (labels_n.empty()) continue;
        Matrix block(labels_n.size(), labels_n.size());
        for (const auto& [sigma, coeff] : element.terms()) {
            Permutation inv = sigma.inverse();
            for (std::size_t col = 0; col < labels_n.size(); ++col) {
                auto [row, sign] = detail::signed_tuple_action(sigma, inv, labels_n[col], ctx.data(), n);
                block(static_cast<std::size_t>(row), col) += Rational(sign) * coeff;
            }
        }
        blocks.emplace(n, std::move(block));
    }
    return ChainMap(ctx.power(), ctx.power(), std::move(blocks));
}

// Image of the antisymmetrizer on the n-th power (the wedge power).
inline Complex wedge_power(const Complex& c, int n, const Caps& caps = {}) {
    if (n == 0) return Complex::unit();
    PowerContext ctx(c, n, caps);
    return image_subcomplex(algebra_action(antisymmetrizer(n, caps), ctx)).image;
}

// Image of the symmetrizer on the n-th power (the symmetric power).
inline Complex sym_power(const Complex& c, int n, const Caps& caps = {}) {
    if (n == 0) return Complex::unit();
    PowerContext ctx(c, n, caps);
    return image_subcomplex(algebra_action(symmetrizer(n, caps), ctx)).image;
}

// Image of the central idempotent e_lambda on the |lambda|-th power.
inline Complex schur_power(const Complex& c, const Partition& lambda, const Caps& caps = {}) {
    if (lambda.n() == 0) return Complex::unit();
    PowerContext ctx(c, lambda.n(), caps);
    return image_subcomplex(algebra_action(central_idempotent(lambda, caps), ctx)).image;
}

// Even/odd content of a complex, read off the parity of homology degrees.
// The witnesses are the smallest exponents killing the even part under wedge
// powers and the odd part under symmetric powers; they are re-verified by
// brute force on the homology complex whenever the caps allow it.
struct KimuraProfile {
    int even_dimension = 0;
    int odd_dimension = 0;
    int wedge_witness = 1; // smallest n with (even part)^[n) = 0
    int sym_witness = 1;   // smallest n with (odd part)^(n] = 0
    bool witness_verified = false;
};

namespace detail {

inline Complex parity_part(const std::map<int, int>& h, int parity) {
    std::map<int, int> dims;
    for (const auto& [k, d] : h)
        if (((k % 2) + 2) % 2 == parity) dims.emplace(k, d);
    return Complex(std::move(dims), {});
}

} // namespace detail

inline KimuraProfile kimura_profile(const Complex& c, const Caps& caps = {}) {
    std::map<int, int> h = homology(c);
    Complex even = detail::parity_part(h, 0);
    Complex odd = detail::parity_part(h, 1);
    KimuraProfile profile;
    profile.even_dimension = even.total_dim();
    profile.odd_dimension = odd.total_dim();
    profile.wedge_witness = profile.even_dimension + 1;
    profile.sym_witness = profile.odd_dimension + 1;
    try {
        bool ok = wedge_power(even, profile.wedge_witness, caps).is_zero() &&
                  sym_power(odd, profile.sym_witness, caps).is_zero();
        if (profile.wedge_witness > 1)
            ok = ok && !wedge_power(even, profile.wedge_witness - 1, caps).is_zero();
        if (profile.sym_witness > 1)
            ok = ok && !sym_power(odd, profile.sym_witness - 1, caps).is_zero();
        if (!ok) throw Error("kimura_profile: witness exponents disagree with power ranks");
        profile.witness_verified = true;
    } catch (const CapExceeded&) {
        profile.witness_verified = false; // profile itself is still exact
    }
    return profile;
}

// Suspension swaps the two power families: wedge powers of shift(C) match
// symmetric powers of C shifted by n, degree by degree, and vice versa.
struct ParityFlipVerdict {
    bool wedge_of_shift_matches = false;
    bool sym_of_shift_matches = false;
    std::map<int, int> wedge_of_shift_dims;
    std::map<int, int> shifted_sym_dims;
    std::map<int, int> sym_of_shift_dims;
    std::map<int, int> shifted_wedge_dims;
    bool pass() const { return wedge_of_shift_matches && sym_of_shift_matches; }
};

inline ParityFlipVerdict parity_flip_check(const Complex& c, int n, const Caps& caps = {}) {
    Complex shifted = shift(c);
    auto shift_dims_by = [](const std::map<int, int>& dims, int amount) {
        std::map<int, int> out;
        for (const auto& [k, d] : dims) out.emplace(k + amount, d);
        return out;
    };
    ParityFlipVerdict v;
    v.wedge_of_shift_dims = wedge_power(shifted, n, caps).dims();
    v.shifted_sym_dims = shift_dims_by(sym_power(c, n, caps).dims(), n);
    v.sym_of_shift_dims = sym_power(shifted, n, caps).dims();
    v.shifted_wedge_dims = shift_dims_by(wedge_power(c, n, caps).dims(), n);
    v.wedge_of_shift_matches = v.wedge_of_shift_dims == v.shifted_sym_dims;
    v.sym_of_shift_matches = v.sym_of_shift_dims == v.shifted_wedge_dims;
    return v;
}

// Parity rule for tensor products of single-parity objects: equal parities
// produce an evenly finite dimensional product, opposite parities an oddly
// finite dimensional one, with multiplicative dimension.
struct TensorParityVerdict {
    int left_parity = 0;  // 0 even, 1 odd
    int right_parity = 0;
    KimuraProfile product_profile;
    bool parity_ok = false;
    bool dimension_ok = false;
    bool pass() const { return parity_ok && dimension_ok; }
};

inline TensorParityVerdict tensor_parity_check(const Complex& c, const Complex& d, const Caps& caps = {}) {
    auto parity_of = [](const Complex& x) {
        std::map<int, int> h = homology(x);
        bool has_even = false, has_odd = false;
        for (const auto& [k, dim] : h) (((k % 2) + 2) % 2 == 0 ? has_even : has_odd) = true;
        if (has_even && has_odd) throw MixedParity("complex has homology in both parities");
        return has_odd ? 1 : 0;
    };
    TensorParityVerdict v;
    v.left_parity = parity_of(c);
    v.right_parity = parity_of(d);
    Complex product = tensor(c, d).product;
    v.product_profile = kimura_profile(product, caps);
    int expected_parity = (v.left_parity + v.right_parity) % 2;
    int left_dim = detail::parity_part(homology(c), v.left_parity).total_dim();
    int right_dim = detail::parity_part(homology(d), v.right_parity).total_dim();
    int product_dim = expected_parity == 0 ? v.product_profile.even_dimension : v.product_profile.odd_dimension;
    int off_parity_dim = expected_parity == 0 ? v.product_profile.odd_dimension : v.product_profile.even_dimension;
    v.parity_ok = off_parity_dim == 0;
    v.dimension_ok = product_dim == left_dim * right_dim;
    return v;
}

} // namespace findim
