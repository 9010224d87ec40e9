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
#include <findim/powers.hpp>
#include <findim/symmetric_group.hpp>
#include <findim/tensor.hpp>

namespace findim {

// Which of the two pure idempotents drives a mixed-power computation:
// plus = antisymmetrizer (wedge family), minus = symmetrizer (symmetric family).
enum class Sign { plus, minus };

inline const char* sign_name(Sign s) { return s == Sign::plus ? "+" : "-"; }

inline GroupAlgebraElement mixing_idempotent(int m, Sign s, const Caps& caps = {}) {
    return s == Sign::plus ? antisymmetrizer(m, caps) : symmetrizer(m, caps);
}

// Shared state for all cube computations attached to a degreewise-injective
// map f : X -> Y and an exponent m.
//
// Everything runs in "adapted" coordinates: per degree, Y gets the basis
// [f-columns | completing standard vectors], so the image of f is spanned by
// the first dim X coordinates. In the induced product basis of Y^(m) each
// basis vector carries an X-slot count, and the level-i cube object is
// exactly the span of the coordinates with at least i X-slots. Permutation
// graphs act by the same signed tuple rule in both coordinate systems.
class CubeContext {
public:
    CubeContext(const ChainMap& f, int m, const Caps& caps = {})
        : f_(f), m_(m) {
        if (m < 0) throw RangeError("cube exponent must be nonnegative");
        if (!f_.is_injective()) throw NotInjective("cube construction requires a degreewise injective map");
        const Complex& x = f_.source();
        const Complex& y = f_.target();

        // Adapted change of basis per degree of Y.
        std::map<int, Matrix> adapt_blocks;
        for (const auto& [k, dim_y] : y.dims()) {
            Matrix fk = f_.block(k);
            RrefResult extended = rref(hstack(fk, Matrix::identity(dim_y)));
            Matrix a(dim_y, dim_y);
            for (std::size_t j = 0; j < fk.cols(); ++j)
                for (std::size_t i = 0; i < fk.rows(); ++i) a(i, j) = fk(i, j);
            std::size_t out = fk.cols();
            for (std::size_t p : extended.pivots) {
                if (p < fk.cols()) continue;
                a(p - fk.cols(), out) = 1;
                ++out;
            }
            adapt_blocks.emplace(k, std::move(a));
            x_dim_.emplace(k, x.dim(k));
        }
        std::map<int, Matrix> adapted_diffs;
        std::map<int, Matrix> inverse_blocks;
        for (auto& [k, a] : adapt_blocks) inverse_blocks.emplace(k, inverse(a));
        for (const auto& [k, dim_y] : y.dims()) {
            auto below = adapt_blocks.find(k - 1);
            if (below == adapt_blocks.end()) continue;
            Matrix d = inverse_blocks.at(k - 1) * (y.differential(k) * adapt_blocks.at(k));
            adapted_diffs.emplace(k, std::move(d));
        }
        Complex y_adapted(y.dims(), std::move(adapted_diffs));
        adapt_.emplace(ChainMap(y_adapted, y, std::move(adapt_blocks)));
        adapt_inverse_.emplace(ChainMap(y, y_adapted, std::move(inverse_blocks)));

        adapted_power_.emplace(y_adapted, m_, caps);
        original_power_.emplace(y, m_, caps);
        std::vector<const ChainMap*> adapt_factors(m_, &*adapt_);
        std::vector<const ChainMap*> inverse_factors(m_, &*adapt_inverse_);
        to_original_.emplace(tensor_maps(adapt_factors, adapted_power_->data(), original_power_->data()));
        from_original_.emplace(tensor_maps(inverse_factors, original_power_->data(), adapted_power_->data()));

        for (const auto& [n, labels_n] : adapted_power_->data().labels) {
            std::vector<int>& counts = x_counts_[n];
            counts.reserve(labels_n.size());
            for (const BasisLabel& label : labels_n) {
                int c = 0;
                for (const auto& [p, idx] : label)
                    if (idx < x_dim(p)) ++c;
                counts.push_back(c);
            }
        }

        auto [z, g] = quotient(y, make_subcomplex(y, f_image_spans()));
        z_ = std::move(z);
        quotient_map_.emplace(std::move(g));
    }

    const ChainMap& inclusion_map() const { return f_; }
    int exponent() const { return m_; }
    const Complex& x() const { return f_.source(); }
    const Complex& y() const { return f_.target(); }
    const Complex& z() const { return z_; }
    const ChainMap& quotient_map() const { return *quotient_map_; }

    const PowerContext& adapted_power() const { return *adapted_power_; }
    const PowerContext& original_power() const { return *original_power_; }
    const ChainMap& to_original() const { return *to_original_; }
    const ChainMap& from_original() const { return *from_original_; }

    int x_dim(int degree) const {
        auto it = x_dim_.find(degree);
        return it == x_dim_.end() ? 0 : it->second;
    }

    // Indices (in label order) of product basis vectors with at least
    // min_count X-slots.
    std::vector<std::size_t> cube_indices(int degree, int min_count) const {
        std::vector<std::size_t> out;
        auto it = x_counts_.find(degree);
        if (it == x_counts_.end()) return out;
        for (std::size_t idx = 0; idx < it->second.size(); ++idx)
            if (it->second[idx] >= min_count) out.push_back(idx);
        return out;
    }

    std::map<int, int> cube_dims(int min_count) const {
        std::map<int, int> dims;
        for (const auto& [n, counts] : x_counts_) {
            int c = static_cast<int>(cube_indices(n, min_count).size());
            if (c > 0) dims.emplace(n, c);
        }
        return dims;
    }

    // The cube subcomplex in its own coordinates (the selected adapted
    // product basis vectors), with the restricted differential.
    struct CubeCoordinates {
        Complex complex;
        std::map<int, std::vector<std::size_t>> indices;
    };

    CubeCoordinates cube_coordinates(int min_count) const {
        CubeCoordinates out;
        std::map<int, int> dims;
        for (const auto& [n, counts] : x_counts_) {
            auto idx = cube_indices(n, min_count);
            if (!idx.empty()) {
                dims.emplace(n, static_cast<int>(idx.size()));
                out.indices.emplace(n, std::move(idx));
            }
        }
        std::map<int, Matrix> diffs;
        for (const auto& [n, idx] : out.indices) {
            auto below = out.indices.find(n - 1);
            if (below == out.indices.end()) {
                if (!restricted_block_is_zero(n, idx)) throw Error("cube differential leaks out of the cube");
                continue;
            }
            diffs.emplace(n, restricted_differential(n, below->second, idx));
        }
        out.complex = Complex(std::move(dims), std::move(diffs));
        return out;
    }

    // Restriction of the degree-wise graph action of an algebra element to a
    // cube coordinate set (X-slot counts are permutation invariants, so the
    // set is stable).
    Matrix restricted_action(const GroupAlgebraElement& element, int degree,
                             const std::vector<std::size_t>& indices) const {
        const auto& labels_n = adapted_power_->data().labels.at(degree);
        std::vector<int> position(labels_n.size(), -1);
        for (std::size_t c = 0; c < indices.size(); ++c) position[indices[c]] = static_cast<int>(c);
        Matrix block(indices.size(), indices.size());
        for (const auto& [sigma, coeff] : element.terms()) {
            Permutation inv = sigma.inverse();
            for (std::size_t c = 0; c < indices.size(); ++c) {
                auto [row, sign] = detail::signed_tuple_action(sigma, inv, labels_n[indices[c]],
                                                               adapted_power_->data(), degree);
                if (position[row] < 0) throw Error("graph action leaks out of the cube");
                block(static_cast<std::size_t>(position[row]), c) += Rational(sign) * coeff;
            }
        }
        return block;
    }

    // Image of the mixed idempotent d^{sign}_{m,i} inside the cube
    // coordinates: the complex I^{sign}_{m,i} with its splitting.
    struct LevelSplit {
        CubeCoordinates cube;
        Complex image;
        std::map<int, Matrix> inclusion;  // image -> cube coordinates
        std::map<int, Matrix> projection; // cube coordinates -> image
    };

    LevelSplit level_split(int i, Sign sign, const Caps& caps = {}) const {
        if (i < 0 || i > m_) throw RangeError("cube level must satisfy 0 <= i <= m");
        LevelSplit out;
        out.cube = cube_coordinates(i);
        GroupAlgebraElement idem = mixing_idempotent(m_, sign, caps);
        std::map<int, int> dims;
        for (const auto& [n, idx] : out.cube.indices) {
            Matrix p = restricted_action(idem, n, idx);
            if (!(p * p == p)) throw NotIdempotent("restricted mixed idempotent failed to square to itself");
            SplitData split = split_idempotent(p);
            dims.emplace(n, static_cast<int>(split.inclusion.cols()));
            out.inclusion.emplace(n, std::move(split.inclusion));
            out.projection.emplace(n, std::move(split.projection));
        }
        std::map<int, Matrix> diffs;
        for (const auto& [n, d] : dims) {
            if (d == 0 || dims.count(n - 1) == 0 || dims.at(n - 1) == 0) continue;
            diffs.emplace(n, out.projection.at(n - 1) * (out.cube.complex.differential(n) * out.inclusion.at(n)));
        }
        out.image = Complex(std::move(dims), std::move(diffs));
        return out;
    }

private:
    std::map<int, Matrix> f_image_spans() const {
        std::map<int, Matrix> spans;
        for (const auto& [k, block] : f_.stored_blocks()) spans.emplace(k, block);
        return spans;
    }

    Matrix restricted_differential(int n, const std::vector<std::size_t>& rows,
                                   const std::vector<std::size_t>& cols) const {
        const Matrix full = adapted_power_->power().differential(n);
        std::vector<int> row_position(full.rows(), -1);
        for (std::size_t r = 0; r < rows.size(); ++r) row_position[rows[r]] = static_cast<int>(r);
        Matrix block(rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            for (std::size_t r = 0; r < full.rows(); ++r) {
                const Rational& v = full(r, cols[c]);
                if (v == 0) continue;
                if (row_position[r] < 0) throw Error("cube differential leaks out of the cube");
                block(static_cast<std::size_t>(row_position[r]), c) = v;
            }
        }
        return block;
    }

    bool restricted_block_is_zero(int n, const std::vector<std::size_t>& cols) const {
        const Matrix full = adapted_power_->power().differential(n);
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < full.rows(); ++r)
                if (full(r, cols[c]) != 0) return false;
        return true;
    }

    ChainMap f_;
    int m_;
    Complex z_;
    std::optional<ChainMap> quotient_map_;
    std::optional<ChainMap> adapt_;          // Y_adapted -> Y
    std::optional<ChainMap> adapt_inverse_;  // Y -> Y_adapted
    std::optional<PowerContext> adapted_power_;
    std::optional<PowerContext> original_power_;
    std::optional<ChainMap> to_original_;    // adapted power -> Y^(m)
    std::optional<ChainMap> from_original_;
    std::map<int, int> x_dim_;
    std::map<int, std::vector<int>> x_counts_;
};

// The level-i sub-tensor-power of Y^(m): span of all products with at
// least i factors from the image of f, as a subcomplex of Y^(m).
struct CubeObject {
    ChainMap f;
    int m = 0;
    int i = 0;
    Subcomplex subcomplex;
};

inline CubeObject cube_object(const ChainMap& f, int m, int i, const Caps& caps = {}) {
    if (i < 0 || i > m) throw RangeError("cube_object: need 0 <= i <= m");
    CubeContext ctx(f, m, caps);
    std::map<int, Matrix> basis;
    for (const auto& [n, dim] : ctx.original_power().power().dims()) {
        auto idx = ctx.cube_indices(n, i);
        if (idx.empty()) continue;
        basis.emplace(n, ctx.to_original().block(n).select_columns(idx));
    }
    Subcomplex s{ctx.original_power().power(), std::move(basis)};
    verify_closure(s);
    return CubeObject{f, m, i, std::move(s)};
}

// Dimension bookkeeping for the cofiber sequence of cube objects: the
// quotient of the level-(i-1) cube by the level-i cube must match the direct
// sum of the C(m,i-1) products with exactly i-1 X-factors, and every cube
// object's graded dimension must match its combinatorial expansion.
struct CubeQuotientVerdict {
    int m = 0;
    int i = 0;
    std::map<int, int> cube_dims;       // level-i cube object
    std::map<int, int> previous_dims;   // level-(i-1) cube object
    std::map<int, int> quotient_dims;   // difference
    std::map<int, int> expected_quotient_dims;
    std::map<int, int> expected_cube_dims;
    bool quotient_ok = false;
    bool expansion_ok = false;
    bool pass() const { return quotient_ok && expansion_ok; }
};

namespace detail {

inline std::map<int, int> convolve_dims(const std::map<int, int>& a, const std::map<int, int>& b) {
    std::map<int, int> out;
    for (const auto& [p, dp] : a)
        for (const auto& [q, dq] : b) out[p + q] += dp * dq;
    return out;
}

inline std::map<int, int> dims_power(const std::map<int, int>& a, int j) {
    std::map<int, int> out{{0, 1}};
    for (int step = 0; step < j; ++step) out = convolve_dims(out, a);
    return out;
}

inline std::map<int, int> scale_dims(std::map<int, int> a, long long factor) {
    for (auto& [k, d] : a) d = static_cast<int>(d * factor);
    return a;
}

inline std::map<int, int> add_dims(std::map<int, int> a, const std::map<int, int>& b) {
    for (const auto& [k, d] : b) a[k] += d;
    return a;
}

inline std::map<int, int> prune_dims(std::map<int, int> a) {
    for (auto it = a.begin(); it != a.end();)
        it = it->second == 0 ? a.erase(it) : std::next(it);
    return a;
}

inline long long binomial(int m, int j) {
    if (j < 0 || j > m) return 0;
    long long out = 1;
    for (int t = 1; t <= j; ++t) out = out * (m - j + t) / t;
    return out;
}

} // namespace detail

inline CubeQuotientVerdict cube_quotient_check(const ChainMap& f, int m, int i, const Caps& caps = {}) {
    if (i < 0 || i > m) throw RangeError("cube_quotient_check: need 0 <= i <= m");
    CubeContext ctx(f, m, caps);
    const std::map<int, int> x_dims = ctx.x().dims();
    const std::map<int, int> z_dims = ctx.z().dims();

    CubeQuotientVerdict v;
    v.m = m;
    v.i = i;
    v.cube_dims = ctx.cube_dims(i);
    v.previous_dims = i == 0 ? ctx.cube_dims(0) : ctx.cube_dims(i - 1);
    for (const auto& [n, d] : v.previous_dims) {
        auto it = v.cube_dims.find(n);
        int diff = d - (it == v.cube_dims.end() ? 0 : it->second);
        if (diff != 0) v.quotient_dims.emplace(n, diff);
    }
    // Quotient by the next inner cube object has one product per (i-1)-subset;
    // at i = 0 the quotient of Y^(m) by itself is zero.
    if (i >= 1) {
        v.expected_quotient_dims = detail::prune_dims(detail::scale_dims(
            detail::convolve_dims(detail::dims_power(z_dims, m - i + 1), detail::dims_power(x_dims, i - 1)),
            detail::binomial(m, i - 1)));
    }
    std::map<int, int> expansion;
    for (int j = i; j <= m; ++j) {
        expansion = detail::add_dims(
            expansion, detail::scale_dims(detail::convolve_dims(detail::dims_power(x_dims, j),
                                                                detail::dims_power(z_dims, m - j)),
                                          detail::binomial(m, j)));
    }
    v.expected_cube_dims = detail::prune_dims(std::move(expansion));
    v.quotient_ok = v.quotient_dims == v.expected_quotient_dims;
    v.expansion_ok = v.cube_dims == v.expected_cube_dims;
    return v;
}

// I^{sign}_{m,i}, split through the cube object: the cube is a subcomplex
// of Y^(m) with no preferred chain-level complement (the differential moves
// complementary coordinates into the cube), so the splitting projection
// lives on the cube, exactly as in the filtration triangles.
struct MixedIdempotentImage {
    Complex cube;               // level-i cube object in its own coordinates
    ChainMap cube_inclusion;    // cube -> Y^(m)
    Complex image;              // I^{sign}_{m,i}
    ChainMap inclusion;         // image -> cube
    ChainMap projection;        // cube -> image
    ChainMap ambient_inclusion; // image -> Y^(m)
};

inline MixedIdempotentImage mixed_idempotent_image(const ChainMap& f, int m, int i, Sign sign,
                                                   const Caps& caps = {}) {
    CubeContext ctx(f, m, caps);
    CubeContext::LevelSplit split = ctx.level_split(i, sign, caps);
    std::map<int, Matrix> cube_incl_blocks, incl_blocks, proj_blocks, ambient_blocks;
    for (const auto& [n, idx] : split.cube.indices) {
        Matrix cube_columns = ctx.to_original().block(n).select_columns(idx);
        if (split.image.dim(n) > 0) {
            incl_blocks.emplace(n, split.inclusion.at(n));
            proj_blocks.emplace(n, split.projection.at(n));
            ambient_blocks.emplace(n, cube_columns * split.inclusion.at(n));
        }
        cube_incl_blocks.emplace(n, std::move(cube_columns));
    }
    const Complex& ambient = ctx.original_power().power();
    ChainMap cube_inclusion(split.cube.complex, ambient, std::move(cube_incl_blocks));
    ChainMap inclusion(split.image, split.cube.complex, std::move(incl_blocks));
    ChainMap projection(split.cube.complex, split.image, std::move(proj_blocks));
    ChainMap ambient_inclusion(split.image, ambient, std::move(ambient_blocks));
    return MixedIdempotentImage{split.cube.complex, std::move(cube_inclusion), split.image,
                                std::move(inclusion), std::move(projection), std::move(ambient_inclusion)};
}

} // namespace findim
