#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <findim/errors.hpp>
#include <findim/linalg.hpp>
#include <findim/matrix.hpp>

namespace findim {

// Bounded chain complex of finite-dimensional Q-vector spaces with a
// degree -1 differential. Zero-dimensional degrees are never stored, and
// d_k thinks of itself as a (dim C_{k-1} x dim C_k) matrix.
class Complex {
public:
    Complex() = default;

    Complex(std::map<int, int> dims, std::map<int, Matrix> differentials) {
        for (auto& [k, d] : dims) {
            if (d < 0) throw Error("negative dimension in degree " + std::to_string(k));
            if (d > 0) dims_.emplace(k, d);
        }
        for (auto& [k, block] : differentials) {
            std::size_t target = dim_or_zero(dims_, k - 1);
            std::size_t source = dim_or_zero(dims_, k);
            if (block.rows() != target || block.cols() != source)
                throw Error("differential in degree " + std::to_string(k) + " has shape " + block.shape() +
                            ", expected " + std::to_string(target) + "x" + std::to_string(source));
            if (target == 0 || source == 0 || block.is_zero()) continue;
            diffs_.emplace(k, std::move(block));
        }
        for (const auto& [k, block] : diffs_) {
            auto above = diffs_.find(k + 1);
            if (above != diffs_.end() && !(block * above->second).is_zero())
                throw Error("d_" + std::to_string(k) + " o d_" + std::to_string(k + 1) + " != 0");
        }
    }

    // Q^dim concentrated in one degree.
    static Complex point(int degree, int dim) {
        std::map<int, int> dims;
        if (dim > 0) dims.emplace(degree, dim);
        return Complex(std::move(dims), {});
    }

    static Complex unit() { return point(0, 1); }

    const std::map<int, int>& dims() const { return dims_; }
    const std::map<int, Matrix>& stored_differentials() const { return diffs_; }

    int dim(int k) const {
        auto it = dims_.find(k);
        return it == dims_.end() ? 0 : it->second;
    }

    Matrix differential(int k) const {
        auto it = diffs_.find(k);
        if (it != diffs_.end()) return it->second;
        return Matrix(dim(k - 1), dim(k));
    }

    int total_dim() const {
        int t = 0;
        for (const auto& [k, d] : dims_) t += d;
        return t;
    }

    bool is_zero() const { return dims_.empty(); }
    int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
    int max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }

    bool operator==(const Complex& other) const {
        return dims_ == other.dims_ && diffs_ == other.diffs_;
    }

private:
    static std::size_t dim_or_zero(const std::map<int, int>& dims, int k) {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : static_cast<std::size_t>(it->second);
    }

    std::map<int, int> dims_;
    std::map<int, Matrix> diffs_;
};

// dim H_k = dim ker d_k - rank d_{k+1}, per degree; zero entries omitted.
inline std::map<int, int> homology(const Complex& c) {
    std::map<int, int> h;
    for (const auto& [k, d] : c.dims()) {
        int kernel = d - static_cast<int>(rank(c.differential(k)));
        int image = static_cast<int>(rank(c.differential(k + 1)));
        if (kernel - image > 0) h.emplace(k, kernel - image);
    }
    return h;
}

inline bool is_acyclic(const Complex& c) { return homology(c).empty(); }

inline long long euler_characteristic(const Complex& c) {
    long long chi = 0;
    for (const auto& [k, d] : c.dims()) chi += (k % 2 == 0) ? d : -d;
    return chi;
}

// Suspension: degrees move up by one, differential negated.
inline Complex shift(const Complex& c) {
    std::map<int, int> dims;
    for (const auto& [k, d] : c.dims()) dims.emplace(k + 1, d);
    std::map<int, Matrix> diffs;
    for (const auto& [k, block] : c.stored_differentials()) diffs.emplace(k + 1, -block);
    return Complex(std::move(dims), std::move(diffs));
}

// Degreewise map of complexes commuting with the differentials; the
// commuting squares are verified at construction.
class ChainMap {
public:
    ChainMap(Complex source, Complex target, std::map<int, Matrix> blocks)
        : source_(std::move(source)), target_(std::move(target)) {
        for (auto& [k, block] : blocks) {
            if (block.rows() != static_cast<std::size_t>(target_.dim(k)) ||
                block.cols() != static_cast<std::size_t>(source_.dim(k)))
                throw Error("chain map block in degree " + std::to_string(k) + " has shape " + block.shape() +
                            ", expected " + std::to_string(target_.dim(k)) + "x" + std::to_string(source_.dim(k)));
            if (block.rows() == 0 || block.cols() == 0 || block.is_zero()) continue;
            blocks_.emplace(k, std::move(block));
        }
        for (const auto& [k, d] : source_.dims()) {
            Matrix lhs = target_.differential(k) * block(k);
            Matrix rhs = block(k - 1) * source_.differential(k);
            if (!(lhs == rhs))
                throw NotChainMap("blocks do not commute with differentials in degree " + std::to_string(k));
        }
    }

    static ChainMap identity(const Complex& c) {
        std::map<int, Matrix> blocks;
        for (const auto& [k, d] : c.dims()) blocks.emplace(k, Matrix::identity(d));
        return ChainMap(c, c, std::move(blocks));
    }

    static ChainMap zero(const Complex& source, const Complex& target) {
        return ChainMap(source, target, {});
    }

    const Complex& source() const { return source_; }
    const Complex& target() const { return target_; }
    const std::map<int, Matrix>& stored_blocks() const { return blocks_; }

    Matrix block(int k) const {
        auto it = blocks_.find(k);
        if (it != blocks_.end()) return it->second;
        return Matrix(target_.dim(k), source_.dim(k));
    }

    ChainMap compose(const ChainMap& inner) const {
        if (!(inner.target_ == source_)) throw Error("compose: inner target differs from outer source");
        std::map<int, Matrix> blocks;
        for (const auto& [k, d] : inner.source_.dims()) blocks.emplace(k, block(k) * inner.block(k));
        return ChainMap(inner.source_, target_, std::move(blocks));
    }

    ChainMap operator+(const ChainMap& other) const {
        require_parallel(other);
        std::map<int, Matrix> blocks;
        for (const auto& [k, d] : source_.dims()) blocks.emplace(k, block(k) + other.block(k));
        return ChainMap(source_, target_, std::move(blocks));
    }

    ChainMap operator-(const ChainMap& other) const {
        require_parallel(other);
        std::map<int, Matrix> blocks;
        for (const auto& [k, d] : source_.dims()) blocks.emplace(k, block(k) - other.block(k));
        return ChainMap(source_, target_, std::move(blocks));
    }

    ChainMap scaled(const Rational& s) const {
        std::map<int, Matrix> blocks;
        for (const auto& [k, block_k] : blocks_) blocks.emplace(k, block_k.scaled(s));
        return ChainMap(source_, target_, std::move(blocks));
    }

    bool is_zero_map() const { return blocks_.empty(); }

    bool is_injective() const {
        for (const auto& [k, d] : source_.dims())
            if (rank(block(k)) < static_cast<std::size_t>(d)) return false;
        return true;
    }

    bool is_isomorphism() const {
        if (!(source_.dims() == target_.dims())) return false;
        for (const auto& [k, d] : source_.dims())
            if (rank(block(k)) < static_cast<std::size_t>(d)) return false;
        return true;
    }

    ChainMap inverted() const {
        if (!(source_.dims() == target_.dims()))
            throw NotInvertible("inverting a map between complexes of different graded dimensions");
        std::map<int, Matrix> blocks;
        for (const auto& [k, d] : source_.dims()) blocks.emplace(k, inverse(block(k)));
        return ChainMap(target_, source_, std::move(blocks));
    }

    bool operator==(const ChainMap& other) const {
        return source_ == other.source_ && target_ == other.target_ && blocks_ == other.blocks_;
    }

private:
    void require_parallel(const ChainMap& other) const {
        if (!(source_ == other.source_) || !(target_ == other.target_))
            throw Error("chain map arithmetic requires equal sources and targets");
    }

    Complex source_;
    Complex target_;
    std::map<int, Matrix> blocks_;
};

// Mapping cone: cone(f)_k = Y_k + X_{k-1} (Y block first), differential
// [[d_Y, f],[0, -d_X]]. Ships with the triangle maps Y -> cone(f) -> shift X.
struct ConeData {
    Complex cone;
    ChainMap from_target;    // Y -> cone(f)
    ChainMap to_shift_source; // cone(f) -> shift X
};

inline ConeData cone(const ChainMap& f) {
    const Complex& x = f.source();
    const Complex& y = f.target();
    std::map<int, int> dims;
    for (const auto& [k, d] : y.dims()) dims[k] += d;
    for (const auto& [k, d] : x.dims()) dims[k + 1] += d;
    std::map<int, Matrix> diffs;
    for (const auto& [k, d] : dims) {
        std::size_t rows_y = y.dim(k - 1), rows_x = x.dim(k - 2);
        std::size_t cols_y = y.dim(k), cols_x = x.dim(k - 1);
        Matrix block(rows_y + rows_x, cols_y + cols_x);
        Matrix dy = y.differential(k);
        Matrix fx = f.block(k - 1);
        Matrix dx = x.differential(k - 1);
        for (std::size_t i = 0; i < rows_y; ++i)
            for (std::size_t j = 0; j < cols_y; ++j) block(i, j) = dy(i, j);
        for (std::size_t i = 0; i < rows_y; ++i)
            for (std::size_t j = 0; j < cols_x; ++j) block(i, cols_y + j) = fx(i, j);
        for (std::size_t i = 0; i < rows_x; ++i)
            for (std::size_t j = 0; j < cols_x; ++j) block(rows_y + i, cols_y + j) = -dx(i, j);
        diffs.emplace(k, std::move(block));
    }
    Complex cone_complex(dims, std::move(diffs));

    std::map<int, Matrix> include_blocks;
    for (const auto& [k, d] : y.dims()) {
        Matrix b(cone_complex.dim(k), d);
        for (int i = 0; i < d; ++i) b(i, i) = 1;
        include_blocks.emplace(k, std::move(b));
    }
    std::map<int, Matrix> project_blocks;
    Complex shifted = shift(x);
    for (const auto& [k, d] : shifted.dims()) {
        Matrix b(d, cone_complex.dim(k));
        for (int i = 0; i < d; ++i) b(i, y.dim(k) + i) = 1;
        project_blocks.emplace(k, std::move(b));
    }
    ChainMap from_target(y, cone_complex, std::move(include_blocks));
    ChainMap to_shift_source(cone_complex, shifted, std::move(project_blocks));
    return {std::move(cone_complex), std::move(from_target), std::move(to_shift_source)};
}

// Subcomplex given by a degreewise basis (independent columns), closed under
// the ambient differential.
struct Subcomplex {
    Complex ambient;
    std::map<int, Matrix> basis;
};

inline void verify_closure(const Subcomplex& s) {
    for (const auto& [k, b] : s.basis) {
        Matrix image = s.ambient.differential(k) * b;
        if (image.is_zero()) continue;
        auto below = s.basis.find(k - 1);
        if (below == s.basis.end()) throw NotClosed("subcomplex not closed under d in degree " + std::to_string(k));
        try {
            solve(below->second, image);
        } catch (const InconsistentError&) {
            throw NotClosed("subcomplex not closed under d in degree " + std::to_string(k));
        }
    }
}

// Reduces a degreewise spanning set to a basis and checks closure.
inline Subcomplex make_subcomplex(const Complex& ambient, const std::map<int, Matrix>& spanning) {
    std::map<int, Matrix> basis;
    for (const auto& [k, span] : spanning) {
        if (span.rows() != static_cast<std::size_t>(ambient.dim(k)))
            throw Error("subcomplex span in degree " + std::to_string(k) + " has " +
                        std::to_string(span.rows()) + " rows, ambient dimension is " +
                        std::to_string(ambient.dim(k)));
        Matrix b = image_basis(span);
        if (b.cols() > 0) basis.emplace(k, std::move(b));
    }
    Subcomplex s{ambient, std::move(basis)};
    verify_closure(s);
    return s;
}

// Degreewise quotient by a subcomplex, with the canonical projection. The
// quotient coordinates are the standard basis vectors of the ambient space
// completing the subcomplex basis (first-pivot choice, deterministic).
inline std::pair<Complex, ChainMap> quotient(const Complex& c, const Subcomplex& s) {
    if (!(s.ambient == c)) throw Error("quotient: subcomplex has a different ambient complex");
    verify_closure(s);
    std::map<int, Matrix> sections;    // quotient -> ambient, columns are chosen std basis vectors
    std::map<int, Matrix> projections; // ambient -> quotient
    std::map<int, int> dims;
    for (const auto& [k, d] : c.dims()) {
        auto it = s.basis.find(k);
        Matrix b = it == s.basis.end() ? Matrix(d, 0) : it->second;
        RrefResult extended = rref(hstack(b, Matrix::identity(d)));
        std::vector<std::size_t> complement;
        for (std::size_t p : extended.pivots)
            if (p >= b.cols()) complement.push_back(p - b.cols());
        Matrix section(d, complement.size());
        for (std::size_t j = 0; j < complement.size(); ++j) section(complement[j], j) = 1;
        // Rows of [B | section]^{-1} below the subcomplex block give the
        // coordinates along the chosen complement.
        Matrix change = inverse(hstack(b, section));
        Matrix projection(complement.size(), d);
        for (std::size_t i = 0; i < complement.size(); ++i)
            for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j)
                projection(i, j) = change(b.cols() + i, j);
        dims.emplace(k, static_cast<int>(complement.size()));
        sections.emplace(k, std::move(section));
        projections.emplace(k, std::move(projection));
    }
    std::map<int, Matrix> diffs;
    for (const auto& [k, d] : dims) {
        if (d == 0 || dims.count(k - 1) == 0 || dims.at(k - 1) == 0) continue;
        diffs.emplace(k, projections.at(k - 1) * (c.differential(k) * sections.at(k)));
    }
    Complex q(dims, std::move(diffs));
    std::map<int, Matrix> proj_blocks;
    for (auto& [k, p] : projections)
        if (p.rows() > 0 && p.cols() > 0) proj_blocks.emplace(k, std::move(p));
    return {q, ChainMap(c, q, std::move(proj_blocks))};
}

// Image of an idempotent endomorphism, split degreewise. The image carries
// the restricted differential; inclusion and projection are chain maps.
struct ImageData {
    Complex image;
    ChainMap inclusion;  // image -> ambient
    ChainMap projection; // ambient -> image
};

inline ImageData image_subcomplex(const ChainMap& p) {
    if (!(p.source() == p.target())) throw Error("image_subcomplex: map is not an endomorphism");
    const Complex& c = p.source();
    std::map<int, Matrix> inclusions, projections;
    std::map<int, int> dims;
    for (const auto& [k, d] : c.dims()) {
        const Matrix block = p.block(k);
        if (!(block * block == block))
            throw NotIdempotent("image_subcomplex: block in degree " + std::to_string(k) + " is not idempotent");
        SplitData split = split_idempotent(block);
        dims.emplace(k, static_cast<int>(split.inclusion.cols()));
        inclusions.emplace(k, std::move(split.inclusion));
        projections.emplace(k, std::move(split.projection));
    }
    std::map<int, Matrix> diffs;
    for (const auto& [k, d] : dims) {
        if (d == 0 || dims.count(k - 1) == 0 || dims.at(k - 1) == 0) continue;
        diffs.emplace(k, projections.at(k - 1) * (c.differential(k) * inclusions.at(k)));
    }
    Complex image(dims, std::move(diffs));
    std::map<int, Matrix> incl_blocks, proj_blocks;
    for (auto& [k, b] : inclusions)
        if (b.rows() && b.cols()) incl_blocks.emplace(k, std::move(b));
    for (auto& [k, b] : projections)
        if (b.rows() && b.cols()) proj_blocks.emplace(k, std::move(b));
    return {image, ChainMap(image, c, std::move(incl_blocks)), ChainMap(c, image, std::move(proj_blocks))};
}

// Direct sum with the four structural maps (left block first).
struct SumData {
    Complex sum;
    ChainMap left_inclusion;
    ChainMap right_inclusion;
    ChainMap left_projection;
    ChainMap right_projection;
};

inline SumData direct_sum(const Complex& a, const Complex& b) {
    std::map<int, int> dims;
    for (const auto& [k, d] : a.dims()) dims[k] += d;
    for (const auto& [k, d] : b.dims()) dims[k] += d;
    std::map<int, Matrix> diffs;
    for (const auto& [k, d] : dims) {
        Matrix block(a.dim(k - 1) + b.dim(k - 1), a.dim(k) + b.dim(k));
        Matrix da = a.differential(k), db = b.differential(k);
        for (std::size_t i = 0; i < da.rows(); ++i)
            for (std::size_t j = 0; j < da.cols(); ++j) block(i, j) = da(i, j);
        for (std::size_t i = 0; i < db.rows(); ++i)
            for (std::size_t j = 0; j < db.cols(); ++j) block(da.rows() + i, da.cols() + j) = db(i, j);
        diffs.emplace(k, std::move(block));
    }
    Complex sum(dims, std::move(diffs));
    std::map<int, Matrix> li, ri, lp, rp;
    for (const auto& [k, d] : sum.dims()) {
        int da = a.dim(k), db = b.dim(k);
        Matrix incl_a(d, da), incl_b(d, db), proj_a(da, d), proj_b(db, d);
        for (int i = 0; i < da; ++i) incl_a(i, i) = proj_a(i, i) = 1;
        for (int i = 0; i < db; ++i) incl_b(da + i, i) = proj_b(i, da + i) = 1;
        if (da) {
            li.emplace(k, std::move(incl_a));
            lp.emplace(k, std::move(proj_a));
        }
        if (db) {
            ri.emplace(k, std::move(incl_b));
            rp.emplace(k, std::move(proj_b));
        }
    }
    return {sum, ChainMap(a, sum, std::move(li)), ChainMap(b, sum, std::move(ri)),
            ChainMap(sum, a, std::move(lp)), ChainMap(sum, b, std::move(rp))};
}

} // namespace findim
