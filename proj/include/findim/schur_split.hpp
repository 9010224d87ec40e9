#pragma once

#include <map>
#include <string>
#include <utility>

#include <findim/complex.hpp>
#include <findim/errors.hpp>

namespace findim {

// A square block of chain maps between A + B and A + C:
//   [ a  b ]      a : A -> A   b : B -> A
//   [ c  d ]      c : A -> C   d : B -> C
// where a must be a degreewise isomorphism.
struct BlockTriangleInput {
    ChainMap a;
    ChainMap b;
    ChainMap c;
    ChainMap d;

    BlockTriangleInput(ChainMap a_, ChainMap b_, ChainMap c_, ChainMap d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (!(a.source() == a.target())) throw Error("block a must be an endomorphism of A");
        if (!(b.target() == a.target())) throw Error("block b must land in A");
        if (!(c.source() == a.source())) throw Error("block c must start from A");
        if (!(d.source() == b.source()) || !(d.target() == c.target()))
            throw Error("block d must map B to C");
        if (!a.is_isomorphism()) throw NotInvertible("block a is not a degreewise isomorphism");
    }
};

// Reduction of the triangle over the block map to the triangle over the
// Schur complement t = d - c a^{-1} b: splitting off the invertible part
// leaves the cone homology unchanged.
struct SchurSplitResult {
    ChainMap t; // B -> C
    std::map<int, int> full_cone_homology;
    std::map<int, int> reduced_cone_homology;
    bool homology_match = false;
};

inline SchurSplitResult schur_split(const BlockTriangleInput& input) {
    ChainMap t = input.d - input.c.compose(input.a.inverted()).compose(input.b);

    SumData source = direct_sum(input.a.source(), input.b.source());
    SumData target = direct_sum(input.a.target(), input.c.target());
    ChainMap full = target.left_inclusion.compose(input.a).compose(source.left_projection) +
                    target.left_inclusion.compose(input.b).compose(source.right_projection) +
                    target.right_inclusion.compose(input.c).compose(source.left_projection) +
                    target.right_inclusion.compose(input.d).compose(source.right_projection);

    SchurSplitResult result{std::move(t), homology(cone(full).cone), {}, false};
    result.reduced_cone_homology = homology(cone(result.t).cone);
    result.homology_match = result.full_cone_homology == result.reduced_cone_homology;
    return result;
}

} // namespace findim
