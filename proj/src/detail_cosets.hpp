#pragma once

#include <vector>

#include "fqp/common.hpp"

namespace fqp::detail {

struct CosetPartition {
    std::vector<Elem> projection;  // carrier index -> coset index
    std::vector<Elem> section;     // coset index -> minimal representative
};

/// Partitions 0..n-1 into cosets of an additive subgroup given by its
/// element list. Scanning ascending makes every representative the minimal
/// element of its coset, and coset indices follow representative order.
template <class AddFn>
CosetPartition coset_partition(std::size_t n, const std::vector<Elem>& subgroup, AddFn add) {
    CosetPartition part;
    part.projection.assign(n, 0);
    std::vector<bool> assigned(n, false);
    for (Elem x = 0; x < n; ++x) {
        if (assigned[x]) continue;
        Elem q = static_cast<Elem>(part.section.size());
        part.section.push_back(x);
        for (Elem s : subgroup) {
            Elem y = add(x, s);
            if (!assigned[y]) {
                assigned[y] = true;
                part.projection[y] = q;
            }
        }
        // x itself is in x + subgroup because the subgroup contains zero.
    }
    return part;
}

}  // namespace fqp::detail
