#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qcosym/core.hpp"

namespace qcosym {

// Single coordinate chart on a (2n+q)-dimensional manifold. q = 0 describes
// a plain symplectic chart (produced by the symplectization); building a
// q-cosymplectic structure requires q >= 1.
struct Chart {
    int dim = 0;
    int n = 0;
    int q = 0;
    std::vector<std::string> names;

    Chart() = default;

    Chart(int n_, int q_, std::vector<std::string> names_)
        : dim(2 * n_ + q_), n(n_), q(q_), names(std::move(names_)) {
        if (n < 1 || q < 0) throw std::invalid_argument("Chart: need n >= 1 and q >= 0");
        if (static_cast<int>(names.size()) != dim)
            throw std::invalid_argument("Chart: expected " + std::to_string(dim) + " coordinate names");
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("Chart: coordinate names must be pairwise distinct");
    }

    // Index of a named coordinate, -1 if absent.
    int index_of(const std::string& name) const {
        auto it = std::find(names.begin(), names.end(), name);
        return it == names.end() ? -1 : static_cast<int>(it - names.begin());
    }
};

}  // namespace qcosym
