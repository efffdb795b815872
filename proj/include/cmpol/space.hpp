#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "cmpol/errors.hpp"

namespace cmpol {

// Ordered tensor-product layout of a truncated Hilbert space. Slot 0 is the
// leftmost (slowest-varying) Kronecker factor. Conventional layouts used by
// the Hamiltonian builders put qubit factors first, boson factors last.
// Value type; cheap to copy, never mutated after construction.
struct SpaceDescriptor {
    std::vector<int> dims;

    SpaceDescriptor() = default;
    explicit SpaceDescriptor(std::vector<int> d) : dims(std::move(d)) {
        if (dims.empty())
            throw DimensionError("space needs at least one factor");
        for (int n : dims)
            if (n < 2)
                throw DimensionError("factor dimension must be >= 2, got " +
                                     std::to_string(n));
    }
    SpaceDescriptor(std::initializer_list<int> d)
        : SpaceDescriptor(std::vector<int>(d)) {}

    int factors() const { return static_cast<int>(dims.size()); }

    int dim(int slot) const {
        if (slot < 0 || slot >= factors())
            throw DimensionError("slot " + std::to_string(slot) +
                                 " out of range for " + str());
        return dims[static_cast<std::size_t>(slot)];
    }

    // Total dimension of the product space.
    int total() const {
        return std::accumulate(dims.begin(), dims.end(), 1,
                               [](int a, int b) { return a * b; });
    }

    bool operator==(const SpaceDescriptor& o) const { return dims == o.dims; }
    bool operator!=(const SpaceDescriptor& o) const { return dims != o.dims; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < dims.size(); ++i)
            s += (i ? "," : "") + std::to_string(dims[i]);
        return s + ")";
    }
};

}  // namespace cmpol
