#pragma once

#include <cstddef>
#include <vector>

namespace tss3 {

// Per-category confidence values in category registration order. The
// category -> position mapping is fixed for the lifetime of a model, so
// vectors from different blocks of the same model can be combined freely.
class ConfidenceVector {
public:
    ConfidenceVector() = default;
    explicit ConfidenceVector(std::size_t n_categories) : values_(n_categories, 0.0) {}

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    const std::vector<double>& values() const { return values_; }

    // Componentwise sum; sizes must match.
    void add(const ConfidenceVector& other);

    bool operator==(const ConfidenceVector&) const = default;

private:
    std::vector<double> values_;
};

// Index of the largest component; ties go to the lowest index.
std::size_t argmax_index(const ConfidenceVector& v);

}  // namespace tss3
