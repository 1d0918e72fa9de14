#include "tss3/confidence.hpp"

#include <stdexcept>

namespace tss3 {

void ConfidenceVector::add(const ConfidenceVector& other) {
    if (values_.size() != other.values_.size())
        throw std::invalid_argument("ConfidenceVector::add: size mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
}

std::size_t argmax_index(const ConfidenceVector& v) {
    if (v.empty()) throw std::invalid_argument("argmax_index: empty vector");
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) best = i;
    }
    return best;
}

}  // namespace tss3
