#pragma once

#include <span>
#include <string>

#include "tss3/confidence.hpp"
#include "tss3/model.hpp"

namespace tss3 {

// Local value: the category-relative smoothed frequency of an n-gram,
// (tf / max tf at that length)^sigma. 0 for unseen n-grams and for levels
// with no learned n-grams.
double lv(const Model&, std::span<const std::string> ngram, std::size_t category);

// Significance: a sigmoid in [0,1] close to 1 when the n-gram's lv in
// `category` clearly exceeds the other categories' median (deviation
// measured in units of lambda * MAD), and close to 0 for a flat profile.
double sg(const Model&, std::span<const std::string> ngram, std::size_t category);

// Sanction: shrinks as the n-gram is significant in more categories; 1 when
// exclusive to a single category. rho = 0 disables the sanction.
double sn(const Model&, std::span<const std::string> ngram, std::size_t category);

// Global value: lv * sg * sn, the confidence in [0,1] that the n-gram
// exclusively belongs to the category.
double gv(const Model&, std::span<const std::string> ngram, std::size_t category);

// gv for every registered category, in registration order.
ConfidenceVector gv_vector(const Model&, std::span<const std::string> ngram);

}  // namespace tss3
