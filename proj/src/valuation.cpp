#include "tss3/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tss3/errors.hpp"

namespace tss3 {

void Hyperparameters::validate() const {
    if (!(sigma > 0.0) || sigma > 1.0)
        throw ConfigurationError("hyperparameters: sigma must be in (0, 1]");
    if (!(lambda >= 0.0)) throw ConfigurationError("hyperparameters: lambda must be >= 0");
    if (!(rho >= 0.0)) throw ConfigurationError("hyperparameters: rho must be >= 0");
    if (!(epsilon >= 0.0)) throw ConfigurationError("hyperparameters: epsilon must be >= 0");
    if (max_lvl < 1 || max_lvl > kMaxSupportedLevel)
        throw ConfigurationError("hyperparameters: max_lvl must be in 1..10");
}

namespace {

// Keeps the significance ramp finite when the cross-category dispersion
// collapses to zero.
constexpr double kMadGuard = 1e-9;
constexpr double kSigmoidSteepness = 4.0;
constexpr double kSignificanceCutoff = 0.5;

double median_inplace(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void require_multiclass(const Model& m) {
    if (m.category_count() < 2)
        throw ConfigurationError("valuation needs at least 2 registered categories");
}

void require_length(const Model& m, std::size_t len) {
    if (len < 1 || len > static_cast<std::size_t>(m.hyperparameters().max_lvl))
        throw std::invalid_argument("n-gram length must be in 1..max_lvl");
}

std::vector<double> lv_profile(const Model& m, std::span<const std::string> ngram) {
    std::vector<double> lvs(m.category_count());
    for (std::size_t c = 0; c < lvs.size(); ++c) lvs[c] = lv(m, ngram, c);
    return lvs;
}

// Significance of category `cat` within an lv profile. The n-gram's lv is
// compared against the median of the *other* categories' lv values; the
// required deviation scales with lambda times their median absolute
// deviation. Ramp: logistic(4 * (lv - M - lambda*(MAD + guard)) / (MAD +
// guard)), which is ~0 on a flat profile and saturates to 1 once the lv
// clears the median by well over lambda MADs.
double sg_from_profile(const std::vector<double>& lvs, std::size_t cat, double lambda) {
    std::vector<double> others;
    others.reserve(lvs.size() - 1);
    for (std::size_t j = 0; j < lvs.size(); ++j) {
        if (j != cat) others.push_back(lvs[j]);
    }
    const double m = median_inplace(others);
    for (auto& x : others) x = std::abs(x - m);
    const double mad = median_inplace(others);
    const double scale = mad + kMadGuard;
    const double z = (lvs[cat] - m - lambda * scale) / scale;
    return 1.0 / (1.0 + std::exp(-kSigmoidSteepness * z));
}

std::size_t significant_count(const std::vector<double>& lvs, double lambda) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < lvs.size(); ++c) {
        if (sg_from_profile(lvs, c, lambda) >= kSignificanceCutoff) ++count;
    }
    return count;
}

double sn_from_count(std::size_t significant, std::size_t n_categories, double rho) {
    if (rho == 0.0) return 1.0;
    const std::size_t s = std::max<std::size_t>(significant, 1);
    const double shared = static_cast<double>(s - 1) / static_cast<double>(n_categories - 1);
    return std::pow(1.0 - shared, rho);
}

}  // namespace

double lv(const Model& m, std::span<const std::string> ngram, std::size_t category) {
    require_length(m, ngram.size());
    const std::uint64_t freq = m.tf(ngram, category);
    if (freq == 0) return 0.0;
    const std::uint64_t max_freq = m.max_tf(static_cast<int>(ngram.size()), category);
    if (max_freq == 0) return 0.0;  // empty level contributes nothing
    return std::pow(static_cast<double>(freq) / static_cast<double>(max_freq),
                    m.hyperparameters().sigma);
}

double sg(const Model& m, std::span<const std::string> ngram, std::size_t category) {
    require_multiclass(m);
    require_length(m, ngram.size());
    if (category >= m.category_count()) throw std::out_of_range("sg: unknown category");
    return sg_from_profile(lv_profile(m, ngram), category, m.hyperparameters().lambda);
}

double sn(const Model& m, std::span<const std::string> ngram, std::size_t category) {
    require_multiclass(m);
    require_length(m, ngram.size());
    if (category >= m.category_count()) throw std::out_of_range("sn: unknown category");
    const auto lvs = lv_profile(m, ngram);
    return sn_from_count(significant_count(lvs, m.hyperparameters().lambda), lvs.size(),
                         m.hyperparameters().rho);
}

double gv(const Model& m, std::span<const std::string> ngram, std::size_t category) {
    if (category >= m.category_count()) throw std::out_of_range("gv: unknown category");
    return gv_vector(m, ngram)[category];
}

ConfidenceVector gv_vector(const Model& m, std::span<const std::string> ngram) {
    require_multiclass(m);
    require_length(m, ngram.size());
    const auto lvs = lv_profile(m, ngram);
    const double lambda = m.hyperparameters().lambda;

    std::vector<double> sgs(lvs.size());
    std::size_t significant = 0;
    for (std::size_t c = 0; c < lvs.size(); ++c) {
        sgs[c] = sg_from_profile(lvs, c, lambda);
        if (sgs[c] >= kSignificanceCutoff) ++significant;
    }
    const double sanction = sn_from_count(significant, lvs.size(), m.hyperparameters().rho);

    ConfidenceVector out(lvs.size());
    for (std::size_t c = 0; c < lvs.size(); ++c) out[c] = lvs[c] * sgs[c] * sanction;
    return out;
}

}  // namespace tss3
