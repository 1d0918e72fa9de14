#pragma once

namespace tss3 {

// Knobs shared by valuation and n-gram recognition.
struct Hyperparameters {
    double sigma = 0.455;   // local-value smoothness exponent, in (0, 1]
    double lambda = 1.0;    // significance deviation factor, >= 0
    double rho = 1.0;       // sanction severity, >= 0
    double epsilon = 0.01;  // minimum gv for a recognizer final state, >= 0
    int max_lvl = 3;        // longest learned/recognized n-gram, 1..10

    // Throws ConfigurationError when any field is out of range.
    void validate() const;
};

inline constexpr int kMaxSupportedLevel = 10;

}  // namespace tss3
