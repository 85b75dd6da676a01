#pragma once

// Reference arithmetic for the energy model, written out from literal
// constants rather than through RadioModel.

#include <cmath>

namespace wsnsim::oracle {

inline constexpr double kElec = 50e-9;
inline constexpr double kDa = 5e-9;
inline constexpr double kFs = 10e-12;
inline constexpr double kMp = 0.0013e-12;

inline double crossover() { return std::sqrt(kFs / kMp); }

inline double transmit(double k, double d) {
    const double amp = d < crossover() ? kFs * d * d : kMp * std::pow(d, 4);
    return k * (kElec + amp);
}

inline double receive(double k) { return k * kElec; }

inline double aggregate(double k, int signals) { return k * kDa * signals; }

// Frozen values, hand evaluated with k = 4000 bits.
inline constexpr double kTxZero = 2.0e-4;      // 50e-9 * 4000
inline constexpr double kTx50 = 3.0e-4;        // 2e-4 + 10e-12 * 4000 * 2500
inline constexpr double kTx100 = 7.2e-4;       // 2e-4 + 0.0013e-12 * 4000 * 1e8
inline constexpr double kRx = 2.0e-4;          // 50e-9 * 4000
inline constexpr double kAgg1 = 2.0e-5;        // 5e-9 * 4000
inline constexpr double kAgg5 = 1.0e-4;        // 5 * 2e-5
inline constexpr double kTotalEnergy = 55.0;   // 100 * 0.5 * (1 + 1 * 0.1)

inline bool rel_close(double got, double want, double rel) {
    return std::fabs(got - want) <= rel * std::fabs(want);
}

}  // namespace wsnsim::oracle
