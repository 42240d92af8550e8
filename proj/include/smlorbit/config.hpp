#pragma once

#include <cstdint>

namespace smlorbit {

struct Config {
    int precision = 12;               // K for Z/p^K towers
    int max_precision = 48;           // cap for the certify retry loop
    long degree_cap = 512;            // symbolic image degree guard
    long mahler_degree_cap = 400;     // truncation guard for series products
    long cycle_cap = 1000000;         // orbit closure search bound mod p
    long order_cap = 1000000;         // Jacobian order search bound
    long enum_cap = 1000000;          // point enumeration bound (p^d)
    long good_prime_cap = 100000;     // largest prime the search will try
    int nofit_confidence_radius = 64; // window size needed to claim NO_FIT in char 0
    bool allow_p3_experimental = false;
    int rescan_samples = 10;          // independent containment re-checks per scan
};

} // namespace smlorbit
