#pragma once

namespace softedge {

struct AiryPair {
    double ai;
    double aip;
};

// Documented working range |x| <= 50; outside it Status::out_of_range is thrown.
double airy_ai(double x);
double airy_ai_prime(double x);
AiryPair airy(double x);

namespace detail {
// No range check; accurate for any x (underflows to 0 far right).
struct AiryPairL {
    long double ai;
    long double aip;
};
AiryPairL airy_ld(long double x);
// Discrepancy between the two anchor sweeps where they meet at x = 0.
double airy_anchor_mismatch();
} // namespace detail

} // namespace softedge
