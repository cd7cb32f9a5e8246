#pragma once

namespace softedge {

enum class WaveKind { Hermite, Laguerre };

// Orthonormal wave functions for exp(-x^2) on R or x^alpha exp(-x) on (0, inf).
struct WaveFunctionFamily {
    WaveKind kind = WaveKind::Hermite;
    double alpha = 0.0;
    int max_degree = 0;
};

double wave(const WaveFunctionFamily& fam, int j, double x);

// phi_j(x) for lo <= j <= hi into out[0 .. hi-lo].  Instantiated for double
// and long double.
template <class T>
void wave_block(const WaveFunctionFamily& fam, T x, int lo, int hi, T* out);

} // namespace softedge
