#pragma once

#include <vector>

namespace softedge {

template <class T>
struct QuadRule {
    std::vector<T> x, w;
};

// Gauss-Legendre rule on (-1, 1), nodes ascending.  Cached, thread-safe.
// Instantiated for double and long double.
template <class T>
const QuadRule<T>& gauss_legendre(int m);

// Rule on (a, b) split into `panels` equal pieces of `m` Gauss-Legendre nodes.
template <class T>
QuadRule<T> composite_gauss(T a, T b, int panels, int m);

} // namespace softedge
